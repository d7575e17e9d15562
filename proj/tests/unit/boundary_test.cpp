#include <doctest.h>

#include <cmath>

#include "aspir8/boundary.hpp"
#include "aspir8/scheme.hpp"
#include "test_support.hpp"

using namespace aspir8;
using aspir8::testing::catheter;
using aspir8::testing::reference_vessel;

namespace {

// Free-segment pressure pulse at x = 2.5 on a fluid at rest, no device.
SimState pulse_state(const Grid& g, const VesselParams& p) {
  SimState s = SimState::uniform(g.N, p.A0, 0.0, 0.0, p.A0, 0.0);
  for (std::size_t i = 0; i < g.N; ++i) {
    const double x = g.free_center(i);
    s.A_free[i] = p.A0 * (1.0 + 0.05 * std::exp(-std::pow((x - 2.5) / 0.3, 2)));
  }
  return s;
}

}  // namespace

TEST_CASE("neumann ghosts copy the adjacent cells") {
  const VesselParams p = reference_vessel();
  SimState s = SimState::uniform(6, 0.7, 200.0, -100.0, 0.75, 210.0);
  s.A_cath.front() = 0.71;
  s.A_free.back() = 0.76;
  const GhostStates g = ghost_states(s, BoundarySpec{}, 0.0, p, catheter(0.1));
  CHECK(g.A_left == 0.71);
  CHECK(g.u_left == 200.0);
  CHECK(g.w_left == -100.0);
  CHECK(g.A_right == 0.76);
  CHECK(g.u_right == 210.0);

  BoundarySpec fixed;
  fixed.device_left = FixedVelocity{-2500.0};
  CHECK(ghost_states(s, fixed, 0.0, p, catheter(0.1)).w_left == -2500.0);
}

TEST_CASE("neumann boundaries preserve uniform states") {
  const VesselParams p = reference_vessel();
  const Grid grid(50);
  const SimState s = SimState::uniform(50, p.A0, 254.65, 0.0, p.A0, 254.65);
  const SimState out = step(s, grid, BoundarySpec{}, p, catheter(0.0));
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(out.A_cath[i] == doctest::Approx(s.A_cath[i]).epsilon(1e-14));
    CHECK(out.u_free[i] == doctest::Approx(s.u_free[i]).epsilon(1e-14));
  }
}

TEST_CASE("inlet pressure ghost reproduces p_in") {
  const VesselParams p = reference_vessel();
  const CatheterConfig c = catheter(0.1);
  const double A_eq = equilibrium_area(Side::Catheterized, p, c);
  const SimState s = SimState::uniform(6, A_eq, 0.0, -1000.0, p.A0, 0.0);
  BoundarySpec bc;
  bc.left = InletPressure{sinusoidal_pressure(8.0e4)};
  for (double t : {0.0, 0.05, 0.125, 0.25, 0.4}) {
    const GhostStates g = ghost_states(s, bc, t, p, c);
    const double expected = 8.0e4 * std::sin(2.0 * std::numbers::pi * t);
    const double got = pressure(g.A_left, Side::Catheterized, p, c);
    CHECK(std::abs(got - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
    CHECK(g.u_left == 0.0);
  }
}

TEST_CASE("reflection ghosts") {
  const VesselParams p = reference_vessel();
  const CatheterConfig none = catheter(0.0);
  const double out_ref = free_riemann_invariant(p.A0, 0.0, +1, p);
  const double in_ref = free_riemann_invariant(p.A0, 0.0, -1, p);

  SUBCASE("R_T = 0 absorbs: incoming invariant stays at reference") {
    SimState s = SimState::uniform(6, p.A0, 0.0, 0.0, 1.05 * p.A0, 30.0);
    BoundarySpec bc;
    bc.right = Reflection{0.0};
    const GhostStates g = ghost_states(s, bc, 0.0, p, none);
    CHECK(free_riemann_invariant(g.A_right, g.u_right, -1, p) ==
          doctest::Approx(in_ref).epsilon(1e-13));
    CHECK(free_riemann_invariant(g.A_right, g.u_right, +1, p) ==
          doctest::Approx(free_riemann_invariant(1.05 * p.A0, 30.0, +1, p)).epsilon(1e-13));
  }

  SUBCASE("R_T = 1 at rest keeps the reference state") {
    const SimState s = SimState::uniform(6, p.A0, 0.0, 0.0, p.A0, 0.0);
    BoundarySpec bc;
    bc.right = Reflection{1.0};
    const GhostStates g = ghost_states(s, bc, 0.0, p, none);
    CHECK(g.A_right == doctest::Approx(p.A0).epsilon(1e-14));
    CHECK(std::abs(g.u_right) < 1e-12);
  }

  SUBCASE("R_T = 1 mirrors the outgoing deviation with a wall velocity") {
    const SimState s = SimState::uniform(6, p.A0, 0.0, 0.0, 1.02 * p.A0, 12.0);
    BoundarySpec bc;
    bc.right = Reflection{1.0};
    const GhostStates g = ghost_states(s, bc, 0.0, p, none);
    const double out = free_riemann_invariant(1.02 * p.A0, 12.0, +1, p);
    CHECK(free_riemann_invariant(g.A_right, g.u_right, -1, p) ==
          doctest::Approx(in_ref - (out - out_ref)).epsilon(1e-13));
    CHECK(std::abs(g.u_right) < 1e-12);
  }

  SUBCASE("R_T outside [0, 1] is rejected") {
    BoundarySpec bc;
    bc.right = Reflection{1.2};
    CHECK_THROWS_AS(bc.validate(), DomainError);
  }
}

TEST_CASE("fully reflecting end passes no net mass over a reflection") {
  const VesselParams p = reference_vessel();
  const CatheterConfig none = catheter(0.0);
  const Grid g(400);
  const SimState init = pulse_state(g, p);
  double excess = 0.0;
  for (double a : init.A_free) excess += (a - p.A0) * g.dx();

  BoundarySpec bc;
  bc.right = Reflection{1.0};
  double through = 0.0;
  double wall_peak = 0.0;
  RunHooks hooks;
  hooks.on_step = [&](const StepReport& r, const SimState& s) {
    through += r.dt * r.F_right;
    wall_peak = std::max(wall_peak, s.A_free.back());
  };
  // The right-going half reaches the wall after ~6.5 ms and is back near
  // x = 2.5 at ~13 ms.
  const SimState out = run(init, g, bc, p, none, 0.013, hooks);
  CHECK(wall_peak > 1.03 * p.A0);  // the pulse did hit the wall
  CHECK(std::abs(through) < 0.02 * excess);
  double returned = 0.0;
  for (double a : out.A_free) returned += (a - p.A0) * g.dx();
  CHECK(returned > 0.4 * excess);
}

TEST_CASE("reflected amplitude grows with R_T") {
  const VesselParams p = reference_vessel();
  const CatheterConfig none = catheter(0.0);
  const Grid g(400);
  double previous = -1.0;
  for (double rt : {0.0, 0.4, 0.8, 1.0}) {
    BoundarySpec bc;
    bc.right = Reflection{rt};
    const SimState out = run(pulse_state(g, p), g, bc, p, none, 0.013);
    double peak = -1e300;
    for (double a : out.A_free) peak = std::max(peak, pressure(a, Side::Free, p, none));
    CHECK(peak >= previous);
    previous = peak;
  }
}
