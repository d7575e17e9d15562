#include "aspir8/boundary.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "aspir8/errors.hpp"

namespace aspir8 {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void BoundarySpec::validate() const {
  if (const auto* r = std::get_if<Reflection>(&right)) {
    if (!(r->R_T >= 0.0 && r->R_T <= 1.0)) {
      throw DomainError("reflection coefficient R_T must lie in [0, 1], got " +
                        std::to_string(r->R_T));
    }
  }
  if (const auto* in = std::get_if<InletPressure>(&left)) {
    if (!in->p_in) {
      throw DomainError("inlet pressure boundary without a pressure function");
    }
  }
}

std::function<double(double)> sinusoidal_pressure(double amplitude,
                                                  double period) {
  return [amplitude, period](double t) {
    return amplitude * std::sin(2.0 * std::numbers::pi * t / period);
  };
}

double free_riemann_invariant(double A, double u, int sign,
                              const VesselParams& params) {
  return u + sign * 4.0 * wave_speed(A, Side::Free, params, CatheterConfig{});
}

GhostStates ghost_states(const SimState& state, const BoundarySpec& spec,
                         double t, const VesselParams& params,
                         const CatheterConfig& cath) {
  const std::size_t n = state.cells();
  GhostStates g;

  std::visit(overloaded{
                 [&](const Neumann&) {
                   g.A_left = state.A_cath.front();
                   g.u_left = state.u_cath.front();
                 },
                 [&](const InletPressure& in) {
                   g.A_left = inverse_pressure(in.p_in(t), Side::Catheterized,
                                               params, cath);
                   g.u_left = state.u_cath.front();
                 },
             },
             spec.left);

  std::visit(overloaded{
                 [&](const Neumann&) {
                   g.A_right = state.A_free[n - 1];
                   g.u_right = state.u_free[n - 1];
                 },
                 [&](const Reflection& r) {
                   const double out_ref =
                       free_riemann_invariant(params.A0, 0.0, +1, params);
                   const double in_ref =
                       free_riemann_invariant(params.A0, 0.0, -1, params);
                   const double out = free_riemann_invariant(
                       state.A_free[n - 1], state.u_free[n - 1], +1, params);
                   const double in = in_ref - r.R_T * (out - out_ref);
                   const double c = (out - in) / 8.0;
                   if (!(c > 0.0)) {
                     throw DomainError(
                         "reflection boundary: characteristics cross, "
                         "no admissible ghost area");
                   }
                   const double scale = std::sqrt(params.beta / (2.0 * params.rho));
                   const double root = c / scale;  // A^{1/4}
                   g.u_right = 0.5 * (out + in);
                   g.A_right = root * root * root * root;
                 },
             },
             spec.right);

  std::visit(overloaded{
                 [&](const Neumann&) { g.w_left = state.w.front(); },
                 [&](const FixedVelocity& f) { g.w_left = f.w; },
             },
             spec.device_left);
  return g;
}

}  // namespace aspir8
