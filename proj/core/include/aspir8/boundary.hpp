#pragma once

// Outer boundary conditions, imposed through one ghost cell per end.

#include <functional>
#include <variant>

#include "aspir8/physio.hpp"
#include "aspir8/state.hpp"

namespace aspir8 {

/// Homogeneous Neumann: the ghost copies the adjacent cell.
struct Neumann {};

/// Prescribed inlet pressure p_in(t) (gauge, dyne/cm^2) at x = -L. The ghost
/// area inverts the catheterized tube law; velocity is copied from the
/// interior.
struct InletPressure {
  std::function<double(double)> p_in;
};

/// Terminal reflection at x = +L:
///   W_in - W_in(ref) = -R_T (W_out - W_out(ref)),  W = u +/- 4 c(A),
/// with reference state (A0, u = 0).
struct Reflection {
  double R_T = 0.0;
};

/// Fixed device velocity at the catheter's far end.
struct FixedVelocity {
  double w = 0.0;
};

struct BoundarySpec {
  std::variant<Neumann, InletPressure> left = Neumann{};
  std::variant<Neumann, Reflection> right = Neumann{};
  std::variant<Neumann, FixedVelocity> device_left = Neumann{};

  /// Throws DomainError if R_T is outside [0, 1].
  void validate() const;
};

struct GhostStates {
  double A_left = 0.0;
  double u_left = 0.0;
  double A_right = 0.0;
  double u_right = 0.0;
  double w_left = 0.0;
};

/// p_in(t) = amplitude sin(2 pi t / period).
std::function<double(double)> sinusoidal_pressure(double amplitude,
                                                  double period = 1.0);

GhostStates ghost_states(const SimState& state, const BoundarySpec& spec,
                         double t, const VesselParams& params,
                         const CatheterConfig& cath);

/// Riemann invariants u + 4c(A) (sign = +1) and u - 4c(A) (sign = -1) of the
/// free-side system.
double free_riemann_invariant(double A, double u, int sign,
                              const VesselParams& params);

}  // namespace aspir8
