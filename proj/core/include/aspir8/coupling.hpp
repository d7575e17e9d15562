#pragma once

// Riemann solver at the catheter tip.
//
// The left (catheterized) and right (free) traces are connected to coupling
// data along the Lax curves of the linear relaxation system,
//
//   left:  (z1 - s, z2 + lambda s),   right: (z1 + s, z2 + lambda s),
//
// subject to the coupling conditions
//
//   A_L = A_R + A_c                     (gross area continuity)
//   A_R u_R + A_c w_R = A_L u_L         (mean velocity continuity)
//   vA_L = vA_R + A_c w_R
//   vu_L = vu_R + (u_L^2 - u_R^2) / 2.
//
// "R" data is handed to the catheterized side, "L" data to the free side.

#include <optional>

#include "aspir8/errors.hpp"

namespace aspir8 {

struct TraceData {
  double A_minus = 0.0;
  double u_minus = 0.0;
  double vA_minus = 0.0;
  double vu_minus = 0.0;
  double w_minus = 0.0;
  double A_plus = 0.0;
  double u_plus = 0.0;
  double vA_plus = 0.0;
  double vu_plus = 0.0;

  bool operator==(const TraceData&) const = default;
};

struct CouplingData {
  double A_R = 0.0;
  double u_R = 0.0;
  double vA_R = 0.0;
  double vu_R = 0.0;
  double w_R = 0.0;
  double A_L = 0.0;
  double u_L = 0.0;
  double vA_L = 0.0;
  double vu_L = 0.0;

  bool operator==(const CouplingData&) const = default;
};

struct AreaCoupling {
  double A_R;
  double A_L;
  double vA_R;
  double vA_L;
};

struct VelocityCoupling {
  double u_R;
  double u_L;
  double vu_R;
  double vu_L;
};

/// Diagnostics attached to a failed interface solve.
struct CouplingDiagnostics {
  TraceData trace;
  double lambda = 0.0;
  double A_c = 0.0;
  double discriminant = 0.0;
  double s0 = 0.0;
  double s1 = 0.0;
};

class CouplingFailure : public SolverError {
 public:
  CouplingFailure(const std::string& what, CouplingDiagnostics diag)
      : SolverError(what), diagnostics_(diag) {}
  const CouplingDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  CouplingDiagnostics diagnostics_;
};

struct RiemannOptions {
  // Replace a negative discriminant by zero instead of failing. Exploratory
  // runs only: the resulting data no longer satisfies the coupling exactly.
  bool clamp_negative_discriminant = false;
};

/// Real roots of a x^2 + b x + c = 0 (a != 0), ordered so that
/// |first| <= |second|. nullopt when the discriminant is negative.
struct QuadraticRoots {
  double small;
  double large;
};
std::optional<QuadraticRoots> solve_quadratic(double a, double b, double c);

/// Root of minimal absolute value; equal magnitudes resolve to the
/// non-negative root.
double select_minimal_root(const QuadraticRoots& roots);

/// Coefficients (a, b, c) of the quadratic in the right-side Lax parameter.
struct VelocityQuadratic {
  double a;
  double b;
  double c;
  double s0;
  double s1;
};
VelocityQuadratic velocity_quadratic(const TraceData& trace, double A_R,
                                     double A_L, double A_c, double w_R,
                                     double lambda);

/// Closed-form area coupling. Throws CouplingFailure if A_R <= 0.
AreaCoupling solve_area_coupling(const TraceData& trace, double lambda,
                                 double A_c, double w_R);

/// Velocity coupling through the quadratic in the right-side Lax parameter.
/// For A_c below 1e-14 the quadratic degenerates and the linear equation is
/// solved instead.
VelocityCoupling solve_velocity_coupling(const TraceData& trace, double A_R,
                                         double A_L, double w_R, double lambda,
                                         RiemannOptions options = {});

/// Boundary datum for the device: w_R = -|w_minus|.
double device_boundary_velocity(double w_minus);

CouplingData riemann_solve(const TraceData& trace, double lambda, double A_c,
                           RiemannOptions options = {});

}  // namespace aspir8
