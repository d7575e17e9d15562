#include "aspir8/coupling.hpp"

#include <cmath>
#include <sstream>

namespace aspir8 {
namespace {

constexpr double kDegenerateDeviceArea = 1e-14;

std::string describe(const CouplingDiagnostics& d) {
  std::ostringstream os;
  os.precision(17);
  const TraceData& t = d.trace;
  os << " [lambda=" << d.lambda << " A_c=" << d.A_c
     << " discriminant=" << d.discriminant << " s0=" << d.s0
     << " s1=" << d.s1 << " trace=(" << t.A_minus << ", " << t.u_minus << ", "
     << t.vA_minus << ", " << t.vu_minus << ", " << t.w_minus << " | "
     << t.A_plus << ", " << t.u_plus << ", " << t.vA_plus << ", " << t.vu_plus
     << ")]";
  return os.str();
}

}  // namespace

std::optional<QuadraticRoots> solve_quadratic(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    return std::nullopt;
  }
  // Cancellation-free form: q = -(b + sign(b) sqrt(disc)) / 2, roots q/a, c/q.
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    // b == 0 and disc == 0, hence c == 0: double root at zero.
    return QuadraticRoots{0.0, 0.0};
  }
  double r1 = q / a;
  double r2 = c / q;
  if (std::abs(r2) > std::abs(r1)) {
    std::swap(r1, r2);
  }
  return QuadraticRoots{r2, r1};
}

double select_minimal_root(const QuadraticRoots& roots) {
  if (std::abs(roots.small) == std::abs(roots.large)) {
    return std::max(roots.small, roots.large);
  }
  return roots.small;
}

VelocityQuadratic velocity_quadratic(const TraceData& t, double A_R, double A_L,
                                     double A_c, double w_R, double lambda) {
  const double s0 = A_R * t.u_minus + A_c * w_R - A_L * t.u_plus;
  const double s1 = t.vu_minus + 0.5 * (t.u_plus * t.u_plus - t.u_minus * t.u_minus) -
                    t.vu_plus;
  const double ratio = A_L / A_R;
  VelocityQuadratic q{};
  q.s0 = s0;
  q.s1 = s1;
  q.a = 0.5 * (ratio * ratio - 1.0);
  q.b = lambda * (1.0 + ratio) + t.u_minus * ratio - t.u_plus -
        s0 * A_L / (A_R * A_R);
  q.c = (s0 / (2.0 * A_R) - lambda - t.u_minus) * s0 / A_R - s1;
  return q;
}

AreaCoupling solve_area_coupling(const TraceData& t, double lambda, double A_c,
                                 double w_R) {
  AreaCoupling out{};
  out.A_R = 0.5 * (t.A_minus + t.A_plus - A_c) +
            (t.vA_minus - t.vA_plus + A_c * w_R) / (2.0 * lambda);
  out.A_L = out.A_R + A_c;
  out.vA_R = 0.5 * (t.vA_minus + t.vA_plus - A_c * w_R) +
             0.5 * lambda * (t.A_minus - t.A_plus + A_c);
  out.vA_L = out.vA_R + A_c * w_R;
  if (!(out.A_R > 0.0)) {
    CouplingDiagnostics diag{t, lambda, A_c, 0.0, 0.0, 0.0};
    throw CouplingFailure("area coupling produced A_R = " +
                              std::to_string(out.A_R) +
                              " (vessel collapse at the tip)" + describe(diag),
                          diag);
  }
  return out;
}

VelocityCoupling solve_velocity_coupling(const TraceData& t, double A_R,
                                         double A_L, double w_R, double lambda,
                                         RiemannOptions options) {
  const double A_c = A_L - A_R;
  const VelocityQuadratic q = velocity_quadratic(t, A_R, A_L, A_c, w_R, lambda);

  double sigma_plus = 0.0;
  if (A_c < kDegenerateDeviceArea) {
    sigma_plus = q.b != 0.0 ? -q.c / q.b : 0.0;
  } else {
    double disc = q.b * q.b - 4.0 * q.a * q.c;
    if (disc < 0.0) {
      if (!options.clamp_negative_discriminant) {
        CouplingDiagnostics diag{t, lambda, A_c, disc, q.s0, q.s1};
        throw CouplingFailure("velocity coupling quadratic has no real root" +
                                  describe(diag),
                              diag);
      }
      sigma_plus = -q.b / (2.0 * q.a);
    } else {
      sigma_plus = select_minimal_root(*solve_quadratic(q.a, q.b, q.c));
    }
  }
  const double sigma_minus = q.s0 / A_R - (A_L / A_R) * sigma_plus;

  VelocityCoupling out{};
  out.u_R = t.u_minus - sigma_minus;
  out.vu_R = t.vu_minus + lambda * sigma_minus;
  out.u_L = t.u_plus + sigma_plus;
  out.vu_L = t.vu_plus + lambda * sigma_plus;
  return out;
}

double device_boundary_velocity(double w_minus) { return -std::abs(w_minus); }

CouplingData riemann_solve(const TraceData& trace, double lambda, double A_c,
                           RiemannOptions options) {
  if (!(trace.A_minus > 0.0) || !(trace.A_plus > 0.0)) {
    throw DomainError("riemann_solve: trace areas must be positive");
  }
  if (!(lambda > 0.0)) {
    throw DomainError("riemann_solve: lambda must be positive");
  }
  CouplingData out{};
  out.w_R = device_boundary_velocity(trace.w_minus);
  const AreaCoupling area = solve_area_coupling(trace, lambda, A_c, out.w_R);
  out.A_R = area.A_R;
  out.A_L = area.A_L;
  out.vA_R = area.vA_R;
  out.vA_L = area.vA_L;
  const VelocityCoupling vel =
      solve_velocity_coupling(trace, area.A_R, area.A_L, out.w_R, lambda, options);
  out.u_R = vel.u_R;
  out.u_L = vel.u_L;
  out.vu_R = vel.vu_R;
  out.vu_L = vel.vu_L;
  return out;
}

}  // namespace aspir8
