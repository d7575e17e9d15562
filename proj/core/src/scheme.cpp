#include "aspir8/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace aspir8 {
namespace {

std::vector<double> pressures(const std::vector<double>& A, Side side,
                              const VesselParams& params,
                              const CatheterConfig& cath) {
  std::vector<double> p(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) {
    p[i] = pressure(A[i], side, params, cath);
  }
  return p;
}

void update(std::vector<double>& q, const std::vector<double>& flux,
            double ratio) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] -= ratio * (flux[i + 1] - flux[i]);
  }
}

void check_positive(const std::vector<double>& A, const char* segment,
                    double t) {
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (!(A[i] > 0.0) || !std::isfinite(A[i])) {
      throw StepFailure("positivity lost in " + std::string(segment) +
                            " cell " + std::to_string(i) +
                            " (A = " + std::to_string(A[i]) + ")",
                        t);
    }
  }
}

}  // namespace

FluxSet::FluxSet(std::size_t cells)
    : F_cath(cells + 1, 0.0),
      G_cath(cells + 1, 0.0),
      H(cells + 1, 0.0),
      F_free(cells + 1, 0.0),
      G_free(cells + 1, 0.0) {}

double central_area_flux(double A_l, double u_l, double A_r, double u_r,
                         double lambda) {
  return 0.5 * (A_l * u_l + A_r * u_r) - 0.5 * lambda * (A_r - A_l);
}

double central_velocity_flux(double u_l, double p_l, double u_r, double p_r,
                             double rho, double lambda) {
  return 0.25 * (u_l * u_l + u_r * u_r) + (p_l + p_r) / (2.0 * rho) -
         0.5 * lambda * (u_r - u_l);
}

double central_device_flux(double w_l, double w_r, double lambda) {
  return 0.25 * (w_l * w_l + w_r * w_r) - 0.5 * lambda * (w_r - w_l);
}

FluxSet interior_fluxes(const SimState& state, double lambda,
                        const VesselParams& params, const CatheterConfig& cath) {
  const std::size_t n = state.cells();
  FluxSet f(n);
  const auto p1 = pressures(state.A_cath, Side::Catheterized, params, cath);
  const auto p2 = pressures(state.A_free, Side::Free, params, cath);
  for (std::size_t k = 1; k < n; ++k) {
    f.F_cath[k] = central_area_flux(state.A_cath[k - 1], state.u_cath[k - 1],
                                    state.A_cath[k], state.u_cath[k], lambda);
    f.G_cath[k] = central_velocity_flux(state.u_cath[k - 1], p1[k - 1],
                                        state.u_cath[k], p1[k], params.rho,
                                        lambda);
    f.H[k] = central_device_flux(state.w[k - 1], state.w[k], lambda);
    f.F_free[k] = central_area_flux(state.A_free[k - 1], state.u_free[k - 1],
                                    state.A_free[k], state.u_free[k], lambda);
    f.G_free[k] = central_velocity_flux(state.u_free[k - 1], p2[k - 1],
                                        state.u_free[k], p2[k], params.rho,
                                        lambda);
  }
  return f;
}

void boundary_fluxes(FluxSet& f, const SimState& state, const GhostStates& g,
                     double lambda, const VesselParams& params,
                     const CatheterConfig& cath) {
  const std::size_t n = state.cells();
  const double A0 = state.A_cath.front();
  const double u0 = state.u_cath.front();
  f.F_cath[0] = central_area_flux(g.A_left, g.u_left, A0, u0, lambda);
  f.G_cath[0] = central_velocity_flux(
      g.u_left, pressure(g.A_left, Side::Catheterized, params, cath), u0,
      pressure(A0, Side::Catheterized, params, cath), params.rho, lambda);
  f.H[0] = central_device_flux(g.w_left, state.w.front(), lambda);

  const double An = state.A_free[n - 1];
  const double un = state.u_free[n - 1];
  f.F_free[n] = central_area_flux(An, un, g.A_right, g.u_right, lambda);
  f.G_free[n] = central_velocity_flux(
      un, pressure(An, Side::Free, params, cath), g.u_right,
      pressure(g.A_right, Side::Free, params, cath), params.rho, lambda);
}

TraceData interface_traces(const SimState& state, const VesselParams& params,
                           const CatheterConfig& cath) {
  const std::size_t n = state.cells();
  TraceData t;
  t.A_minus = state.A_cath[n - 1];
  t.u_minus = state.u_cath[n - 1];
  t.vA_minus = t.A_minus * t.u_minus;
  t.vu_minus = pressure(t.A_minus, Side::Catheterized, params, cath) / params.rho +
               0.5 * t.u_minus * t.u_minus;
  t.w_minus = state.w[n - 1];
  t.A_plus = state.A_free.front();
  t.u_plus = state.u_free.front();
  t.vA_plus = t.A_plus * t.u_plus;
  t.vu_plus = pressure(t.A_plus, Side::Free, params, cath) / params.rho +
              0.5 * t.u_plus * t.u_plus;
  return t;
}

InterfaceFluxes interface_fluxes(const SimState& state, const CouplingData& cpl,
                                 double lambda, const VesselParams& params,
                                 const CatheterConfig& cath) {
  const TraceData t = interface_traces(state, params, cath);
  InterfaceFluxes f;
  f.F1 = 0.5 * (t.vA_minus + cpl.vA_R) - 0.5 * lambda * (cpl.A_R - t.A_minus);
  f.F2 = 0.5 * (cpl.vA_L + t.vA_plus) - 0.5 * lambda * (t.A_plus - cpl.A_L);
  f.G1 = 0.5 * (t.vu_minus + cpl.vu_R) - 0.5 * lambda * (cpl.u_R - t.u_minus);
  f.G2 = 0.5 * (cpl.vu_L + t.vu_plus) - 0.5 * lambda * (t.u_plus - cpl.u_L);
  f.H = central_device_flux(t.w_minus, cpl.w_R, lambda);
  return f;
}

double compute_lambda(const SimState& state, const VesselParams& params,
                      const CatheterConfig& cath) {
  double lambda = 0.0;
  for (std::size_t i = 0; i < state.cells(); ++i) {
    const double c1 = wave_speed(state.A_cath[i], Side::Catheterized, params, cath);
    const double c2 = wave_speed(state.A_free[i], Side::Free, params, cath);
    lambda = std::max({lambda, std::abs(state.u_cath[i] + c1),
                       std::abs(state.u_cath[i] - c1),
                       std::abs(state.u_free[i] + c2),
                       std::abs(state.u_free[i] - c2), std::abs(state.w[i])});
  }
  return lambda;
}

StepReport advance(SimState& state, const Grid& grid, const BoundarySpec& bc,
                   const VesselParams& params, const CatheterConfig& cath,
                   const StepOptions& options, std::optional<double> max_dt) {
  StepReport report;
  report.lambda = compute_lambda(state, params, cath);
  report.dt = options.cfl * grid.dx() / report.lambda;
  if (max_dt && *max_dt <= report.dt) {
    report.dt = *max_dt;
    report.truncated = true;
  }
  const double lambda = report.lambda;

  FluxSet f = interior_fluxes(state, lambda, params, cath);
  try {
    boundary_fluxes(f, state, ghost_states(state, bc, state.t, params, cath),
                    lambda, params, cath);
  } catch (const DomainError& e) {
    throw StepFailure(std::string("boundary: ") + e.what(), state.t);
  }

  try {
    report.coupling = riemann_solve(interface_traces(state, params, cath), lambda,
                                    cath.A_c, options.riemann);
  } catch (const CouplingFailure& e) {
    throw StepFailure(std::string("interface: ") + e.what(), state.t,
                      e.diagnostics());
  }
  const InterfaceFluxes tip =
      interface_fluxes(state, report.coupling, lambda, params, cath);
  const std::size_t n = state.cells();
  f.F_cath[n] = tip.F1;
  f.G_cath[n] = tip.G1;
  f.H[n] = tip.H;
  f.F_free[0] = tip.F2;
  f.G_free[0] = tip.G2;

  report.F_left = f.F_cath[0];
  report.F_right = f.F_free[n];
  report.F_tip_cath = tip.F1;
  report.F_tip_free = tip.F2;

  SimState next = state;
  const double ratio = report.dt / grid.dx();
  update(next.A_cath, f.F_cath, ratio);
  update(next.u_cath, f.G_cath, ratio);
  update(next.w, f.H, ratio);
  update(next.A_free, f.F_free, ratio);
  update(next.u_free, f.G_free, ratio);
  check_positive(next.A_cath, "catheterized", state.t);
  check_positive(next.A_free, "free", state.t);
  next.t = state.t + report.dt;
  state = std::move(next);
  return report;
}

SimState step(const SimState& state, const Grid& grid, const BoundarySpec& bc,
              const VesselParams& params, const CatheterConfig& cath,
              const StepOptions& options) {
  SimState next = state;
  advance(next, grid, bc, params, cath, options);
  return next;
}

SimState run(SimState state, const Grid& grid, const BoundarySpec& bc,
             const VesselParams& params, const CatheterConfig& cath,
             double t_end, const RunHooks& hooks, const StepOptions& options) {
  if (t_end < state.t) {
    throw DomainError("run: t_end precedes the initial time");
  }
  std::vector<double> pending = hooks.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snapshot = 0;
  auto fire = [&] {
    while (next_snapshot < pending.size() && pending[next_snapshot] <= state.t) {
      if (hooks.on_snapshot) {
        hooks.on_snapshot(pending[next_snapshot], state);
      }
      ++next_snapshot;
    }
  };

  fire();
  while (state.t < t_end) {
    StepReport report;
    try {
      report = advance(state, grid, bc, params, cath, options, t_end - state.t);
    } catch (const StepFailure& e) {
      throw StepFailure("t = " + std::to_string(e.time()) + " s: " + e.what(),
                        e.time(), e.coupling());
    }
    if (report.truncated) {
      state.t = t_end;  // absorb round-off in t + (t_end - t)
    }
    if (hooks.on_step) {
      hooks.on_step(report, state);
    }
    fire();
  }
  return state;
}

}  // namespace aspir8
