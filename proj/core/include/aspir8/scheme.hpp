#pragma once

// Central relaxation finite-volume scheme on the two-segment vessel.
//
// Every step uses a single global relaxation speed
//   lambda = max_j { |u_j +/- c_j|, |w_j| },   dt = cfl * dx / lambda,
// and a forward-Euler conservative update of A, u and w. The fluxes at the
// tip are built from the interface Riemann solver's coupling data.

#include <functional>
#include <optional>
#include <vector>

#include "aspir8/boundary.hpp"
#include "aspir8/coupling.hpp"
#include "aspir8/physio.hpp"
#include "aspir8/state.hpp"

namespace aspir8 {

/// Face fluxes, N + 1 per segment. F_cath[N] and F_free[0] are the two
/// one-sided values at the tip; H[N] is the device flux at the tip.
struct FluxSet {
  std::vector<double> F_cath;
  std::vector<double> G_cath;
  std::vector<double> H;
  std::vector<double> F_free;
  std::vector<double> G_free;

  explicit FluxSet(std::size_t cells = 0);
};

struct InterfaceFluxes {
  double F1 = 0.0;  // catheterized side
  double F2 = 0.0;  // free side
  double G1 = 0.0;
  double G2 = 0.0;
  double H = 0.0;
};

double central_area_flux(double A_l, double u_l, double A_r, double u_r,
                         double lambda);
double central_velocity_flux(double u_l, double p_l, double u_r, double p_r,
                             double rho, double lambda);
double central_device_flux(double w_l, double w_r, double lambda);

/// Fluxes at faces 1..N-1 of both segments. Boundary and tip faces are left
/// at zero.
FluxSet interior_fluxes(const SimState& state, double lambda,
                        const VesselParams& params, const CatheterConfig& cath);

/// Fills face 0 of the catheterized segment (and device) and face N of the
/// free segment from ghost states.
void boundary_fluxes(FluxSet& fluxes, const SimState& state,
                     const GhostStates& ghosts, double lambda,
                     const VesselParams& params, const CatheterConfig& cath);

/// Trace tuple fed to the Riemann solver: the cells adjacent to the tip and
/// their physical fluxes in place of the relaxation variables.
TraceData interface_traces(const SimState& state, const VesselParams& params,
                           const CatheterConfig& cath);

InterfaceFluxes interface_fluxes(const SimState& state, const CouplingData& cpl,
                                 double lambda, const VesselParams& params,
                                 const CatheterConfig& cath);

double compute_lambda(const SimState& state, const VesselParams& params,
                      const CatheterConfig& cath);

struct StepOptions {
  double cfl = 0.9;
  RiemannOptions riemann;
};

struct StepReport {
  double dt = 0.0;
  double lambda = 0.0;
  bool truncated = false;
  // Mass-flux bookkeeping for the net area.
  double F_left = 0.0;
  double F_right = 0.0;
  double F_tip_cath = 0.0;
  double F_tip_free = 0.0;
  CouplingData coupling;
};

class StepFailure : public SolverError {
 public:
  StepFailure(const std::string& what, double t,
              std::optional<CouplingDiagnostics> coupling = std::nullopt)
      : SolverError(what), time_(t), coupling_(coupling) {}
  double time() const { return time_; }
  const std::optional<CouplingDiagnostics>& coupling() const { return coupling_; }

 private:
  double time_;
  std::optional<CouplingDiagnostics> coupling_;
};

/// Advances `state` in place by one step; dt is capped at max_dt (the step is
/// then flagged as truncated). Throws StepFailure on positivity loss or
/// interface failure; `state` is left untouched in that case.
StepReport advance(SimState& state, const Grid& grid, const BoundarySpec& bc,
                   const VesselParams& params, const CatheterConfig& cath,
                   const StepOptions& options = {},
                   std::optional<double> max_dt = std::nullopt);

SimState step(const SimState& state, const Grid& grid, const BoundarySpec& bc,
              const VesselParams& params, const CatheterConfig& cath,
              const StepOptions& options = {});

struct RunHooks {
  /// Requested output times; each fires once, at the first state with
  /// t >= requested time.
  std::vector<double> snapshot_times;
  std::function<void(double requested, const SimState&)> on_snapshot;
  std::function<void(const StepReport&, const SimState&)> on_step;
};

/// Steps until t_end; only the final step is shortened to land on t_end.
SimState run(SimState initial, const Grid& grid, const BoundarySpec& bc,
             const VesselParams& params, const CatheterConfig& cath,
             double t_end, const RunHooks& hooks = {},
             const StepOptions& options = {});

}  // namespace aspir8
