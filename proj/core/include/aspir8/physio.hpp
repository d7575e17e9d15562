#pragma once

// Vessel parameters, tube laws and characteristic speeds of the catheterized
// vessel model. All quantities are CGS (cm, g, s, dyne).

namespace aspir8 {

struct VesselParams {
  double A0 = 0.0;     // reference cross-section area, cm^2
  double beta = 0.0;   // wall stiffness, dyne/cm^3
  double rho = 0.0;    // blood density, g/cm^3
  double E = 0.0;      // Young modulus, dyne/cm^2
  double h0 = 0.0;     // wall thickness, cm
  double P_ext = 0.0;  // external pressure, dyne/cm^2 (stored, never enters a flux)

  /// Builds parameters with beta = E h0 sqrt(pi) / A0. Throws DomainError on
  /// non-positive inputs.
  static VesselParams from_material(double A0, double E, double h0, double rho,
                                    double P_ext = 0.0);

  /// Checks the positivity invariants; throws DomainError naming the field.
  void validate() const;
};

struct CatheterConfig {
  double A_c = 0.0;               // device cross-section area, cm^2
  double tip_position = 0.0;      // cm
  double suction_velocity = 0.0;  // cm/s, <= 0 for aspiration

  /// Requires 0 <= A_c < A0.
  void validate(const VesselParams& params) const;
};

/// Selects the tube law: p^1 left of the tip, p^2 right of it.
enum class Side { Catheterized, Free };

/// Gauge pressure Phi(A): beta (sqrt(A + A_c) - sqrt(A0)) on the catheterized
/// side, beta (sqrt(A) - sqrt(A0)) on the free side.
double pressure(double A, Side side, const VesselParams& params,
                const CatheterConfig& cath);

/// Closed-form inverse of pressure(). The admissible range is
/// p > beta (sqrt(A_c) - sqrt(A0)) (catheterized) and p > -beta sqrt(A0) (free).
double inverse_pressure(double p, Side side, const VesselParams& params,
                        const CatheterConfig& cath);

/// Characteristic speed c(A) of the (A, u) system on the given side.
double wave_speed(double A, Side side, const VesselParams& params,
                  const CatheterConfig& cath);

/// Net area on the given side that carries the reference (zero) pressure.
double equilibrium_area(Side side, const VesselParams& params,
                        const CatheterConfig& cath);

}  // namespace aspir8
