#include "aspir8/physio.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "aspir8/errors.hpp"

namespace aspir8 {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw DomainError(std::string(name) + " must be positive, got " +
                      std::to_string(value));
  }
}

double offset(Side side, const CatheterConfig& cath) {
  return side == Side::Catheterized ? cath.A_c : 0.0;
}

}  // namespace

VesselParams VesselParams::from_material(double A0, double E, double h0,
                                         double rho, double P_ext) {
  require_positive(A0, "A0");
  require_positive(E, "E");
  require_positive(h0, "h0");
  require_positive(rho, "rho");
  VesselParams p;
  p.A0 = A0;
  p.E = E;
  p.h0 = h0;
  p.rho = rho;
  p.P_ext = P_ext;
  p.beta = E * h0 * std::sqrt(std::numbers::pi) / A0;
  return p;
}

void VesselParams::validate() const {
  require_positive(A0, "A0");
  require_positive(beta, "beta");
  require_positive(rho, "rho");
  require_positive(E, "E");
  require_positive(h0, "h0");
}

void CatheterConfig::validate(const VesselParams& params) const {
  if (!(A_c >= 0.0)) {
    throw DomainError("A_c must be non-negative, got " + std::to_string(A_c));
  }
  if (!(A_c < params.A0)) {
    throw DomainError("A_c must be smaller than A0 (" +
                      std::to_string(params.A0) + "), got " +
                      std::to_string(A_c));
  }
}

double pressure(double A, Side side, const VesselParams& params,
                const CatheterConfig& cath) {
  if (!(A > 0.0)) {
    throw DomainError("pressure: area must be positive, got A = " +
                      std::to_string(A));
  }
  return params.beta * (std::sqrt(A + offset(side, cath)) - std::sqrt(params.A0));
}

double inverse_pressure(double p, Side side, const VesselParams& params,
                        const CatheterConfig& cath) {
  const double shift = offset(side, cath);
  const double root = p / params.beta + std::sqrt(params.A0);
  // root is sqrt(A + shift); it has to exceed sqrt(shift) for A > 0.
  if (!(root > std::sqrt(shift)) || !(root > 0.0)) {
    throw DomainError("inverse_pressure: p = " + std::to_string(p) +
                      " is outside the range of the tube law");
  }
  return root * root - shift;
}

double wave_speed(double A, Side side, const VesselParams& params,
                  const CatheterConfig& cath) {
  if (!(A > 0.0)) {
    throw DomainError("wave_speed: area must be positive, got A = " +
                      std::to_string(A));
  }
  const double scale = std::sqrt(params.beta / (2.0 * params.rho));
  if (side == Side::Free) {
    return scale * std::sqrt(std::sqrt(A));
  }
  return scale * std::sqrt(A) / std::sqrt(std::sqrt(A + cath.A_c));
}

double equilibrium_area(Side side, const VesselParams& params,
                        const CatheterConfig& cath) {
  return params.A0 - offset(side, cath);
}

}  // namespace aspir8
