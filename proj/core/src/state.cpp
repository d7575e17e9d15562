#include "aspir8/state.hpp"

#include <cmath>
#include <string>

#include "aspir8/errors.hpp"

namespace aspir8 {

Grid::Grid(std::size_t cells, double length) : N(cells), half_length(length) {
  if (N < 2) {
    throw DomainError("Grid: need at least two cells per segment, got " +
                      std::to_string(N));
  }
  if (!(half_length > 0.0)) {
    throw DomainError("Grid: segment length must be positive");
  }
}

double Grid::cath_center(std::size_t i) const {
  return -half_length + (static_cast<double>(i) + 0.5) * dx();
}

double Grid::free_center(std::size_t i) const {
  return (static_cast<double>(i) + 0.5) * dx();
}

void SimState::validate() const {
  const std::size_t n = A_cath.size();
  if (n < 2 || u_cath.size() != n || w.size() != n || A_free.size() != n ||
      u_free.size() != n) {
    throw DomainError("SimState: inconsistent array lengths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(A_cath[i] > 0.0)) {
      throw DomainError("SimState: non-positive area in catheterized cell " +
                        std::to_string(i));
    }
    if (!(A_free[i] > 0.0)) {
      throw DomainError("SimState: non-positive area in free cell " +
                        std::to_string(i));
    }
  }
}

SimState SimState::uniform(std::size_t N, double A_cath, double u_cath,
                           double w, double A_free, double u_free) {
  SimState s;
  s.A_cath.assign(N, A_cath);
  s.u_cath.assign(N, u_cath);
  s.w.assign(N, w);
  s.A_free.assign(N, A_free);
  s.u_free.assign(N, u_free);
  return s;
}

}  // namespace aspir8
