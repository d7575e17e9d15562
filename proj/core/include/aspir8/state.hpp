#pragma once

#include <cstddef>
#include <vector>

namespace aspir8 {

/// Two segments of equal length meeting at the catheter tip x = 0: the
/// catheterized segment [-L, 0] and the free segment [0, L], N cells each.
struct Grid {
  std::size_t N = 0;
  double half_length = 5.0;  // cm

  Grid() = default;
  explicit Grid(std::size_t cells, double length = 5.0);

  double dx() const { return half_length / static_cast<double>(N); }
  /// Center of catheterized cell i (i = 0 at x = -L, i = N-1 touches the tip).
  double cath_center(std::size_t i) const;
  /// Center of free cell i (i = 0 touches the tip).
  double free_center(std::size_t i) const;
};

/// Cell averages of both segments. Face k of a segment separates cells k-1
/// and k; the tip is face N of the catheterized segment and face 0 of the free
/// segment.
struct SimState {
  double t = 0.0;
  std::vector<double> A_cath;  // net area, catheterized segment
  std::vector<double> u_cath;
  std::vector<double> w;       // device velocity, catheterized segment only
  std::vector<double> A_free;
  std::vector<double> u_free;

  std::size_t cells() const { return A_cath.size(); }

  /// Checks array lengths and area positivity; throws DomainError.
  void validate() const;

  static SimState uniform(std::size_t N, double A_cath, double u_cath, double w,
                          double A_free, double u_free);

  bool operator==(const SimState&) const = default;
};

}  // namespace aspir8
