#pragma once

#include <cmath>

#include <Eigen/Core>

namespace delone {

// Single comparator for coordinate equality, membership and class equality.
inline constexpr double kQuantEps = 1e-9;
// Vertex merging and halfplane incidence in Voronoi clipping.
inline constexpr double kGeoEps = 1e-9;

inline bool approx_equal(double a, double b, double eps = kQuantEps) {
  return std::abs(a - b) <= eps;
}

template <typename A, typename B>
bool approx_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b,
                  double eps = kQuantEps) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (std::abs(a(i) - b(i)) > eps) return false;
  return true;
}

/// Lexicographic three-way comparison with quantized coordinates: the first
/// coordinate that differs by more than eps decides.
template <typename A, typename B>
int lex_compare(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b,
                double eps = kQuantEps) {
  const Eigen::Index n = std::min(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = a(i) - b(i);
    if (d < -eps) return -1;
    if (d > eps) return 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

/// Strict lexicographic order on raw coordinates (no tolerance); a valid
/// strict weak ordering, used for sorting.
struct LexLess {
  template <typename A, typename B>
  bool operator()(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) const {
    const Eigen::Index n = std::min(a.size(), b.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      if (a(i) < b(i)) return true;
      if (a(i) > b(i)) return false;
    }
    return a.size() < b.size();
  }
};

}  // namespace delone
