#pragma once

#include <optional>
#include <span>

#include "delone/geometry.hpp"
#include "delone/point_set.hpp"

namespace delone {

/// Finite window of a closed set, exact inside B_{window_radius}(0).
struct ClosedSetSample {
  PointList points;
  double window_radius = 0.0;
};

/// Sample of ps around `center`, re-expressed with center at the origin. The
/// radius defaults to the largest ball around center inside the reliable window.
ClosedSetSample sample_around(const PointSet& ps, const Point& center,
                              std::optional<double> radius = std::nullopt);

ClosedSetSample shifted(const ClosedSetSample& f, const Point& t);

/// min(1, Hausdorff distance); the empty set is at distance 1 from any
/// nonempty set and 0 from itself.
double hausdorff_capped(std::span<const Point> k1, std::span<const Point> k2);

/// sup over a ∈ A of dist(a, B); 0 for empty A, +∞ for empty B and nonempty A.
double directed_distance(std::span<const Point> a, std::span<const Point> b);

/// Cutoff pseudo-distance d_k. Throws WindowTooSmall unless both window
/// radii are at least k + 1.
double dk_distance(const ClosedSetSample& f, const ClosedSetSample& g, double k);

/// hausdorff_capped(F ∩ B_k, G ∩ B_k).
double hausdorff_truncated(const ClosedSetSample& f, const ClosedSetSample& g, double k);

/// d_k(F, G) ≤ eps.
bool in_neighborhood(const ClosedSetSample& f, const ClosedSetSample& g, double eps, double k);

/// Inverse stereographic projection onto S^d ⊂ ℝ^{d+1}; 0 goes to the south
/// pole.
Eigen::VectorXd stereo_embed(const Point& x);
/// The image (0, …, 0, 1) of the point at infinity.
Eigen::VectorXd stereo_infinity(int dim);

struct RhoDistance {
  double value = 0.0;
  /// |value − ρ(F, G)| for the full (unsampled) sets is at most this.
  double truncation_bound = 0.0;
};

/// Capped chordal Hausdorff distance between the embedded samples, each
/// augmented with the point at infinity. Throws WindowTooSmall if the
/// truncation bound 2/√(1+W²) exceeds max_truncation.
RhoDistance rho_metric(const ClosedSetSample& f, const ClosedSetSample& g,
                       double max_truncation = 0.25);

/// Smallest translation t (|t| ≤ delta) with (ω1 + t) ∩ B_L = ω2 ∩ B_L, if any.
/// Throws WindowTooSmall unless both reliable windows cover B_{L+δ}.
std::optional<Point> local_match(const PointSet& w1, const PointSet& w2, double L, double delta,
                                 double eps = kQuantEps);

}  // namespace delone
