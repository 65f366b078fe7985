#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "delone/geometry.hpp"

namespace delone {

/// Uniform bucket grid over a fixed point list. Queries return indices into the
/// list in ascending order, so callers iterate deterministically. Dimension at
/// most kMaxDim.
class PointIndex {
public:
  PointIndex() = default;
  PointIndex(std::span<const Point> points, double cell_size);

  /// Indices of points p with ‖p − center‖ ≤ radius + eps.
  std::vector<std::size_t> within(const Point& center, double radius, double eps = kQuantEps) const;
  /// Indices of points inside the (eps-inflated) region.
  std::vector<std::size_t> inside(const Region& region, double eps = kQuantEps) const;
  /// Index of the nearest point and its distance; index is npos when empty.
  std::pair<std::size_t, double> nearest(const Point& q) const;

  std::size_t size() const { return points_.size(); }
  const Point& point(std::size_t i) const { return points_[i]; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  static constexpr int kMaxDim = 4;

private:
  using Key = std::array<std::int64_t, kMaxDim>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  Key key_of(const Point& p) const;
  void collect_box(const Point& lo, const Point& hi, std::vector<std::size_t>& out) const;

  std::vector<Point> points_;
  double cell_ = 1.0;
  int dim_ = 0;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets_;
  Point bbox_lo_, bbox_hi_;
};

}  // namespace delone
