#include "delone/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "delone/error.hpp"

namespace delone {

std::size_t PointIndex::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 0;
  for (auto v : k) {
    // splitmix64 finaliser per coordinate
    std::uint64_t z = (h ^ static_cast<std::uint64_t>(v)) + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h = z ^ (z >> 31);
  }
  return static_cast<std::size_t>(h);
}

PointIndex::PointIndex(std::span<const Point> points, double cell_size)
    : points_(points.begin(), points.end()), cell_(cell_size > 0 ? cell_size : 1.0) {
  if (points_.empty()) return;
  dim_ = static_cast<int>(points_.front().size());
  if (dim_ > kMaxDim)
    throw Error(Errc::InvalidSpec, "spatial index supports dimension up to " + std::to_string(kMaxDim));
  bbox_lo_ = points_.front();
  bbox_hi_ = points_.front();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    bbox_lo_ = bbox_lo_.cwiseMin(points_[i]);
    bbox_hi_ = bbox_hi_.cwiseMax(points_[i]);
    buckets_[key_of(points_[i])].push_back(i);
  }
}

PointIndex::Key PointIndex::key_of(const Point& p) const {
  Key k{};
  for (int i = 0; i < dim_; ++i) k[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(p(i) / cell_));
  return k;
}

void PointIndex::collect_box(const Point& lo, const Point& hi, std::vector<std::size_t>& out) const {
  if (points_.empty()) return;
  const Point clo = lo.cwiseMax(bbox_lo_);
  const Point chi = hi.cwiseMin(bbox_hi_);
  if ((clo.array() > chi.array()).any()) return;
  const Key klo = key_of(clo);
  const Key khi = key_of(chi);
  std::int64_t cells = 1;
  for (int i = 0; i < dim_; ++i) cells *= khi[static_cast<std::size_t>(i)] - klo[static_cast<std::size_t>(i)] + 1;
  if (static_cast<std::size_t>(cells) > 4 * buckets_.size()) {
    // Sparse relative to the query: scanning buckets is cheaper.
    for (const auto& [key, ids] : buckets_) {
      bool in = true;
      for (int i = 0; i < dim_ && in; ++i)
        in = key[static_cast<std::size_t>(i)] >= klo[static_cast<std::size_t>(i)] &&
             key[static_cast<std::size_t>(i)] <= khi[static_cast<std::size_t>(i)];
      if (in) out.insert(out.end(), ids.begin(), ids.end());
    }
    return;
  }
  Key k = klo;
  while (true) {
    if (auto it = buckets_.find(k); it != buckets_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    int i = 0;
    for (; i < dim_; ++i) {
      auto& ki = k[static_cast<std::size_t>(i)];
      if (ki < khi[static_cast<std::size_t>(i)]) {
        ++ki;
        break;
      }
      ki = klo[static_cast<std::size_t>(i)];
    }
    if (i == dim_) break;
  }
}

std::vector<std::size_t> PointIndex::within(const Point& center, double radius, double eps) const {
  std::vector<std::size_t> cand, out;
  const double rr = radius + eps;
  collect_box((center.array() - rr).matrix(), (center.array() + rr).matrix(), cand);
  for (auto i : cand)
    if ((points_[i] - center).norm() <= rr) out.push_back(i);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> PointIndex::inside(const Region& region, double eps) const {
  std::vector<std::size_t> cand, out;
  const Box bb = region.bounding_box();
  collect_box((bb.lo.array() - eps).matrix(), (bb.hi.array() + eps).matrix(), cand);
  for (auto i : cand)
    if (region.contains(points_[i], eps)) out.push_back(i);
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<std::size_t, double> PointIndex::nearest(const Point& q) const {
  if (points_.empty()) return {npos, std::numeric_limits<double>::infinity()};
  const double diag = (bbox_hi_ - bbox_lo_).norm() + (q - bbox_lo_).norm() + cell_;
  for (double rad = cell_;; rad *= 2.0) {
    const auto ids = within(q, rad, 0.0);
    if (!ids.empty()) {
      std::size_t best = ids.front();
      double bd = (points_[best] - q).norm();
      for (auto i : ids) {
        const double d = (points_[i] - q).norm();
        if (d < bd) {
          bd = d;
          best = i;
        }
      }
      return {best, bd};
    }
    if (rad > diag) break;
  }
  return {npos, std::numeric_limits<double>::infinity()};
}

}  // namespace delone
