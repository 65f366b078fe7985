#include "delone/point_set.hpp"

#include <algorithm>
#include <cmath>

#include "delone/error.hpp"

namespace delone {

namespace {

double index_cell(const PointList& pts, const Box& window, double R) {
  if (R > 0.0) return R;
  if (pts.empty()) return 1.0;
  const double vol = (window.hi - window.lo).prod();
  return std::pow(vol / static_cast<double>(pts.size()), 1.0 / static_cast<double>(window.lo.size()));
}

}  // namespace

PointSet::PointSet(int dim, PointList points, Box window, double margin, double r, double R,
                   std::string provenance)
    : dim_(dim), points_(std::move(points)), window_(std::move(window)), margin_(margin), r_(r), R_(R),
      provenance_(std::move(provenance)) {
  if (dim_ <= 0) throw Error(Errc::InvalidSpec, "point set dimension must be positive");
  if (window_.lo.size() != dim_ || window_.hi.size() != dim_)
    throw Error(Errc::InvalidSpec, "window dimension does not match point set dimension");
  if (margin_ < 0.0) throw Error(Errc::InvalidSpec, "margin must be nonnegative");
  for (const auto& p : points_) {
    if (p.size() != dim_) throw Error(Errc::InvalidSpec, "point dimension does not match point set dimension");
    if (!is_finite(p)) throw Error(Errc::InvalidSpec, "non-finite coordinate");
  }
  std::sort(points_.begin(), points_.end(), LexLess{});
  index_ = PointIndex(points_, index_cell(points_, window_, R_));
}

std::size_t PointSet::find(const Point& p, double eps) const {
  if (p.size() != dim_) return PointIndex::npos;
  const auto ids = index_.within(p, 0.0, eps);
  return ids.empty() ? PointIndex::npos : ids.front();
}

PointSet PointSet::with_constants(double r, double R) const {
  return PointSet(dim_, points_, window_, margin_, r, R, provenance_);
}

}  // namespace delone
