#pragma once

#include <string>

#include "delone/geometry.hpp"
#include "delone/spatial_index.hpp"

namespace delone {

/// Finite window sample of an ideal Delone set.
///
/// `window` is the raw window: every point of the ideal set inside it is
/// stored. Data is trusted only on the reliable window, the raw window shrunk
/// by `margin`; operations that need radius-s neighbourhoods check against it.
/// `r` and `R` are the declared packing and covering constants.
class PointSet {
public:
  PointSet() = default;
  PointSet(int dim, PointList points, Box window, double margin, double r, double R,
           std::string provenance);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const PointList& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const Box& window() const { return window_; }
  Region raw_window() const { return Region(window_); }
  Region reliable_window() const { return Region(window_).shrunk(margin_); }
  double margin() const { return margin_; }
  double r() const { return r_; }
  double R() const { return R_; }
  const std::string& provenance() const { return provenance_; }
  const PointIndex& index() const { return index_; }

  /// True when q lies inside the reliable window.
  bool margin_allows(const Region& q, double eps = kQuantEps) const {
    const Region raw = raw_window();
    return raw.can_shrink(margin_) && raw.shrunk(margin_).contains(q, eps);
  }

  /// Index of the stored point equal to p within eps, or npos.
  std::size_t find(const Point& p, double eps = kQuantEps) const;

  PointSet with_constants(double r, double R) const;

private:
  int dim_ = 0;
  PointList points_;
  Box window_;
  double margin_ = 0.0;
  double r_ = 0.0;
  double R_ = 0.0;
  std::string provenance_;
  PointIndex index_;
};

}  // namespace delone
