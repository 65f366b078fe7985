#pragma once

#include <variant>
#include <vector>

#include <Eigen/Core>

#include "delone/tolerance.hpp"

namespace delone {

using Point = Eigen::VectorXd;
using PointList = std::vector<Point>;

/// Point with all coordinates finite.
bool is_finite(const Point& p);

inline Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p(i++) = c;
  return p;
}

struct Ball {
  Point center;
  double radius = 0.0;
};

struct Box {
  Point lo;
  Point hi;
};

/// Closed ball or axis-aligned closed box. Membership and containment tests
/// inflate the region by the given tolerance.
class Region {
public:
  Region(Ball b);
  Region(Box b);

  static Region ball(Point center, double radius) { return Region(Ball{std::move(center), radius}); }
  static Region box(Point lo, Point hi) { return Region(Box{std::move(lo), std::move(hi)}); }
  /// Cube [lo, hi]^dim.
  static Region cube(int dim, double lo, double hi);

  bool is_ball() const { return std::holds_alternative<Ball>(shape_); }
  bool is_box() const { return std::holds_alternative<Box>(shape_); }
  const Ball& as_ball() const { return std::get<Ball>(shape_); }
  const Box& as_box() const { return std::get<Box>(shape_); }

  int dim() const;
  double volume() const;
  double diameter() const;
  /// Lexicographically smallest vertex of a box, or the center of a ball.
  Point anchor() const;
  Box bounding_box() const;

  bool contains(const Point& p, double eps = kQuantEps) const;
  bool contains(const Region& inner, double eps = kQuantEps) const;
  /// Shortest distance from p to the complement of the region (0 outside).
  double depth(const Point& p) const;

  Region translated(const Point& t) const;
  /// Shrink (s > 0) or inflate (s < 0) by s in every direction. Inflating a box
  /// yields the enclosing box, not the rounded Minkowski sum.
  /// Throws WindowTooSmall when nothing is left.
  Region shrunk(double s) const;
  bool can_shrink(double s) const;
  bool empty_interior() const;

  bool approx_equal(const Region& other, double eps = kQuantEps) const;

private:
  std::variant<Ball, Box> shape_;
};

/// Volume of the d-dimensional ball of the given radius.
double ball_volume(int dim, double radius);

}  // namespace delone
