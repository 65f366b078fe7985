#include "delone/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "delone/error.hpp"

namespace delone {

bool is_finite(const Point& p) { return p.allFinite(); }

double ball_volume(int dim, double radius) {
  // Low dimensions exactly; π^{d/2} / Γ(d/2 + 1) · r^d otherwise.
  if (dim == 1) return 2.0 * radius;
  if (dim == 2) return std::numbers::pi * radius * radius;
  const double unit = std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
  return unit * std::pow(radius, dim);
}

Region::Region(Ball b) : shape_(std::move(b)) {
  const auto& ball = std::get<Ball>(shape_);
  if (!(ball.radius > 0.0) || !is_finite(ball.center))
    throw Error(Errc::InvalidSpec, "ball needs finite center and positive radius");
}

Region::Region(Box b) : shape_(std::move(b)) {
  const auto& box = std::get<Box>(shape_);
  if (box.lo.size() != box.hi.size() || box.lo.size() == 0)
    throw Error(Errc::InvalidSpec, "box corners have mismatched dimensions");
  if (!is_finite(box.lo) || !is_finite(box.hi) || !(box.lo.array() < box.hi.array()).all())
    throw Error(Errc::InvalidSpec, "box needs lo < hi componentwise");
}

Region Region::cube(int dim, double lo, double hi) {
  return Region(Box{Point::Constant(dim, lo), Point::Constant(dim, hi)});
}

int Region::dim() const {
  return is_ball() ? static_cast<int>(as_ball().center.size()) : static_cast<int>(as_box().lo.size());
}

double Region::volume() const {
  if (is_ball()) return ball_volume(dim(), as_ball().radius);
  return (as_box().hi - as_box().lo).prod();
}

double Region::diameter() const {
  if (is_ball()) return 2.0 * as_ball().radius;
  return (as_box().hi - as_box().lo).norm();
}

Point Region::anchor() const { return is_ball() ? as_ball().center : as_box().lo; }

Box Region::bounding_box() const {
  if (is_box()) return as_box();
  const auto& b = as_ball();
  return Box{(b.center.array() - b.radius).matrix(), (b.center.array() + b.radius).matrix()};
}

bool Region::contains(const Point& p, double eps) const {
  if (p.size() != dim()) return false;
  if (is_ball()) {
    const auto& b = as_ball();
    return (p - b.center).norm() <= b.radius + eps;
  }
  const auto& b = as_box();
  return ((p - b.lo).array() >= -eps).all() && ((b.hi - p).array() >= -eps).all();
}

bool Region::contains(const Region& inner, double eps) const {
  if (inner.dim() != dim()) return false;
  if (inner.is_box()) {
    const auto& ib = inner.as_box();
    if (is_box()) {
      const auto& b = as_box();
      return ((ib.lo - b.lo).array() >= -eps).all() && ((b.hi - ib.hi).array() >= -eps).all();
    }
    // Farthest corner of the box from the ball center.
    const auto& b = as_ball();
    const Point far = (ib.lo - b.center).cwiseAbs().cwiseMax((ib.hi - b.center).cwiseAbs());
    return far.norm() <= b.radius + eps;
  }
  const auto& ib = inner.as_ball();
  if (is_ball()) {
    const auto& b = as_ball();
    return (ib.center - b.center).norm() + ib.radius <= b.radius + eps;
  }
  const auto& b = as_box();
  return ((ib.center.array() - ib.radius - b.lo.array()) >= -eps).all() &&
         ((b.hi.array() - ib.center.array() - ib.radius) >= -eps).all();
}

double Region::depth(const Point& p) const {
  if (!contains(p, 0.0)) return 0.0;
  if (is_ball()) return as_ball().radius - (p - as_ball().center).norm();
  const auto& b = as_box();
  return std::min((p - b.lo).minCoeff(), (b.hi - p).minCoeff());
}

Region Region::translated(const Point& t) const {
  if (is_ball()) return Region(Ball{as_ball().center + t, as_ball().radius});
  return Region(Box{as_box().lo + t, as_box().hi + t});
}

Region Region::shrunk(double s) const {
  if (!can_shrink(s)) throw Error(Errc::WindowTooSmall, "region is empty after shrinking by " + std::to_string(s));
  if (is_ball()) return Region(Ball{as_ball().center, as_ball().radius - s});
  return Region(Box{(as_box().lo.array() + s).matrix(), (as_box().hi.array() - s).matrix()});
}

bool Region::can_shrink(double s) const {
  if (is_ball()) return as_ball().radius - s > 0.0;
  return ((as_box().hi - as_box().lo).array() > 2.0 * s).all();
}

bool Region::empty_interior() const {
  if (is_ball()) return !(as_ball().radius > 0.0);
  return !(as_box().lo.array() < as_box().hi.array()).all();
}

bool Region::approx_equal(const Region& other, double eps) const {
  if (is_ball() != other.is_ball() || dim() != other.dim()) return false;
  if (is_ball())
    return delone::approx_equal(as_ball().center, other.as_ball().center, eps) &&
           delone::approx_equal(as_ball().radius, other.as_ball().radius, eps);
  return delone::approx_equal(as_box().lo, other.as_box().lo, eps) &&
         delone::approx_equal(as_box().hi, other.as_box().hi, eps);
}

}  // namespace delone
