#include "delone/patterns.hpp"

#include <algorithm>
#include <cmath>

#include "delone/error.hpp"
#include "delone/format.hpp"

namespace delone {

namespace {

void sort_points(PointList& pts, double eps) {
  std::stable_sort(pts.begin(), pts.end(),
                   [eps](const Point& a, const Point& b) { return lex_compare(a, b, eps) < 0; });
}

double typical_spacing(const PointList& pts, const Region& support) {
  if (pts.size() < 2) return std::max(support.diameter(), 1e-6);
  const double d = static_cast<double>(support.dim());
  return std::max(std::pow(support.volume() / static_cast<double>(pts.size()), 1.0 / d), 1e-6);
}

std::string support_key(const Region& r) {
  if (r.is_ball()) return "ball:" + format_point(r.as_ball().center, 17, ',') + ":" + format_sig(r.as_ball().radius);
  return "box:" + format_point(r.as_box().lo, 17, ',') + ":" + format_point(r.as_box().hi, 17, ',');
}

}  // namespace

Pattern::Pattern(PointList pts, Region supp) : points(std::move(pts)), support(std::move(supp)) {
  sort_points(points, kQuantEps);
}

Pattern Pattern::translated(const Point& t) const {
  PointList pts = points;
  for (auto& p : pts) p += t;
  return Pattern(std::move(pts), support.translated(t));
}

Pattern make_pattern(PointList points, Region support, double eps) {
  for (const auto& p : points) {
    if (p.size() != support.dim()) throw Error(Errc::InvalidSpec, "pattern point dimension mismatch");
    if (!is_finite(p)) throw Error(Errc::InvalidSpec, "pattern point not finite");
    if (!support.contains(p, eps)) throw Error(Errc::InvalidSpec, "pattern point outside its support");
  }
  Pattern out(std::move(points), std::move(support));
  for (std::size_t i = 1; i < out.points.size(); ++i)
    if (approx_equal(out.points[i - 1], out.points[i], eps))
      throw Error(Errc::InvalidSpec, "pattern points are not pairwise distinct");
  return out;
}

bool same_pattern(const Pattern& a, const Pattern& b, double eps) {
  if (a.points.size() != b.points.size()) return false;
  if (!a.support.approx_equal(b.support, eps)) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    if (!approx_equal(a.points[i], b.points[i], eps)) return false;
  return true;
}

std::string PatternClass::key() const {
  std::string out = "d=" + std::to_string(canonical.dim()) + ";" + support_key(canonical.support) + ";";
  for (std::size_t i = 0; i < canonical.points.size(); ++i) {
    if (i) out += "|";
    out += format_point(canonical.points[i], 17, ',');
  }
  return out;
}

bool operator==(const PatternClass& a, const PatternClass& b) {
  return same_pattern(a.canonical, b.canonical, std::max(a.quant, b.quant));
}

PatternClass canonicalize(const Pattern& p, double eps) {
  const Point anchor = p.points.empty() ? p.support.anchor() : p.points.front();
  Pattern c = p.translated(-anchor);
  // The anchor maps to the origin exactly, not up to rounding.
  if (!c.points.empty()) c.points.front().setZero();
  return PatternClass{std::move(c), eps};
}

Pattern extract_pattern(const PointSet& ps, const Region& q, double eps) {
  if (q.dim() != ps.dim()) throw Error(Errc::InvalidSpec, "region dimension mismatch");
  if (!ps.margin_allows(q, eps))
    throw Error(Errc::RegionOutsideWindow, "region exceeds the reliable window");
  PointList pts;
  for (auto i : ps.index().inside(q, eps)) pts.push_back(ps[i]);
  return Pattern(std::move(pts), q);
}

PointList occurrence_positions(const PatternClass& p, const Pattern& x, double eps) {
  PointList out;
  const Pattern& pat = p.canonical;
  if (pat.empty() || x.empty() || pat.dim() != x.dim()) return out;
  if (pat.points.size() > x.points.size()) return out;
  const PointIndex index(x.points, typical_spacing(x.points, x.support));
  const Point& p0 = pat.points.front();
  for (const auto& q : x.points) {
    const Point t = q - p0;
    const Region moved = pat.support.translated(t);
    if (!x.support.contains(moved, eps)) continue;
    const auto inside = index.inside(moved, eps);
    if (inside.size() != pat.points.size()) continue;
    bool match = true;
    for (const auto& pp : pat.points) {
      if (index.within(pp + t, 0.0, eps).empty()) {
        match = false;
        break;
      }
    }
    if (match) out.push_back(t);
  }
  sort_points(out, eps);
  return out;
}

std::size_t count_occurrences(const PatternClass& p, const Pattern& x, double eps) {
  return occurrence_positions(p, x, eps).size();
}

Pattern centered_ball_patch(const PointSet& ps, const Point& x, double s, double eps) {
  const Region ball = Region::ball(x, s);
  if (!ps.raw_window().contains(ball, eps))
    throw Error(Errc::MarginTooSmall, "ball patch of radius " + format_sig(s, 6) + " leaves the raw window");
  PointList pts;
  for (auto i : ps.index().within(x, s, eps)) pts.push_back(ps[i] - x);
  return Pattern(std::move(pts), Region::ball(Point::Zero(x.size()), s));
}

std::vector<PatternClass> ball_patches(const PointSet& ps, double s, double eps) {
  if (s > ps.margin() + eps)
    throw Error(Errc::MarginTooSmall,
                "patch radius " + format_sig(s, 6) + " exceeds margin " + format_sig(ps.margin(), 6));
  PatternCatalog catalog;
  const Region raw = ps.raw_window();
  for (const auto& x : ps.points()) {
    if (!raw.contains(Region::ball(x, s), eps)) continue;
    catalog.intern(canonicalize(centered_ball_patch(ps, x, s, eps), eps));
  }
  return catalog.classes();
}

Point local_point_selector(const PointSet& ps, const Point& x, double eps) {
  if (!(ps.r() > 0.0)) throw Error(Errc::InvalidSpec, "point set declares no packing radius r");
  const double rad = ps.r() / 2.0;
  if (!ps.reliable_window().contains(Region::ball(x, rad), eps))
    throw Error(Errc::RegionOutsideWindow, "B_{r/2}(x) exceeds the reliable window");
  const auto ids = ps.index().within(x, rad, eps);
  if (ids.empty()) throw Error(Errc::EmptyBall, "no point within r/2 of x");
  if (ids.size() > 1) throw Error(Errc::MultiplePoints, "several points within r/2 of x: (r,R) declaration violated");
  return ps[ids.front()];
}

std::size_t PatternCatalog::find(const PatternClass& c) const {
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (classes_[i] == c) return i;
  return npos;
}

std::size_t PatternCatalog::intern(const PatternClass& c) {
  if (auto i = find(c); i != npos) return i;
  classes_.push_back(c);
  return classes_.size() - 1;
}

}  // namespace delone
