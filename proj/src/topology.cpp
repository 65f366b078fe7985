#include "delone/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "delone/error.hpp"
#include "delone/format.hpp"
#include "delone/spatial_index.hpp"

namespace delone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PointList inside_ball(std::span<const Point> pts, double k) {
  PointList out;
  for (const auto& p : pts)
    if (p.norm() <= k + kQuantEps) out.push_back(p);
  return out;
}

void check_windows(const ClosedSetSample& f, const ClosedSetSample& g, double k) {
  if (!(k > 0.0)) throw Error(Errc::InvalidSpec, "cutoff k must be positive");
  const double need = k + 1.0;
  if (f.window_radius < need - kQuantEps || g.window_radius < need - kQuantEps)
    throw Error(Errc::WindowTooSmall, "sample window radius below k + 1 = " + format_sig(need, 6));
}

double cap(double v) { return std::min(1.0, v); }

}  // namespace

ClosedSetSample sample_around(const PointSet& ps, const Point& center, std::optional<double> radius) {
  if (center.size() != ps.dim()) throw Error(Errc::InvalidSpec, "center dimension mismatch");
  const double depth = ps.reliable_window().depth(center);
  const double w = radius.value_or(depth);
  if (!(w > 0.0) || w > depth + kQuantEps)
    throw Error(Errc::WindowTooSmall, "sample radius exceeds the reliable window around the center");
  ClosedSetSample out;
  out.window_radius = w;
  for (auto i : ps.index().within(center, w, kQuantEps)) out.points.push_back(ps[i] - center);
  return out;
}

ClosedSetSample shifted(const ClosedSetSample& f, const Point& t) {
  const double w = f.window_radius - t.norm();
  if (!(w > 0.0)) throw Error(Errc::WindowTooSmall, "shift leaves no exact window");
  ClosedSetSample out;
  out.window_radius = w;
  for (const auto& p : f.points) {
    Point q = p + t;
    if (q.norm() <= w + kQuantEps) out.points.push_back(std::move(q));
  }
  return out;
}

double directed_distance(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty()) return 0.0;
  if (b.empty()) return kInf;
  double worst = 0.0;
  if (b.size() <= 64) {
    for (const auto& p : a) {
      double best = kInf;
      for (const auto& q : b) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  }
  Point lo = b.front(), hi = b.front();
  for (const auto& q : b) {
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  const double extent = std::max((hi - lo).maxCoeff(), 1e-9);
  const PointIndex index(b, extent / std::pow(static_cast<double>(b.size()), 1.0 / static_cast<double>(lo.size())));
  for (const auto& p : a) worst = std::max(worst, index.nearest(p).second);
  return worst;
}

double hausdorff_capped(std::span<const Point> k1, std::span<const Point> k2) {
  return cap(std::max(directed_distance(k1, k2), directed_distance(k2, k1)));
}

double dk_distance(const ClosedSetSample& f, const ClosedSetSample& g, double k) {
  check_windows(f, g, k);
  const PointList fk = inside_ball(f.points, k), gk = inside_ball(g.points, k);
  return cap(std::max(directed_distance(fk, g.points), directed_distance(gk, f.points)));
}

double hausdorff_truncated(const ClosedSetSample& f, const ClosedSetSample& g, double k) {
  check_windows(f, g, k);
  return hausdorff_capped(inside_ball(f.points, k), inside_ball(g.points, k));
}

bool in_neighborhood(const ClosedSetSample& f, const ClosedSetSample& g, double eps, double k) {
  return dk_distance(f, g, k) <= eps;
}

Eigen::VectorXd stereo_embed(const Point& x) {
  const double n2 = x.squaredNorm();
  Eigen::VectorXd out(x.size() + 1);
  out.head(x.size()) = 2.0 * x / (1.0 + n2);
  out(x.size()) = (n2 - 1.0) / (1.0 + n2);
  return out;
}

Eigen::VectorXd stereo_infinity(int dim) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim + 1);
  out(dim) = 1.0;
  return out;
}

RhoDistance rho_metric(const ClosedSetSample& f, const ClosedSetSample& g, double max_truncation) {
  const double w = std::min(f.window_radius, g.window_radius);
  const double bound = 2.0 / std::sqrt(1.0 + w * w);
  if (bound > max_truncation)
    throw Error(Errc::WindowTooSmall, "truncation bound " + format_sig(bound, 6) + " exceeds " +
                                          format_sig(max_truncation, 6));
  int dim = 0;
  if (!f.points.empty()) dim = static_cast<int>(f.points.front().size());
  else if (!g.points.empty()) dim = static_cast<int>(g.points.front().size());
  // Points beyond the common window are dropped from both sides; each lies within
  // `bound` of the point at infinity, which both embeddings contain.
  auto embed = [&](const ClosedSetSample& s) {
    PointList out{stereo_infinity(dim)};
    for (const auto& p : s.points)
      if (p.norm() <= w + kQuantEps) out.push_back(stereo_embed(p));
    return out;
  };
  const PointList ef = embed(f), eg = embed(g);
  return RhoDistance{hausdorff_capped(ef, eg), bound};
}

std::optional<Point> local_match(const PointSet& w1, const PointSet& w2, double L, double delta, double eps) {
  if (w1.dim() != w2.dim()) throw Error(Errc::InvalidSpec, "dimension mismatch");
  if (!(L > 0.0) || !(delta >= 0.0)) throw Error(Errc::InvalidSpec, "L must be positive and delta nonnegative");
  const Point origin = Point::Zero(w1.dim());
  const Region need = Region::ball(origin, L + delta);
  if (!w1.margin_allows(need) || !w2.margin_allows(need))
    throw Error(Errc::WindowTooSmall, "reliable windows do not cover B_{L+delta}");

  PointList near1;
  for (auto i : w1.index().within(origin, L + delta, eps)) near1.push_back(w1[i]);
  PointList target;
  for (auto i : w2.index().within(origin, L, eps)) target.push_back(w2[i]);
  std::sort(target.begin(), target.end(), LexLess{});

  auto matches = [&](const Point& t) {
    PointList moved;
    for (const auto& p : near1) {
      Point q = p + t;
      if (q.norm() <= L + eps) moved.push_back(std::move(q));
    }
    if (moved.size() != target.size()) return false;
    std::sort(moved.begin(), moved.end(), LexLess{});
    for (std::size_t i = 0; i < moved.size(); ++i)
      if (!approx_equal(moved[i], target[i], eps)) return false;
    return true;
  };

  PointList candidates{origin};
  if (!target.empty()) {
    const Point& q0 = target.front();
    for (const auto& p : near1) {
      Point t = q0 - p;
      if (t.norm() <= delta + eps) candidates.push_back(std::move(t));
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Point& a, const Point& b) { return a.norm() < b.norm(); });
  for (const auto& t : candidates)
    if (matches(t)) return t;
  return std::nullopt;
}

}  // namespace delone
