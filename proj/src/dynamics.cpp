#include "delone/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "delone/error.hpp"
#include "delone/format.hpp"
#include "delone/parallel.hpp"

namespace delone {

namespace {

// Distance from y to a box (0 inside).
double box_distance(const Point& y, const Box& b) {
  const Eigen::ArrayXd below = (b.lo - y).array().max(0.0);
  const Eigen::ArrayXd above = (y - b.hi).array().max(0.0);
  return (below + above).matrix().norm();
}

// Distance from y to the boundary of the box.
double boundary_distance(const Point& y, const Box& b) {
  const double out = box_distance(y, b);
  if (out > 0.0) return out;
  return std::min((y - b.lo).minCoeff(), (b.hi - y).minCoeff());
}

Box inflate(const Box& b, double s) { return Box{(b.lo.array() - s).matrix(), (b.hi.array() + s).matrix()}; }

// Radius of a ball about the origin containing the region.
double reach(const Region& r) {
  if (r.is_ball()) return r.as_ball().center.norm() + r.as_ball().radius;
  const Box& b = r.as_box();
  return b.lo.cwiseAbs().cwiseMax(b.hi.cwiseAbs()).norm();
}

// ∫_{−ρ}^{u} of the unit-mass 1D profile.
double profile_cdf(Bump::Profile profile, double rho, double u) {
  if (u <= -rho) return 0.0;
  if (u >= rho) return 1.0;
  if (profile == Bump::Profile::Flat) return (u + rho) / (2.0 * rho);
  if (u <= 0.0) return (u + rho) * (u + rho) / (2.0 * rho * rho);
  return 1.0 - (rho - u) * (rho - u) / (2.0 * rho * rho);
}

}  // namespace

VanHoveSequence::VanHoveSequence(int d, double l0) : VanHoveSequence(d, l0, Point::Zero(d)) {}

VanHoveSequence::VanHoveSequence(int d, double l0, Point c) : dim(d), L0(l0), center(std::move(c)) {
  if (dim <= 0) throw Error(Errc::InvalidSpec, "van Hove dimension must be positive");
  if (!(L0 > 0.0) || !std::isfinite(L0)) throw Error(Errc::InvalidSpec, "L0 must be positive");
  if (center.size() != dim) throw Error(Errc::InvalidSpec, "van Hove center dimension mismatch");
}

Region VanHoveSequence::box(int n) const {
  if (n < 1) throw Error(Errc::InvalidSpec, "van Hove level starts at 1");
  const double h = L0 * n;
  return Region::box((center.array() - h).matrix(), (center.array() + h).matrix());
}

double VanHoveSequence::boundary_ratio(int n, double s) const {
  const double side = 2.0 * L0 * n;
  const double outer = std::pow(side + 2.0 * s, dim);
  const double inner = std::pow(std::max(0.0, side - 2.0 * s), dim);
  return (outer - inner) / std::pow(side, dim);
}

FrequencyEstimate frequency(const PointSet& ps, const PatternClass& p, const VanHoveSequence& seq, int n_max) {
  if (n_max < 1) throw Error(Errc::InvalidSpec, "n_max must be at least 1");
  if (seq.dim != ps.dim() || p.canonical.dim() != ps.dim()) throw Error(Errc::InvalidSpec, "dimension mismatch");
  const Region top = seq.box(n_max);
  const double diam = p.canonical.support.diameter();
  if (!ps.margin_allows(Region(inflate(top.as_box(), diam))))
    throw Error(Errc::WindowTooSmall, "Q_" + std::to_string(n_max) + " inflated by diam(P) leaves the reliable window");
  FrequencyEstimate est{p, std::vector<FrequencyLevel>(static_cast<std::size_t>(n_max)), 0.0, 0.0};
  parallel_for(static_cast<std::size_t>(n_max), [&](std::size_t i) {
    const int n = static_cast<int>(i) + 1;
    const Region q = seq.box(n);
    FrequencyLevel& lv = est.levels[i];
    lv.n = n;
    lv.volume = q.volume();
    lv.count = count_occurrences(p, extract_pattern(ps, q));
    lv.ratio = static_cast<double>(lv.count) / lv.volume;
  });
  est.frequency = est.levels.back().ratio;
  if (n_max > 1) est.spread = std::abs(est.levels.back().ratio - est.levels[est.levels.size() - 2].ratio);
  return est;
}

CenterSpread frequency_across_centers(const PointSet& ps, const PatternClass& p, double L0, int n,
                                      const PointList& centers) {
  CenterSpread out;
  out.ratios.resize(centers.size());
  for (const auto& c : centers) {
    const VanHoveSequence seq(ps.dim(), L0, c);
    if (!ps.margin_allows(Region(inflate(seq.box(n).as_box(), p.canonical.support.diameter()))))
      throw Error(Errc::WindowTooSmall, "recentred box leaves the reliable window");
  }
  parallel_for(centers.size(), [&](std::size_t i) {
    const Region q = VanHoveSequence(ps.dim(), L0, centers[i]).box(n);
    out.ratios[i] = static_cast<double>(count_occurrences(p, extract_pattern(ps, q))) / q.volume();
  });
  if (!out.ratios.empty()) {
    const auto [lo, hi] = std::minmax_element(out.ratios.begin(), out.ratios.end());
    out.spread = *hi - *lo;
  }
  return out;
}

Bump::Bump(Profile profile, int dim, double radius, double scale)
    : profile_(profile), dim_(dim), radius_(radius), scale_(scale) {
  if (dim_ <= 0) throw Error(Errc::InvalidSpec, "bump dimension must be positive");
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) throw Error(Errc::InvalidSpec, "bump radius must be positive");
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw Error(Errc::UnnormalizedBump, "bump scale must be positive");
}

double Bump::operator()(const Point& x) const {
  const double t = x.norm();
  if (t > radius_) return 0.0;
  const double vol = ball_volume(dim_, radius_);
  if (profile_ == Profile::Flat) return scale_ / vol;
  return scale_ * (dim_ + 1) / vol * (1.0 - t / radius_);
}

double Bump::grid_mass(const Point& c, const std::function<bool(const Point&)>& inside) const {
  const int per = 64;  // pitch radius/32 across the diameter
  const double h = 2.0 * radius_ / per;
  Eigen::VectorXi k = Eigen::VectorXi::Zero(dim_);
  double total = 0.0, hit = 0.0;
  while (true) {
    Point off(dim_);
    for (int i = 0; i < dim_; ++i) off(i) = -radius_ + (k(i) + 0.5) * h;
    const double w = (*this)(off);
    if (w > 0.0) {
      total += w;
      if (inside(c + off)) hit += w;
    }
    int i = 0;
    while (i < dim_ && k(i) == per - 1) {
      k(i) = 0;
      ++i;
    }
    if (i == dim_) break;
    ++k(i);
  }
  return total > 0.0 ? scale_ * hit / total : 0.0;
}

double Bump::mass_in_box(const Point& c, const Box& box) const {
  if (c.size() != dim_ || box.lo.size() != dim_) throw Error(Errc::InvalidSpec, "bump dimension mismatch");
  if (box_distance(c, box) >= radius_) return 0.0;
  if (((c.array() - radius_) >= box.lo.array()).all() && ((c.array() + radius_) <= box.hi.array()).all())
    return scale_;
  if (dim_ == 1)
    return scale_ * (profile_cdf(profile_, radius_, box.hi(0) - c(0)) - profile_cdf(profile_, radius_, box.lo(0) - c(0)));
  return grid_mass(c, [&](const Point& y) {
    return (y.array() >= box.lo.array()).all() && (y.array() <= box.hi.array()).all();
  });
}

double Bump::mass_in_neighborhood(const Point& c, const Box& box, double rad) const {
  if (c.size() != dim_ || box.lo.size() != dim_) throw Error(Errc::InvalidSpec, "bump dimension mismatch");
  const double d = box_distance(c, box);
  if (d >= rad + radius_) return 0.0;
  if (d + radius_ < rad) return scale_;
  if (dim_ == 1) return mass_in_box(c, inflate(box, rad));
  return grid_mass(c, [&](const Point& y) { return box_distance(y, box) < rad; });
}

SandwichResult sandwich_check(const PointSet& ps, const Pattern& p, const Box& q, double g_scale) {
  if (!(g_scale > 0.0) || g_scale > 1.0) throw Error(Errc::InvalidSpec, "g_scale must lie in (0, 1]");
  if (p.dim() != ps.dim() || q.lo.size() != ps.dim()) throw Error(Errc::InvalidSpec, "dimension mismatch");
  if (!(ps.r() > 0.0)) throw Error(Errc::InvalidSpec, "point set declares no packing radius r");
  const Point origin = Point::Zero(ps.dim());
  const auto anchor = std::find_if(p.points.begin(), p.points.end(),
                                   [&](const Point& x) { return approx_equal(x, origin); });
  if (anchor == p.points.end()) throw Error(Errc::PatternNotAnchored, "pattern does not contain the origin");

  const double r = ps.r();
  const Bump g(Bump::Profile::Tent, ps.dim(), g_scale * r / 42.0);
  const double rp = reach(p.support);
  const Box scan = inflate(q, r + g.radius() + rp);
  if (!ps.margin_allows(Region(scan)))
    throw Error(Errc::WindowTooSmall, "Q inflated by r + R_P leaves the reliable window");

  const PatternClass cls = canonicalize(p);
  const Point a = p.points.front();  // canonical anchor: c = t − a maps 0 ∈ Λ_P onto the occurrence
  const PointList positions = occurrence_positions(cls, extract_pattern(ps, Region(scan)));

  SandwichResult res;
  res.count = count_occurrences(cls, extract_pattern(ps, Region(q)));
  const Region qr(q);
  const bool has_inner = qr.can_shrink(rp + r);
  const Box inner = has_inner ? qr.shrunk(rp + r).as_box() : q;
  for (const auto& t : positions) {
    const Point c = t - a;
    if (box_distance(c, q) >= r + g.radius()) continue;
    ++res.centers;
    if (boundary_distance(c, q) <= rp + 2.0 * r) ++res.boundary_centers;
    if (has_inner) res.lower += g.mass_in_box(c, inner);
    res.upper += g.mass_in_neighborhood(c, q, r);
  }
  const double tol = 1e-9 * std::max<double>(1.0, static_cast<double>(res.count));
  res.pass = res.lower <= static_cast<double>(res.count) + tol && static_cast<double>(res.count) <= res.upper + tol;
  return res;
}

DensityEstimate density(const PointSet& ps, const std::vector<double>& radii, const Point& center) {
  if (radii.empty()) throw Error(Errc::InvalidSpec, "no radii given");
  if (center.size() != ps.dim()) throw Error(Errc::InvalidSpec, "center dimension mismatch");
  std::vector<double> rs = radii;
  std::sort(rs.begin(), rs.end());
  if (!(rs.front() > 0.0)) throw Error(Errc::InvalidSpec, "radii must be positive");
  if (!ps.raw_window().contains(Region::ball(center, rs.back())))
    throw Error(Errc::WindowTooSmall, "B_" + format_sig(rs.back(), 6) + " leaves the window");
  DensityEstimate est;
  for (double rad : rs) {
    DensityLevel lv;
    lv.radius = rad;
    lv.volume = ball_volume(ps.dim(), rad);
    lv.count = ps.index().within(center, rad, kQuantEps).size();
    lv.ratio = static_cast<double>(lv.count) / lv.volume;
    est.levels.push_back(lv);
  }
  est.density = est.levels.back().ratio;
  if (est.levels.size() > 1) est.spread = std::abs(est.density - est.levels[est.levels.size() - 2].ratio);
  return est;
}

DensityEstimate density(const PointSet& ps, const std::vector<double>& radii) {
  return density(ps, radii, Point(0.5 * (ps.window().lo + ps.window().hi)));
}

double transverse_sum(const PointSet& ps, const SampledFunction& f) {
  if (f.support.dim() != ps.dim()) throw Error(Errc::InvalidSpec, "support dimension mismatch");
  if (!ps.margin_allows(f.support)) throw Error(Errc::WindowTooSmall, "support leaves the reliable window");
  double sum = 0.0;
  for (auto i : ps.index().inside(f.support, kQuantEps)) sum += f.eval(ps[i]);
  return sum;
}

WindowId WindowId::shifted(const Point& t) const { return WindowId{base, offset + t}; }

bool operator==(const WindowId& a, const WindowId& b) {
  return a.base == b.base && approx_equal(a.offset, b.offset);
}

bool operator==(const GroupoidElement& a, const GroupoidElement& b) {
  return a.window == b.window && approx_equal(a.x, b.x);
}

bool composable(const GroupoidElement& g1, const GroupoidElement& g2) {
  return g1.x.size() == g2.x.size() && g2.window == g1.window.shifted(-g1.x);
}

GroupoidElement compose(const GroupoidElement& g1, const GroupoidElement& g2) {
  if (!composable(g1, g2)) throw Error(Errc::NotComposable, "range of the second element is not the source of the first");
  return GroupoidElement{g1.window, g1.x + g2.x};
}

GroupoidElement invert(const GroupoidElement& g) { return GroupoidElement{g.window.shifted(-g.x), -g.x}; }

GroupoidElement unit(const WindowId& w, int dim) { return GroupoidElement{w, Point::Zero(dim)}; }

GroupoidElement range(const GroupoidElement& g) { return unit(g.window, static_cast<int>(g.x.size())); }

GroupoidElement source(const GroupoidElement& g) {
  return unit(g.window.shifted(-g.x), static_cast<int>(g.x.size()));
}

XPoint make_xpoint(const PointSet& ps, const Point& p) {
  if (ps.find(p) == PointIndex::npos) throw Error(Errc::NotASite, "point " + format_point(p, 12) + " is not in the set");
  return XPoint{WindowId{ps.provenance(), Point::Zero(ps.dim())}, p};
}

}  // namespace delone
