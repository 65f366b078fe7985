#include "delone/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <Eigen/LU>

#include "delone/error.hpp"
#include "delone/format.hpp"
#include "delone/parallel.hpp"

namespace delone {

namespace {

constexpr double kPhi = std::numbers::phi;
constexpr std::size_t kMaxPoints = 50'000'000;

void check_box(const Box& b) {
  if (b.lo.size() == 0 || b.lo.size() != b.hi.size()) throw Error(Errc::InvalidSpec, "window has no dimension");
  if (!is_finite(b.lo) || !is_finite(b.hi)) throw Error(Errc::InvalidSpec, "window has non-finite bounds");
  if (!(b.lo.array() < b.hi.array()).all()) throw Error(Errc::InvalidSpec, "window needs lo < hi componentwise");
}

Box inflate(const Box& b, double m) {
  return Box{(b.lo.array() - m).matrix(), (b.hi.array() + m).matrix()};
}

bool in_box(const Point& p, const Box& b) {
  return (p.array() >= b.lo.array()).all() && (p.array() <= b.hi.array()).all();
}

// Calls f(n) for every integer vector in the box [lo, hi] (inclusive).
template <typename F>
void for_each_integer(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, F&& f) {
  const Eigen::Index d = lo.size();
  Eigen::VectorXi a(d), b(d);
  double total = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    a(i) = static_cast<int>(std::ceil(lo(i)));
    b(i) = static_cast<int>(std::floor(hi(i)));
    if (b(i) < a(i)) return;
    total *= static_cast<double>(b(i) - a(i) + 1);
  }
  if (total > static_cast<double>(kMaxPoints)) throw Error(Errc::InvalidSpec, "window too large to enumerate");
  Eigen::VectorXi n = a;
  while (true) {
    f(n);
    Eigen::Index i = 0;
    while (i < d && n(i) == b(i)) {
      n(i) = a(i);
      ++i;
    }
    if (i == d) return;
    ++n(i);
  }
}

void check_lattice(const LatticeSpec& s) {
  const Eigen::Index d = s.basis.rows();
  if (d == 0 || s.basis.cols() != d) throw Error(Errc::InvalidSpec, "lattice basis must be square");
  if (!s.basis.allFinite()) throw Error(Errc::InvalidSpec, "lattice basis not finite");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(s.basis);
  if (lu.rank() < d) throw Error(Errc::InvalidSpec, "lattice basis is singular");
  for (const auto& m : s.motif)
    if (m.size() != d || !is_finite(m)) throw Error(Errc::InvalidSpec, "motif offset has wrong dimension");
}

PointList motif_of(const LatticeSpec& s) {
  if (!s.motif.empty()) return s.motif;
  return {Point::Zero(s.basis.rows())};
}

// Integer ranges of n with B n + m inside the box.
std::pair<Eigen::VectorXd, Eigen::VectorXd> coefficient_range(const LatticeSpec& s, const Box& box,
                                                              const Point& m) {
  const Eigen::Index d = s.basis.rows();
  const Eigen::MatrixXd inv = s.basis.inverse();
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(d, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = -lo;
  for (unsigned corner = 0; corner < (1u << d); ++corner) {
    Point c(d);
    for (Eigen::Index i = 0; i < d; ++i) c(i) = (corner >> i) & 1u ? box.hi(i) : box.lo(i);
    const Eigen::VectorXd n = inv * (c - m);
    lo = lo.cwiseMin(n);
    hi = hi.cwiseMax(n);
  }
  return {(lo.array() - 1e-9).matrix(), (hi.array() + 1e-9).matrix()};
}

template <typename F>
void for_each_lattice_point(const LatticeSpec& s, const Box& box, F&& f) {
  const PointList motif = motif_of(s);
  for (std::size_t k = 0; k < motif.size(); ++k) {
    const auto [lo, hi] = coefficient_range(s, box, motif[k]);
    for_each_integer(lo, hi, [&](const Eigen::VectorXi& n) { f(n, k, Point(s.basis * n.cast<double>() + motif[k])); });
  }
}

// Shortest nonzero difference among small lattice vectors and motif offsets.
double lattice_min_gap(const LatticeSpec& s) {
  const PointList motif = motif_of(s);
  const Eigen::Index d = s.basis.rows();
  double best = std::numeric_limits<double>::infinity();
  for_each_integer(Eigen::VectorXd::Constant(d, -3), Eigen::VectorXd::Constant(d, 3), [&](const Eigen::VectorXi& n) {
    const Point v = s.basis * n.cast<double>();
    for (const auto& a : motif)
      for (const auto& b : motif) {
        const double g = (v + a - b).norm();
        if (g > kQuantEps) best = std::min(best, g);
      }
  });
  return best;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [−1, 1], a pure function of (seed, lattice index, motif slot, coordinate).
double counter_uniform(std::uint64_t seed, const Eigen::VectorXi& n, std::size_t slot, Eigen::Index coord) {
  std::uint64_t h = splitmix64(seed);
  for (Eigen::Index i = 0; i < n.size(); ++i)
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(n(i))));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(slot) << 32 | static_cast<std::uint64_t>(coord)));
  return static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

PointList fibonacci_points(const Box& box, double shift) {
  // x = φ n0 + n1, internal y = −n0 + φ n1 − shift ∈ [−1, φ).
  const double det = kPhi * kPhi + 1.0;
  const double a = box.lo(0), b = box.hi(0);
  const double ylo = -1.0 + shift, yhi = kPhi + shift;
  const double n1lo = std::min({a + kPhi * ylo, a + kPhi * yhi, b + kPhi * ylo, b + kPhi * yhi}) / det;
  const double n1hi = std::max({a + kPhi * ylo, a + kPhi * yhi, b + kPhi * ylo, b + kPhi * yhi}) / det;
  if ((n1hi - n1lo) * (kPhi + 1.0) > static_cast<double>(kMaxPoints)) throw Error(Errc::InvalidSpec, "window too large");
  PointList out;
  for (long n1 = static_cast<long>(std::floor(n1lo)) - 1; n1 <= static_cast<long>(std::ceil(n1hi)) + 1; ++n1) {
    const double c = kPhi * static_cast<double>(n1);
    const long lo = static_cast<long>(std::floor(std::max((a - static_cast<double>(n1)) / kPhi, c - yhi))) - 1;
    const long hi = static_cast<long>(std::ceil(std::min((b - static_cast<double>(n1)) / kPhi, c - ylo))) + 1;
    for (long n0 = lo; n0 <= hi; ++n0) {
      const double y = -static_cast<double>(n0) + c - shift;
      if (!(y >= -1.0 && y < kPhi)) continue;
      const double x = kPhi * static_cast<double>(n0) + static_cast<double>(n1);
      if (x >= a && x <= b) out.push_back(make_point({x}));
    }
  }
  return out;
}

PointList ammann_beenker_points(const Box& box, const Point& shift) {
  std::array<Eigen::Vector2d, 4> e, es, nu;
  for (int k = 0; k < 4; ++k) {
    const double t = k * std::numbers::pi / 4.0;
    e[k] = {std::cos(t), std::sin(t)};
    es[k] = {std::cos(3.0 * t), std::sin(3.0 * t)};
    nu[k] = {std::cos(t), std::sin(t)};
  }
  const double h = (1.0 + std::numbers::sqrt2) / 2.0;
  const double rho = h / std::cos(std::numbers::pi / 8.0);
  const Eigen::Vector2d s = shift.size() == 2 ? Eigen::Vector2d(shift) : Eigen::Vector2d::Zero();

  // n_k = (e_k·x + e*_k·y) / 2 since the 4×4 projection matrix has M Mᵀ = 2I.
  std::array<double, 4> nlo, nhi;
  for (int k = 0; k < 4; ++k) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (unsigned corner = 0; corner < 4; ++corner) {
      const Eigen::Vector2d c(corner & 1u ? box.hi(0) : box.lo(0), corner & 2u ? box.hi(1) : box.lo(1));
      lo = std::min(lo, e[k].dot(c));
      hi = std::max(hi, e[k].dot(c));
    }
    const double ys = es[k].dot(s);
    nlo[k] = (lo + ys - rho) / 2.0 - 1.0;
    nhi[k] = (hi + ys + rho) / 2.0 + 1.0;
  }
  double total = 1.0;
  for (int k = 0; k < 3; ++k) total *= nhi[k] - nlo[k] + 1.0;
  if (total > 1e9) throw Error(Errc::InvalidSpec, "window too large to enumerate");

  PointList out;
  auto accepts = [&](const Eigen::Vector2d& y) {
    for (int j = 0; j < 4; ++j) {
      const double v = nu[j].dot(y);
      if (!(v >= -h && v < h)) return false;
    }
    return true;
  };
  for (long n0 = static_cast<long>(std::ceil(nlo[0])); n0 <= static_cast<long>(std::floor(nhi[0])); ++n0)
    for (long n1 = static_cast<long>(std::ceil(nlo[1])); n1 <= static_cast<long>(std::floor(nhi[1])); ++n1)
      for (long n2 = static_cast<long>(std::ceil(nlo[2])); n2 <= static_cast<long>(std::floor(nhi[2])); ++n2) {
        const Eigen::Vector2d x0 = n0 * e[0] + n1 * e[1] + n2 * e[2];
        const Eigen::Vector2d y0 = n0 * es[0] + n1 * es[1] + n2 * es[2] - s;
        double lo = nlo[3], hi = nhi[3];
        auto clamp = [&](double base, double dir, double a, double b) {
          if (std::abs(dir) < 1e-12) {
            if (base < a - 1e-9 || base > b + 1e-9) hi = lo - 1.0;
            return;
          }
          double t0 = (a - base) / dir, t1 = (b - base) / dir;
          if (t0 > t1) std::swap(t0, t1);
          lo = std::max(lo, t0 - 1e-9);
          hi = std::min(hi, t1 + 1e-9);
        };
        for (int i = 0; i < 2; ++i) clamp(x0(i), e[3](i), box.lo(i), box.hi(i));
        for (int j = 0; j < 4; ++j) clamp(nu[j].dot(y0), nu[j].dot(es[3]), -h, h);
        for (long n3 = static_cast<long>(std::ceil(lo)); n3 <= static_cast<long>(std::floor(hi)); ++n3) {
          const Eigen::Vector2d x = x0 + n3 * e[3];
          if (!accepts(y0 + n3 * es[3])) continue;
          if (x(0) >= box.lo(0) && x(0) <= box.hi(0) && x(1) >= box.lo(1) && x(1) <= box.hi(1))
            out.push_back(Point(x));
        }
      }
  return out;
}

double min_gap(const PointList& sorted, int dim) {
  if (sorted.size() < 2) return std::numeric_limits<double>::infinity();
  if (dim == 1) {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < sorted.size(); ++i) g = std::min(g, sorted[i](0) - sorted[i - 1](0));
    return g;
  }
  Point lo = sorted.front(), hi = sorted.front();
  for (const auto& p : sorted) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double extent = std::max((hi - lo).maxCoeff(), 1e-12);
  double cell = std::max(extent / std::pow(static_cast<double>(sorted.size()), 1.0 / dim), 1e-9);
  const PointIndex index(sorted, cell);
  std::vector<double> best(sorted.size(), std::numeric_limits<double>::infinity());
  parallel_for(sorted.size(), [&](std::size_t i) {
    double rad = cell;
    while (true) {
      for (auto j : index.within(sorted[i], rad, 0.0))
        if (j != i) best[i] = std::min(best[i], (sorted[j] - sorted[i]).norm());
      if (best[i] <= rad || rad > 2.0 * extent) break;
      rad *= 2.0;
    }
  });
  return *std::min_element(best.begin(), best.end());
}

struct Covering {
  double radius = 0.0;
  std::size_t samples = 0;
};

// Largest nearest-point distance over a grid of the given pitch covering the
// region (plus consecutive midpoints in 1D).
Covering sample_covering(const PointSet& ps, const Box& region, double pitch) {
  const Eigen::Index d = region.lo.size();
  Eigen::VectorXi counts(d);
  double total = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    counts(i) = static_cast<int>(std::ceil((region.hi(i) - region.lo(i)) / pitch)) + 1;
    total *= counts(i);
  }
  // Coarsen rather than run away on huge windows.
  while (total > 4e6) {
    pitch *= 2.0;
    total = 1.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      counts(i) = static_cast<int>(std::ceil((region.hi(i) - region.lo(i)) / pitch)) + 1;
      total *= counts(i);
    }
  }
  PointList samples;
  samples.reserve(static_cast<std::size_t>(total));
  Eigen::VectorXi k = Eigen::VectorXi::Zero(d);
  while (true) {
    Point p(d);
    for (Eigen::Index i = 0; i < d; ++i)
      p(i) = std::min(region.lo(i) + pitch * k(i), region.hi(i));
    samples.push_back(p);
    Eigen::Index i = 0;
    while (i < d && k(i) == counts(i) - 1) {
      k(i) = 0;
      ++i;
    }
    if (i == d) break;
    ++k(i);
  }
  if (d == 1) {
    const auto& pts = ps.points();
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double m = 0.5 * (pts[i - 1](0) + pts[i](0));
      if (m >= region.lo(0) && m <= region.hi(0)) samples.push_back(make_point({m}));
    }
  }
  std::vector<double> dist(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) { dist[i] = ps.index().nearest(samples[i]).second; });
  Covering c;
  c.samples = samples.size();
  c.radius = dist.empty() ? 0.0 : *std::max_element(dist.begin(), dist.end());
  if (d < 2 || dist.empty()) return c;

  // The true supremum sits at a Voronoi vertex within pitch·√d/2 of some grid
  // sample; refine near-maximal samples with circumcentres of nearby sites.
  const double slack = pitch * std::sqrt(static_cast<double>(d));
  const double threshold = c.radius - slack / 2.0;
  // Samples near one vertex share their neighbour set, so each set is solved once.
  const std::size_t cap = d == 2 ? 10 : 2 * static_cast<std::size_t>(d + 1);
  std::vector<std::vector<std::size_t>> sets(samples.size());
  parallel_for(samples.size(), [&](std::size_t s) {
    if (dist[s] < threshold) return;
    auto ids = ps.index().within(samples[s], dist[s] + slack, kQuantEps);
    std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
      const double da = (ps[a] - samples[s]).squaredNorm(), db = (ps[b] - samples[s]).squaredNorm();
      return da < db || (da == db && a < b);
    });
    if (ids.size() > cap) ids.resize(cap);
    std::sort(ids.begin(), ids.end());
    sets[s] = std::move(ids);
  });
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<double> refined(sets.size(), 0.0);
  const Region reg(region);
  parallel_for(sets.size(), [&](std::size_t s) {
    const auto& ids = sets[s];
    const std::size_t m = ids.size(), k = static_cast<std::size_t>(d) + 1;
    if (m < k) return;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      Eigen::MatrixXd a(d, d);
      Eigen::VectorXd b(d);
      const Point& p0 = ps[ids[pick[0]]];
      for (std::size_t i = 1; i < k; ++i) {
        const Point& pi = ps[ids[pick[i]]];
        a.row(static_cast<Eigen::Index>(i - 1)) = 2.0 * (pi - p0).transpose();
        b(static_cast<Eigen::Index>(i - 1)) = pi.squaredNorm() - p0.squaredNorm();
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (lu.isInvertible()) {
        const Point cc = lu.solve(b);
        const double rad = (cc - p0).norm();
        if (rad > refined[s] && reg.contains(cc, 0.0) && ps.index().nearest(cc).second >= rad - 1e-12)
          refined[s] = rad;
      }
      // next combination
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  });
  if (refined.empty()) return c;
  c.radius = std::max(c.radius, *std::max_element(refined.begin(), refined.end()));
  return c;
}

Box shrink_box(const Box& b, double s) {
  return Box{(b.lo.array() + s).matrix(), (b.hi.array() - s).matrix()};
}

bool nonempty(const Box& b) { return (b.lo.array() < b.hi.array()).all(); }

struct RawPoints {
  PointList points;
  double analytic_gap = 0.0;  // 0: no analytic bound available
};

RawPoints enumerate(const GeneratorSpec& spec, const Box& raw) {
  const Eigen::Index d = raw.lo.size();
  RawPoints out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LatticeSpec>) {
          check_lattice(s);
          if (s.basis.rows() != d) throw Error(Errc::InvalidSpec, "lattice dimension does not match window");
          for_each_lattice_point(s, raw, [&](const Eigen::VectorXi&, std::size_t, const Point& p) {
            if (in_box(p, raw)) out.points.push_back(p);
          });
        } else if constexpr (std::is_same_v<T, CutAndProjectSpec>) {
          const Point& sh = s.internal_shift;
          if (sh.size() && (!is_finite(sh) || (sh.array().abs() >= 1.0).any()))
            throw Error(Errc::InvalidSpec, "internal shift components must lie in (-1, 1)");
          if (s.preset == "fibonacci") {
            if (d != 1) throw Error(Errc::InvalidSpec, "fibonacci preset is one-dimensional");
            if (sh.size() > 1) throw Error(Errc::InvalidSpec, "fibonacci internal shift has one component");
            out.points = fibonacci_points(raw, sh.size() ? sh(0) : 0.0);
            out.analytic_gap = 1.0;
          } else if (s.preset == "ammann-beenker") {
            if (d != 2) throw Error(Errc::InvalidSpec, "ammann-beenker preset is two-dimensional");
            if (sh.size() && sh.size() != 2) throw Error(Errc::InvalidSpec, "ammann-beenker internal shift has two components");
            out.points = ammann_beenker_points(raw, sh);
            out.analytic_gap = 2.0 * std::sin(std::numbers::pi / 8.0);
          } else {
            throw Error(Errc::InvalidSpec, "unknown cut-and-project preset '" + s.preset + "'");
          }
        } else if constexpr (std::is_same_v<T, PerturbedLatticeSpec>) {
          check_lattice(s.lattice);
          if (s.lattice.basis.rows() != d) throw Error(Errc::InvalidSpec, "lattice dimension does not match window");
          if (!(s.amplitude >= 0.0) || !std::isfinite(s.amplitude))
            throw Error(Errc::InvalidSpec, "perturbation amplitude must be nonnegative");
          const double rl = lattice_min_gap(s.lattice);
          if (s.amplitude * std::sqrt(static_cast<double>(d)) >= rl / 2.0)
            throw Error(Errc::InvalidSpec, "perturbation amplitude must stay below r_lattice/2");
          for_each_lattice_point(s.lattice, inflate(raw, s.amplitude),
                                 [&](const Eigen::VectorXi& n, std::size_t slot, const Point& base) {
                                   Point p = base;
                                   for (Eigen::Index i = 0; i < d; ++i)
                                     p(i) += s.amplitude * counter_uniform(s.seed, n, slot, i);
                                   if (in_box(p, raw)) out.points.push_back(p);
                                 });
          out.analytic_gap = rl - 2.0 * s.amplitude * std::sqrt(static_cast<double>(d));
        } else {
          const PointSet file = load_point_set(s.path);
          if (file.dim() != d) throw Error(Errc::InvalidSpec, "explicit point set dimension does not match window");
          if (!in_box(raw.lo, file.window()) || !in_box(raw.hi, file.window()))
            throw Error(Errc::InvalidSpec, "requested window exceeds the file's window");
          for (const auto& p : file.points())
            if (in_box(p, raw)) out.points.push_back(p);
        }
      },
      spec);
  return out;
}

}  // namespace

LatticeSpec LatticeSpec::integer(int dim) {
  return LatticeSpec{Eigen::MatrixXd::Identity(dim, dim), {}};
}

std::string describe(const GeneratorSpec& spec) {
  auto lattice = [](const LatticeSpec& s) {
    std::string out = "lattice(basis=";
    for (Eigen::Index j = 0; j < s.basis.cols(); ++j) {
      if (j) out += ";";
      out += format_point(s.basis.col(j), 17, ',');
    }
    if (!s.motif.empty()) {
      out += " motif=";
      for (std::size_t k = 0; k < s.motif.size(); ++k) {
        if (k) out += ";";
        out += format_point(s.motif[k], 17, ',');
      }
    }
    return out + ")";
  };
  return std::visit(
      [&](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LatticeSpec>) {
          return lattice(s);
        } else if constexpr (std::is_same_v<T, CutAndProjectSpec>) {
          std::string out = "cut-and-project(" + s.preset;
          if (s.internal_shift.size()) out += " shift=" + format_point(s.internal_shift, 17, ',');
          return out + ")";
        } else if constexpr (std::is_same_v<T, PerturbedLatticeSpec>) {
          return "perturbed(" + lattice(s.lattice) + " amplitude=" + format_sig(s.amplitude) +
                 " seed=" + std::to_string(s.seed) + ")";
        } else {
          return "explicit(" + s.path + ")";
        }
      },
      spec);
}

namespace {

// Orthogonal lattice with one motif point: R is half the cell diagonal. Valid
// only when the margin holds every nearest lattice point of the window.
std::optional<double> lattice_covering(const GeneratorSpec& spec, double margin) {
  const auto* s = std::get_if<LatticeSpec>(&spec);
  if (!s || s->motif.size() > 1) return std::nullopt;
  const Eigen::MatrixXd gram = s->basis.transpose() * s->basis;
  if (!gram.isDiagonal(1e-14)) return std::nullopt;
  const double R = 0.5 * std::sqrt(gram.trace());
  if (margin < R) return std::nullopt;
  return R;
}

}  // namespace

PointSet generate(const GeneratorSpec& spec, const Box& window, double margin) {
  check_box(window);
  if (!(margin >= 0.0) || !std::isfinite(margin)) throw Error(Errc::InvalidSpec, "margin must be finite and nonnegative");
  const int d = static_cast<int>(window.lo.size());
  const Box raw = inflate(window, margin);
  RawPoints gen = enumerate(spec, raw);
  const std::string prov = describe(spec);

  PointSet ps(d, std::move(gen.points), raw, margin, 0.0, 0.0, prov);
  if (ps.size() < 2) throw Error(Errc::DensenessUnverifiable, "fewer than two points in the window");
  const double r = min_gap(ps.points(), d);
  if (!(r > kQuantEps)) throw Error(Errc::InvalidSpec, "generator produced coincident points");
  if (gen.analytic_gap > 0.0 && r < gen.analytic_gap - 1e-9)
    throw Error(Errc::InvalidSpec, "scanned gap " + format_sig(r, 12) + " below analytic minimum " +
                                       format_sig(gen.analytic_gap, 12));

  const auto exact = lattice_covering(spec, margin);
  const double R = (exact ? *exact : sample_covering(ps, window, r / 4.0).radius) + kQuantEps;
  if (!nonempty(shrink_box(window, R)))
    throw Error(Errc::DensenessUnverifiable, "window shrunk by R = " + format_sig(R, 6) + " leaves no interior");
  return ps.with_constants(r, R);
}

PointSet translate(const PointSet& ps, const Point& t) {
  if (t.size() != ps.dim()) throw Error(Errc::InvalidSpec, "translation dimension mismatch");
  PointList pts = ps.points();
  for (auto& p : pts) p += t;
  Box w{ps.window().lo + t, ps.window().hi + t};
  return PointSet(ps.dim(), std::move(pts), std::move(w), ps.margin(), ps.r(), ps.R(), ps.provenance());
}

PointSet dilate(const PointSet& ps, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw Error(Errc::InvalidSpec, "dilation factor must be positive");
  PointList pts = ps.points();
  for (auto& p : pts) p *= factor;
  Box w{ps.window().lo * factor, ps.window().hi * factor};
  return PointSet(ps.dim(), std::move(pts), std::move(w), ps.margin() * factor, ps.r() * factor, ps.R() * factor,
                  ps.provenance() + " dilated(" + format_sig(factor) + ")");
}

PointSet restrict_to(const PointSet& ps, const Box& raw_window) {
  check_box(raw_window);
  if (raw_window.lo.size() != ps.dim()) throw Error(Errc::InvalidSpec, "window dimension mismatch");
  if (!Region(ps.window()).contains(Region(raw_window), kQuantEps))
    throw Error(Errc::RegionOutsideWindow, "restriction window exceeds the raw window");
  PointList pts;
  for (auto i : ps.index().inside(Region(raw_window), 0.0)) pts.push_back(ps[i]);
  return PointSet(ps.dim(), std::move(pts), raw_window, ps.margin(), ps.r(), ps.R(), ps.provenance());
}

DeloneReport verify_delone(const PointSet& ps) {
  DeloneReport rep;
  rep.min_gap = min_gap(ps.points(), ps.dim());
  Box region = shrink_box(ps.window(), ps.margin() + ps.R());
  if (!nonempty(region) || ps.size() == 0 || !(ps.r() > 0.0)) return rep;
  const Covering cov = sample_covering(ps, region, ps.r() / 4.0);
  rep.covering_radius = cov.radius;
  rep.samples = cov.samples;
  rep.pass = rep.min_gap >= ps.r() - kQuantEps && rep.covering_radius <= ps.R() + kQuantEps &&
             ps.r() <= 2.0 * ps.R() + kQuantEps;
  return rep;
}

void write_point_set(std::ostream& os, const PointSet& ps) {
  os << "# dim=" << ps.dim() << "\n"
     << "# r=" << format_sig(ps.r()) << "\n"
     << "# R=" << format_sig(ps.R()) << "\n"
     << "# margin=" << format_sig(ps.margin()) << "\n"
     << "# window_lo=" << format_point(ps.window().lo) << "\n"
     << "# window_hi=" << format_point(ps.window().hi) << "\n"
     << "# provenance=" << ps.provenance() << "\n";
  for (const auto& p : ps.points()) os << format_point(p) << "\n";
}

PointSet read_point_set(std::istream& is) {
  std::map<std::string, std::string> header;
  PointList pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string body = trim(t.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      header[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
      continue;
    }
    const auto fields = split(t, " \t,");
    Point p(static_cast<Eigen::Index>(fields.size()));
    for (std::size_t i = 0; i < fields.size(); ++i) p(static_cast<Eigen::Index>(i)) = parse_double(fields[i]);
    pts.push_back(std::move(p));
    (void)lineno;
  }
  auto need = [&](const char* key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) throw Error(Errc::Parse, std::string("point-set header lacks '") + key + "'");
    return it->second;
  };
  auto vec = [&](const char* key) {
    const auto f = split(need(key), " \t,");
    Point p(static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) p(static_cast<Eigen::Index>(i)) = parse_double(f[i]);
    return p;
  };
  const double dimv = parse_double(need("dim"));
  const int dim = static_cast<int>(dimv);
  if (dim <= 0 || dim != dimv) throw Error(Errc::Parse, "dim must be a positive integer");
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i].size() != dim)
      throw Error(Errc::Parse, "point " + std::to_string(i) + " has " + std::to_string(pts[i].size()) +
                                   " coordinates, header says dim=" + std::to_string(dim));
  Box w{vec("window_lo"), vec("window_hi")};
  if (w.lo.size() != dim || w.hi.size() != dim) throw Error(Errc::Parse, "window bounds do not match dim");
  const auto get = [&](const char* key) { return header.count(key) ? parse_double(header[key]) : 0.0; };
  const std::string prov = header.count("provenance") ? header["provenance"] : "explicit";
  return PointSet(dim, std::move(pts), std::move(w), get("margin"), get("r"), get("R"), prov);
}

void save_point_set(const std::string& path, const PointSet& ps) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::Io, "cannot open '" + path + "' for writing");
  write_point_set(f, ps);
  if (!f) throw Error(Errc::Io, "write to '" + path + "' failed");
}

PointSet load_point_set(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::Io, "cannot open '" + path + "'");
  return read_point_set(f);
}

}  // namespace delone
