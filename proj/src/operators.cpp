#include "delone/operators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "delone/error.hpp"
#include "delone/format.hpp"
#include "delone/parallel.hpp"

namespace delone {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kRowTol = 1e-12;
// Balls need a positive radius; a zero patch radius still yields the site itself.
constexpr double kMinPatch = 1e-12;

void check_rule(const StencilRule& rule) {
  if (!(rule.range > 0.0) || !std::isfinite(rule.range)) throw Error(Errc::InvalidSpec, "stencil range must be positive");
  if (!(rule.patch_radius >= 0.0) || !std::isfinite(rule.patch_radius))
    throw Error(Errc::InvalidSpec, "patch radius must be nonnegative");
  if (rule.is_raw() ? !std::get<RawKernel>(rule.kernel) : !std::get<PatchKernel>(rule.kernel))
    throw Error(Errc::InvalidSpec, "stencil rule has no kernel");
}

Pattern patch_at(const PointSet& ps, const StencilRule& rule, const Point& x) {
  if (rule.is_raw()) return Pattern({Point::Zero(ps.dim())}, Region::ball(Point::Zero(ps.dim()), kMinPatch));
  return centered_ball_patch(ps, x, std::max(rule.patch_radius, kMinPatch));
}

struct RowEntry {
  Point v;
  double value;
};

}  // namespace

double StencilRule::evaluate(const Pattern& px, const Pattern& py, const Point& x, const Point& y) const {
  const Point v = y - x;
  if (v.norm() >= range) return 0.0;
  if (is_raw()) return std::get<RawKernel>(kernel)(x, y);
  return std::get<PatchKernel>(kernel)(px, py, v);
}

StencilRule BuiltinModel::rule() const {
  if (!(hopping_radius > 0.0) || !std::isfinite(hopping_radius))
    throw Error(Errc::InvalidSpec, "hopping_radius must be positive");
  if (!(potential_radius >= 0.0) || !std::isfinite(potential_radius))
    throw Error(Errc::InvalidSpec, "potential_radius must be nonnegative");
  if (!std::isfinite(hopping_weight) || !std::isfinite(potential_weight))
    throw Error(Errc::InvalidSpec, "weights must be finite");
  StencilRule r;
  r.range = hopping_radius;
  r.patch_radius = std::max(2.0 * hopping_radius, potential_radius);
  r.symmetric = true;
  r.name = "builtin(hop=" + format_sig(hopping_radius, 6) + ",w=" + format_sig(hopping_weight, 6) +
           ",pot=" + format_sig(potential_radius, 6) + ",v=" + format_sig(potential_weight, 6) + ")";
  const double hop = hopping_radius, w = hopping_weight, spot = potential_radius, pw = potential_weight;
  r.kernel = PatchKernel([hop, w, spot, pw](const Pattern& px, const Pattern&, const Point& v) {
    const double d = v.norm();
    if (d <= kQuantEps) {
      if (pw == 0.0 || spot <= 0.0) return 0.0;
      std::size_t n = 0;
      for (const auto& p : px.points) {
        const double t = p.norm();
        if (t > kQuantEps && t <= spot + kQuantEps) ++n;
      }
      return pw * static_cast<double>(n);
    }
    return d < hop ? w : 0.0;
  });
  return r;
}

BuiltinModel parse_stencil_config(std::istream& is) {
  BuiltinModel m;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    for (const auto& entry : split(line, ",;")) {
      const std::string t = trim(entry);
      if (t.empty()) continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw Error(Errc::Parse, "stencil entry '" + t + "' lacks '='");
      const std::string key = trim(t.substr(0, eq));
      const double value = parse_double(trim(t.substr(eq + 1)));
      if (key == "hopping_radius") m.hopping_radius = value;
      else if (key == "hopping_weight") m.hopping_weight = value;
      else if (key == "potential_radius") m.potential_radius = value;
      else if (key == "potential_weight") m.potential_weight = value;
      else throw Error(Errc::Parse, "unknown stencil key '" + key + "'");
    }
  }
  m.rule();  // validates
  return m;
}

BuiltinModel load_stencil_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::Io, "cannot open '" + path + "'");
  return parse_stencil_config(f);
}

void write_stencil_config(std::ostream& os, const BuiltinModel& m) {
  os << "hopping_radius=" << format_sig(m.hopping_radius) << "\n"
     << "hopping_weight=" << format_sig(m.hopping_weight) << "\n"
     << "potential_radius=" << format_sig(m.potential_radius) << "\n"
     << "potential_weight=" << format_sig(m.potential_weight) << "\n";
}

RestrictedOperator assemble(const PointSet& ps, const StencilRule& rule, const Region& q) {
  check_rule(rule);
  if (q.dim() != ps.dim()) throw Error(Errc::InvalidSpec, "region dimension mismatch");
  if (!ps.margin_allows(q.shrunk(-rule.patch_radius)))
    throw Error(Errc::MarginTooSmall, "Q inflated by the patch radius leaves the reliable window");
  RestrictedOperator op;
  op.volume = q.volume();
  const auto ids = ps.index().inside(q, kQuantEps);
  const std::size_t n = ids.size();
  std::vector<std::ptrdiff_t> slot(ps.size(), -1);
  for (std::size_t i = 0; i < n; ++i) {
    slot[ids[i]] = static_cast<std::ptrdiff_t>(i);
    op.basis.push_back(ps[ids[i]]);
  }
  std::vector<Pattern> patches(n, Pattern({}, Region::ball(Point::Zero(ps.dim()), kMinPatch)));
  parallel_for(n, [&](std::size_t i) { patches[i] = patch_at(ps, rule, op.basis[i]); });

  op.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::atomic<bool> asymmetric{false};
  parallel_for(n, [&](std::size_t i) {
    const Point& x = op.basis[i];
    for (auto k : ps.index().within(x, rule.range, kQuantEps)) {
      const std::ptrdiff_t j = slot[k];
      if (j < 0) continue;
      const auto jj = static_cast<std::size_t>(j);
      const double a = rule.evaluate(patches[i], patches[jj], x, op.basis[jj]);
      if (!rule.symmetric) {
        op.matrix(static_cast<Eigen::Index>(i), j) = a;
        continue;
      }
      if (jj < i) continue;
      const double b = rule.evaluate(patches[jj], patches[i], op.basis[jj], x);
      if (std::abs(a - b) > kSymmetryTol) asymmetric = true;
      op.matrix(static_cast<Eigen::Index>(i), j) = a;
      op.matrix(j, static_cast<Eigen::Index>(i)) = a;
    }
  });
  if (asymmetric) throw Error(Errc::AsymmetricKernel, "rule '" + rule.name + "' is flagged symmetric but is not");
  return op;
}

CovarianceReport covariance_check(const PointSet& ps, const StencilRule& rule, std::size_t trials,
                                  std::uint64_t seed) {
  check_rule(rule);
  CovarianceReport rep;
  const double key_radius = rule.range + std::max(rule.patch_radius, kMinPatch);
  const Region raw = ps.raw_window();
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (raw.contains(Region::ball(ps[i], key_radius), kQuantEps)) sites.push_back(i);
  rep.sites = sites.size();
  if (sites.empty()) return rep;

  // Rows as displacement → value lists.
  std::vector<std::vector<RowEntry>> rows(sites.size());
  std::vector<PatternClass> keys(sites.size(), PatternClass{Pattern({}, Region::ball(Point::Zero(ps.dim()), 1.0))});
  parallel_for(sites.size(), [&](std::size_t s) {
    const Point& x = ps[sites[s]];
    keys[s] = canonicalize(centered_ball_patch(ps, x, key_radius));
    const Pattern px = patch_at(ps, rule, x);
    for (auto k : ps.index().within(x, rule.range, kQuantEps)) {
      const double val = rule.evaluate(px, patch_at(ps, rule, ps[k]), x, ps[k]);
      rows[s].push_back(RowEntry{ps[k] - x, val});
    }
  });

  PatternCatalog catalog;
  std::vector<std::size_t> cls(sites.size());
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t s = 0; s < sites.size(); ++s) {
    cls[s] = catalog.intern(keys[s]);
    if (cls[s] == members.size()) members.emplace_back();
    members[cls[s]].push_back(s);
  }
  rep.classes = catalog.size();

  auto compare = [&](std::size_t a, std::size_t b) {
    double dev = 0.0;
    const auto& ra = rows[a];
    const auto& rb = rows[b];
    std::vector<bool> used(rb.size(), false);
    for (const auto& ea : ra) {
      bool found = false;
      for (std::size_t k = 0; k < rb.size(); ++k)
        if (!used[k] && approx_equal(ea.v, rb[k].v)) {
          used[k] = true;
          found = true;
          dev = std::max(dev, std::abs(ea.value - rb[k].value));
          break;
        }
      if (!found) dev = std::max(dev, std::abs(ea.value));
    }
    for (std::size_t k = 0; k < rb.size(); ++k)
      if (!used[k]) dev = std::max(dev, std::abs(rb[k].value));
    ++rep.pairs_checked;
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (dev > kRowTol) {
      ++rep.violations;
      if (rep.examples.size() < 5) rep.examples.emplace_back(ps[sites[a]], ps[sites[b]]);
    }
  };

  if (trials == 0) {
    for (std::size_t s = 0; s < sites.size(); ++s) {
      const std::size_t rep_site = members[cls[s]].front();
      if (rep_site != s) compare(rep_site, s);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, sites.size() - 1);
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t a = pick(rng);
      const auto& group = members[cls[a]];
      std::uniform_int_distribution<std::size_t> other(0, group.size() - 1);
      compare(a, group[other(rng)]);
    }
  }
  return rep;
}

double norm_bound(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double norm_bound(const RestrictedOperator& op) { return norm_bound(op.matrix); }

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  os << "# matrix rows=" << m.rows() << " cols=" << m.cols() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << format_sig(m(i, j));
    os << "\n";
  }
}

Eigen::MatrixXd read_matrix(std::istream& is) {
  std::string line;
  long rows = -1, cols = -1;
  while (std::getline(is, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.rfind("# matrix", 0) != 0) throw Error(Errc::Parse, "matrix header missing");
    for (const auto& f : split(t.substr(8), " \t")) {
      const auto eq = f.find('=');
      if (eq == std::string::npos) continue;
      const double v = parse_double(f.substr(eq + 1));
      if (f.substr(0, eq) == "rows") rows = static_cast<long>(v);
      if (f.substr(0, eq) == "cols") cols = static_cast<long>(v);
    }
    break;
  }
  if (rows < 0 || cols < 0) throw Error(Errc::Parse, "matrix header lacks rows/cols");
  std::vector<double> vals;
  while (std::getline(is, line))
    for (const auto& f : split(line, " \t,")) vals.push_back(parse_double(f));
  if (vals.size() != static_cast<std::size_t>(rows * cols))
    throw Error(Errc::Parse, "matrix has " + std::to_string(vals.size()) + " entries, header says " +
                                 std::to_string(rows * cols));
  Eigen::MatrixXd m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m(i, j) = vals[static_cast<std::size_t>(i * cols + j)];
  return m;
}

}  // namespace delone
