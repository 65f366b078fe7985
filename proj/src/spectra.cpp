#include "delone/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "delone/error.hpp"
#include "delone/format.hpp"
#include "delone/parallel.hpp"

namespace delone {

namespace {

void require_window(const PointSet& ps, const StencilRule& rule, const Region& q) {
  if (!ps.margin_allows(q.shrunk(-rule.patch_radius)))
    throw Error(Errc::WindowTooSmall, "box inflated by the patch radius leaves the reliable window");
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

double directed(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty()) return 0.0;
  if (b.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (double x : a) {
    auto it = std::lower_bound(b.begin(), b.end(), x);
    double best = std::numeric_limits<double>::infinity();
    if (it != b.end()) best = *it - x;
    if (it != b.begin()) best = std::min(best, x - *std::prev(it));
    worst = std::max(worst, best);
  }
  return worst;
}

std::string num(double v) { return format_sig(v, 12); }

}  // namespace

double SpectralMeasure::evaluate(const RealFunction& phi) const {
  double s = 0.0;
  for (double l : eigenvalues) s += phi(l);
  return s / volume;
}

double SpectralMeasure::distribution(double e) const {
  const auto it = std::lower_bound(eigenvalues.begin(), eigenvalues.end(), e);
  return static_cast<double>(it - eigenvalues.begin()) / volume;
}

SpectralMeasure spectral_measure(const PointSet& ps, const StencilRule& rule, const Region& q) {
  const RestrictedOperator op = assemble(ps, rule, q);
  return SpectralMeasure{to_vector(eig_sym(op.matrix).eigenvalues), op.volume};
}

std::vector<double> EnergyGrid::energies() const {
  if (count < 2) throw Error(Errc::InvalidSpec, "energy grid needs at least two points");
  if (!(max > min) || !std::isfinite(min) || !std::isfinite(max))
    throw Error(Errc::InvalidSpec, "energy grid needs finite min < max");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = i + 1 == count ? max : min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
  return out;
}

bool DistributionFunction::nondecreasing() const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[i - 1]) return false;
  return true;
}

DistributionFunction ids_on_region(const PointSet& ps, const StencilRule& rule, const Region& q,
                                   const std::vector<double>& energies) {
  const RestrictedOperator op = assemble(ps, rule, q);
  if (!is_symmetric(op.matrix, 1e-12)) throw Error(Errc::InvalidSpec, "assembled operator is not symmetric");
  const TridiagonalForm<double> t = tridiagonalize(op.matrix, false);
  DistributionFunction df;
  df.energies = energies;
  df.values.resize(energies.size());
  df.volume = op.volume;
  df.sites = op.basis.size();
  std::vector<char> amb(energies.size(), 0);
  parallel_for(energies.size(), [&](std::size_t i) {
    const CountBelow c = count_below(t, energies[i]);
    df.values[i] = static_cast<double>(c.count) / op.volume;
    amb[i] = c.ambiguous;
  });
  df.ambiguous = static_cast<std::size_t>(std::count(amb.begin(), amb.end(), 1));
  return df;
}

double sup_difference(const DistributionFunction& a, const DistributionFunction& b) {
  if (a.energies.size() != b.energies.size()) throw Error(Errc::InvalidSpec, "distribution grids differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (!approx_equal(a.energies[i], b.energies[i])) throw Error(Errc::InvalidSpec, "distribution grids differ");
    s = std::max(s, std::abs(a.values[i] - b.values[i]));
  }
  return s;
}

IdsResult ids_curve(const PointSet& ps, const StencilRule& rule, const VanHoveSequence& seq,
                    const std::vector<int>& levels, const EnergyGrid& grid, std::optional<Point> recenter) {
  if (levels.empty()) throw Error(Errc::InvalidSpec, "no levels requested");
  for (int n : levels)
    if (n < 1) throw Error(Errc::InvalidSpec, "levels start at 1");
  const int top = *std::max_element(levels.begin(), levels.end());
  require_window(ps, rule, seq.box(top));
  std::optional<VanHoveSequence> moved;
  if (recenter) {
    moved.emplace(seq.dim, seq.L0, *recenter);
    require_window(ps, rule, moved->box(top));
  }
  const std::vector<double> energies = grid.energies();
  IdsResult res;
  res.levels = levels;
  for (int n : levels) res.curves.push_back(ids_on_region(ps, rule, seq.box(n), energies));
  for (std::size_t i = 1; i < res.curves.size(); ++i)
    res.consecutive_sup_diff.push_back(sup_difference(res.curves[i], res.curves[i - 1]));
  if (moved) {
    const auto top_at = std::find(levels.begin(), levels.end(), top) - levels.begin();
    res.recentered_sup_diff = sup_difference(res.curves[static_cast<std::size_t>(top_at)],
                                             ids_on_region(ps, rule, moved->box(top), energies));
  }
  for (const auto& c : res.curves) {
    if (!c.nondecreasing()) res.monotone = false;
    const double cap = static_cast<double>(c.sites) / c.volume + 1e-15;
    for (double v : c.values)
      if (v < 0.0 || v > cap) res.bounded = false;
  }
  return res;
}

OmegaReport omega_independence(const PointSet& ps, const StencilRule& rule, const PointList& centers, double side,
                               const EnergyGrid& grid) {
  if (!(side > 0.0)) throw Error(Errc::InvalidSpec, "box side must be positive");
  const std::vector<double> energies = grid.energies();
  OmegaReport rep;
  rep.centers = centers;
  std::vector<Region> boxes;
  for (const auto& c : centers) {
    if (c.size() != ps.dim()) throw Error(Errc::InvalidSpec, "center dimension mismatch");
    boxes.push_back(Region::box((c.array() - side / 2).matrix(), (c.array() + side / 2).matrix()));
    require_window(ps, rule, boxes.back());
  }
  for (const auto& q : boxes) {
    rep.curves.push_back(ids_on_region(ps, rule, q, energies));
    rep.eigenvalues.push_back(to_vector(eig_sym(assemble(ps, rule, q).matrix).eigenvalues));
  }
  const auto m = static_cast<Eigen::Index>(centers.size());
  rep.sup_ids_diff = Eigen::MatrixXd::Zero(m, m);
  rep.spectral_hausdorff = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
      const double s = sup_difference(rep.curves[a], rep.curves[b]);
      const double h = std::max(directed(rep.eigenvalues[a], rep.eigenvalues[b]),
                                directed(rep.eigenvalues[b], rep.eigenvalues[a]));
      rep.sup_ids_diff(i, j) = rep.sup_ids_diff(j, i) = s;
      rep.spectral_hausdorff(i, j) = rep.spectral_hausdorff(j, i) = h;
      rep.max_sup_ids_diff = std::max(rep.max_sup_ids_diff, s);
    }
  return rep;
}

TauEstimate tau_estimate(const PointSet& ps, const StencilRule& rule, const RealFunction& phi, const Bump& f,
                         const Box& q) {
  if (std::abs(f.integral() - 1.0) > 1e-8) throw Error(Errc::UnnormalizedBump, "bump integral is not 1");
  if (f.dim() != ps.dim()) throw Error(Errc::InvalidSpec, "bump dimension mismatch");
  const Region qr(q);
  require_window(ps, rule, qr);
  const double inset = rule.patch_radius + f.radius();
  if (!qr.can_shrink(inset)) throw Error(Errc::WindowTooSmall, "Q shrunk by patch and bump radius is empty");
  const Box inner = qr.shrunk(inset).as_box();
  const double inner_vol = Region(inner).volume();

  const RestrictedOperator op = assemble(ps, rule, qr);
  const EigenDecomposition<double> eig = eig_sym(op.matrix, true);
  const Eigen::Index n = eig.eigenvalues.size();
  Eigen::VectorXd phis(n);
  double sup_phi = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    phis(k) = phi(eig.eigenvalues(k));
    sup_phi = std::max(sup_phi, std::abs(phis(k)));
  }
  // diag φ(A)_xx = Σ_k φ(λ_k) v_k(x)².
  const Eigen::VectorXd diag = eig.eigenvectors.array().square().matrix() * phis;

  TauEstimate est;
  double boundary = 0.0, ids_dev = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Point& x = op.basis[static_cast<std::size_t>(i)];
    const double m = f.mass_in_box(x, inner);
    est.value += diag(i) * m;
    est.ids_value += diag(i);
    const bool in = ((x - inner.lo).array() >= 0.0).all() && ((inner.hi - x).array() >= 0.0).all();
    boundary += std::abs(m - (in ? 1.0 : 0.0));
    ids_dev += std::abs(m / inner_vol - 1.0 / op.volume);
  }
  est.value /= inner_vol;
  est.ids_value /= op.volume;
  est.boundary_bound = sup_phi * boundary / inner_vol;
  est.ids_bound = sup_phi * ids_dev;
  return est;
}

void write_ids_table(std::ostream& os, const IdsResult& result, char sep) {
  os << "E";
  for (int n : result.levels) os << sep << "N_" << n;
  os << "\n";
  if (result.curves.empty()) return;
  const auto& es = result.curves.front().energies;
  for (std::size_t i = 0; i < es.size(); ++i) {
    os << num(es[i]);
    for (const auto& c : result.curves) os << sep << num(c.values[i]);
    os << "\n";
  }
}

void write_ids_report(std::ostream& os, const IdsResult& result) {
  auto list = [&](const char* key, auto get, std::size_t count, bool last = false) {
    os << "  \"" << key << "\": [";
    for (std::size_t i = 0; i < count; ++i) os << (i ? ", " : "") << get(i);
    os << "]" << (last ? "\n" : ",\n");
  };
  os << "{\n";
  list("levels", [&](std::size_t i) { return std::to_string(result.levels[i]); }, result.levels.size());
  list("sites", [&](std::size_t i) { return std::to_string(result.curves[i].sites); }, result.curves.size());
  list("volumes", [&](std::size_t i) { return num(result.curves[i].volume); }, result.curves.size());
  list("ambiguous", [&](std::size_t i) { return std::to_string(result.curves[i].ambiguous); }, result.curves.size());
  list("consecutive_sup_diff", [&](std::size_t i) { return num(result.consecutive_sup_diff[i]); },
       result.consecutive_sup_diff.size());
  os << "  \"recentered_sup_diff\": " << (result.recentered_sup_diff ? num(*result.recentered_sup_diff) : "null")
     << ",\n";
  os << "  \"monotone\": " << (result.monotone ? "true" : "false") << ",\n";
  os << "  \"bounded\": " << (result.bounded ? "true" : "false") << "\n";
  os << "}\n";
}

}  // namespace delone
