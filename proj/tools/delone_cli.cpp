// Command-line front end. Exit codes: 0 ok, 2 usage/config, 3 I/O, 4 invariant failure.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "delone/dynamics.hpp"
#include "delone/error.hpp"
#include "delone/format.hpp"
#include "delone/generators.hpp"
#include "delone/operators.hpp"
#include "delone/parallel.hpp"
#include "delone/patterns.hpp"
#include "delone/spectra.hpp"
#include "delone/topology.hpp"
#include "delone/voronoi.hpp"

using namespace delone;

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kIo = 3;
constexpr int kInvariant = 4;

int exit_code(Errc c) {
  switch (c) {
    case Errc::Io:
      return kIo;
    case Errc::NoConvergence:
    case Errc::SingularShift:
    case Errc::InconsistentDecorations:
    case Errc::AsymmetricKernel:
    case Errc::EmptyBall:
    case Errc::MultiplePoints:
      return kInvariant;
    default:
      return kConfig;
  }
}

// Thrown when a numerical invariant check fails after the output is written.
struct InvariantFailure {
  std::string what;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& f : split(s, ",")) out.push_back(parse_double(trim(f)));
  return out;
}

Point parse_point(const std::string& s) {
  const auto v = parse_list(s);
  if (v.empty()) throw Error(Errc::Parse, "empty point '" + s + "'");
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// "lo:hi" (replicated over dim) or "lo1:hi1,lo2:hi2".
Box parse_window(const std::string& s, int dim) {
  const auto parts = split(s, ",");
  if (parts.empty()) throw Error(Errc::Parse, "empty window");
  if (parts.size() != 1 && static_cast<int>(parts.size()) != dim)
    throw Error(Errc::Parse, "window '" + s + "' does not match dimension " + std::to_string(dim));
  Box b{Point(dim), Point(dim)};
  for (int i = 0; i < dim; ++i) {
    const std::string& p = parts.size() == 1 ? parts[0] : parts[static_cast<std::size_t>(i)];
    const auto colon = p.find(':', p[0] == '-' ? 1 : 0);
    if (colon == std::string::npos) throw Error(Errc::Parse, "window range '" + p + "' lacks ':'");
    b.lo(i) = parse_double(trim(p.substr(0, colon)));
    b.hi(i) = parse_double(trim(p.substr(colon + 1)));
  }
  return b;
}

char separator(const std::string& format) { return format == "tsv" ? '\t' : ','; }

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::Io, "cannot open '" + path + "' for writing");
  return f;
}

void close_out(std::ofstream& f, const std::string& path) {
  f.close();
  if (!f) throw Error(Errc::Io, "write to '" + path + "' failed");
}

void kv(const std::string& key, const std::string& value) { std::cout << key << "=" << value << "\n"; }
void kv(const std::string& key, double value) { kv(key, format_sig(value, 12)); }
void kv(const std::string& key, std::size_t value) { kv(key, std::to_string(value)); }

// ---- gen -------------------------------------------------------------------

struct GenOptions {
  std::string lattice, preset, input, window, basis, motif, shift, output, offset;
  double margin = 0.0;
  double perturb = 0.0;
  std::uint64_t seed = 0;
};

LatticeSpec lattice_from(const GenOptions& o) {
  if (!o.basis.empty()) {
    const auto cols = split(o.basis, ";");
    const int d = static_cast<int>(cols.size());
    Eigen::MatrixXd b(d, d);
    for (int j = 0; j < d; ++j) {
      const Point c = parse_point(cols[static_cast<std::size_t>(j)]);
      if (c.size() != d) throw Error(Errc::Parse, "basis must be square");
      b.col(j) = c;
    }
    LatticeSpec s{b, {}};
    if (!o.motif.empty())
      for (const auto& m : split(o.motif, ";")) s.motif.push_back(parse_point(m));
    return s;
  }
  const std::string& n = o.lattice;
  if (n.size() >= 2 && n[0] == 'z') {
    const int d = std::stoi(n.substr(1));
    if (d < 1 || d > 4) throw Error(Errc::InvalidSpec, "lattice dimension must be 1..4");
    LatticeSpec s = LatticeSpec::integer(d);
    if (!o.motif.empty())
      for (const auto& m : split(o.motif, ";")) s.motif.push_back(parse_point(m));
    return s;
  }
  if (n == "z") return LatticeSpec::integer(1);
  throw Error(Errc::InvalidSpec, "unknown lattice '" + n + "' (use z, z2, z3 or --basis)");
}

int cmd_gen(const GenOptions& o) {
  const int sources = !o.lattice.empty() + !o.preset.empty() + !o.input.empty() + !o.basis.empty();
  if (sources != 1 && !(sources == 2 && !o.basis.empty() && !o.lattice.empty()))
    throw Error(Errc::InvalidSpec, "choose exactly one of --lattice/--basis, --preset, --input");
  GeneratorSpec spec;
  int dim = 0;
  if (!o.preset.empty()) {
    CutAndProjectSpec s{o.preset, o.shift.empty() ? Point() : parse_point(o.shift)};
    dim = o.preset == "ammann-beenker" ? 2 : 1;
    spec = s;
  } else if (!o.input.empty()) {
    dim = load_point_set(o.input).dim();
    spec = ExplicitSpec{o.input};
  } else {
    LatticeSpec l = lattice_from(o);
    dim = static_cast<int>(l.basis.rows());
    if (o.perturb > 0.0) spec = PerturbedLatticeSpec{l, o.perturb, o.seed};
    else spec = l;
  }
  const Box window = parse_window(o.window, dim);
  PointSet ps = generate(spec, window, o.margin);
  if (!o.offset.empty()) ps = translate(ps, parse_point(o.offset));
  std::ofstream f = open_out(o.output);
  write_point_set(f, ps);
  close_out(f, o.output);
  kv("dim", static_cast<std::size_t>(ps.dim()));
  kv("count", ps.size());
  kv("r", format_sig(ps.r()));
  kv("R", format_sig(ps.R()));
  kv("margin", format_sig(ps.margin()));
  kv("provenance", ps.provenance());
  return kOk;
}

// ---- metric ----------------------------------------------------------------

struct MetricOptions {
  std::string f, g, center;
  double k = 1.0;
  double max_truncation = 0.25;
};

int cmd_metric(const MetricOptions& o) {
  const PointSet pf = load_point_set(o.f), pg = load_point_set(o.g);
  if (pf.dim() != pg.dim()) throw Error(Errc::InvalidSpec, "dimension mismatch between inputs");
  const Point c = o.center.empty() ? Point::Zero(pf.dim()) : parse_point(o.center);
  const ClosedSetSample sf = sample_around(pf, c), sg = sample_around(pg, c);
  kv("k", o.k);
  kv("d_k", dk_distance(sf, sg, o.k));
  kv("hausdorff_truncated", hausdorff_truncated(sf, sg, o.k));
  const RhoDistance rho = rho_metric(sf, sg, o.max_truncation);
  kv("rho", rho.value);
  kv("rho_truncation_bound", rho.truncation_bound);
  return kOk;
}

// ---- voronoi ---------------------------------------------------------------

struct VoronoiOptions {
  std::string input, output;
};

int cmd_voronoi(const VoronoiOptions& o) {
  const PointSet ps = load_point_set(o.input);
  const Tiling t = voronoi_tiling(ps);
  const DecoratedTiling dec = decorate(ps);
  std::size_t inclusion = 0;
  for (const auto& c : t.cells)
    if (c.inradius() < ps.r() / 2.0 - kGeoEps || c.outradius() > 2.0 * ps.R() + kGeoEps) ++inclusion;
  if (!o.output.empty()) {
    std::ofstream f = open_out(o.output);
    write_tiling(f, t);
    close_out(f, o.output);
  }
  kv("sites", t.sites.size());
  kv("shared_edges", t.shared_edges);
  kv("unshared_edges", t.unshared_edges);
  kv("mismatched_edges", t.mismatched_edges);
  kv("closure_error", t.closure_error);
  kv("alphabet", dec.alphabet.size());
  kv("inclusion_violations", inclusion);
  if (t.mismatched_edges || inclusion || t.closure_error > 1e-8)
    throw InvariantFailure{"Voronoi tiling failed its consistency checks"};
  return kOk;
}

// ---- freq ------------------------------------------------------------------

struct FreqOptions {
  std::string input, output, format = "csv";
  double radius = 1.0;
  double L0 = 10.0;
  int levels = 3;
};

int cmd_freq(const FreqOptions& o) {
  const PointSet ps = load_point_set(o.input);
  const auto classes = ball_patches(ps, o.radius);
  const VanHoveSequence seq(ps.dim(), o.L0, Point(0.5 * (ps.window().lo + ps.window().hi)));
  const char sep = separator(o.format);
  std::ostringstream table;
  table << "class" << sep << "n" << sep << "volume" << sep << "count" << sep << "ratio\n";
  bool ok = true;
  double total = 0.0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const FrequencyEstimate est = frequency(ps, classes[c], seq, o.levels);
    for (std::size_t i = 0; i < est.levels.size(); ++i) {
      const auto& lv = est.levels[i];
      table << c << sep << lv.n << sep << format_sig(lv.volume, 12) << sep << lv.count << sep
            << format_sig(lv.ratio, 12) << "\n";
      if (i && lv.count < est.levels[i - 1].count) ok = false;
    }
    total += est.frequency;
  }
  if (o.output.empty()) {
    std::cout << table.str();
  } else {
    std::ofstream f = open_out(o.output);
    f << table.str();
    close_out(f, o.output);
  }
  kv("classes", classes.size());
  kv("frequency_sum", total);
  if (!ok) throw InvariantFailure{"occurrence counts decreased along the van Hove sequence"};
  return kOk;
}

// ---- density ---------------------------------------------------------------

struct DensityOptions {
  std::string input, output, radii, center, format = "csv";
};

int cmd_density(const DensityOptions& o) {
  const PointSet ps = load_point_set(o.input);
  const auto radii = parse_list(o.radii);
  const DensityEstimate est = o.center.empty() ? density(ps, radii) : density(ps, radii, parse_point(o.center));
  const char sep = separator(o.format);
  std::ostringstream table;
  table << "radius" << sep << "volume" << sep << "count" << sep << "ratio\n";
  for (const auto& lv : est.levels)
    table << format_sig(lv.radius, 12) << sep << format_sig(lv.volume, 12) << sep << lv.count << sep
          << format_sig(lv.ratio, 12) << "\n";
  if (o.output.empty()) {
    std::cout << table.str();
  } else {
    std::ofstream f = open_out(o.output);
    f << table.str();
    close_out(f, o.output);
  }
  kv("density", est.density);
  kv("spread", est.spread);
  return kOk;
}

// ---- ids -------------------------------------------------------------------

struct IdsOptions {
  std::string input, output, report, stencil, center, recenter, levels = "1,2,4", format = "csv";
  BuiltinModel model;
  double L0 = 10.0;
  double emin = -3.0, emax = 3.0;
  std::size_t ecount = 121;
};

int cmd_ids(IdsOptions o) {
  const PointSet ps = load_point_set(o.input);
  if (!o.stencil.empty()) o.model = load_stencil_config(o.stencil);
  const StencilRule rule = o.model.rule();
  std::vector<int> levels;
  for (double v : parse_list(o.levels)) {
    if (v != std::floor(v) || v < 1) throw Error(Errc::InvalidSpec, "levels must be positive integers");
    levels.push_back(static_cast<int>(v));
  }
  const Point c = o.center.empty() ? Point(0.5 * (ps.window().lo + ps.window().hi)) : parse_point(o.center);
  const VanHoveSequence seq(ps.dim(), o.L0, c);
  const int top = *std::max_element(levels.begin(), levels.end());
  if (!ps.margin_allows(seq.box(top).shrunk(-rule.patch_radius)))
    throw Error(Errc::MarginTooSmall, "margin " + format_sig(ps.margin(), 6) + " cannot cover patch radius " +
                                          format_sig(rule.patch_radius, 6) + " around the top-level box");
  std::optional<Point> rc;
  if (!o.recenter.empty()) rc = parse_point(o.recenter);
  const IdsResult res = ids_curve(ps, rule, seq, levels, EnergyGrid{o.emin, o.emax, o.ecount}, rc);

  std::ostringstream table;
  write_ids_table(table, res, separator(o.format));
  if (o.output.empty()) {
    std::cout << table.str();
  } else {
    std::ofstream f = open_out(o.output);
    f << table.str();
    close_out(f, o.output);
  }
  if (!o.report.empty()) {
    std::ofstream f = open_out(o.report);
    write_ids_report(f, res);
    close_out(f, o.report);
  }
  for (std::size_t i = 0; i < res.curves.size(); ++i)
    kv("sites_" + std::to_string(res.levels[i]), res.curves[i].sites);
  for (std::size_t i = 0; i < res.consecutive_sup_diff.size(); ++i)
    kv("sup_diff_" + std::to_string(res.levels[i]) + "_" + std::to_string(res.levels[i + 1]),
       res.consecutive_sup_diff[i]);
  if (res.recentered_sup_diff) kv("recentered_sup_diff", *res.recentered_sup_diff);
  kv("monotone", res.monotone ? "true" : "false");
  kv("bounded", res.bounded ? "true" : "false");
  if (!res.monotone || !res.bounded) throw InvariantFailure{"IDS curve is not monotone or exceeds the site density"};
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delone sets: generators, metrics, Voronoi tilings, frequencies and IDS"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "worker threads (output does not depend on it)")->check(CLI::PositiveNumber);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "generate a point set window");
  g->add_option("--lattice", gen.lattice, "z, z2, z3 (integer lattices)");
  g->add_option("--basis", gen.basis, "basis columns, e.g. '1,0;0,2'");
  g->add_option("--motif", gen.motif, "motif offsets, e.g. '0.25;0.75'");
  g->add_option("--preset", gen.preset, "fibonacci | ammann-beenker");
  g->add_option("--shift", gen.shift, "internal-space window shift");
  g->add_option("--input", gen.input, "explicit point-set file");
  g->add_option("--perturb", gen.perturb, "perturbation amplitude for lattices");
  g->add_option("--seed", gen.seed, "perturbation seed");
  g->add_option("--window", gen.window, "lo:hi or lo1:hi1,lo2:hi2")->required();
  g->add_option("--margin", gen.margin, "margin around the window");
  g->add_option("--offset", gen.offset, "translate the result");
  g->add_option("-o,--output", gen.output, "output point-set file")->required();

  MetricOptions met;
  auto* m = app.add_subcommand("metric", "d_k, truncated Hausdorff and rho between two point sets");
  m->add_option("--f", met.f, "first point-set file")->required();
  m->add_option("--g", met.g, "second point-set file")->required();
  m->add_option("--k", met.k, "cutoff radius");
  m->add_option("--center", met.center, "sample centre (default origin)");
  m->add_option("--max-truncation", met.max_truncation, "largest accepted rho truncation bound");

  VoronoiOptions vor;
  auto* v = app.add_subcommand("voronoi", "Voronoi tiling and decorations");
  v->add_option("--input", vor.input, "point-set file")->required();
  v->add_option("-o,--output", vor.output, "tiling text output");

  FreqOptions fq;
  auto* f = app.add_subcommand("freq", "ball-patch frequencies along a van Hove sequence");
  f->add_option("--input", fq.input, "point-set file")->required();
  f->add_option("--radius", fq.radius, "ball-patch radius");
  f->add_option("--L0", fq.L0, "van Hove half-side unit");
  f->add_option("--levels", fq.levels, "number of levels")->check(CLI::PositiveNumber);
  f->add_option("-o,--output", fq.output, "table output");
  f->add_option("--format", fq.format, "csv | tsv")->check(CLI::IsMember({"csv", "tsv"}));

  DensityOptions dn;
  auto* d = app.add_subcommand("density", "point density over balls");
  d->add_option("--input", dn.input, "point-set file")->required();
  d->add_option("--radii", dn.radii, "comma-separated radii")->required();
  d->add_option("--center", dn.center, "ball centre (default window centre)");
  d->add_option("-o,--output", dn.output, "table output");
  d->add_option("--format", dn.format, "csv | tsv")->check(CLI::IsMember({"csv", "tsv"}));

  IdsOptions ids;
  auto* s = app.add_subcommand("ids", "integrated density of states along a van Hove sequence");
  s->add_option("--input", ids.input, "point-set file")->required();
  s->add_option("--stencil", ids.stencil, "stencil config file");
  s->add_option("--hop", ids.model.hopping_radius, "hopping radius");
  s->add_option("--hop-weight", ids.model.hopping_weight, "hopping weight");
  s->add_option("--pot", ids.model.potential_radius, "potential radius");
  s->add_option("--pot-weight", ids.model.potential_weight, "potential weight");
  s->add_option("--L0", ids.L0, "van Hove half-side unit");
  s->add_option("--levels", ids.levels, "comma-separated levels");
  s->add_option("--center", ids.center, "box centre (default window centre)");
  s->add_option("--recenter", ids.recenter, "second centre for the top level");
  s->add_option("--emin", ids.emin, "lowest energy");
  s->add_option("--emax", ids.emax, "highest energy");
  s->add_option("--ecount", ids.ecount, "energy grid points")->check(CLI::Range(2, 1000000));
  s->add_option("-o,--output", ids.output, "IDS table output");
  s->add_option("--report", ids.report, "convergence report output");
  s->add_option("--format", ids.format, "csv | tsv")->check(CLI::IsMember({"csv", "tsv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }
  set_max_threads(threads);

  try {
    if (g->parsed()) return cmd_gen(gen);
    if (m->parsed()) return cmd_metric(met);
    if (v->parsed()) return cmd_voronoi(vor);
    if (f->parsed()) return cmd_freq(fq);
    if (d->parsed()) return cmd_density(dn);
    if (s->parsed()) return cmd_ids(ids);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const InvariantFailure& e) {
    std::cerr << "invariant failure: " << e.what << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}
