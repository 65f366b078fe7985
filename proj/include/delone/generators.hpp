#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include <Eigen/Core>

#include "delone/point_set.hpp"

namespace delone {

/// Lattice B·ℤ^d (+ motif). Basis vectors are the columns of `basis`.
struct LatticeSpec {
  Eigen::MatrixXd basis;
  PointList motif;  // empty means the single offset 0

  static LatticeSpec integer(int dim);
};

/// Model sets from the named presets: "fibonacci" (ℤ² → ℝ, gaps 1 and φ) and
/// "ammann-beenker" (ℤ⁴ → ℝ², unit edge length). `internal_shift` moves the
/// half-open acceptance window; each component must lie in (−1, 1).
struct CutAndProjectSpec {
  std::string preset;
  Point internal_shift;
};

/// Lattice with i.i.d. offsets uniform in [−amplitude, amplitude]^d, drawn from
/// a counter-based generator keyed by (seed, lattice index).
struct PerturbedLatticeSpec {
  LatticeSpec lattice;
  double amplitude = 0.0;
  std::uint64_t seed = 0;
};

/// Points read from a point-set file.
struct ExplicitSpec {
  std::string path;
};

using GeneratorSpec = std::variant<LatticeSpec, CutAndProjectSpec, PerturbedLatticeSpec, ExplicitSpec>;

std::string describe(const GeneratorSpec& spec);

/// Points of the ideal set inside `window` inflated by `margin`, with (r, R)
/// certified by exhaustive scan. The reliable window of the result is
/// `window`. Throws InvalidSpec or DensenessUnverifiable.
PointSet generate(const GeneratorSpec& spec, const Box& window, double margin);

/// Shifts points and window by t; constants and margin are preserved.
PointSet translate(const PointSet& ps, const Point& t);

/// Scales points, window, margin and constants by factor > 0.
PointSet dilate(const PointSet& ps, double factor);

/// Restriction to a smaller raw window, keeping the margin.
PointSet restrict_to(const PointSet& ps, const Box& raw_window);

struct DeloneReport {
  double min_gap = 0.0;
  /// Largest nearest-point distance found over the sampled reliable interior.
  double covering_radius = 0.0;
  std::size_t samples = 0;
  bool pass = false;
};

/// Exact minimum gap plus covering radius sampled on a grid of pitch r/4
/// over the reliable interior (in 1D also at every midpoint). Failures are
/// reported, not thrown.
DeloneReport verify_delone(const PointSet& ps);

/// Point-set text format: `# key=value` header lines (dim, r, R, margin,
/// window_lo, window_hi, provenance) followed by one point per line with 17
/// significant digits.
void write_point_set(std::ostream& os, const PointSet& ps);
PointSet read_point_set(std::istream& is);
void save_point_set(const std::string& path, const PointSet& ps);
PointSet load_point_set(const std::string& path);

}  // namespace delone
