#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "delone/dynamics.hpp"
#include "delone/eigen_sym.hpp"
#include "delone/operators.hpp"
#include "delone/point_set.hpp"

namespace delone {

using RealFunction = std::function<double(double)>;

/// Eigenvalues of A_ω|_Q, each with weight 1/|Q|.
struct SpectralMeasure {
  std::vector<double> eigenvalues;  // sorted
  double volume = 0.0;

  /// (1/|Q|) Σ φ(λ_i) = (1/|Q|) tr φ(A_ω|_Q).
  double evaluate(const RealFunction& phi) const;
  /// (1/|Q|) #{λ_i < E}.
  double distribution(double e) const;
};

SpectralMeasure spectral_measure(const PointSet& ps, const StencilRule& rule, const Region& q);

/// Uniform energy grid with count ≥ 2 points from min to max inclusive.
struct EnergyGrid {
  double min = -1.0;
  double max = 1.0;
  std::size_t count = 2;

  std::vector<double> energies() const;
};

/// N_Q(E) = n(A_ω, Q)(E) / |Q| on an energy grid.
struct DistributionFunction {
  std::vector<double> energies;
  std::vector<double> values;
  double volume = 0.0;
  std::size_t sites = 0;
  std::size_t ambiguous = 0;  // grid energies within the tie band of an eigenvalue

  bool nondecreasing() const;
};

/// Counting function on a box, by inertia on the tridiagonal form.
DistributionFunction ids_on_region(const PointSet& ps, const StencilRule& rule, const Region& q,
                                   const std::vector<double>& energies);

/// sup over the shared grid of |N₁(E) − N₂(E)|.
double sup_difference(const DistributionFunction& a, const DistributionFunction& b);

struct IdsResult {
  std::vector<int> levels;
  std::vector<DistributionFunction> curves;
  /// sup |N_{Q_{k+1}} − N_{Q_k}| for consecutive levels.
  std::vector<double> consecutive_sup_diff;
  /// Top level against the same box recentred, when requested.
  std::optional<double> recentered_sup_diff;
  bool monotone = true;
  bool bounded = true;  // 0 ≤ N ≤ sites/|Q|
};

/// N_{Q_n}(E) for each requested level. Throws WindowTooSmall when the top
/// level (inflated by the rule's patch radius) leaves the reliable window.
IdsResult ids_curve(const PointSet& ps, const StencilRule& rule, const VanHoveSequence& seq,
                    const std::vector<int>& levels, const EnergyGrid& grid,
                    std::optional<Point> recenter = std::nullopt);

struct OmegaReport {
  PointList centers;
  std::vector<DistributionFunction> curves;
  std::vector<std::vector<double>> eigenvalues;
  Eigen::MatrixXd sup_ids_diff;        // pairwise sup |N_i − N_j|
  Eigen::MatrixXd spectral_hausdorff;  // pairwise Hausdorff distance of spectra
  double max_sup_ids_diff = 0.0;
};

/// Consistency diagnostic: boxes of side `side` around each centre.
OmegaReport omega_independence(const PointSet& ps, const StencilRule& rule, const PointList& centers,
                               double side, const EnergyGrid& grid);

struct TauEstimate {
  double value = 0.0;
  /// |value − sharp-cutoff average over Q'| ≤ boundary_bound.
  double boundary_bound = 0.0;
  /// (1/|Q|) tr φ(A_ω|_Q) and the bound on |value − ids_value|.
  double ids_value = 0.0;
  double ids_bound = 0.0;
};

/// Spatial surrogate for τ(φ(A)): the f-weighted diagonal of φ(A_ω|_Q)
/// averaged uniformly over translates c of f with supp f(· − c) inside Q
/// shrunk by the patch radius. Throws UnnormalizedBump or WindowTooSmall.
TauEstimate tau_estimate(const PointSet& ps, const StencilRule& rule, const RealFunction& phi,
                         const Bump& f, const Box& q);

/// CSV with columns E, then N(E) per level; `sep` selects csv or tsv.
void write_ids_table(std::ostream& os, const IdsResult& result, char sep = ',');
/// JSON-like convergence report, floats with 12 significant digits.
void write_ids_report(std::ostream& os, const IdsResult& result);

}  // namespace delone
