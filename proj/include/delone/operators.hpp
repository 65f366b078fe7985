#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "delone/patterns.hpp"
#include "delone/point_set.hpp"

namespace delone {

/// Matrix element from the centred patches around x and y (each of radius
/// patch_radius, site at the origin) and the displacement v = y − x.
using PatchKernel = std::function<double(const Pattern& patch_x, const Pattern& patch_y, const Point& v)>;
/// Raw-coordinate kernel. Not covariant in general; kept for negative controls.
using RawKernel = std::function<double(const Point& x, const Point& y)>;

/// Finite-range rule: entries vanish for ‖x − y‖ ≥ range.
struct StencilRule {
  double range = 0.0;
  double patch_radius = 0.0;
  std::variant<PatchKernel, RawKernel> kernel;
  bool symmetric = true;
  std::string name;

  double evaluate(const Pattern& px, const Pattern& py, const Point& x, const Point& y) const;
  bool is_raw() const { return std::holds_alternative<RawKernel>(kernel); }
};

/// Hopping w between sites at distance below hopping_radius, plus the on-site
/// potential V(x) = v · #(ω ∩ B_{potential_radius}(x) \ {x}).
struct BuiltinModel {
  double hopping_radius = 1.5;
  double hopping_weight = 1.0;
  double potential_radius = 0.0;
  double potential_weight = 0.0;

  /// Range hopping_radius; patches keyed with radius max(2·range, potential_radius).
  StencilRule rule() const;
};

/// `key=value` lines (commas also separate entries); keys hopping_radius,
/// hopping_weight, potential_radius, potential_weight. Throws Parse.
BuiltinModel parse_stencil_config(std::istream& is);
BuiltinModel load_stencil_config(const std::string& path);
void write_stencil_config(std::ostream& os, const BuiltinModel& model);

/// A_ω restricted to ℓ²(ω ∩ Q) by plain truncation.
struct RestrictedOperator {
  PointList basis;  // sorted lexicographically
  Eigen::MatrixXd matrix;
  double volume = 0.0;
};

/// Throws MarginTooSmall unless Q inflated by patch_radius lies in the
/// reliable window; AsymmetricKernel when a symmetric rule is not (> 1e-12).
RestrictedOperator assemble(const PointSet& ps, const StencilRule& rule, const Region& q);

struct CovarianceReport {
  std::size_t sites = 0;         // interior rows examined
  std::size_t classes = 0;       // distinct patch classes among them
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
  double max_deviation = 0.0;
  std::vector<std::pair<Point, Point>> examples;  // first few violating site pairs
};

/// Compares rows of sites whose patches (radius range + patch_radius) are
/// translates. trials == 0 checks every site against its class representative;
/// otherwise `trials` random same-class pairs are drawn with the given seed.
CovarianceReport covariance_check(const PointSet& ps, const StencilRule& rule, std::size_t trials = 0,
                                  std::uint64_t seed = 1);

/// Maximum absolute row sum, an upper bound on the spectral norm.
double norm_bound(const RestrictedOperator& op);
double norm_bound(const Eigen::MatrixXd& m);

/// `# matrix rows=N cols=M` header then row-major entries, 17 significant digits.
void write_matrix(std::ostream& os, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(std::istream& is);

}  // namespace delone
