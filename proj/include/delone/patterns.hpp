#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "delone/geometry.hpp"
#include "delone/point_set.hpp"

namespace delone {

/// A finite point set together with its support region. Points are kept
/// sorted lexicographically and lie in the support.
struct Pattern {
  PointList points;
  Region support;

  Pattern(PointList pts, Region supp);

  int dim() const { return support.dim(); }
  bool empty() const { return points.empty(); }
  Pattern translated(const Point& t) const;
};

/// Validating constructor: throws InvalidSpec if a point lies outside the
/// support or two points coincide (both within eps).
Pattern make_pattern(PointList points, Region support, double eps = kQuantEps);

/// Translation class of a pattern, stored through its canonical
/// representative: the lexicographically smallest point sits at the origin
/// (for an empty pattern the support's anchor does).
struct PatternClass {
  Pattern canonical;
  double quant = kQuantEps;

  /// Canonical text form: dimension, support descriptor, sorted points with
  /// 17 significant digits.
  std::string key() const;
};

bool operator==(const PatternClass& a, const PatternClass& b);

/// Coordinatewise equality of two patterns (points sorted) within eps.
bool same_pattern(const Pattern& a, const Pattern& b, double eps = kQuantEps);

PatternClass canonicalize(const Pattern& p, double eps = kQuantEps);

/// (ω ∩ q, q). Throws RegionOutsideWindow unless q lies in the reliable window.
Pattern extract_pattern(const PointSet& ps, const Region& q, double eps = kQuantEps);

/// Number of translations t with supp(P)+t ⊂ supp(X) and (supp(P)+t) ∩ X = P + t,
/// i.e. occurrences of P as a sub-pattern of X. Empty patterns count as 0.
std::size_t count_occurrences(const PatternClass& p, const Pattern& x, double eps = kQuantEps);

/// Positions t (sorted) at which the class occurs in x; count_occurrences is
/// the size of this list.
PointList occurrence_positions(const PatternClass& p, const Pattern& x, double eps = kQuantEps);

/// ω ∩ B_s(x) − x with support B_s(0).
Pattern centered_ball_patch(const PointSet& ps, const Point& x, double s, double eps = kQuantEps);

/// Deduplicated classes of the ball patches B_s(x) ∧ ω for all stored x whose
/// ball lies in the raw window. Throws MarginTooSmall when s > margin.
std::vector<PatternClass> ball_patches(const PointSet& ps, double s, double eps = kQuantEps);

/// The unique point of ω in B_{r/2}(x). Throws EmptyBall or MultiplePoints.
Point local_point_selector(const PointSet& ps, const Point& x, double eps = kQuantEps);

/// Append-only set of pattern classes with tolerance-aware lookup.
class PatternCatalog {
public:
  /// Index of an equal class, inserting it if new.
  std::size_t intern(const PatternClass& c);
  std::size_t find(const PatternClass& c) const;
  std::size_t size() const { return classes_.size(); }
  const std::vector<PatternClass>& classes() const { return classes_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
  std::vector<PatternClass> classes_;
};

}  // namespace delone
