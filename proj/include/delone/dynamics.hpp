#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "delone/geometry.hpp"
#include "delone/patterns.hpp"
#include "delone/point_set.hpp"

namespace delone {

/// Boxes Q_n = center + [−L₀n, L₀n]^d.
struct VanHoveSequence {
  int dim = 1;
  double L0 = 1.0;
  Point center;

  VanHoveSequence(int dim, double L0);
  VanHoveSequence(int dim, double L0, Point center);

  Region box(int n) const;
  /// |∂_s Q_n| / |Q_n| = ((2L₀n+2s)^d − (2L₀n−2s)^d) / (2L₀n)^d.
  double boundary_ratio(int n, double s) const;
};

struct FrequencyLevel {
  int n = 0;
  double volume = 0.0;
  std::size_t count = 0;
  double ratio = 0.0;
};

struct FrequencyEstimate {
  PatternClass pattern;
  std::vector<FrequencyLevel> levels;
  double frequency = 0.0;  // ratio at the top level
  double spread = 0.0;     // |top − previous| ratio
};

/// Occurrence counts of P in ω ∧ Q_n for n = 1..n_max. Throws WindowTooSmall
/// unless Q_{n_max} inflated by diam(P) lies in the reliable window.
FrequencyEstimate frequency(const PointSet& ps, const PatternClass& p, const VanHoveSequence& seq,
                            int n_max);

/// Frequency ratio at level n for each recentred sequence; max − min is the
/// reported spread across centres.
struct CenterSpread {
  std::vector<double> ratios;
  double spread = 0.0;
};
CenterSpread frequency_across_centers(const PointSet& ps, const PatternClass& p, double L0, int n,
                                      const PointList& centers);

/// Nonnegative bump centred at the origin: radial tent or flat (uniform) ball
/// profile with support radius `radius`. `scale` multiplies the unit-mass
/// profile, so integral() == scale.
class Bump {
public:
  enum class Profile { Tent, Flat };

  Bump(Profile profile, int dim, double radius, double scale = 1.0);

  double operator()(const Point& x) const;
  double integral() const { return scale_; }
  double radius() const { return radius_; }
  int dim() const { return dim_; }
  Profile profile() const { return profile_; }

  /// ∫_box bump(t − c) dt. Closed form in 1D, midpoint grid of pitch
  /// radius/32 (self-normalised) otherwise. Exactly 0 or scale when the support
  /// misses or lies inside the box.
  double mass_in_box(const Point& c, const Box& box) const;
  /// Mass over the open neighbourhood U_rad(box).
  double mass_in_neighborhood(const Point& c, const Box& box, double rad) const;

private:
  double grid_mass(const Point& c, const std::function<bool(const Point&)>& inside) const;

  Profile profile_;
  int dim_;
  double radius_;
  double scale_;
};

struct SandwichResult {
  double lower = 0.0;   // ∫_{Q⁻} f_P(ω + t) dt
  std::size_t count = 0;  // ♯_P (Q ∧ ω)
  double upper = 0.0;   // ∫_{Q⁺} f_P(ω + t) dt
  std::size_t centers = 0;           // occurrence centres near Q
  std::size_t boundary_centers = 0;  // centres within R_P + 2r of ∂Q
  bool pass = false;
};

/// Smoothed-counting sandwich for a pattern P with 0 ∈ Λ_P on a box Q, using a
/// tent bump of support radius g_scale · r/42. Throws PatternNotAnchored or
/// WindowTooSmall.
SandwichResult sandwich_check(const PointSet& ps, const Pattern& p, const Box& q, double g_scale = 1.0);

struct DensityLevel {
  double radius = 0.0;
  double volume = 0.0;
  std::size_t count = 0;
  double ratio = 0.0;
};

struct DensityEstimate {
  std::vector<DensityLevel> levels;
  double density = 0.0;  // ratio at the largest radius
  double spread = 0.0;
};

/// #(ω ∩ B_R(center)) / |B_R| for each radius. Throws WindowTooSmall.
DensityEstimate density(const PointSet& ps, const std::vector<double>& radii,
                        const Point& center);
DensityEstimate density(const PointSet& ps, const std::vector<double>& radii);

/// Compactly supported function, evaluated only inside its support.
struct SampledFunction {
  Region support;
  std::function<double(const Point&)> eval;
};

/// Σ_{p ∈ ω ∩ supp f} f(p) in lexicographic point order.
double transverse_sum(const PointSet& ps, const SampledFunction& f);

/// Names the closed set base + offset without storing it.
struct WindowId {
  std::string base;
  Point offset;

  WindowId shifted(const Point& t) const;
};

bool operator==(const WindowId& a, const WindowId& b);

/// Arrow (ω, x): ω − x → ω.
struct GroupoidElement {
  WindowId window;
  Point x;
};

bool operator==(const GroupoidElement& a, const GroupoidElement& b);

/// r(g2) = s(g1), i.e. g2's window is g1's window shifted by −x.
bool composable(const GroupoidElement& g1, const GroupoidElement& g2);
/// (ω, x)(ω − x, y) = (ω, x + y); throws NotComposable.
GroupoidElement compose(const GroupoidElement& g1, const GroupoidElement& g2);
/// (ω, x)⁻¹ = (ω − x, −x).
GroupoidElement invert(const GroupoidElement& g);
GroupoidElement unit(const WindowId& w, int dim);
GroupoidElement range(const GroupoidElement& g);
GroupoidElement source(const GroupoidElement& g);

/// Element (ω, p) of the transversal: p must be a point of ω.
struct XPoint {
  WindowId window;
  Point p;
};

/// Throws NotASite if p is not a stored point of ps.
XPoint make_xpoint(const PointSet& ps, const Point& p);

}  // namespace delone
