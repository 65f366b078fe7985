#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "delone/geometry.hpp"
#include "delone/patterns.hpp"
#include "delone/point_set.hpp"

namespace delone {

/// normal · y ≤ offset, with a unit normal. `neighbor` is the index (into the
/// owning PointSet) of the site whose bisector defines it, or npos for a
/// bounding-box side.
struct Halfspace {
  Point normal;
  double offset = 0.0;
  std::size_t neighbor = static_cast<std::size_t>(-1);
};

/// Convex Voronoi cell. In 1D `vertices` holds the two endpoints {a, b}; in 2D
/// the counterclockwise polygon, where halfspaces[k] supports the edge
/// vertices[k] → vertices[k+1].
struct VoronoiCell {
  Point site;
  PointList vertices;
  std::vector<Halfspace> halfspaces;

  int dim() const { return static_cast<int>(site.size()); }
  /// Length (1D) or area (2D).
  double measure() const;
  bool contains(const Point& y, double eps = kGeoEps) const;
  /// Distance from the site to the nearest supporting line (largest ball
  /// around the site inside the cell).
  double inradius() const;
  /// Largest distance from the site to a vertex.
  double outradius() const;
  VoronoiCell translated(const Point& t) const;
};

bool same_cell_shape(const VoronoiCell& a, const VoronoiCell& b, double eps = kGeoEps);

/// Cell of the stored site x. Neighbours farther than 4R cannot cut a cell
/// contained in B_{2R}(x), so only those within 4R are clipped against.
/// Throws NotASite or MarginTooSmall (B_{4R}(x) must lie in the raw window).
VoronoiCell voronoi_cell(const PointSet& ps, const Point& x);

/// Boundary of the tiling. 1D: sorted distinct cell endpoints. 2D: distinct
/// edges with lexicographically sorted endpoints, sorted.
struct TilingShape {
  int dim = 0;
  std::vector<double> endpoints;
  std::vector<std::pair<Point, Point>> edges;

  TilingShape translated(const Point& t) const;
  /// Endpoints / edges lying in the box. Finite tilings of different sets
  /// cover different regions, so shapes are compared on a common box.
  TilingShape restricted(const Box& box) const;
};

bool same_shape(const TilingShape& a, const TilingShape& b, double eps = kGeoEps);

struct Tiling {
  std::vector<std::size_t> sites;  // indices into the PointSet
  std::vector<VoronoiCell> cells;
  TilingShape shape;
  /// Edges seen from both adjacent cells / from one cell only.
  std::size_t shared_edges = 0;
  std::size_t unshared_edges = 0;
  /// Edges whose two copies disagree beyond eps.
  std::size_t mismatched_edges = 0;
  /// |Σ cell measures − measure of the covered region| / covered measure.
  double closure_error = 0.0;
};

/// Cells of all reliable-interior sites. Throws MarginTooSmall unless the
/// margin is at least 4R; InvalidSpec for dim > 2.
Tiling voronoi_tiling(const PointSet& ps);

/// Local data attached to a tile: ω ∩ B_{2R}(x) − x and T(x, ω) − x.
struct Decoration {
  Pattern patch;
  VoronoiCell shape;
};

bool same_decoration(const Decoration& a, const Decoration& b, double eps = kQuantEps);

struct DecoratedTiling {
  int dim = 0;
  PointList sites;
  std::vector<std::size_t> labels;  // index into alphabet per site
  std::vector<Decoration> alphabet;
  double r = 0.0;
  double R = 0.0;
};

/// Decoration for every reliable site plus the deduplicated alphabet.
DecoratedTiling decorate(const PointSet& ps);

/// Union of patch(x) + x over all sites. Throws InconsistentDecorations when
/// two overlapping patches disagree.
PointSet reconstruct(const DecoratedTiling& tiling);

/// Text export: one `cell` line per site (site ; vertices), then an `edges`
/// section.
void write_tiling(std::ostream& os, const Tiling& tiling);

}  // namespace delone
