#include "delone/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "delone/error.hpp"
#include "delone/format.hpp"
#include "delone/parallel.hpp"

namespace delone {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
// Slack on the 4R margin test: R carries a +ε rounding from certification.
constexpr double kMarginSlack = 1e-8;

double cross2(const Point& a, const Point& b) { return a(0) * b(1) - a(1) * b(0); }

struct Vertex {
  Point p;
  Halfspace out;  // supports the edge leaving this vertex
};

// Sutherland–Hodgman step against h, keeping per-edge labels.
std::vector<Vertex> clip(const std::vector<Vertex>& poly, const Halfspace& h) {
  std::vector<Vertex> out;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vertex& cur = poly[k];
    const Vertex& nxt = poly[(k + 1) % n];
    const double sc = h.normal.dot(cur.p) - h.offset;
    const double sn = h.normal.dot(nxt.p) - h.offset;
    const bool cin = sc <= kGeoEps, nin = sn <= kGeoEps;
    if (cin && nin) {
      out.push_back(cur);
    } else if (cin && !nin) {
      if (sc >= -kGeoEps) {
        out.push_back(Vertex{cur.p, h});
      } else {
        out.push_back(cur);
        const double t = sc / (sc - sn);
        out.push_back(Vertex{cur.p + t * (nxt.p - cur.p), h});
      }
    } else if (!cin && nin) {
      if (sn < -kGeoEps) {
        const double t = sc / (sc - sn);
        out.push_back(Vertex{cur.p + t * (nxt.p - cur.p), cur.out});
      }
    }
  }
  return out;
}

std::vector<Vertex> merge_close(std::vector<Vertex> poly) {
  bool changed = true;
  while (changed && poly.size() > 2) {
    changed = false;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const std::size_t j = (k + 1) % poly.size();
      if ((poly[k].p - poly[j].p).norm() <= kGeoEps) {
        // Edge k is degenerate: drop its start vertex.
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
        break;
      }
    }
  }
  return poly;
}

void require_declared_R(const PointSet& ps) {
  if (!(ps.R() > 0.0)) throw Error(Errc::InvalidSpec, "point set declares no covering radius R");
  if (ps.dim() > 2) throw Error(Errc::InvalidSpec, "Voronoi cells are implemented for dim <= 2");
}

void require_margin(const PointSet& ps, double factor) {
  if (ps.margin() + kMarginSlack < factor * ps.R())
    throw Error(Errc::MarginTooSmall, "margin " + format_sig(ps.margin(), 6) + " below " + format_sig(factor, 3) +
                                          "R = " + format_sig(factor * ps.R(), 6));
}

std::vector<std::size_t> reliable_sites(const PointSet& ps) {
  return ps.index().inside(ps.reliable_window(), kQuantEps);
}

VoronoiCell cell_at(const PointSet& ps, std::size_t idx) {
  const Point& x = ps[idx];
  const double R = ps.R();
  if (!ps.raw_window().contains(Region::ball(x, 4.0 * R), kMarginSlack))
    throw Error(Errc::MarginTooSmall, "B_{4R}(x) leaves the raw window");
  VoronoiCell cell;
  cell.site = x;
  if (ps.dim() == 1) {
    if (idx == 0 || idx + 1 >= ps.size())
      throw Error(Errc::InvalidSpec, "site has no neighbour on one side: declared R violated");
    const double a = 0.5 * (ps[idx - 1](0) + x(0)), b = 0.5 * (x(0) + ps[idx + 1](0));
    cell.vertices = {make_point({a}), make_point({b})};
    cell.halfspaces = {Halfspace{make_point({-1.0}), -a, idx - 1}, Halfspace{make_point({1.0}), b, idx + 1}};
    return cell;
  }
  const double s = 2.0 * R;
  std::vector<Vertex> poly{
      {make_point({x(0) - s, x(1) - s}), {make_point({0.0, -1.0}), -(x(1) - s), kNone}},
      {make_point({x(0) + s, x(1) - s}), {make_point({1.0, 0.0}), x(0) + s, kNone}},
      {make_point({x(0) + s, x(1) + s}), {make_point({0.0, 1.0}), x(1) + s, kNone}},
      {make_point({x(0) - s, x(1) + s}), {make_point({-1.0, 0.0}), -(x(0) - s), kNone}},
  };
  auto near = ps.index().within(x, 4.0 * R, kQuantEps);
  std::vector<std::pair<double, std::size_t>> order;
  for (auto j : near)
    if (j != idx) order.emplace_back((ps[j] - x).norm(), j);
  std::sort(order.begin(), order.end());
  for (const auto& [dist, j] : order) {
    const Point n = (ps[j] - x) / dist;
    poly = clip(poly, Halfspace{n, n.dot(0.5 * (ps[j] + x)), j});
    if (poly.size() < 3) throw Error(Errc::InvalidSpec, "Voronoi clipping collapsed the cell");
  }
  poly = merge_close(std::move(poly));
  for (auto& v : poly) {
    cell.vertices.push_back(v.p);
    cell.halfspaces.push_back(v.out);
  }
  return cell;
}

bool same_vertex_set(const PointList& a, const PointList& b, double eps) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    bool hit = false;
    for (const auto& q : b)
      if (approx_equal(p, q, eps)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

std::pair<Point, Point> canonical_edge(const Point& a, const Point& b) {
  return lex_compare(a, b, kGeoEps) <= 0 ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

double VoronoiCell::measure() const {
  if (dim() == 1) return vertices[1](0) - vertices[0](0);
  double area = 0.0;
  for (std::size_t k = 0; k < vertices.size(); ++k) area += cross2(vertices[k], vertices[(k + 1) % vertices.size()]);
  return 0.5 * area;
}

bool VoronoiCell::contains(const Point& y, double eps) const {
  for (const auto& h : halfspaces)
    if (h.normal.dot(y) > h.offset + eps) return false;
  return true;
}

double VoronoiCell::inradius() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& h : halfspaces) best = std::min(best, h.offset - h.normal.dot(site));
  return best;
}

double VoronoiCell::outradius() const {
  double best = 0.0;
  for (const auto& v : vertices) best = std::max(best, (v - site).norm());
  return best;
}

VoronoiCell VoronoiCell::translated(const Point& t) const {
  VoronoiCell c = *this;
  c.site += t;
  for (auto& v : c.vertices) v += t;
  for (auto& h : c.halfspaces) h.offset += h.normal.dot(t);
  return c;
}

bool same_cell_shape(const VoronoiCell& a, const VoronoiCell& b, double eps) {
  return approx_equal(a.site, b.site, eps) && same_vertex_set(a.vertices, b.vertices, eps);
}

VoronoiCell voronoi_cell(const PointSet& ps, const Point& x) {
  require_declared_R(ps);
  const std::size_t idx = ps.find(x);
  if (idx == PointIndex::npos) throw Error(Errc::NotASite, "point " + format_point(x, 12) + " is not a site");
  return cell_at(ps, idx);
}

TilingShape TilingShape::translated(const Point& t) const {
  TilingShape s = *this;
  for (auto& e : s.endpoints) e += t(0);
  for (auto& [a, b] : s.edges) {
    a += t;
    b += t;
  }
  return s;
}

TilingShape TilingShape::restricted(const Box& box) const {
  TilingShape s;
  s.dim = dim;
  for (double e : endpoints)
    if (e >= box.lo(0) && e <= box.hi(0)) s.endpoints.push_back(e);
  const Region r(box);
  for (const auto& [a, b] : edges)
    if (r.contains(a, 0.0) && r.contains(b, 0.0)) s.edges.emplace_back(a, b);
  return s;
}

bool same_shape(const TilingShape& a, const TilingShape& b, double eps) {
  if (a.dim != b.dim || a.endpoints.size() != b.endpoints.size() || a.edges.size() != b.edges.size()) return false;
  for (std::size_t i = 0; i < a.endpoints.size(); ++i)
    if (!approx_equal(a.endpoints[i], b.endpoints[i], eps)) return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    if (!approx_equal(a.edges[i].first, b.edges[i].first, eps) ||
        !approx_equal(a.edges[i].second, b.edges[i].second, eps))
      return false;
  return true;
}

Tiling voronoi_tiling(const PointSet& ps) {
  require_declared_R(ps);
  require_margin(ps, 4.0);
  Tiling t;
  t.sites = reliable_sites(ps);
  t.cells.resize(t.sites.size());
  parallel_for(t.sites.size(), [&](std::size_t i) { t.cells[i] = cell_at(ps, t.sites[i]); });
  t.shape.dim = ps.dim();

  std::map<std::size_t, std::size_t> slot;  // site index → position in t.sites
  for (std::size_t i = 0; i < t.sites.size(); ++i) slot[t.sites[i]] = i;

  double total = 0.0;
  for (const auto& c : t.cells) total += c.measure();
  double covered = 0.0;

  // Pair up edges by (site, neighbour).
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<Point, Point>>> by_pair;
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    const auto& c = t.cells[i];
    const std::size_t me = t.sites[i];
    const std::size_t nv = c.vertices.size();
    for (std::size_t k = 0; k < c.halfspaces.size(); ++k) {
      const std::size_t nb = c.halfspaces[k].neighbor;
      std::pair<Point, Point> seg = ps.dim() == 1 ? std::make_pair(c.vertices[k], c.vertices[k])
                                                  : canonical_edge(c.vertices[k], c.vertices[(k + 1) % nv]);
      if (nb == kNone || !slot.count(nb)) {
        ++t.unshared_edges;
        if (ps.dim() == 1) covered += c.halfspaces[k].normal(0) * c.vertices[k](0);
        else covered += 0.5 * cross2(c.vertices[k], c.vertices[(k + 1) % nv]);
      } else {
        by_pair[{std::min(me, nb), std::max(me, nb)}].push_back(seg);
      }
    }
  }
  for (const auto& [key, segs] : by_pair) {
    if (segs.size() != 2) {
      t.unshared_edges += segs.size();
      ++t.mismatched_edges;
      continue;
    }
    ++t.shared_edges;
    if (!approx_equal(segs[0].first, segs[1].first, 1e-7) || !approx_equal(segs[0].second, segs[1].second, 1e-7))
      ++t.mismatched_edges;
  }
  t.closure_error = total > 0.0 ? std::abs(total - covered) / total : 0.0;

  if (ps.dim() == 1) {
    for (const auto& c : t.cells) {
      t.shape.endpoints.push_back(c.vertices[0](0));
      t.shape.endpoints.push_back(c.vertices[1](0));
    }
    std::sort(t.shape.endpoints.begin(), t.shape.endpoints.end());
    std::vector<double> uniq;
    for (double e : t.shape.endpoints)
      if (uniq.empty() || e - uniq.back() > kGeoEps) uniq.push_back(e);
    t.shape.endpoints = std::move(uniq);
  } else {
    std::vector<std::pair<Point, Point>> edges;
    for (const auto& c : t.cells)
      for (std::size_t k = 0; k < c.vertices.size(); ++k)
        edges.push_back(canonical_edge(c.vertices[k], c.vertices[(k + 1) % c.vertices.size()]));
    auto less = [](const std::pair<Point, Point>& a, const std::pair<Point, Point>& b) {
      const int c = lex_compare(a.first, b.first, kGeoEps);
      if (c) return c < 0;
      return lex_compare(a.second, b.second, kGeoEps) < 0;
    };
    std::stable_sort(edges.begin(), edges.end(), less);
    for (auto& e : edges)
      if (t.shape.edges.empty() || !approx_equal(t.shape.edges.back().first, e.first, kGeoEps) ||
          !approx_equal(t.shape.edges.back().second, e.second, kGeoEps))
        t.shape.edges.push_back(std::move(e));
  }
  return t;
}

bool same_decoration(const Decoration& a, const Decoration& b, double eps) {
  return same_pattern(a.patch, b.patch, eps) && same_cell_shape(a.shape, b.shape, eps);
}

DecoratedTiling decorate(const PointSet& ps) {
  require_declared_R(ps);
  require_margin(ps, 4.0);
  DecoratedTiling out;
  out.dim = ps.dim();
  out.r = ps.r();
  out.R = ps.R();
  const auto sites = reliable_sites(ps);
  std::vector<Decoration> decs(sites.size(), Decoration{Pattern({}, Region::ball(Point::Zero(ps.dim()), 1.0)), {}});
  parallel_for(sites.size(), [&](std::size_t i) {
    const Point& x = ps[sites[i]];
    decs[i] = Decoration{centered_ball_patch(ps, x, 2.0 * ps.R(), kMarginSlack), cell_at(ps, sites[i]).translated(-x)};
  });
  for (std::size_t i = 0; i < sites.size(); ++i) {
    out.sites.push_back(ps[sites[i]]);
    std::size_t label = out.alphabet.size();
    for (std::size_t a = 0; a < out.alphabet.size(); ++a)
      if (same_decoration(out.alphabet[a], decs[i])) {
        label = a;
        break;
      }
    if (label == out.alphabet.size()) out.alphabet.push_back(decs[i]);
    out.labels.push_back(label);
  }
  return out;
}

PointSet reconstruct(const DecoratedTiling& tiling) {
  if (tiling.sites.size() != tiling.labels.size()) throw Error(Errc::InvalidSpec, "labels do not match sites");
  if (tiling.sites.empty()) throw Error(Errc::InvalidSpec, "no sites to reconstruct from");
  PointList all;
  for (std::size_t i = 0; i < tiling.sites.size(); ++i) {
    if (tiling.labels[i] >= tiling.alphabet.size()) throw Error(Errc::InvalidSpec, "label outside alphabet");
    for (const auto& p : tiling.alphabet[tiling.labels[i]].patch.points) all.push_back(p + tiling.sites[i]);
  }
  std::sort(all.begin(), all.end(), LexLess{});
  PointList uniq;
  for (auto& p : all) {
    bool dup = false;
    for (auto it = uniq.rbegin(); it != uniq.rend() && std::abs((*it)(0) - p(0)) <= kQuantEps; ++it)
      if (approx_equal(*it, p, kQuantEps)) {
        dup = true;
        break;
      }
    if (!dup) uniq.push_back(std::move(p));
  }

  Point lo = tiling.sites.front(), hi = tiling.sites.front();
  for (const auto& s : tiling.sites) {
    lo = lo.cwiseMin(s);
    hi = hi.cwiseMax(s);
  }
  const double cell = tiling.R > 0.0 ? tiling.R : 1.0;
  const PointIndex index(uniq, cell);
  // Every recovered point well inside a site's ball must appear in that site's patch.
  const double inner = 2.0 * tiling.R - 1e-7;
  for (std::size_t i = 0; i < tiling.sites.size(); ++i) {
    const Pattern& patch = tiling.alphabet[tiling.labels[i]].patch;
    for (auto j : index.within(tiling.sites[i], inner, 0.0)) {
      const Point rel = uniq[j] - tiling.sites[i];
      bool found = false;
      for (const auto& q : patch.points)
        if (approx_equal(q, rel, kQuantEps)) {
          found = true;
          break;
        }
      if (!found)
        throw Error(Errc::InconsistentDecorations,
                    "patch at " + format_point(tiling.sites[i], 12) + " misses point " + format_point(uniq[j], 12));
    }
  }
  PointList kept;
  for (const auto& p : uniq)
    if (((p - lo).array() >= -kQuantEps).all() && ((hi - p).array() >= -kQuantEps).all()) kept.push_back(p);
  return PointSet(tiling.dim, std::move(kept), Box{lo, hi}, 0.0, tiling.r, tiling.R, "reconstructed");
}

void write_tiling(std::ostream& os, const Tiling& tiling) {
  for (const auto& c : tiling.cells) {
    os << "cell " << format_point(c.site) << " ;";
    for (const auto& v : c.vertices) os << " " << format_point(v) << " ;";
    os << "\n";
  }
  os << "edges\n";
  if (tiling.shape.dim == 1) {
    for (double e : tiling.shape.endpoints) os << format_sig(e) << "\n";
  } else {
    for (const auto& [a, b] : tiling.shape.edges) os << format_point(a) << " " << format_point(b) << "\n";
  }
}

}  // namespace delone
