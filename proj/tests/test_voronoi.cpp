#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "delone/error.hpp"
#include "delone/voronoi.hpp"
#include "helpers.hpp"

using namespace delone;
using test::interval;
using test::kPhi;

TEST_SUITE("voronoi") {
  TEST_CASE("integer and square lattice cells") {
    const PointSet z = test::integers(-10, 10, 3);
    const VoronoiCell c = voronoi_cell(z, make_point({0.0}));
    CHECK(c.vertices[0](0) == -0.5);
    CHECK(c.vertices[1](0) == 0.5);
    const PointSet z2 = generate(LatticeSpec::integer(2), test::square(-4, 4), 3);
    const VoronoiCell s = voronoi_cell(z2, make_point({0.0, 0.0}));
    REQUIRE(s.vertices.size() == 4);
    CHECK(s.measure() == doctest::Approx(1.0));
    for (const auto& v : s.vertices) CHECK(v.cwiseAbs().maxCoeff() == doctest::Approx(0.5));
    for (const auto& h : s.halfspaces) CHECK(h.neighbor != static_cast<std::size_t>(-1));
  }

  TEST_CASE("errors") {
    const PointSet z = test::integers(-10, 10, 3);
    auto code = [&](const Point& x, const PointSet& ps) {
      try {
        (void)voronoi_cell(ps, x);
      } catch (const Error& e) {
        return e.code();
      }
      return Errc::Io;
    };
    CHECK(code(make_point({0.5}), z) == Errc::NotASite);
    CHECK(code(make_point({12.0}), z) == Errc::MarginTooSmall);
    CHECK_THROWS_AS(voronoi_tiling(test::integers(-10, 10, 1)), Error);
  }

  TEST_CASE("Fibonacci cells are half-sums of adjacent gaps") {
    const PointSet f = test::fibonacci(0, 200, 4);
    const std::set<double> allowed{1.0, (1 + kPhi) / 2, kPhi};
    const Tiling t = voronoi_tiling(f);
    CHECK(t.cells.size() > 100);
    for (const auto& c : t.cells) {
      const double len = c.measure();
      CHECK(std::any_of(allowed.begin(), allowed.end(), [&](double a) { return std::abs(a - len) < 1e-9; }));
      CHECK(c.inradius() >= f.r() / 2 - 1e-9);
      CHECK(c.outradius() <= 2 * f.R() + 1e-9);
    }
    CHECK(t.mismatched_edges == 0);
    CHECK(t.closure_error < 1e-12);
  }

  TEST_CASE("Ammann-Beenker tiling is consistent") {
    const PointSet ab = test::ammann_beenker(8, 3);
    const Tiling t = voronoi_tiling(ab);
    CHECK(t.cells.size() > 100);
    CHECK(t.mismatched_edges == 0);
    CHECK(t.closure_error < 1e-8);
    for (const auto& c : t.cells) {
      CHECK(c.inradius() >= ab.r() / 2 - 1e-9);
      CHECK(c.outradius() <= 2 * ab.R() + 1e-9);
    }
    // Membership agrees with nearest-site classification.
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 300; ++trial) {
      const Point y = test::random_point(rng, 2, -6, 6);
      const std::size_t nearest = ab.index().nearest(y).first;
      for (std::size_t i = 0; i < t.cells.size(); ++i) {
        if (!t.cells[i].contains(y, 0.0)) continue;
        const double dy = (ab[t.sites[i]] - y).norm();
        CHECK(dy <= (ab[nearest] - y).norm() + 1e-9);
      }
    }
  }

  TEST_CASE("far sites never change a cell") {
    const PointSet ab = test::ammann_beenker(8, 3);
    const std::size_t idx = ab.index().nearest(make_point({0.3, 0.2})).first;
    const VoronoiCell c = voronoi_cell(ab, ab[idx]);
    PointList extra = ab.points();
    const double far = 4 * ab.R() + 0.01;
    extra.push_back(ab[idx] + make_point({far, 0.0}));
    extra.push_back(ab[idx] + make_point({0.0, -far}));
    const PointSet more(2, extra, ab.window(), ab.margin(), ab.r(), ab.R(), "extra");
    CHECK(same_cell_shape(voronoi_cell(more, ab[idx]), c));
  }

  TEST_CASE("the shape map is not injective") {
    const PointSet z = test::integers(-10, 10, 3);
    const PointSet w = generate(test::two_motif(), interval(-10, 10), 3);
    const Tiling tz = voronoi_tiling(z), tw = voronoi_tiling(w);
    for (double e : tz.shape.endpoints) CHECK(std::abs(e - std::round(e - 0.5) - 0.5) < 1e-12);
    for (double e : tw.shape.endpoints) CHECK(std::abs(e - std::round(e - 0.5) - 0.5) < 1e-12);
    const DecoratedTiling dz = decorate(z), dw = decorate(w);
    CHECK(dz.alphabet.size() == 1);
    CHECK(dw.alphabet.size() == 2);
  }

  TEST_CASE("reconstruct recovers the set") {
    for (const PointSet& ps : {test::integers(-10, 10, 3), test::fibonacci(0, 100, 4),
                               generate(PerturbedLatticeSpec{LatticeSpec::integer(1), 0.2, 3}, interval(-20, 20), 4),
                               test::ammann_beenker(5, 3)}) {
      const DecoratedTiling d = decorate(ps);
      const PointSet back = reconstruct(d);
      const auto ids = ps.index().inside(ps.reliable_window());
      REQUIRE(back.size() == ids.size());
      // Coordinates agree to rounding, so compare as sets.
      for (auto i : ids) CHECK(back.find(ps[i]) != PointIndex::npos);
    }
  }

  TEST_CASE("inconsistent decorations are detected") {
    DecoratedTiling d = decorate(test::integers(-10, 10, 3));
    // Give one site a patch with a point its neighbours do not see.
    Decoration odd = d.alphabet[0];
    odd.patch.points.push_back(make_point({0.5}));
    d.alphabet.push_back(odd);
    d.labels[5] = 1;
    CHECK_THROWS_AS(reconstruct(d), Error);
  }

  TEST_CASE("Voronoi map commutes with translation") {
    const PointSet f = test::fibonacci(0, 60, 4);
    const Point t = make_point({2.75});
    CHECK(same_shape(voronoi_tiling(translate(f, t)).shape, voronoi_tiling(f).shape.translated(t)));
    const PointSet ab = test::ammann_beenker(5, 3);
    const Point t2 = make_point({1.5, -0.25});
    CHECK(same_shape(voronoi_tiling(translate(ab, t2)).shape, voronoi_tiling(ab).shape.translated(t2), 1e-8));
  }

  TEST_CASE("tiling export") {
    std::ostringstream os;
    write_tiling(os, voronoi_tiling(test::integers(-5, 5, 3)));
    const std::string s = os.str();
    CHECK(s.find("cell 0 ; -0.5 ; 0.5 ;") != std::string::npos);
    CHECK(s.find("edges\n") != std::string::npos);
  }

  TEST_CASE("shapes restricted to a common box") {
    const PointSet z = test::integers(-10, 10, 3);
    const PointSet w = generate(test::two_motif(), interval(-10, 10), 3);
    const TilingShape a = voronoi_tiling(z).shape, b = voronoi_tiling(w).shape;
    CHECK_FALSE(same_shape(a, b));
    CHECK(same_shape(a.restricted(interval(-10, 10)), b.restricted(interval(-10, 10))));
    CHECK(a.restricted(interval(-10, 10)).endpoints.size() == 20);
  }
}
