#include <doctest.h>

#include <random>

#include "delone/dynamics.hpp"
#include "delone/error.hpp"
#include "helpers.hpp"

using namespace delone;
using test::interval;
using test::kPhi;

namespace {

Pattern pat1(std::initializer_list<double> xs, double lo, double hi) {
  PointList pts;
  for (double x : xs) pts.push_back(make_point({x}));
  return make_pattern(pts, Region::box(make_point({lo}), make_point({hi})));
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("van Hove boundary ratio decreases to zero") {
    for (int d = 1; d <= 3; ++d) {
      const VanHoveSequence seq(d, 1.0);
      double prev = 1e300;
      for (int n = 1; n <= 200; n *= 2) {
        const double r = seq.boundary_ratio(n, 0.5);
        CHECK(r < prev);
        prev = r;
      }
      CHECK(prev < 0.02 * d);
    }
  }

  TEST_CASE("lattice frequencies match closed forms") {
    const PointSet z = test::integers(-60, 60, 3);
    const VanHoveSequence seq(1, 1.0);
    const auto single = canonicalize(make_pattern({make_point({0.0})}, Region::ball(make_point({0.0}), 0.25)));
    const FrequencyEstimate a = frequency(z, single, seq, 50);
    for (const auto& lv : a.levels) {
      // Support containment: centres in [−n + 1/4, n − 1/4].
      CHECK(lv.count == static_cast<std::size_t>(2 * lv.n - 1));
      CHECK(lv.ratio == doctest::Approx((2.0 * lv.n - 1) / (2.0 * lv.n)));
    }
    CHECK(std::abs(a.frequency - 1.0) < 0.02);
    const FrequencyEstimate b = frequency(z, canonicalize(pat1({0, 1}, -0.25, 1.25)), seq, 50);
    for (const auto& lv : b.levels) CHECK(lv.count == static_cast<std::size_t>(2 * lv.n - 2));
    CHECK(std::abs(b.frequency - 1.0) < 0.05);
    CHECK_THROWS_AS(frequency(z, single, seq, 62), Error);
  }

  TEST_CASE("Fibonacci short-gap frequency against a gap census") {
    const PointSet f = test::fibonacci(-1000, 1000, 5);
    const auto shortp = canonicalize(pat1({0, 1}, -0.25, 1.25));
    const VanHoveSequence seq(1, 100.0);
    const FrequencyEstimate est = frequency(f, shortp, seq, 9);
    for (const auto& lv : est.levels) {
      const double h = 100.0 * lv.n;
      std::size_t census = 0;
      for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i](0) - f[i - 1](0) < 1.2 && f[i - 1](0) - 0.25 >= -h && f[i](0) + 0.25 <= h) ++census;
      CHECK(lv.count == census);
    }
    const double expected = (kPhi / std::sqrt(5.0)) / (kPhi * kPhi);
    CHECK(std::abs(est.frequency - expected) < 2e-3);
  }

  TEST_CASE("frequency spread across centres") {
    const PointSet f = test::fibonacci(-1000, 1000, 5);
    const auto shortp = canonicalize(pat1({0, 1}, -0.25, 1.25));
    const CenterSpread s =
        frequency_across_centers(f, shortp, 100, 3, {make_point({-500.0}), make_point({0.0}), make_point({400.0})});
    CHECK(s.ratios.size() == 3);
    CHECK(s.spread < 0.01);
  }

  TEST_CASE("bump masses") {
    const Bump tent(Bump::Profile::Tent, 1, 0.5);
    CHECK(tent(make_point({0.0})) == doctest::Approx(2.0));
    CHECK(tent.mass_in_box(make_point({0.0}), interval(-1, 1)) == 1.0);
    CHECK(tent.mass_in_box(make_point({3.0}), interval(-1, 1)) == 0.0);
    CHECK(tent.mass_in_box(make_point({1.0}), interval(-1, 1)) == doctest::Approx(0.5));
    CHECK(tent.mass_in_box(make_point({1.25}), interval(-1, 1)) == doctest::Approx(0.125));
    const Bump t2(Bump::Profile::Tent, 2, 0.5);
    const Box half{make_point({0.0, -5.0}), make_point({5.0, 5.0})};
    CHECK(t2.mass_in_box(make_point({0.0, 0.0}), half) == doctest::Approx(0.5).epsilon(1e-6));
    const Box quarter{make_point({0.0, 0.0}), make_point({5.0, 5.0})};
    CHECK(t2.mass_in_box(make_point({0.0, 0.0}), quarter) == doctest::Approx(0.25).epsilon(1e-6));
    const Bump flat(Bump::Profile::Flat, 2, 1.0, 2.0);
    CHECK(flat.integral() == 2.0);
    CHECK(flat.mass_in_box(make_point({0.0, 0.0}), half) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(Bump(Bump::Profile::Tent, 1, 1.0, 0.0), Error);
  }

  TEST_CASE("sandwich on the integers") {
    const PointSet z = test::integers(-20, 20, 3);
    const Pattern single = make_pattern({make_point({0.0})}, Region::ball(make_point({0.0}), 0.25));
    const SandwichResult s = sandwich_check(z, single, interval(-10.5, 10.5));
    CHECK(s.count == 21);
    CHECK(s.pass);
    CHECK(s.lower <= 21);
    CHECK(s.upper >= 21);
    CHECK(s.upper - s.lower <= static_cast<double>(s.boundary_centers) + 1e-12);
    const Pattern absent = pat1({0, 0.5}, -0.25, 0.75);
    const SandwichResult none = sandwich_check(z, absent, interval(-10.5, 10.5));
    CHECK(none.count == 0);
    CHECK(none.lower == 0.0);
    CHECK(none.upper == 0.0);
    try {
      (void)sandwich_check(z, pat1({1}, 0.5, 1.5), interval(-10.5, 10.5));
      FAIL("expected PatternNotAnchored");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::PatternNotAnchored);
    }
  }

  TEST_CASE("sandwich on Fibonacci ball patches") {
    const PointSet f = test::fibonacci(-10, 210, 2);
    for (const auto& cls : ball_patches(f, 2.0)) {
      const SandwichResult s = sandwich_check(f, cls.canonical, interval(0, 200));
      CHECK(s.pass);
      CHECK(s.count > 0);
      CHECK(s.upper - s.lower <= static_cast<double>(s.boundary_centers) + 1e-9);
    }
  }

  TEST_CASE("density") {
    for (int d = 1; d <= 2; ++d) {
      const PointSet z = generate(LatticeSpec::integer(d), test::square(-60, 60, d), 0);
      const DensityEstimate est = density(z, {10, 25, 50}, Point::Zero(d));
      CHECK(std::abs(est.density - 1.0) <= 1e-2 + 1e-12);
      const DensityEstimate half = density(dilate(z, 2.0), {100}, Point::Zero(d));
      const DensityEstimate base = density(z, {50}, Point::Zero(d));
      CHECK(half.levels[0].count == base.levels[0].count);
      CHECK(half.density == doctest::Approx(base.density / std::pow(2.0, d)));
    }
    const PointSet f = test::fibonacci(-1100, 1100, 0);
    const auto g = test::gaps(f);
    double mean = 0;
    for (double x : g) mean += x;
    mean /= static_cast<double>(g.size());
    CHECK(std::abs(density(f, {1000}, make_point({0.0})).density - 1.0 / mean) < 2e-3);
    CHECK_THROWS_AS(density(f, {2000}, make_point({0.0})), Error);
  }

  TEST_CASE("transverse sum") {
    const PointSet z = test::integers(-20, 20, 0);
    const SampledFunction tent{Region::ball(make_point({0.0}), 0.5),
                               [](const Point& p) { return std::max(0.0, 1.0 - 2.0 * std::abs(p(0))); }};
    CHECK(transverse_sum(z, tent) == 1.0);
    const SampledFunction zero{Region::ball(make_point({0.5}), 0.4), [](const Point&) { return 1.0; }};
    CHECK(transverse_sum(z, zero) == 0.0);
    // α^ω(h) = α^{ω+x}(h(· − x))
    const PointSet f = test::fibonacci(-50, 50, 0);
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
      const Point x = test::random_point(rng, 1, -5, 5);
      const Point c = test::random_point(rng, 1, -20, 20);
      auto h = [c](const Point& p) { return std::exp(-(p - c).squaredNorm()); };
      const SampledFunction base{Region::ball(c, 6.0), h};
      const SampledFunction moved{Region::ball(c + x, 6.0), [h, x](const Point& p) { return h(p - x); }};
      CHECK(transverse_sum(f, base) == doctest::Approx(transverse_sum(translate(f, x), moved)).epsilon(1e-12));
    }
  }

  TEST_CASE("groupoid axioms") {
    std::mt19937_64 rng(9);
    auto dyadic = [&](int dim) {
      std::uniform_int_distribution<int> k(-512, 512);
      Point p(dim);
      for (int i = 0; i < dim; ++i) p(i) = k(rng) / 64.0;
      return p;
    };
    for (int trial = 0; trial < 200; ++trial) {
      const int dim = 1 + trial % 2;
      const WindowId w{"fibonacci", dyadic(dim)};
      const GroupoidElement g{w, dyadic(dim)};
      const GroupoidElement h{w.shifted(-g.x), dyadic(dim)};
      const GroupoidElement k{h.window.shifted(-h.x), dyadic(dim)};
      CHECK(composable(g, h));
      const GroupoidElement gh = compose(g, h);
      CHECK(gh == GroupoidElement{w, g.x + h.x});
      CHECK(compose(gh, k) == compose(g, compose(h, k)));
      CHECK(invert(invert(g)) == g);
      CHECK(compose(invert(g), g) == source(g));
      CHECK(compose(g, invert(g)) == range(g));
      CHECK(compose(range(g), g) == g);
      CHECK(compose(g, source(g)) == g);
      const GroupoidElement bad{w.shifted(g.x), dyadic(dim)};
      if (!(g.x.isZero())) CHECK_THROWS_AS(compose(g, bad), Error);
    }
  }

  TEST_CASE("transversal points") {
    const PointSet z = test::integers(-5, 5, 0);
    CHECK(make_xpoint(z, make_point({2.0})).p(0) == 2.0);
    CHECK_THROWS_AS(make_xpoint(z, make_point({2.5})), Error);
  }
}
