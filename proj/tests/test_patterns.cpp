#include <doctest.h>

#include <random>

#include "delone/error.hpp"
#include "delone/patterns.hpp"
#include "helpers.hpp"

using namespace delone;
using test::interval;

namespace {

Pattern pat1(std::initializer_list<double> xs, double lo, double hi) {
  PointList pts;
  for (double x : xs) pts.push_back(make_point({x}));
  return make_pattern(pts, Region::box(make_point({lo}), make_point({hi})));
}

// Brute-force occurrence count: every admissible t is a multiple of h because
// all coordinates are.
std::size_t grid_scan_count(const Pattern& p, const Pattern& x, double h) {
  const Box sp = p.support.bounding_box(), sx = x.support.bounding_box();
  const int d = p.dim();
  Eigen::VectorXi lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    lo(i) = static_cast<int>(std::floor((sx.lo(i) - sp.lo(i)) / h)) - 1;
    hi(i) = static_cast<int>(std::ceil((sx.hi(i) - sp.hi(i)) / h)) + 1;
    if (hi(i) < lo(i)) return 0;
  }
  std::size_t count = 0;
  Eigen::VectorXi k = lo;
  while (true) {
    const Point t = h * k.cast<double>();
    const Region moved = p.support.translated(t);
    bool ok = x.support.contains(moved);
    if (ok) {
      std::size_t inside = 0;
      for (const auto& q : x.points)
        if (moved.contains(q)) ++inside;
      ok = inside == p.points.size();
      for (const auto& pp : p.points) {
        bool hit = false;
        for (const auto& q : x.points) hit = hit || approx_equal(pp + t, q);
        ok = ok && hit;
      }
    }
    if (ok) ++count;
    int i = 0;
    while (i < d && k(i) == hi(i)) {
      k(i) = lo(i);
      ++i;
    }
    if (i == d) break;
    ++k(i);
  }
  return count;
}

}  // namespace

TEST_SUITE("patterns") {
  TEST_CASE("extract_pattern on the integers") {
    const PointSet z = test::integers(-10, 10, 0);
    const Pattern p = extract_pattern(z, Region::box(make_point({-0.5}), make_point({2.5})));
    REQUIRE(p.points.size() == 3);
    CHECK(p.points[0](0) == 0.0);
    CHECK(p.points[2](0) == 2.0);
    CHECK(extract_pattern(z, Region::box(make_point({0.2}), make_point({0.8}))).empty());
    CHECK_THROWS_AS(extract_pattern(z, Region::box(make_point({9.0}), make_point({10.5}))), Error);
  }

  TEST_CASE("extract_pattern on Fibonacci matches a direct filter") {
    const PointSet f = test::fibonacci(0, 100, 5);
    for (std::size_t i = 20; i < 60; i += 7) {
      const Point x = f[i];
      const Pattern p = extract_pattern(f, Region::ball(x, 3.0));
      std::vector<double> brute;
      for (const auto& q : f.points())
        if (std::abs(q(0) - x(0)) <= 3.0 + kQuantEps) brute.push_back(q(0));
      REQUIRE(p.points.size() == brute.size());
      for (std::size_t k = 0; k < brute.size(); ++k) CHECK(p.points[k](0) == brute[k]);
    }
  }

  TEST_CASE("canonical forms") {
    const PatternClass c = canonicalize(pat1({3}, 2.5, 3.5));
    CHECK(c.canonical.points[0](0) == 0.0);
    CHECK(c.canonical.support.as_box().lo(0) == doctest::Approx(-0.5));
    CHECK(c.canonical.support.as_box().hi(0) == doctest::Approx(0.5));
    CHECK(canonicalize(pat1({0, 1}, -0.25, 1.25)) == canonicalize(pat1({5, 6}, 4.75, 6.25)));
    CHECK_FALSE(canonicalize(pat1({0, 1}, -0.25, 1.25)) == canonicalize(pat1({0, 1.5}, -0.25, 1.75)));
    // Empty pattern: the support's lexicographically smallest corner goes to the origin.
    const PatternClass e = canonicalize(pat1({}, 2.0, 3.0));
    CHECK(e.canonical.support.as_box().lo(0) == 0.0);
  }

  TEST_CASE("canonicalize is idempotent and translation invariant") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const int d = 1 + trial % 2;
      PointList pts;
      for (int i = 0; i < 5; ++i) pts.push_back(test::random_point(rng, d, 0, 4));
      const Pattern p(pts, Region::box(Point::Constant(d, -0.1), Point::Constant(d, 4.1)));
      const PatternClass c = canonicalize(p);
      CHECK(canonicalize(c.canonical) == c);
      CHECK(canonicalize(c.canonical).key() == c.key());
      const Point t = test::random_point(rng, d, -1000, 1000);
      CHECK(canonicalize(p.translated(t)) == c);
    }
  }

  TEST_CASE("make_pattern validates") {
    CHECK_THROWS_AS(pat1({2}, 0, 1), Error);
    CHECK_THROWS_AS(pat1({0.5, 0.5}, 0, 1), Error);
  }

  TEST_CASE("count_occurrences examples") {
    const PatternClass single = canonicalize(make_pattern({make_point({0.0})}, Region::ball(make_point({0.0}), 0.25)));
    CHECK(count_occurrences(single, pat1({0, 1, 2}, -0.25, 2.25)) == 3);
    const Pattern self = pat1({0, 1, 3}, -0.5, 3.5);
    CHECK(count_occurrences(canonicalize(self), self) >= 1);
    CHECK(count_occurrences(canonicalize(pat1({0}, -5, 5)), pat1({0, 1, 2}, -0.25, 2.25)) == 0);
    CHECK(count_occurrences(canonicalize(pat1({}, 0, 1)), pat1({0, 1}, -1, 2)) == 0);
  }

  TEST_CASE("count_occurrences equals a brute-force grid scan") {
    std::mt19937_64 rng(5);
    const double h = 0.25;
    for (int trial = 0; trial < 150; ++trial) {
      const int d = 1 + trial % 2;
      std::uniform_int_distribution<int> coord(0, 12);
      PointList xs;
      while (xs.size() < 8) {
        Point p(d);
        for (int i = 0; i < d; ++i) p(i) = h * coord(rng);
        bool dup = false;
        for (const auto& q : xs) dup = dup || approx_equal(p, q);
        if (!dup) xs.push_back(p);
      }
      const Pattern x(xs, Region::box(Point::Constant(d, -0.5), Point::Constant(d, 3.5)));
      // Pattern: a sub-window of x, so it occurs at least once.
      const Point lo = h * Point::Constant(d, coord(rng) % 6);
      const Region sup = Region::box(lo, (lo.array() + 1.0 + h * (trial % 3)).matrix());
      PointList ps;
      for (const auto& q : xs)
        if (sup.contains(q)) ps.push_back(q);
      const Pattern p(ps, sup);
      if (p.empty()) continue;
      const PatternClass c = canonicalize(p);
      const std::size_t got = count_occurrences(c, x);
      CHECK(got == grid_scan_count(p, x, h));
      CHECK(got >= 1);
      const Point t = test::random_point(rng, d, -50, 50);
      CHECK(count_occurrences(c, x.translated(t)) == got);
    }
  }

  TEST_CASE("ball patches") {
    CHECK(ball_patches(test::integers(-20, 20, 2), 1.5).size() == 1);
    const auto fib_small = ball_patches(test::fibonacci(0, 400, 2), 1.6);
    const auto fib_large = ball_patches(test::fibonacci(0, 800, 2), 1.6);
    CHECK(fib_small.size() == fib_large.size());
    CHECK(fib_small.size() <= 4);
    const PerturbedLatticeSpec noisy{LatticeSpec::integer(1), 0.2, 7};
    const auto few = ball_patches(generate(noisy, interval(-25, 25), 2), 1.5);
    const auto many = ball_patches(generate(noisy, interval(-100, 100), 2), 1.5);
    CHECK(many.size() > few.size());
    try {
      (void)ball_patches(test::integers(-20, 20, 1), 1.5);
      FAIL("expected MarginTooSmall");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::MarginTooSmall);
    }
  }

  TEST_CASE("local point selector") {
    const PointSet z = test::integers(-10, 10, 0);
    CHECK(local_point_selector(z, make_point({0.2}))(0) == 0.0);
    CHECK(local_point_selector(z, make_point({0.9}))(0) == 1.0);
    const PointSet f = test::fibonacci(0, 100, 2);
    for (std::size_t i = 5; i + 5 < f.size(); i += 9) {
      const Point x = f[i] + make_point({0.1});
      const Point got = local_point_selector(f, x);
      CHECK(got(0) == f[i](0));
      for (const auto& q : f.points())
        if (q(0) != got(0)) CHECK(std::abs(q(0) - x(0)) > f.r() / 2);
    }
    // A wrong declaration exposes itself.
    const PointSet lying = z.with_constants(4.0, 4.0);
    try {
      (void)local_point_selector(lying, make_point({0.5}));
      FAIL("expected MultiplePoints");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::MultiplePoints);
    }
    const PointSet sparse = z.with_constants(0.5, 1.0);
    try {
      (void)local_point_selector(sparse, make_point({0.5}));
      FAIL("expected EmptyBall");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::EmptyBall);
    }
  }

  TEST_CASE("catalog deduplicates within tolerance") {
    PatternCatalog cat;
    CHECK(cat.intern(canonicalize(pat1({0, 1}, -0.5, 1.5))) == 0);
    CHECK(cat.intern(canonicalize(pat1({7, 8 + 1e-12}, 6.5, 8.5))) == 0);
    CHECK(cat.intern(canonicalize(pat1({0, 2}, -0.5, 2.5))) == 1);
    CHECK(cat.size() == 2);
  }
}
