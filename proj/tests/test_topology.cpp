#include <doctest.h>

#include <random>

#include "delone/error.hpp"
#include "delone/topology.hpp"
#include "helpers.hpp"

using namespace delone;

namespace {

ClosedSetSample sample(std::initializer_list<double> xs, double w) {
  ClosedSetSample s;
  s.window_radius = w;
  for (double x : xs) s.points.push_back(make_point({x}));
  return s;
}

ClosedSetSample shifted_integers(double t, double w) {
  ClosedSetSample s;
  s.window_radius = w;
  for (int n = -100; n <= 100; ++n)
    if (std::abs(n + t) <= w) s.points.push_back(make_point({n + t}));
  return s;
}

ClosedSetSample random_sample(std::mt19937_64& rng, int dim, double w) {
  ClosedSetSample s;
  s.window_radius = w;
  const int n = std::uniform_int_distribution<int>(0, 12)(rng);
  for (int i = 0; i < n; ++i) {
    Point p = test::random_point(rng, dim, -w, w);
    if (p.norm() <= w) s.points.push_back(p);
  }
  return s;
}

}  // namespace

TEST_SUITE("topology") {
  TEST_CASE("capped Hausdorff examples") {
    const PointList a{make_point({0.0})}, b{make_point({0.3})}, c{make_point({3.0})}, none;
    CHECK(hausdorff_capped(a, a) == 0.0);
    CHECK(hausdorff_capped(none, a) == 1.0);
    CHECK(hausdorff_capped(none, none) == 0.0);
    CHECK(hausdorff_capped(a, b) == doctest::Approx(0.3));
    CHECK(hausdorff_capped(a, c) == 1.0);
  }

  TEST_CASE("triangle inequality counterexample") {
    const double eps = 0.01;
    const auto f = sample({1 - eps}, 3), g = sample({1 + eps}, 3), h = sample({}, 3);
    CHECK(dk_distance(f, g, 1) == doctest::Approx(2 * eps).epsilon(1e-12));
    CHECK(dk_distance(g, h, 1) == 0.0);
    CHECK(dk_distance(f, h, 1) == 1.0);
    CHECK(dk_distance(f, h, 1) > dk_distance(f, g, 1) + dk_distance(g, h, 1));
    CHECK(in_neighborhood(g, h, 0.5, 1));
    CHECK_FALSE(in_neighborhood(f, h, 0.5, 1));
  }

  TEST_CASE("integer shifts") {
    const auto f = shifted_integers(0, 10);
    for (double t : {0.1, 0.3, 0.5}) {
      const auto g = shifted_integers(t, 10);
      CHECK(hausdorff_truncated(g, f, 3) == doctest::Approx(std::max(t, 1 - t)).epsilon(1e-12));
      CHECK(dk_distance(g, f, 3) <= t + 1e-12);
      CHECK(in_neighborhood(f, g, t + 1e-12, 3));
    }
    CHECK(dk_distance(shifted_integers(0.3, 10), f, 3) == doctest::Approx(0.3));
    CHECK(dk_distance(f, f, 3) == 0.0);
  }

  TEST_CASE("window too small") {
    const auto f = sample({0.5}, 1.5);
    try {
      (void)dk_distance(f, f, 1);
      FAIL("expected WindowTooSmall");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::WindowTooSmall);
    }
  }

  TEST_CASE("d_k properties on random samples") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
      const int dim = 1 + trial % 2;
      const auto f = random_sample(rng, dim, 6), g = random_sample(rng, dim, 6);
      for (double k : {1.0, 2.0, 3.0}) {
        const double d = dk_distance(f, g, k);
        CHECK(d == dk_distance(g, f, k));
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
        CHECK(d <= dk_distance(f, g, k + 1) + 1e-15);
        CHECK(d <= hausdorff_truncated(f, g, k) + 1e-15);
      }
      const Point t = test::random_point(rng, dim, -0.6, 0.6);
      if (t.norm() <= 1.0) CHECK(dk_distance(shifted(f, t), f, 3) <= t.norm() + 1e-12);
    }
  }

  TEST_CASE("stereographic embedding") {
    CHECK(approx_equal(stereo_embed(make_point({0.0, 0.0})), Eigen::Vector3d(0, 0, -1)));
    CHECK(stereo_embed(make_point({0.6, 0.8}))(2) == doctest::Approx(0.0));
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 500; ++trial) {
      const Point x = test::random_point(rng, 2, -50, 50), y = test::random_point(rng, 2, -50, 50);
      const auto ex = stereo_embed(x), ey = stereo_embed(y);
      CHECK(std::abs(ex.norm() - 1.0) <= 1e-12);
      const double to_inf = (ex - stereo_infinity(2)).norm();
      CHECK(std::abs(to_inf - 2.0 / std::sqrt(1 + x.squaredNorm())) <= 1e-12);
      CHECK(to_inf <= 42.0 / x.norm());
      CHECK((ex - ey).norm() <= 2.0 * (x - y).norm() + 1e-12);
    }
  }

  TEST_CASE("rho metric") {
    const auto f = shifted_integers(0, 20);
    CHECK(rho_metric(f, f).value == 0.0);
    CHECK(rho_metric(sample({0.0}, 20), sample({}, 20)).value == 1.0);
    for (double t : {0.01, 0.1, 0.4}) CHECK(rho_metric(f, shifted_integers(t, 20)).value <= 2 * t + 1e-12);
    CHECK_THROWS_AS(rho_metric(sample({0.0}, 3), sample({0.0}, 3)), Error);
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = random_sample(rng, 2, 20), b = random_sample(rng, 2, 20), c = random_sample(rng, 2, 20);
      const double ab = rho_metric(a, b).value, bc = rho_metric(b, c).value, ac = rho_metric(a, c).value;
      CHECK(ab == rho_metric(b, a).value);
      CHECK(ac <= ab + bc + 1e-12);
    }
  }

  TEST_CASE("local match") {
    const PointSet f = test::fibonacci(-60, 60, 5);
    auto t0 = local_match(f, f, 20, 0.2);
    REQUIRE(t0);
    CHECK((*t0).norm() == 0.0);
    const PointSet g = translate(f, make_point({0.1}));
    auto t1 = local_match(f, g, 20, 0.2);
    REQUIRE(t1);
    CHECK((*t1)(0) == doctest::Approx(0.1));
    auto back = local_match(g, f, 20, 0.2);
    REQUIRE(back);
    CHECK((*back)(0) == doctest::Approx(-0.1));
    const PointSet z = test::integers(-30, 30, 0), zh = translate(z, make_point({0.5}));
    CHECK_FALSE(local_match(z, zh, 10, 0.2).has_value());
    CHECK_THROWS_AS(local_match(z, z, 40, 0.2), Error);
  }

  TEST_CASE("sample_around recentres") {
    const PointSet z = test::integers(-10, 10, 0);
    const auto s = sample_around(z, make_point({2.0}));
    CHECK(s.window_radius == doctest::Approx(8.0));
    CHECK(s.points.size() == 17);
  }
}
