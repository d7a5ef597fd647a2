#include <doctest.h>

#include <cmath>

#include "engel/distance.hpp"
#include "support/oracles.hpp"

using namespace engel;

namespace {

const auto kStdD = StructureCoefficients<double>::standard();

Point random_point(oracle::Gen& g, double scale = 1.0) {
  return Point(g.uniform(-scale, scale), g.uniform(-scale, scale), g.uniform(-scale, scale), g.uniform(-scale, scale));
}

}  // namespace

TEST_SUITE("group_geometry") {
  TEST_CASE("quasi-norm examples") {
    const QuasiNorm n;
    CHECK(n(Point(1, 0, 0, 0)) == 1.0);
    CHECK(n(Point(0, -3, 0, 0)) == 3.0);
    CHECK(n(Point(0, 0, 0.5, 0)) == doctest::Approx(1.0));
    CHECK(n(Point(0, 0, 0, 8.0 / 6.0)) == doctest::Approx(2.0));
    CHECK(n(Point(0, 0, 0, 0)) == 0.0);
    CHECK(n.unit_extent(2) == 0.5);
    CHECK_THROWS_AS((QuasiNorm{0.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((QuasiNorm{1.0, -1.0}.validate()), std::invalid_argument);
  }

  TEST_CASE("quasi-norm is homogeneous and symmetric") {
    oracle::Gen g(31);
    const QuasiNorm n;
    for (int k = 0; k < 1000; ++k) {
      const Point x = random_point(g);
      const double r = g.uniform(0.01, 10.0);
      REQUIRE(std::abs(n(dilate(r, x)) - r * n(x)) <= 1e-12 * (1.0 + r * n(x)));
      REQUIRE(n(group_inverse(x)) == n(x));
    }
  }

  TEST_CASE("distance is left invariant") {
    oracle::Gen g(32);
    for (int k = 0; k < 1000; ++k) {
      const auto xi = g.xi_double();
      const HomogeneousDistance d(QuasiNorm{}, xi);
      const Point x = random_point(g);
      const Point y = random_point(g);
      const Point z = random_point(g, 3.0);
      const double a = d(bch_product(z, x, xi), bch_product(z, y, xi));
      REQUIRE(std::abs(a - d(x, y)) <= 1e-12 * (1.0 + d(x, y)) * 10.0);
      REQUIRE(d(x, x) == 0.0);
    }
  }

  TEST_CASE("triangle sampler finds no defect for the defaults and detects a bad norm") {
    const HomogeneousDistance good(QuasiNorm{}, kStdD);
    const auto ok = triangle_defect_sampler(good, 100000, 7);
    CHECK(ok.max_defect <= 0.0);
    CHECK(ok.samples == 100000);
    const HomogeneousDistance bad(QuasiNorm{1e6, 1.0 / 6.0}, kStdD);
    CHECK(triangle_defect_sampler(bad, 100000, 7).max_defect > 0.0);
    // Same seed, same report.
    CHECK(triangle_defect_sampler(bad, 1000, 9).max_defect == triangle_defect_sampler(bad, 1000, 9).max_defect);
  }

  TEST_CASE("balls and boxes") {
    const Ball b{Point(0, 0, 0, 0), 2.0, HomogeneousDistance{}};
    CHECK(b.contains(Point(2, -2, 2, 8.0 / 6.0)));
    CHECK(!b.contains(Point(2.01, 0, 0, 0)));
    CHECK(b.diameter() == 4.0);
    const Box box{2.0};
    CHECK(box.contains(Point(2, -2, 4, -8)));
    CHECK(!box.contains(Point(0, 0, 4.01, 0)));
    CHECK(!box.contains(Point(0, 0, 0, 8.01)));
  }

  TEST_CASE("sampled diameter approaches twice the radius") {
    const HomogeneousDistance d;
    const double diam = sampled_ball_diameter(d, 0.5, 20000, 3);
    CHECK(diam <= 1.0 + 1e-12);
    CHECK(diam >= 0.9);
  }

  TEST_CASE("graded inner product and two-vector norm") {
    CHECK(inner_product({1, 2, 3, 4}, {1, 0, 1, 0}) == 4.0);
    TwoVector<double> c;
    c.at(1, 2) = 1.0;
    c.at(3, 4) = 0.5;
    CHECK(two_vector_norm(c) == doctest::Approx(std::sqrt(5.0) / 2.0));
  }
}
