#include <doctest.h>

#include <cmath>

#include "engel/density.hpp"
#include "engel/errors.hpp"
#include "support/oracles.hpp"

using namespace engel;
using P = RationalPolynomial;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }
const auto kStd = StructureCoefficients<Rational>::standard();
const P u1 = P::variable(0);
const P u2 = P::variable(1);

SurfaceChart chart(std::array<P, 4> c, double half = 1.0) {
  return SurfaceChart::from_polynomials(c, ParamBox::square(-half, half), kStd);
}

const SurfaceChart kV = chart({P(), u1, u2, P()});
const SurfaceChart kMixed = chart({u1, P(), u2, P()});
const SurfaceChart kCurved = chart({u1, u2, P(q(1, 2)) * u1 * u2 + u1, P(q(1, 12)) * u1 * u1 * u2}, 0.5);

QuadratureSpec spec(int resolution, int levels) {
  QuadratureSpec s;
  s.resolution = resolution;
  s.levels = levels;
  return s;
}

SearchSpec light_search() {
  SearchSpec s;
  s.grid = 5;
  s.coarse_resolution = 16;
  s.polish_resolution = 32;
  s.starts = 2;
  s.max_evaluations = 120;
  return s;
}

}  // namespace

TEST_SUITE("density") {
  TEST_CASE("slice areas at the origin") {
    const HomogeneousDistance d;
    const Point o(0, 0, 0, 0);
    CHECK(slice_area(d, Plane::coordinate(2, 3), o, 1.0, 32) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(slice_area(d, Plane::coordinate(1, 4), o, 1.0, 32) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(slice_area(d, Plane::coordinate(3, 4), o, 1.0, 32) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(slice_area(d, Plane::coordinate(1, 2), o, 1.0, 32) > 0.0);
    CHECK(Plane::coordinate(1, 4).homogeneous_dimension() == 4);
    CHECK(Plane::coordinate(3, 4).homogeneous_dimension() == 5);
  }

  TEST_CASE("slice areas are dilation covariant") {
    oracle::Gen g(61);
    const HomogeneousDistance d;
    for (const auto& [a, b] : {std::pair{2, 3}, std::pair{1, 4}, std::pair{3, 4}}) {
      const Plane v = Plane::coordinate(a, b);
      const int n = v.homogeneous_dimension();
      for (int k = 0; k < 5; ++k) {
        const Point u(g.uniform(-0.5, 0.5), g.uniform(-0.5, 0.5), g.uniform(-0.1, 0.1), g.uniform(-0.05, 0.05));
        const double r = g.uniform(0.5, 2.0);
        const auto lhs = slice_area(d, v, dilate(r, u), r, spec(64, 3));
        const auto rhs = slice_area(d, v, u, 1.0, spec(64, 3));
        CHECK(lhs.value == doctest::Approx(std::pow(r, n) * rhs.value).epsilon(1e-3));
      }
    }
  }

  TEST_CASE("spherical factors of the coordinate planes") {
    const HomogeneousDistance d;
    const auto b23 = spherical_factor(d, Plane::coordinate(2, 3), spec(16, 2), light_search());
    CHECK(b23.value.value == doctest::Approx(2.0).epsilon(1e-6));
    const auto b34 = spherical_factor(d, Plane::coordinate(3, 4), spec(16, 2), light_search());
    CHECK(b34.value.value == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  }

  TEST_CASE("spherical factor does not depend on the orientation of the basis") {
    const HomogeneousDistance d;
    Plane flipped = Plane::coordinate(1, 4);
    flipped.v1[0] = -1.0;
    std::swap(flipped.v1, flipped.v2);
    std::swap(flipped.w1, flipped.w2);
    const double a = spherical_factor(d, Plane::coordinate(1, 4), spec(16, 2), light_search()).value.value;
    const double b = spherical_factor(d, flipped, spec(16, 2), light_search()).value.value;
    CHECK(a == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK(b == doctest::Approx(a).epsilon(1e-9));
  }

  TEST_CASE("plane from a homogeneous tangent space") {
    const auto t = homogeneous_tangent_space(kV, {0.2, 0.1});
    const Plane v = Plane::from_tangent_space(t);
    CHECK(v.homogeneous_dimension() == 3);
    const HomogeneousDistance d;
    CHECK(slice_area(d, v, Point(0, 0, 0, 0), 1.0, 32) == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("Federer density of the vertical plane") {
    const HomogeneousDistance d;
    const auto e = federer_density(kV, d, {0.0, 0.0}, 3, {0.25, 0.125}, spec(16, 2), light_search());
    CHECK(e.radii.size() == 2);
    CHECK(e.limit == doctest::Approx(2.0).epsilon(1e-6));
    for (double c : e.centered) CHECK(c == doctest::Approx(2.0).epsilon(1e-9));
    for (std::size_t k = 0; k < e.maximized.size(); ++k) CHECK(e.maximized[k] >= e.centered[k] - 1e-9);
  }

  TEST_CASE("Federer density rejects balls leaving the chart") {
    const HomogeneousDistance d;
    CHECK_THROWS_AS(federer_density(kV, d, {0.9, 0.0}, 3, {0.5}, spec(16, 2), light_search()), DomainError);
  }

  TEST_CASE("eta map") {
    const auto z = eta_map({2.0, -2.0}, {1, 3});
    CHECK(z[0] == 2.0);
    CHECK(z[1] == doctest::Approx(-8.0 / 3.0));
    CHECK(eta_map({-3.0, 0.0}, {2, 2})[0] == doctest::Approx(-4.5));
    CHECK(eta_map({0.0, 0.0}, {1, 2})[1] == 0.0);
    CHECK_THROWS_AS(eta_map({1.0, 1.0}, {0, 1}), std::invalid_argument);
  }

  TEST_CASE("blow-up of a coset of a subgroup is exact") {
    const auto coset = chart({u1, P(), P(), u2}).left_translated(AlgebraElement<Rational>{0, 1, 0, 0});
    const auto fit = gamma_expansion(coset, {0.1, -0.2});
    CHECK(fit.frame.degree == 4);
    CHECK(fit.frame.graph_indices == std::array<int, 2>{1, 4});
    for (const auto& c : fit.components) {
      if (c.graph) {
        CHECK(c.graph_deviation < 1e-12);
      } else {
        CHECK(c.exact_zero);
      }
    }
  }

  TEST_CASE("blow-up of the curved surface vanishes faster than the required degree") {
    const auto fit = gamma_expansion(kCurved, {0.1, 0.2});
    CHECK(fit.frame.degree == 3);
    for (const auto& c : fit.components) {
      if (c.graph) {
        CHECK(c.graph_deviation < 1e-10);
        continue;
      }
      CHECK(!c.exact_zero);
      CHECK(c.slope > c.required_degree + 0.5);
    }
    CHECK(fit.components[1].slope == doctest::Approx(2.0).epsilon(0.02));
    CHECK(fit.components[3].slope == doctest::Approx(5.0).epsilon(0.02));
  }

  TEST_CASE("box and ball comparison constant") {
    const auto def = box_ball_lambda(QuasiNorm{}, 20000, 1);
    CHECK(def.lambda == doctest::Approx(563.0 / 1024.0).epsilon(2.0 / 1024.0));
    CHECK(def.inner_violations == 0);
    CHECK(def.outer_violations == 0);
    CHECK(box_ball_lambda(QuasiNorm{1.0, 1.0}, 20000, 1).lambda == 1.0);
  }

  TEST_CASE("divergence probe on the mixed plane") {
    const HomogeneousDistance d;
    const auto radii = dyadic_radii(3, 6);
    const auto p = divergence_probe(kMixed, d, {0.0, 0.0}, 5.0, radii, spec(16, 2));
    CHECK(p.area_slope == doctest::Approx(3.0).epsilon(0.01));
    CHECK(p.ratio_slope == doctest::Approx(-2.0).epsilon(0.01));
    const auto v = divergence_probe(kV, d, {0.0, 0.0}, 3.0, radii, spec(16, 2));
    CHECK(std::abs(v.ratio_slope) < 0.01);
  }

  TEST_CASE("slope fit and dyadic radii") {
    const auto r = dyadic_radii(3, 5);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == 0.125);
    CHECK(r[2] == 1.0 / 32.0);
    double res = 1.0;
    CHECK(fit_slope({0, 1, 2, 3}, {1, 3, 5, 7}, &res) == doctest::Approx(2.0));
    CHECK(res < 1e-12);
  }
}
