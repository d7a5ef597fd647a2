#include <doctest.h>

#include <cmath>
#include <numbers>

#include "engel/adapted.hpp"
#include "engel/surfaces.hpp"
#include "support/oracles.hpp"

using namespace engel;
using P = RationalPolynomial;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }
const auto kStd = StructureCoefficients<Rational>::standard();
const P u1 = P::variable(0);
const P u2 = P::variable(1);

SurfaceChart chart(std::array<P, 4> c, double half = 1.0, const StructureCoefficients<Rational>& xi = kStd) {
  return SurfaceChart::from_polynomials(c, ParamBox::square(-half, half), xi);
}

const SurfaceChart kH = chart({u1, u2, P(), P()});
const SurfaceChart kV = chart({P(), u1, u2, P()});
const SurfaceChart kMixed = chart({u1, P(), u2, P()});
const SurfaceChart k14 = chart({u1, P(), P(), u2});
const SurfaceChart k34 = chart({P(), P(), u1, u2});
// BCH(s e1 + s e3, t e2).
const SurfaceChart kCurved = chart({u1, u2, P(q(1, 2)) * u1 * u2 + u1, P(q(1, 12)) * u1 * u1 * u2}, 0.5);

ExactParam ex(long a, long b, long d = 1) { return {q(a, d), q(b, d)}; }

std::array<double, 6> as_array(const TwoVector<double>& v) {
  std::array<double, 6> out{};
  for (std::size_t k = 0; k < 6; ++k) out[k] = v.at(kPairs[k][0], kPairs[k][1]);
  return out;
}

// Frame coefficients of the two chart derivatives, written out by the oracle.
std::array<std::array<double, 4>, 2> oracle_columns(const SurfaceChart& s, const Param& u) {
  const auto j = s.jet(u);
  std::array<std::array<double, 4>, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    const std::array<double, 4> d{j.jacobian[0][i], j.jacobian[1][i], j.jacobian[2][i], j.jacobian[3][i]};
    out[i] = oracle::coefficients_of_derivative(s.xi(), j.value, d);
  }
  return out;
}

}  // namespace

TEST_SUITE("surfaces") {
  TEST_CASE("chart minors agree with finite differences") {
    oracle::Gen g(41);
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
      const auto s = g.chart(g.xi());
      for (int k = 0; k < 10; ++k) {
        const auto u = g.param();
        const auto m = chart_minors(s, u);
        worst = std::max(worst, oracle::max_abs_diff(m, oracle::fd_minors(s, u)) / (1.0 + oracle::max_abs(m)));
      }
    }
    CHECK(worst < 1e-7);
  }

  TEST_CASE("exact and double minors agree") {
    oracle::Gen g(42);
    for (int n = 0; n < 20; ++n) {
      const auto s = g.chart(g.xi());
      const ExactParam u{Rational(g.rational(1, 3) / 2), Rational(g.rational(1, 3) / 2)};
      const auto e = chart_minors(s, u);
      const auto d = chart_minors(s, Param{u[0].get_d(), u[1].get_d()});
      for (std::size_t k = 0; k < 6; ++k) CHECK(d[k] == doctest::Approx(e[k].get_d()).epsilon(1e-12));
    }
  }

  TEST_CASE("tangent two-vector examples") {
    const auto h = tangent_two_vector(kH, ex(0, 0));
    CHECK(h.at(1, 2) == 1);
    for (int k = 1; k < 6; ++k) CHECK(h.c[static_cast<std::size_t>(k)] == 0);

    // X1 ^ X3 - (x1/2) X1 ^ X4 - (x3/2) X3 ^ X4 along the mixed plane.
    const auto m = tangent_two_vector(kMixed, ex(1, 2, 3));
    CHECK(m.at(1, 3) == 1);
    CHECK(m.at(1, 4) == q(-1, 6));
    CHECK(m.at(3, 4) == q(-1, 3));
    CHECK(m.at(1, 2) == 0);
    CHECK(m.at(2, 3) == 0);
    CHECK(m.at(2, 4) == 0);
  }

  TEST_CASE("derivative coefficients example") {
    const auto c = change_of_coefficients(kH, ex(1, 1));
    CHECK(c[0][0] == 1);
    CHECK(c[1][0] == 0);
    CHECK(c[2][0] == q(1, 2));
    CHECK(c[3][0] == q(-1, 6));
    CHECK(c[0][1] == 0);
    CHECK(c[1][1] == 1);
    CHECK(c[2][1] == q(-1, 2));
    CHECK(c[3][1] == q(1, 6));
  }

  TEST_CASE("closed form two-vector agrees with the wedge of frame coefficients") {
    oracle::Gen g(43);
    double worst_dual = 0.0;
    double worst_oracle = 0.0;
    for (int n = 0; n < 100; ++n) {
      const auto s = g.chart(g.xi());
      for (int k = 0; k < 10; ++k) {
        const auto u = g.param();
        const auto closed = as_array(tangent_two_vector(s, u));
        const auto dual = as_array(wedge_columns(change_of_coefficients(s, u)));
        const auto cols = oracle_columns(s, u);
        const auto ref = oracle::wedge(cols[0], cols[1]);
        const double scale = 1.0 + oracle::max_abs(ref);
        worst_dual = std::max(worst_dual, oracle::max_abs_diff(closed, dual) / scale);
        worst_oracle = std::max(worst_oracle, oracle::max_abs_diff(closed, ref) / scale);
      }
    }
    CHECK(worst_dual < 1e-10);
    CHECK(worst_oracle < 1e-10);
  }

  TEST_CASE("closed form two-vector is exact on random charts") {
    oracle::Gen g(44);
    for (int n = 0; n < 30; ++n) {
      const auto s = g.chart(g.xi());
      const ExactParam u{Rational(g.rational(1, 3) / 2), Rational(g.rational(1, 3) / 2)};
      REQUIRE(tangent_two_vector(s, u).c == wedge_columns(change_of_coefficients(s, u)).c);
    }
  }

  TEST_CASE("pointwise degree examples") {
    // The horizontal plane is not a subgroup: degree 2 only at the origin.
    CHECK(pointwise_degree(kH, ex(0, 0)) == 2);
    CHECK(pointwise_degree(kH, ex(0, 1, 2)) == 3);
    CHECK(pointwise_degree(kH, ex(1, 3, 7)) == 4);
    CHECK(pointwise_degree(kV, ex(1, 3, 7)) == 3);
    CHECK(pointwise_degree(k14, ex(0, 0)) == 4);
    CHECK(pointwise_degree(k34, ex(0, 0)) == 5);
    CHECK(pointwise_degree(kMixed, ex(0, 0)) == 3);
    CHECK(pointwise_degree(kMixed, ex(1, 0, 2)) == 4);
    CHECK(pointwise_degree(kMixed, ex(0, 1, 2)) == 5);
    CHECK(pointwise_degree(kMixed, Param{0.5, 0.0}) == 4);
    CHECK(pointwise_degree(kCurved, ex(1, 2, 10)) == 3);
  }

  TEST_CASE("surface degree and singular set") {
    CHECK(surface_degree(kH, 9).degree == 4);
    CHECK(surface_degree(kV, 9).degree == 3);
    CHECK(surface_degree(k14, 9).degree == 4);
    CHECK(surface_degree(k34, 9).degree == 5);
    const auto r = surface_degree(kMixed, 9);
    CHECK(r.degree == 5);
    CHECK(r.samples.size() == 81);
    CHECK(r.singular.size() == 9);
    for (const auto& u : r.singular) CHECK(u[1] == 0.0);
    CHECK(r.samples[1].u[1] > r.samples[0].u[1]);
    CHECK(surface_degree(kV, 9).singular.empty());
  }

  TEST_CASE("homogeneous tangent spaces") {
    CHECK(homogeneous_tangent_space(kH, {0.0, 0.0}).coordinate_indices == std::array<int, 2>{1, 2});
    const auto v = homogeneous_tangent_space(kV, {0.1, 0.2});
    CHECK(v.degree == 3);
    CHECK(v.coordinate_indices == std::array<int, 2>{2, 3});
    CHECK(homogeneous_tangent_space(k14, {0.0, 0.0}).coordinate_indices == std::array<int, 2>{1, 4});
    CHECK(homogeneous_tangent_space(k34, {0.0, 0.0}).coordinate_indices == std::array<int, 2>{3, 4});
  }

  TEST_CASE("degree is invariant under translation and reparametrization") {
    oracle::Gen g(45);
    for (int n = 0; n < 100; ++n) {
      const auto xi = g.xi();
      const auto s = g.chart(xi);
      const ExactParam u{Rational(g.rational(1, 4) / 4), Rational(g.rational(1, 4) / 4)};
      const int d = pointwise_degree(s, u);
      const auto t = s.left_translated(g.element());
      REQUIRE(pointwise_degree(t, u) == d);
      // Invertible affine change of parameters fixing u.
      const Rational a = g.nonzero_rational(3, 2);
      const Rational b = g.rational(3, 2);
      const std::array<P, 2> sub{P(a) * u1 + P(b) * u2 + P(u[0] - a * u[0] - b * u[1]), u2};
      const double ud0 = u[0].get_d();
      const double ud1 = u[1].get_d();
      const auto r = s.reparametrized(sub, ParamBox{{ud0 - 1.0 / 16, ud1 - 1.0 / 16}, {ud0 + 1.0 / 16, ud1 + 1.0 / 16}});
      REQUIRE(pointwise_degree(r, u) == d);
    }
  }

  TEST_CASE("translates of the vertical plane keep degree 3") {
    oracle::Gen g(46);
    for (int n = 0; n < 50; ++n) {
      const auto t = kV.left_translated(g.element());
      REQUIRE(surface_degree(t, 5).degree == 3);
      REQUIRE(surface_degree(t, 5).singular.empty());
    }
  }

  TEST_CASE("boundary degree") {
    CHECK(boundary_degree(kH, {0.0, 0.0}, 0.5, 64) == 3);
    CHECK(boundary_degree(kV, {0.0, 0.0}, 0.5, 64) == 2);
    CHECK(boundary_degree(kMixed, {0.0, 0.0}, 0.5, 64) == 3);
    CHECK_THROWS_AS(boundary_degree(kH, {0.0, 0.0}, -1.0, 64), std::invalid_argument);
  }

  TEST_CASE("degree constraint residuals") {
    const auto full = ParamBox::square(-1, 1);
    const auto v = degree_constraint_residuals(kV, full, 9);
    CHECK(v.degree_at_most_3(1e-12));
    CHECK(!v.degree_at_most_2(1e-12));
    CHECK(!degree_constraint_residuals(kH, full, 9).degree_at_most_3(1e-12));
    const auto m = degree_constraint_residuals(kMixed, full, 9);
    CHECK(m.y34 == doctest::Approx(0.5));
    CHECK(!m.degree_at_most_3(1e-12));
    const auto c = degree_constraint_residuals(kCurved, ParamBox::square(-0.5, 0.5), 9);
    CHECK(c.degree_at_most_3(1e-12));
  }

  TEST_CASE("graph residual over (x1, x3)") {
    const auto s = chart({u1, P(), u2, P(q(1, 2)) * u1 * u2});
    const auto m = kMixed;
    oracle::Gen g(47);
    for (int n = 0; n < 20; ++n) {
      const auto u = g.param();
      CHECK(std::abs(firstv2_residual(s, u)) < 1e-14);
      CHECK(firstv2_residual(m, u) == doctest::Approx(-0.5 * u[0]));
    }
    CHECK_THROWS_AS(firstv2_residual(kV, {0.0, 0.0}), std::invalid_argument);
  }

  TEST_CASE("horizontality residual matches the contact-form oracle") {
    oracle::Gen g(48);
    for (int n = 0; n < 50; ++n) {
      const auto s = g.chart(g.xi());
      const auto box = ParamBox::square(-0.4, 0.4);
      double expected = 0.0;
      for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
          const auto cols = oracle_columns(s, {-0.4 + 0.2 * i, -0.4 + 0.2 * j});
          expected = std::max(expected, std::max(std::abs(cols[0][2]), std::abs(cols[1][2])) +
                                            std::max(std::abs(cols[0][3]), std::abs(cols[1][3])));
        }
      }
      REQUIRE(horizontality_residual(s, box, 5) == doctest::Approx(expected).epsilon(1e-10));
    }
    CHECK(horizontality_residual(kH, ParamBox::square(-1, 1), 5) > 0.0);
  }

  TEST_CASE("adapted frame on the curved surface") {
    const auto r = adapted_frame(kCurved, {0.1, 0.2});
    CHECK(r.degree == 3);
    CHECK(r.angle == doctest::Approx(-std::numbers::pi / 2));
    CHECK(r.xi.xi12 == doctest::Approx(1.0));
    CHECK(std::abs(r.xi.xi13) < 1e-12);
    CHECK(r.xi.xi23 == doctest::Approx(1.0));
    CHECK(r.graph_indices == std::array<int, 2>{1, 3});
    CHECK(r.induced_degrees == std::array<int, 2>{1, 2});
    CHECK(r.strata_ranks == std::array<int, 3>{1, 1, 0});
    CHECK(block_form_defect(r) < 1e-12);
    REQUIRE(r.chart.has_value());
    const auto v = r.chart->point({0.0, 0.0});
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(v[i]) < 1e-14);
  }

  TEST_CASE("adapted frame on each plane type") {
    CHECK(adapted_frame(kH, {0.0, 0.0}).degree == 2);
    const auto f14 = adapted_frame(k14, {0.0, 0.0});
    CHECK(f14.degree == 4);
    CHECK(f14.graph_indices == std::array<int, 2>{1, 4});
    CHECK(block_form_defect(f14) < 1e-12);
    const auto f34 = adapted_frame(k34, {0.0, 0.0});
    CHECK(f34.degree == 5);
    CHECK(f34.graph_indices == std::array<int, 2>{3, 4});
  }

  TEST_CASE("translates of the vertical plane rotate the horizontal tangent onto X2") {
    oracle::Gen g(49);
    for (int n = 0; n < 30; ++n) {
      const auto t = kV.left_translated(g.element());
      const auto r = adapted_frame(t, g.param(-0.5, 0.5));
      REQUIRE(r.degree == 3);
      REQUIRE(std::abs(r.xi.xi13) < 1e-12);
      REQUIRE(std::abs(std::abs(r.angle) - std::numbers::pi / 2) < 1e-12);
      REQUIRE(block_form_defect(r) < 1e-10);
    }
  }

  TEST_CASE("rotated structure coefficients") {
    const auto x = rotated_structure({1.0, 1.0, 0.0}, 0.0, 1.0, 1, 1);
    CHECK(x.xi12 == 1.0);
    CHECK(x.xi13 == 0.0);
    CHECK(x.xi23 == -1.0);
    const auto y = rotated_structure({2.0, 3.0, 4.0}, 0.6, 0.8, -1, -1);
    CHECK(y.xi12 == -2.0);
    CHECK(y.xi13 == doctest::Approx(0.6 * 3 + 0.8 * 4));
    CHECK(y.xi23 == doctest::Approx(-0.8 * 3 + 0.6 * 4));
  }
}
