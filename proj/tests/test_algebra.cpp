#include <doctest.h>

#include "engel/algebra.hpp"
#include "support/oracles.hpp"

using namespace engel;
using E = AlgebraElement<Rational>;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }
const auto kStd = StructureCoefficients<Rational>::standard();

}  // namespace

TEST_SUITE("graded_algebra") {
  TEST_CASE("rational literals are canonical") {
    CHECK(parse_rational("6/4") == q(3, 2));
    CHECK(parse_rational("-0.25") == q(-1, 4));
    CHECK(parse_rational("1e-3") == q(1, 1000));
    CHECK(parse_rational("10") == 10);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    const Rational c = make_rational(-6, -4);
    CHECK(c.get_den() == 2);
    CHECK(c.get_num() == 3);
  }

  TEST_CASE("bracket examples") {
    CHECK(bracket(E::basis(1), E::basis(2), kStd) == E::basis(3));
    CHECK(bracket(E::basis(2), E::basis(3), kStd) == E{});
    CHECK(bracket(E::basis(1), E::basis(3), kStd) == E::basis(4));
    oracle::Gen g(11);
    const auto x = g.element();
    CHECK(bracket(x, x, g.xi()) == E{});
  }

  TEST_CASE("bracket component formula") {
    oracle::Gen g(12);
    for (int n = 0; n < 200; ++n) {
      const auto x = g.element();
      const auto y = g.element();
      const auto xi = g.xi();
      const auto b = bracket(x, y, xi);
      CHECK(b[0] == 0);
      CHECK(b[1] == 0);
      CHECK(b[2] == xi.xi12 * (x[0] * y[1] - x[1] * y[0]));
      CHECK(b[3] == xi.xi13 * (x[0] * y[2] - x[2] * y[0]) + xi.xi23 * (x[1] * y[2] - x[2] * y[1]));
      CHECK(bracket(y, x, xi) == -b);
    }
  }

  TEST_CASE("bch examples") {
    const E x{q(1, 3), q(-2), q(5, 7), q(1, 9)};
    CHECK(bch_product(x, E{}, kStd) == x);
    CHECK(bch_product(E{}, x, kStd) == x);
    CHECK(bch_product(x, -x, kStd) == E{});
    CHECK(bch_product(E::basis(1), E::basis(2), kStd) == E{q(1), q(1), q(1, 2), q(1, 12)});
  }

  TEST_CASE("bch example agrees with the flow of the second frame field") {
    const auto y = oracle::frame_flow(StructureCoefficients<double>::standard(), 2, {1.0, 0.0, 0.0, 0.0});
    CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(y[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(y[2] - 0.5) < 1e-8);
    CHECK(std::abs(y[3] - 1.0 / 12.0) < 1e-8);
  }

  TEST_CASE("first-stratum product carries half the skew term") {
    oracle::Gen g(13);
    for (int n = 0; n < 200; ++n) {
      const E x{g.rational(), g.rational(), 0, 0};
      const E y{g.rational(), g.rational(), 0, 0};
      const auto xi = g.xi();
      const auto p = bch_product(x, y, xi);
      CHECK(p[2] == xi.xi12 * (x[0] * y[1] - x[1] * y[0]) / 2);
    }
  }

  TEST_CASE("group law properties hold exactly on random inputs") {
    oracle::Gen g(2024);
    for (int n = 0; n < 1000; ++n) {
      const auto xi = g.xi();
      const auto x = g.element();
      const auto y = g.element();
      const auto z = g.element();
      REQUIRE(bch_product(bch_product(x, y, xi), z, xi) == bch_product(x, bch_product(y, z, xi), xi));
      REQUIRE(bch_product(x, group_inverse(x), xi) == E{});
      REQUIRE(bch_product(group_inverse(x), x, xi) == E{});
      REQUIRE(bch_product(x, E{}, xi) == x);
      const Rational r = g.positive_rational();
      REQUIRE(dilate(r, bch_product(x, y, xi)) == bch_product(dilate(r, x), dilate(r, y), xi));
      const auto jacobi = bracket(x, bracket(y, z, xi), xi) + bracket(y, bracket(z, x, xi), xi) +
                          bracket(z, bracket(x, y, xi), xi);
      REQUIRE(jacobi == E{});
    }
  }

  TEST_CASE("dilations") {
    const E x{q(1), q(1), q(1), q(1)};
    CHECK(dilate(q(1), x) == x);
    CHECK(dilate(q(2), x) == E{q(2), q(2), q(4), q(8)});
    CHECK_THROWS_AS(dilate(q(0), x), std::invalid_argument);
    CHECK_THROWS_AS(dilate(q(-1), x), std::invalid_argument);
    CHECK_THROWS_AS(dilate(-0.5, Point(1.0, 0.0, 0.0, 0.0)), std::invalid_argument);
  }

  TEST_CASE("structure coefficient validation") {
    CHECK_THROWS_AS((StructureCoefficients<Rational>{0, 1, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((StructureCoefficients<Rational>{1, 0, 0}.validate()), std::invalid_argument);
    CHECK_NOTHROW((StructureCoefficients<Rational>{1, 0, 1}.validate()));
  }

  TEST_CASE("degree of multi-indices") {
    CHECK(degree_of_multiindex(1, 2) == 2);
    CHECK(degree_of_multiindex(2, 3) == 3);
    CHECK(degree_of_multiindex(1, 4) == 4);
    CHECK(degree_of_multiindex(3, 4) == 5);
    CHECK_THROWS(degree_of_multiindex(2, 2));
    CHECK_THROWS(degree_of_multiindex(0, 3));
    CHECK_THROWS(degree_of_multiindex(3, 5));
  }

  TEST_CASE("two-vector degree") {
    TwoVector<Rational> c;
    c.at(2, 3) = 1;
    CHECK(two_vector_degree(c) == 3);
    CHECK_THROWS_AS(two_vector_degree(TwoVector<Rational>{}), std::invalid_argument);

    // X1^X3 - (x1/2) X1^X4 - (x3/2) X3^X4.
    auto c13 = [](Rational x1, Rational x3) {
      TwoVector<Rational> v;
      v.at(1, 3) = 1;
      v.at(1, 4) = -x1 / 2;
      v.at(3, 4) = -x3 / 2;
      return v;
    };
    CHECK(two_vector_degree(c13(1, 0)) == 4);
    CHECK(two_vector_degree(c13(0, 1)) == 5);
    CHECK(two_vector_degree(c13(0, 0)) == 3);

    TwoVector<double> noisy;
    noisy.at(1, 2) = 1.0;
    noisy.at(3, 4) = 1e-13;
    CHECK(two_vector_degree(noisy) == 2);
    CHECK(two_vector_degree(noisy, DegreePolicy{1e-14}) == 5);
  }

  TEST_CASE("vector degree") {
    CHECK(vector_degree(std::array<Rational, 4>{1, 0, 0, 0}) == 1);
    CHECK(vector_degree(std::array<Rational, 4>{1, 0, 1, 0}) == 2);
    CHECK(vector_degree(std::array<double, 4>{0.0, 0.0, 0.0, 2.0}) == 3);
  }
}
