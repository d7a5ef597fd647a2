#pragma once

// Graded Lie algebra of the Engel group in exponential coordinates.
//
// Elements are coordinate vectors w.r.t. a graded basis (Y1, Y2, Y3, Y4)
// with degrees (1, 1, 2, 3) and brackets
//   [Y1,Y2] = xi12 Y3,  [Y1,Y3] = xi13 Y4,  [Y2,Y3] = xi23 Y4.
// Every function is a template over the scalar ring so the same code serves
// the exact (Rational), numeric (double) and symbolic (Polynomial) paths.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "engel/polynomial.hpp"
#include "engel/rational.hpp"

namespace engel {

inline constexpr std::array<int, 4> kDegrees{1, 1, 2, 3};

template <class T>
struct StructureCoefficients {
  T xi12{};
  T xi13{};
  T xi23{};

  // The standard Engel basis: [X1,X2] = X3, [X1,X3] = X4.
  static StructureCoefficients standard() { return {T(1), T(1), T(0)}; }

  bool is_valid() const { return !is_zero(xi12) && !(is_zero(xi13) && is_zero(xi23)); }

  void validate() const {
    if (!is_valid()) {
      throw std::invalid_argument(
          "structure coefficients must satisfy xi12 != 0 and (xi13, xi23) != (0, 0)");
    }
  }
};

template <class U, class T>
StructureCoefficients<U> convert(const StructureCoefficients<T>& xi) {
  if constexpr (std::is_same_v<T, Rational> && std::is_same_v<U, double>) {
    return {xi.xi12.get_d(), xi.xi13.get_d(), xi.xi23.get_d()};
  } else {
    return {U(xi.xi12), U(xi.xi13), U(xi.xi23)};
  }
}

template <class T>
struct AlgebraElement {
  std::array<T, 4> c{};

  AlgebraElement() : c{T(0), T(0), T(0), T(0)} {}
  AlgebraElement(T c1, T c2, T c3, T c4) : c{std::move(c1), std::move(c2), std::move(c3), std::move(c4)} {}
  explicit AlgebraElement(const std::array<T, 4>& coords) : c(coords) {}

  const T& operator[](std::size_t i) const { return c[i]; }
  T& operator[](std::size_t i) { return c[i]; }

  static AlgebraElement basis(int i) {
    if (i < 1 || i > 4) throw std::out_of_range("basis index must be in 1..4");
    AlgebraElement e;
    e.c[static_cast<std::size_t>(i - 1)] = T(1);
    return e;
  }

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    return {T(a.c[0] + b.c[0]), T(a.c[1] + b.c[1]), T(a.c[2] + b.c[2]), T(a.c[3] + b.c[3])};
  }
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    return {T(a.c[0] - b.c[0]), T(a.c[1] - b.c[1]), T(a.c[2] - b.c[2]), T(a.c[3] - b.c[3])};
  }
  friend AlgebraElement operator-(const AlgebraElement& a) {
    return {T(-a.c[0]), T(-a.c[1]), T(-a.c[2]), T(-a.c[3])};
  }
  friend AlgebraElement operator*(const T& s, const AlgebraElement& a) {
    return {T(s * a.c[0]), T(s * a.c[1]), T(s * a.c[2]), T(s * a.c[3])};
  }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.c == b.c; }
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

  bool is_zero_element() const {
    return is_zero(c[0]) && is_zero(c[1]) && is_zero(c[2]) && is_zero(c[3]);
  }
};

template <class T>
AlgebraElement<T> bracket(const AlgebraElement<T>& x, const AlgebraElement<T>& y,
                          const StructureCoefficients<T>& xi) {
  T out3 = T(xi.xi12 * T(x[0] * y[1] - x[1] * y[0]));
  T out4 = T(xi.xi13 * T(x[0] * y[2] - x[2] * y[0]) + xi.xi23 * T(x[1] * y[2] - x[2] * y[1]));
  return {T(0), T(0), out3, out4};
}

// Group law from the step-3 BCH closed form:
//   x + y + [x,y]/2 + [x,[x,y]]/12 + [y,[y,x]]/12.
template <class T>
AlgebraElement<T> bch_product(const AlgebraElement<T>& x, const AlgebraElement<T>& y,
                              const StructureCoefficients<T>& xi) {
  const AlgebraElement<T> xy = bracket(x, y, xi);
  const AlgebraElement<T> yx = -xy;
  const AlgebraElement<T> x_xy = bracket(x, xy, xi);
  const AlgebraElement<T> y_yx = bracket(y, yx, xi);
  const T half = fraction<T>(1, 2);
  const T twelfth = fraction<T>(1, 12);
  AlgebraElement<T> out;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = T(x[i] + y[i] + T(half * xy[i]) + T(twelfth * T(x_xy[i] + y_yx[i])));
  }
  return out;
}

template <class T>
AlgebraElement<T> group_inverse(const AlgebraElement<T>& x) {
  return -x;
}

template <class T>
AlgebraElement<T> dilate(const T& r, const AlgebraElement<T>& x) {
  if constexpr (std::is_same_v<T, double> || std::is_same_v<T, Rational>) {
    if (!(r > 0)) throw std::invalid_argument("dilation factor must be positive");
  }
  const T r2 = T(r * r);
  const T r3 = T(r2 * r);
  return {T(r * x[0]), T(r * x[1]), T(r2 * x[2]), T(r3 * x[3])};
}

// Degree d_i + d_j of Y_i ^ Y_j for 1 <= i < j <= 4.
int degree_of_multiindex(int i, int j);

// 2-vectors in the basis {Y_i ^ Y_j : i < j}, lexicographic order
// (12, 13, 14, 23, 24, 34).
inline constexpr std::array<std::array<int, 2>, 6> kPairs{
    {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

// Position of (i, j), i < j, inside kPairs.
int pair_position(int i, int j);

template <class T>
struct TwoVector {
  std::array<T, 6> c{};

  TwoVector() { c.fill(T(0)); }
  explicit TwoVector(const std::array<T, 6>& v) : c(v) {}

  T& at(int i, int j) { return c[static_cast<std::size_t>(pair_position(i, j))]; }
  const T& at(int i, int j) const { return c[static_cast<std::size_t>(pair_position(i, j))]; }

  bool is_zero_vector() const {
    for (const auto& v : c) {
      if (!is_zero(v)) return false;
    }
    return true;
  }
};

// Zero threshold for float-mode degree decisions: |c| < tol * (1 + ||c||).
inline constexpr double kDefaultZeroTolerance = 1e-9;

struct DegreePolicy {
  double zero_tolerance = kDefaultZeroTolerance;
};

// max{deg(Y_I) : c_I != 0}. Throws on the zero 2-vector.
int two_vector_degree(const TwoVector<Rational>& v);
int two_vector_degree(const TwoVector<double>& v, const DegreePolicy& policy = {});

// Degree of a 1-vector: max d_i over nonzero frame components.
int vector_degree(const std::array<Rational, 4>& v);
int vector_degree(const std::array<double, 4>& v, const DegreePolicy& policy = {});

std::string pair_label(int position);

}  // namespace engel
