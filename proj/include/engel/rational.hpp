#pragma once

// Exact rational scalars and the small amount of scalar glue that lets the
// same formula code run over Rational, double and polynomial rings.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <type_traits>

namespace engel {

using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

// Accepts "3", "-7/4", "0.25", "1e-3" style literals and converts exactly.
// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

// Generic constant construction: fraction<T>(1, 12) is 1/12 in the ring T.
template <class T>
struct ScalarTraits {
  static T fraction(long n, long d) { return static_cast<T>(n) / static_cast<T>(d); }
};

template <>
struct ScalarTraits<Rational> {
  static Rational fraction(long n, long d) { return make_rational(n, d); }
};

template <class T>
T fraction(long n, long d = 1) {
  return ScalarTraits<T>::fraction(n, d);
}

// Coefficient conversion Rational -> T. Only widening conversions are allowed.
template <class T>
T scalar_cast(const Rational& q) {
  if constexpr (std::is_same_v<T, double>) {
    return q.get_d();
  } else {
    return T(q);
  }
}

template <class T>
T scalar_cast(double x) {
  static_assert(std::is_same_v<T, double>, "double coefficients cannot be lifted to exact types");
  return x;
}

}  // namespace engel
