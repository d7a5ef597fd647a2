#include "engel/algebra.hpp"

#include <cmath>

namespace engel {

int degree_of_multiindex(int i, int j) {
  if (i < 1 || j > 4 || i >= j) {
    throw std::out_of_range("multi-index must satisfy 1 <= i < j <= 4");
  }
  return kDegrees[static_cast<std::size_t>(i - 1)] + kDegrees[static_cast<std::size_t>(j - 1)];
}

int pair_position(int i, int j) {
  if (i < 1 || j > 4 || i >= j) {
    throw std::out_of_range("multi-index must satisfy 1 <= i < j <= 4");
  }
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    if (kPairs[k][0] == i && kPairs[k][1] == j) return static_cast<int>(k);
  }
  throw std::logic_error("unreachable pair lookup");
}

std::string pair_label(int position) {
  const auto& p = kPairs.at(static_cast<std::size_t>(position));
  return "Y" + std::to_string(p[0]) + "^Y" + std::to_string(p[1]);
}

int two_vector_degree(const TwoVector<Rational>& v) {
  int degree = 0;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    if (!is_zero(v.c[k])) degree = std::max(degree, degree_of_multiindex(kPairs[k][0], kPairs[k][1]));
  }
  if (degree == 0) throw std::invalid_argument("degree of the zero 2-vector is undefined");
  return degree;
}

int two_vector_degree(const TwoVector<double>& v, const DegreePolicy& policy) {
  double norm2 = 0.0;
  for (double x : v.c) norm2 += x * x;
  const double threshold = policy.zero_tolerance * (1.0 + std::sqrt(norm2));
  int degree = 0;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    if (std::abs(v.c[k]) >= threshold) {
      degree = std::max(degree, degree_of_multiindex(kPairs[k][0], kPairs[k][1]));
    }
  }
  if (degree == 0) throw std::invalid_argument("degree of the zero 2-vector is undefined");
  return degree;
}

int vector_degree(const std::array<Rational, 4>& v) {
  int degree = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!is_zero(v[i])) degree = std::max(degree, kDegrees[i]);
  }
  if (degree == 0) throw std::invalid_argument("degree of the zero vector is undefined");
  return degree;
}

int vector_degree(const std::array<double, 4>& v, const DegreePolicy& policy) {
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  const double threshold = policy.zero_tolerance * (1.0 + std::sqrt(norm2));
  int degree = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::abs(v[i]) >= threshold) degree = std::max(degree, kDegrees[i]);
  }
  if (degree == 0) throw std::invalid_argument("degree of the zero vector is undefined");
  return degree;
}

}  // namespace engel
