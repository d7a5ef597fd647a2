#pragma once

// Homogeneous box-type quasi-norms, the induced left-invariant distance,
// closed balls, weighted boxes and the graded Riemannian inner product.

#include <array>
#include <cstdint>

#include "engel/algebra.hpp"

namespace engel {

using Point = AlgebraElement<double>;

// ||x|| = max(|x1|, |x2|, (|x3|/kappa3)^(1/2), (|x4|/kappa4)^(1/3)).
//
// Defaults satisfy the triangle inequality for the standard structure
// coefficients: the stratum-3 term needs kappa3 >= 1/2 and the stratum-4
// term needs 3 kappa4 >= kappa3/2 + 1/6.
struct QuasiNorm {
  double kappa3 = 0.5;
  double kappa4 = 1.0 / 6.0;

  void validate() const;
  double operator()(const Point& x) const;

  // Half-width of the unit ball along coordinate i (0-based): 1, 1, kappa3, kappa4.
  double unit_extent(std::size_t i) const;
};

class HomogeneousDistance {
 public:
  HomogeneousDistance() = default;
  HomogeneousDistance(QuasiNorm norm, StructureCoefficients<double> xi);

  const QuasiNorm& norm() const { return norm_; }
  const StructureCoefficients<double>& xi() const { return xi_; }

  double norm_of(const Point& x) const { return norm_(x); }
  // d(x, y) = ||x^{-1} y||
  double operator()(const Point& x, const Point& y) const;

 private:
  QuasiNorm norm_{};
  StructureCoefficients<double> xi_ = StructureCoefficients<double>::standard();
};

// Closed ball {y : d(center, y) <= radius}.
struct Ball {
  Point center;
  double radius = 1.0;
  HomogeneousDistance distance;

  bool contains(const Point& y) const { return distance(center, y) <= radius; }
  // Diameter convention for symmetric box norms.
  double diameter() const { return 2.0 * radius; }
};

// Box(0, r) = [-r, r]^2 x [-r^2, r^2] x [-r^3, r^3].
struct Box {
  double r = 1.0;
  bool contains(const Point& x) const;
};

// Max over seeded samples of ||x y|| - (||x|| + ||y||); values inside the
// floating rounding band are reported as 0. A result <= 0 means no
// violation was found.
struct TriangleDefectReport {
  double max_defect = 0.0;
  Point worst_x;
  Point worst_y;
  long samples = 0;
};
TriangleDefectReport triangle_defect_sampler(const HomogeneousDistance& d, long samples, std::uint64_t seed);

// Largest sampled distance between pairs of points of B(0, r); should not
// exceed 2r and approach it.
double sampled_ball_diameter(const HomogeneousDistance& d, double r, long samples, std::uint64_t seed);

// Graded metric: (Y1..Y4) orthonormal, hence {Y_i ^ Y_j} orthonormal.
double inner_product(const std::array<double, 4>& v, const std::array<double, 4>& w);
double two_vector_norm(const TwoVector<double>& c);

}  // namespace engel
