#pragma once

// Tangent 2-vectors of surface charts in the left-invariant frame, pointwise
// degree, homogeneous tangent spaces and the residuals that encode degree
// bounds and horizontality.

#include <array>
#include <vector>

#include "engel/algebra.hpp"
#include "engel/chart.hpp"
#include "engel/frames.hpp"

namespace engel {

template <class T>
using Jacobian42 = std::array<std::array<T, 2>, 4>;

// phi^{ij} = d1 phi_i d2 phi_j - d2 phi_i d1 phi_j, in kPairs order.
template <class T>
std::array<T, 6> minors_of(const Jacobian42<T>& j) {
  std::array<T, 6> m;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    const auto a = static_cast<std::size_t>(kPairs[k][0] - 1);
    const auto b = static_cast<std::size_t>(kPairs[k][1] - 1);
    m[k] = T(j[a][0] * j[b][1] - j[a][1] * j[b][0]);
  }
  return m;
}

std::array<double, 6> chart_minors(const SurfaceChart& s, const Param& u);
std::array<Rational, 6> chart_minors(const SurfaceChart& s, const ExactParam& u);

// The closed-form tangent 2-vector d1 phi ^ d2 phi in the basis Y_i ^ Y_j,
// written in terms of the chart values phi and its minors.
template <class T>
TwoVector<T> two_vector_from_minors(const StructureCoefficients<T>& xi, const std::array<T, 4>& phi,
                                    const std::array<T, 6>& m) {
  const T h = fraction<T>(1, 2);
  const T sixth = fraction<T>(1, 6);
  const T twelfth = fraction<T>(1, 12);
  const T quarter = fraction<T>(1, 4);
  const T& p1 = phi[0];
  const T& p2 = phi[1];
  const T& p3 = phi[2];
  const T& m12 = m[0];
  const T& m13 = m[1];
  const T& m14 = m[2];
  const T& m23 = m[3];
  const T& m24 = m[4];
  const T& m34 = m[5];

  const T lin = T(h * T(xi.xi13 * p1 + xi.xi23 * p2));
  const T q1 = T(xi.xi23 * p1 * p2 + xi.xi13 * p1 * p1);
  const T q2 = T(xi.xi13 * p1 * p2 + xi.xi23 * p2 * p2);

  TwoVector<T> v;
  v.at(1, 2) = m12;
  v.at(1, 3) = T(m13 - h * xi.xi12 * p1 * m12);
  v.at(2, 3) = T(m23 - h * xi.xi12 * p2 * m12);
  v.at(1, 4) = T(m14 - lin * m13 + T(sixth * xi.xi12 * q1 + h * xi.xi23 * p3) * m12);
  v.at(2, 4) = T(m24 - lin * m23 + T(sixth * xi.xi12 * q2 - h * xi.xi13 * p3) * m12);
  v.at(3, 4) = T(m34 + T(twelfth * xi.xi12 * q1 - h * xi.xi23 * p3) * m23 - p1 * h * xi.xi12 * m24 +
                 p2 * h * xi.xi12 * m14 - T(twelfth * xi.xi12 * q2 + h * xi.xi13 * p3) * m13 +
                 T(quarter * xi.xi12 * xi.xi13 * p1 * p3 + quarter * xi.xi12 * xi.xi23 * p2 * p3) * m12);
  return v;
}

// Relative threshold on the minors below which a probe point counts as
// rank deficient in double mode.
inline constexpr double kRankTolerance = 1e-12;

TwoVector<double> tangent_two_vector(const SurfaceChart& s, const Param& u);
TwoVector<Rational> tangent_two_vector(const SurfaceChart& s, const ExactParam& u);

// c = (A^T)^{-1} D phi, solved by back substitution on the unitriangular A^T.
template <class T>
Jacobian42<T> change_of_coefficients(const StructureCoefficients<T>& xi, const std::array<T, 4>& phi,
                                     const Jacobian42<T>& dphi) {
  const Matrix4<T> a = frame_matrix(xi, phi);
  Jacobian42<T> c;
  // A^T is lower unitriangular: (A^T)_{kl} = a[l][k].
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      T s = dphi[k][i];
      for (std::size_t l = 0; l < k; ++l) s = T(s - a[l][k] * c[l][i]);
      c[k][i] = s;
    }
  }
  return c;
}

Jacobian42<double> change_of_coefficients(const SurfaceChart& s, const Param& u);
Jacobian42<Rational> change_of_coefficients(const SurfaceChart& s, const ExactParam& u);

// Wedge of the two columns in the basis Y_i ^ Y_j.
template <class T>
TwoVector<T> wedge_columns(const Jacobian42<T>& c) {
  return TwoVector<T>(minors_of(c));
}

int pointwise_degree(const SurfaceChart& s, const Param& u, const DegreePolicy& policy = {});
int pointwise_degree(const SurfaceChart& s, const ExactParam& u);

struct DegreeSample {
  Param u;
  int degree = 0;
};

struct SurfaceDegreeReport {
  int degree = 0;
  std::vector<DegreeSample> samples;  // row-major, u2 fastest
  std::vector<Param> singular;        // samples with degree < degree
};

// Grid of resolution x resolution points spanning the closed domain; exact
// evaluation for polynomial charts.
SurfaceDegreeReport surface_degree(const SurfaceChart& s, int resolution, const DegreePolicy& policy = {});

// Basis of A_p Sigma in frame coefficients, from the top-degree block.
struct HomogeneousTangentSpace {
  int degree = 0;
  std::array<std::array<double, 4>, 2> basis{};
  std::array<int, 2> coordinate_indices{};  // 1-based graded directions involved
};
HomogeneousTangentSpace homogeneous_tangent_space(const SurfaceChart& s, const Param& u,
                                                  const DegreePolicy& policy = {});

struct ConstraintResiduals {
  double y14 = 0.0;
  double y24 = 0.0;
  double y34 = 0.0;
  double y13 = 0.0;
  double y23 = 0.0;

  bool degree_at_most_3(double tol) const { return y14 <= tol && y24 <= tol && y34 <= tol; }
  bool degree_at_most_2(double tol) const { return degree_at_most_3(tol) && y13 <= tol && y23 <= tol; }
};
ConstraintResiduals degree_constraint_residuals(const SurfaceChart& s, const ParamBox& region, int resolution);

// For a chart in graph form over (x1, x3): d_{x3} phi_4 minus the value the
// vanishing Y1 ^ Y4 coefficient forces on it.
double firstv2_residual(const SurfaceChart& s, const Param& x);

// Pullback of a 1-form along the chart: coefficients of du1, du2.
std::array<double, 2> pullback(const Matrix4<double>& coframe_rows, std::size_t row, const Jacobian42<double>& dphi);

double horizontality_residual(const SurfaceChart& s, const ParamBox& region, int resolution);

// Pullbacks of theta_3 and theta_4 along a curve with position y and
// velocity v.
std::array<double, 2> curve_contact_forms(const StructureCoefficients<double>& xi, const std::array<double, 4>& y,
                                          const std::array<double, 4>& v);

// Max degree of the tangent 1-vector of t -> Phi(u0 + r (cos t, sin t)).
int boundary_degree(const SurfaceChart& s, const Param& center, double radius, int samples,
                    const DegreePolicy& policy = {});

}  // namespace engel
