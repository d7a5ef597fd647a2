#pragma once

// Spherical factors, Federer densities, blow-up exponent fits, Box/ball
// comparison and divergence probes at singular points.

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "engel/adapted.hpp"
#include "engel/chart.hpp"
#include "engel/distance.hpp"
#include "engel/measures.hpp"
#include "engel/surfaces.hpp"

namespace engel {

// Plane spanned by two orthonormal homogeneous directions, given by their
// frame coefficients and degrees.
struct Plane {
  std::array<double, 4> v1{};
  std::array<double, 4> v2{};
  int w1 = 1;
  int w2 = 1;

  static Plane coordinate(int a, int b);  // span{e_a, e_b}, 1-based
  static Plane from_tangent_space(const HomogeneousTangentSpace& t);
  int homogeneous_dimension() const { return w1 + w2; }
  Point at(double a, double b) const;
  // Box of plane coordinates containing every point of norm <= big_r.
  ParamBox bounding_box(const QuasiNorm& q, double big_r) const;
};

// Area of {v in V : d(u, v) <= r}, clipped midpoint rule at one resolution.
double slice_area(const HomogeneousDistance& d, const Plane& v, const Point& u, double r, int resolution);
Estimate slice_area(const HomogeneousDistance& d, const Plane& v, const Point& u, double r, const QuadratureSpec& q);

struct SearchSpec {
  int grid = 7;             // coarse grid points per axis of the unit ball
  int coarse_resolution = 24;
  int polish_resolution = 64;
  int starts = 4;           // simplex starts from the best grid cells
  int max_evaluations = 300;
};

struct SphericalFactor {
  Estimate value;  // levels over the final refinement of the best center
  Point center;
  double coarse_best = 0.0;
};

// beta_d(V) = max over ||w|| <= 1 of slice_area(w, V, 1).
SphericalFactor spherical_factor(const HomogeneousDistance& d, const Plane& v, const QuadratureSpec& q,
                                 const SearchSpec& search = {});

struct DensityEstimate {
  std::vector<double> radii;
  std::vector<double> maximized;  // max over centers of 2^N mu(B) / diam(B)^N
  std::vector<double> centered;   // the same quotient for the ball centred at p
  std::vector<double> errors;     // quadrature error of each maximized quotient
  std::vector<Point> centers;
  double limit = 0.0;
  double error = 0.0;
  std::string extrapolation;
  bool converged = true;  // every final quadrature met its tolerance
};

DensityEstimate federer_density(const SurfaceChart& s, const HomogeneousDistance& d, const Param& u0, int degree,
                                const std::vector<double>& radii, const QuadratureSpec& q,
                                const SearchSpec& search = {});

std::array<double, 2> eta_map(const std::array<double, 2>& t, const std::array<int, 2>& b);

struct ComponentFit {
  int component = 0;        // 1-based coordinate index
  int required_degree = 0;  // d_s
  bool graph = false;
  bool exact_zero = false;
  double slope = std::numeric_limits<double>::infinity();  // worst direction
  double residual = 0.0;
  double graph_deviation = 0.0;  // graph components only
  std::array<double, 2> worst_direction{};
};

struct ExponentFit {
  AdaptedFrameReport frame;
  std::vector<double> lambdas;
  std::vector<std::array<double, 2>> directions;
  std::array<ComponentFit, 4> components;
};

struct GammaSpec {
  int directions = 8;
  int lambdas = 8;         // lambda = 2^-j, j = 0 .. lambdas-1
  double zero_floor = 1e-14;  // relative to |lambda t|^{d_s}
};

ExponentFit gamma_expansion(const SurfaceChart& s, const Param& u0, const GammaSpec& spec = {},
                            const AdaptedFrameOptions& options = {});

struct BoxBallResult {
  double lambda = 0.0;
  long samples = 0;
  long inner_violations = 0;  // at the returned lambda
  long outer_violations = 0;
};

// Largest lambda = k/1024 with Box(0, lambda) in B(0,1) and B(0,1) in
// Box(0, 1/lambda) on the sampled points.
BoxBallResult box_ball_lambda(const QuasiNorm& q, long samples, std::uint64_t seed);

struct DivergenceProbe {
  std::vector<double> radii;
  std::vector<double> areas;
  std::vector<double> errors;
  double area_slope = 0.0;
  double ratio_slope = 0.0;
  double beta = 0.0;
  bool converged = true;
};

DivergenceProbe divergence_probe(const SurfaceChart& s, const HomogeneousDistance& d, const Param& u0, double beta,
                                 const std::vector<double>& radii, const QuadratureSpec& q);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y, double* residual = nullptr);

std::vector<double> dyadic_radii(int first_exponent, int last_exponent);

}  // namespace engel
