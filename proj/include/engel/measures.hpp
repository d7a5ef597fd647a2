#pragma once

// Quadrature on surface charts: Riemannian area, intrinsic measure of
// metric balls, line integrals of 1-forms, surface integrals of 2-forms and
// the Stokes check for theta_4.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "engel/chart.hpp"
#include "engel/distance.hpp"
#include "engel/frames.hpp"

namespace engel {

struct QuadratureSpec {
  int resolution = 64;  // cells per axis at the first level
  int levels = 3;       // each level doubles the resolution
  long mc_samples = 0;  // > 0 enables the Monte Carlo fallback
  std::uint64_t seed = 1;
  double abs_tol = 1e-8;
  double rel_tol = 1e-3;

  void validate() const;
  int resolution_at(int level) const { return resolution << level; }
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // |last - previous| over refinement levels, or MC standard error
  bool converged = true;
  std::vector<double> levels;
  std::string method = "tensor";
  std::string note;
};

using Indicator = std::function<bool(const Param&)>;
using Integrand = std::function<double(const Param&)>;

// Midpoint rows in u1; inside each row the indicator's transitions are
// located by bisection and the clipped pieces integrated by midpoint rule.
double clipped_integral(const ParamBox& box, const Integrand& f, const Indicator& inside, int resolution);

// Refinement driver for clipped_integral with the Monte Carlo fallback.
Estimate refine_clipped(const ParamBox& box, const Integrand& f, const Indicator& inside, const QuadratureSpec& q);

// JPhi(u) = Euclidean norm of the six frame coefficients of the tangent 2-vector.
double riemannian_jacobian(const SurfaceChart& s, const Param& u);

// Top-degree block norm |tau_N|_g of the unnormalized tangent 2-vector.
double top_block_norm(const SurfaceChart& s, const Param& u, int degree);

Estimate riemannian_area(const SurfaceChart& s, const ParamBox& region, const Indicator& inside,
                         const QuadratureSpec& q);

// Parameter box containing Phi^{-1}(ball) for charts in graph form; the
// whole chart domain otherwise.
ParamBox ball_preimage_box(const SurfaceChart& s, const Ball& ball);

Estimate intrinsic_measure(const SurfaceChart& s, const Ball& ball, int degree, const QuadratureSpec& q,
                           std::optional<ParamBox> region = std::nullopt);

// Riemannian area of Sigma inside a ball.
Estimate ball_area(const SurfaceChart& s, const Ball& ball, const QuadratureSpec& q,
                   std::optional<ParamBox> region = std::nullopt);

struct CompiledOneForm {
  std::array<CompiledPolynomial, 4> c;
  CompiledOneForm() = default;
  explicit CompiledOneForm(const OneForm<Rational>& w);
  explicit CompiledOneForm(const OneForm<double>& w);
  double operator()(const std::array<double, 4>& y, const std::array<double, 4>& v) const;
};

struct CompiledTwoForm {
  std::array<CompiledPolynomial, 6> c;
  CompiledTwoForm() = default;
  explicit CompiledTwoForm(const TwoForm<Rational>& w);
  explicit CompiledTwoForm(const TwoForm<double>& w);
  // Coefficient of du1 ^ du2 of the pullback at a point with minors m.
  double pullback(const std::array<double, 4>& y, const std::array<double, 6>& m) const;
};

// Closed loop t in [0, 1] -> (position, velocity).
struct LoopPoint {
  std::array<double, 4> y;
  std::array<double, 4> v;
};
using Loop = std::function<LoopPoint(double)>;

// Counterclockwise circle of radius r around u0 pushed through the chart.
Loop chart_circle(const SurfaceChart& s, const Param& center, double radius);

Estimate line_integral(const CompiledOneForm& w, const Loop& loop, const QuadratureSpec& q);

// Integral of the pullback over the parameter disk, polar midpoint rule.
Estimate surface_integral(const CompiledTwoForm& w, const SurfaceChart& s, const Param& center, double radius,
                          const QuadratureSpec& q);

struct StokesReport {
  double radius = 0.0;
  Estimate line;
  Estimate surface;
  double defect = 0.0;
  double error = 0.0;            // line.error + surface.error
  double normalized_ratio = 0.0;  // surface / (pi r^2)
  double pointwise_limit = 0.0;   // pullback of d theta_4 at the center
  double predicted_limit = 0.0;   // -xi13 tau_13 - xi23 tau_23 at the center
};

// The loop and disk must lie inside the chart domain.
StokesReport stokes_check(const SurfaceChart& s, const Param& center, double radius, const QuadratureSpec& q);

}  // namespace engel
