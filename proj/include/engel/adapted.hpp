#pragma once

// Adapted orthonormal graded frames and graph-form recentred charts at a
// surface point.

#include <array>
#include <optional>

#include "engel/chart.hpp"
#include "engel/frames.hpp"
#include "engel/surfaces.hpp"

namespace engel {

struct AdaptedFrameOptions {
  // Half-width of the recentred domain as a fraction of
  // dist(u0, boundary) * sigma_min of the graph-coordinate Jacobian.
  double domain_fraction = 0.25;
  int newton_max_iterations = 60;
  double newton_tolerance = 1e-14;
  double zero_tolerance = kDefaultZeroTolerance;
};

struct AdaptedFrameReport {
  // Y1' = cos(angle) X1 + sin(angle) X2, Y2' = -sin(angle) X1 + cos(angle) X2,
  // Y3' = s3 X3, Y4' = s3 s4 X4.
  double angle = 0.0;
  double cos_angle = 1.0;
  double sin_angle = 0.0;
  std::array<int, 2> signs{1, 1};
  // basis[j] = coordinates of Y'_{j+1} in the original graded basis.
  std::array<std::array<double, 4>, 4> basis{};
  StructureCoefficients<double> xi{};
  std::array<int, 3> strata_ranks{};
  std::array<int, 2> graph_indices{};
  std::array<int, 2> induced_degrees{};
  int degree = 0;
  Point base_point;
  Jacobian42<double> jacobian_at_origin{};
  double newton_residual = 0.0;
  double half_width = 0.0;
  std::optional<SurfaceChart> chart;
};

// Left-translates the surface by Phi(u0)^{-1}, rotates V1 so that the
// tangent strata line up with the new basis and reparametrizes over the
// selected graph coordinates by damped Newton inversion.
AdaptedFrameReport adapted_frame(const SurfaceChart& s, const Param& u0, const AdaptedFrameOptions& options = {});

// Max deviation of the recentred Jacobian at 0 from the prescribed block
// pattern (identity at graph rows, zeros below them).
double block_form_defect(const AdaptedFrameReport& report);

// Structure coefficients after the rotation and sign changes above.
StructureCoefficients<double> rotated_structure(const StructureCoefficients<double>& xi, double c, double s,
                                                int s3, int s4);

}  // namespace engel
