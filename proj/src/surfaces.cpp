#include "engel/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "engel/errors.hpp"

namespace engel {

namespace {

double sup_norm(const Jacobian42<double>& j) {
  double s = 0.0;
  for (const auto& row : j) s = std::max({s, std::abs(row[0]), std::abs(row[1])});
  return s;
}

void require_rank_two(const std::array<double, 6>& m, const Jacobian42<double>& j, const Param& u) {
  double mm = 0.0;
  for (double x : m) mm = std::max(mm, std::abs(x));
  const double scale = sup_norm(j);
  if (!(mm > kRankTolerance * scale * scale) || mm == 0.0) {
    throw RankDeficientError("chart Jacobian has rank < 2 at u = (" + std::to_string(u[0]) + ", " +
                             std::to_string(u[1]) + ")");
  }
}

void require_rank_two(const std::array<Rational, 6>& m, const ExactParam& u) {
  for (const auto& x : m) {
    if (x != 0) return;
  }
  throw RankDeficientError("chart Jacobian has rank < 2 at u = (" + to_string(u[0]) + ", " + to_string(u[1]) + ")");
}

std::array<Rational, 4> exact_values(const ChartJet<Rational>& j) { return j.value; }

// Frame coefficients of a vector v at the point y: (A^T)^{-1} v.
std::array<double, 4> frame_coefficients(const StructureCoefficients<double>& xi, const std::array<double, 4>& y,
                                         const std::array<double, 4>& v) {
  const auto a = frame_matrix(xi, y);
  std::array<double, 4> c{};
  for (std::size_t k = 0; k < 4; ++k) {
    double s = v[k];
    for (std::size_t l = 0; l < k; ++l) s -= a[l][k] * c[l];
    c[k] = s;
  }
  return c;
}

std::vector<double> grid_nodes(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 1) {
    out.push_back(0.5 * (lo + hi));
    return out;
  }
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

std::vector<Rational> exact_grid_nodes(double lo, double hi, int n) {
  const Rational a(lo);
  const Rational b(hi);
  std::vector<Rational> out;
  if (n <= 1) {
    out.push_back((a + b) / 2);
    return out;
  }
  for (int i = 0; i < n; ++i) out.push_back(Rational(a + (b - a) * i / (n - 1)));
  return out;
}

}  // namespace

std::array<double, 6> chart_minors(const SurfaceChart& s, const Param& u) { return minors_of(s.jet(u).jacobian); }

std::array<Rational, 6> chart_minors(const SurfaceChart& s, const ExactParam& u) {
  return minors_of(s.exact_jet(u).jacobian);
}

TwoVector<double> tangent_two_vector(const SurfaceChart& s, const Param& u) {
  const auto j = s.jet(u);
  const auto m = minors_of(j.jacobian);
  require_rank_two(m, j.jacobian, u);
  return two_vector_from_minors(s.xi(), j.value, m);
}

TwoVector<Rational> tangent_two_vector(const SurfaceChart& s, const ExactParam& u) {
  const auto j = s.exact_jet(u);
  const auto m = minors_of(j.jacobian);
  require_rank_two(m, u);
  return two_vector_from_minors(s.exact_xi(), exact_values(j), m);
}

Jacobian42<double> change_of_coefficients(const SurfaceChart& s, const Param& u) {
  const auto j = s.jet(u);
  require_rank_two(minors_of(j.jacobian), j.jacobian, u);
  return change_of_coefficients(s.xi(), j.value, j.jacobian);
}

Jacobian42<Rational> change_of_coefficients(const SurfaceChart& s, const ExactParam& u) {
  const auto j = s.exact_jet(u);
  require_rank_two(minors_of(j.jacobian), u);
  return change_of_coefficients(s.exact_xi(), j.value, j.jacobian);
}

int pointwise_degree(const SurfaceChart& s, const Param& u, const DegreePolicy& policy) {
  return two_vector_degree(tangent_two_vector(s, u), policy);
}

int pointwise_degree(const SurfaceChart& s, const ExactParam& u) {
  return two_vector_degree(tangent_two_vector(s, u));
}

SurfaceDegreeReport surface_degree(const SurfaceChart& s, int resolution, const DegreePolicy& policy) {
  if (resolution < 1) throw std::invalid_argument("grid resolution must be >= 1");
  const auto& d = s.domain();
  SurfaceDegreeReport report;
  report.samples.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  if (s.is_exact()) {
    const auto g1 = exact_grid_nodes(d.lo[0], d.hi[0], resolution);
    const auto g2 = exact_grid_nodes(d.lo[1], d.hi[1], resolution);
    for (const auto& a : g1) {
      for (const auto& b : g2) {
        report.samples.push_back({{a.get_d(), b.get_d()}, pointwise_degree(s, ExactParam{a, b})});
      }
    }
  } else {
    const auto g1 = grid_nodes(d.lo[0], d.hi[0], resolution);
    const auto g2 = grid_nodes(d.lo[1], d.hi[1], resolution);
    for (double a : g1) {
      for (double b : g2) report.samples.push_back({{a, b}, pointwise_degree(s, Param{a, b}, policy)});
    }
  }
  for (const auto& smp : report.samples) report.degree = std::max(report.degree, smp.degree);
  for (const auto& smp : report.samples) {
    if (smp.degree < report.degree) report.singular.push_back(smp.u);
  }
  return report;
}

HomogeneousTangentSpace homogeneous_tangent_space(const SurfaceChart& s, const Param& u,
                                                  const DegreePolicy& policy) {
  const auto v = tangent_two_vector(s, u);
  HomogeneousTangentSpace out;
  out.degree = two_vector_degree(v, policy);
  auto unit = [](int i) {
    std::array<double, 4> e{};
    e[static_cast<std::size_t>(i - 1)] = 1.0;
    return e;
  };
  // The top block is always simple: (a Y1 + b Y2) ^ Y_k or a coordinate pair.
  auto horizontal = [&](double a, double b, int k) {
    const double n = std::hypot(a, b);
    std::array<double, 4> h{a / n, b / n, 0.0, 0.0};
    if (h[0] < 0.0 || (h[0] == 0.0 && h[1] < 0.0)) {
      h[0] = -h[0];
      h[1] = -h[1];
    }
    out.basis = {h, unit(k)};
    out.coordinate_indices = {std::abs(a) >= std::abs(b) ? 1 : 2, k};
  };
  switch (out.degree) {
    case 2:
      out.basis = {unit(1), unit(2)};
      out.coordinate_indices = {1, 2};
      break;
    case 3:
      horizontal(v.at(1, 3), v.at(2, 3), 3);
      break;
    case 4:
      horizontal(v.at(1, 4), v.at(2, 4), 4);
      break;
    default:
      out.basis = {unit(3), unit(4)};
      out.coordinate_indices = {3, 4};
  }
  return out;
}

ConstraintResiduals degree_constraint_residuals(const SurfaceChart& s, const ParamBox& region, int resolution) {
  ConstraintResiduals r;
  for (double a : grid_nodes(region.lo[0], region.hi[0], resolution)) {
    for (double b : grid_nodes(region.lo[1], region.hi[1], resolution)) {
      const auto v = tangent_two_vector(s, Param{a, b});
      r.y14 = std::max(r.y14, std::abs(v.at(1, 4)));
      r.y24 = std::max(r.y24, std::abs(v.at(2, 4)));
      r.y34 = std::max(r.y34, std::abs(v.at(3, 4)));
      r.y13 = std::max(r.y13, std::abs(v.at(1, 3)));
      r.y23 = std::max(r.y23, std::abs(v.at(2, 3)));
    }
  }
  return r;
}

double firstv2_residual(const SurfaceChart& s, const Param& x) {
  const auto g = s.graph_indices();
  if (!g || (*g)[0] != 1 || (*g)[1] != 3) {
    throw std::invalid_argument("firstv2 residual needs a chart in graph form over (x1, x3)");
  }
  const auto j = s.jet(x);
  const auto& xi = s.xi();
  const double x1 = j.value[0];
  const double p2 = j.value[1];
  const double x3 = j.value[2];
  const double d3p2 = j.jacobian[1][1];
  const double d3p4 = j.jacobian[3][1];
  const double rhs = 0.5 * (xi.xi13 * x1 + xi.xi23 * p2) -
                     (0.5 * xi.xi23 * x3 + xi.xi12 * (xi.xi23 * x1 * p2 + xi.xi13 * x1 * x1) / 6.0) * d3p2;
  return d3p4 - rhs;
}

std::array<double, 2> pullback(const Matrix4<double>& coframe_rows, std::size_t row, const Jacobian42<double>& dphi) {
  std::array<double, 2> out{};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t l = 0; l < 4; ++l) out[i] += coframe_rows[row][l] * dphi[l][i];
  }
  return out;
}

double horizontality_residual(const SurfaceChart& s, const ParamBox& region, int resolution) {
  double best = 0.0;
  for (double a : grid_nodes(region.lo[0], region.hi[0], resolution)) {
    for (double b : grid_nodes(region.lo[1], region.hi[1], resolution)) {
      const auto j = s.jet(Param{a, b});
      require_rank_two(minors_of(j.jacobian), j.jacobian, Param{a, b});
      const auto th = coframe_matrix(s.xi(), j.value);
      const auto t3 = pullback(th, 2, j.jacobian);
      const auto t4 = pullback(th, 3, j.jacobian);
      const double r = std::max(std::abs(t3[0]), std::abs(t3[1])) + std::max(std::abs(t4[0]), std::abs(t4[1]));
      best = std::max(best, r);
    }
  }
  return best;
}

std::array<double, 2> curve_contact_forms(const StructureCoefficients<double>& xi, const std::array<double, 4>& y,
                                          const std::array<double, 4>& v) {
  const auto th = coframe_matrix(xi, y);
  std::array<double, 2> out{};
  for (std::size_t l = 0; l < 4; ++l) {
    out[0] += th[2][l] * v[l];
    out[1] += th[3][l] * v[l];
  }
  return out;
}

int boundary_degree(const SurfaceChart& s, const Param& center, double radius, int samples,
                    const DegreePolicy& policy) {
  if (samples < 1) throw std::invalid_argument("boundary sample count must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("boundary radius must be positive");
  int best = 0;
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * std::numbers::pi * k / samples;
    const Param u{center[0] + radius * std::cos(t), center[1] + radius * std::sin(t)};
    const Param du{-radius * std::sin(t), radius * std::cos(t)};
    const auto j = s.jet(u);
    std::array<double, 4> v{};
    for (std::size_t l = 0; l < 4; ++l) v[l] = j.jacobian[l][0] * du[0] + j.jacobian[l][1] * du[1];
    best = std::max(best, vector_degree(frame_coefficients(s.xi(), j.value, v), policy));
  }
  return best;
}

}  // namespace engel
