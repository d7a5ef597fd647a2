#include "engel/adapted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "engel/errors.hpp"

namespace engel {

StructureCoefficients<double> rotated_structure(const StructureCoefficients<double>& xi, double c, double s,
                                                int s3, int s4) {
  return {s3 * xi.xi12, s3 * s4 * (c * xi.xi13 + s * xi.xi23), s3 * s4 * (-s * xi.xi13 + c * xi.xi23)};
}

namespace {

using Col = std::array<double, 4>;

struct Inverse2 {
  double a, b, c, d;  // [[a, b], [c, d]]
};

Inverse2 invert(double m00, double m01, double m10, double m11) {
  const double det = m00 * m11 - m01 * m10;
  if (det == 0.0 || !std::isfinite(det)) throw RankDeficientError("graph coordinates are not a local chart");
  return {m11 / det, -m01 / det, -m10 / det, m00 / det};
}

double sigma_min(double a, double b, double c, double d) {
  const double s = a * a + b * b + c * c + d * d;
  const double det = std::abs(a * d - b * c);
  const double disc = std::sqrt(std::max(0.0, s * s - 4.0 * det * det));
  return std::sqrt(std::max(0.0, 0.5 * (s - disc)));
}

// Rotated coordinates y' = M^T y for the basis described by (c, s, s3, s4).
struct Rotation {
  double c = 1.0;
  double s = 0.0;
  int s3 = 1;
  int s4 = 1;

  Col apply(const Col& y) const {
    return {c * y[0] + s * y[1], -s * y[0] + c * y[1], s3 * y[2], s3 * s4 * y[3]};
  }
};

}  // namespace

AdaptedFrameReport adapted_frame(const SurfaceChart& s, const Param& u0, const AdaptedFrameOptions& options) {
  AdaptedFrameReport report;

  // Translate so that the base point sits at the origin and shift the
  // parameters to u = u0 + v. Exact when possible, which keeps small chart
  // values free of cancellation near v = 0.
  const ParamBox outer{{s.domain().lo[0] - u0[0], s.domain().lo[1] - u0[1]},
                       {s.domain().hi[0] - u0[0], s.domain().hi[1] - u0[1]}};
  std::shared_ptr<const SurfaceChart> moved;
  if (s.is_exact()) {
    const ExactParam ue{Rational(u0[0]), Rational(u0[1])};
    const auto pj = s.exact_jet(ue);
    const AlgebraElement<Rational> p(pj.value);
    report.base_point = Point(p[0].get_d(), p[1].get_d(), p[2].get_d(), p[3].get_d());
    const std::array<RationalPolynomial, 2> shift{RationalPolynomial::variable(0) + RationalPolynomial(ue[0]),
                                                  RationalPolynomial::variable(1) + RationalPolynomial(ue[1])};
    moved = std::make_shared<const SurfaceChart>(s.left_translated(-p).reparametrized(shift, outer));
  } else {
    report.base_point = s.point(u0);
    const auto translated = std::make_shared<const SurfaceChart>(s.left_translated(Point(-report.base_point)));
    moved = std::make_shared<const SurfaceChart>(SurfaceChart::from_function(
        [translated, u0](const Param& v) { return translated->jet({u0[0] + v[0], u0[1] + v[1]}); }, outer,
        translated->xi()));
  }
  const Param origin{0.0, 0.0};

  const auto j0 = moved->jet(origin);
  const Col c1{j0.jacobian[0][0], j0.jacobian[1][0], j0.jacobian[2][0], j0.jacobian[3][0]};
  const Col c2{j0.jacobian[0][1], j0.jacobian[1][1], j0.jacobian[2][1], j0.jacobian[3][1]};
  double scale = 0.0;
  for (std::size_t i = 0; i < 4; ++i) scale = std::max({scale, std::abs(c1[i]), std::abs(c2[i])});
  const double eps = options.zero_tolerance * (1.0 + scale);
  auto nonzero = [&](double x) { return std::abs(x) > eps; };
  auto combo = [&](std::size_t k) {
    Col out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = c1[i] * c2[k] - c2[i] * c1[k];
    return out;
  };

  Rotation rot;
  auto align = [&](const Col& k) {
    const double n = std::hypot(k[0], k[1]);
    rot.c = k[0] / n;
    rot.s = k[1] / n;
  };
  if (nonzero(c1[3]) || nonzero(c2[3])) {
    const Col k = combo(3);
    if (nonzero(k[2])) {
      report.degree = 5;
      report.strata_ranks = {0, 1, 1};
    } else {
      report.degree = 4;
      report.strata_ranks = {1, 0, 1};
      align(k);
    }
  } else if (nonzero(c1[2]) || nonzero(c2[2])) {
    report.degree = 3;
    report.strata_ranks = {1, 1, 0};
    align(combo(2));
  } else {
    report.degree = 2;
    report.strata_ranks = {2, 0, 0};
  }

  switch (report.degree) {
    case 2:
      report.graph_indices = {1, 2};
      report.induced_degrees = {1, 1};
      break;
    case 3:
      report.graph_indices = {1, 3};
      report.induced_degrees = {1, 2};
      break;
    case 4:
      report.graph_indices = {1, 4};
      report.induced_degrees = {1, 3};
      break;
    default:
      report.graph_indices = {3, 4};
      report.induced_degrees = {2, 3};
  }

  report.cos_angle = rot.c;
  report.sin_angle = rot.s;
  report.angle = std::atan2(rot.s, rot.c);
  report.signs = {rot.s3, rot.s4};
  report.basis = {Col{rot.c, rot.s, 0.0, 0.0}, Col{-rot.s, rot.c, 0.0, 0.0}, Col{0.0, 0.0, double(rot.s3), 0.0},
                  Col{0.0, 0.0, 0.0, double(rot.s3 * rot.s4)}};
  report.xi = rotated_structure(s.xi(), rot.c, rot.s, rot.s3, rot.s4);

  const auto ga = static_cast<std::size_t>(report.graph_indices[0] - 1);
  const auto gb = static_cast<std::size_t>(report.graph_indices[1] - 1);

  // Rotated jet of the translated chart.
  auto rotated_jet = [moved, rot](const Param& u) {
    const auto j = moved->jet(u);
    ChartJet<double> out;
    out.value = rot.apply(j.value);
    for (std::size_t i = 0; i < 2; ++i) {
      const Col col = rot.apply({j.jacobian[0][i], j.jacobian[1][i], j.jacobian[2][i], j.jacobian[3][i]});
      for (std::size_t k = 0; k < 4; ++k) out.jacobian[k][i] = col[k];
    }
    return out;
  };

  const auto r0 = rotated_jet(origin);
  const double sm = sigma_min(r0.jacobian[ga][0], r0.jacobian[ga][1], r0.jacobian[gb][0], r0.jacobian[gb][1]);
  if (!(sm > 0.0)) throw RankDeficientError("graph coordinates are not a local chart at the base point");
  const double dist = s.domain().inner_distance(u0);
  if (!(dist > 0.0)) throw DomainError("base point must be interior to the chart domain");
  const double w = options.domain_fraction * dist * std::min(1.0, sm);
  report.half_width = w;

  const int max_iter = options.newton_max_iterations;
  const double tol = options.newton_tolerance;
  SurfaceChart::JetFunction jet = [rotated_jet, origin, ga, gb, outer, max_iter, tol](const Param& z) {
    auto graph_residual = [&](const ChartJet<double>& j) {
      return std::array<double, 2>{j.value[ga] - z[0], j.value[gb] - z[1]};
    };
    Param u = origin;
    ChartJet<double> j = rotated_jet(u);
    auto res = graph_residual(j);
    double norm = std::hypot(res[0], res[1]);
    const double target = tol * std::hypot(z[0], z[1]);
    int it = 0;
    while (norm > target) {
      if (++it > max_iter) throw NonConvergenceError("Newton inversion of graph coordinates", norm);
      const auto inv = invert(j.jacobian[ga][0], j.jacobian[ga][1], j.jacobian[gb][0], j.jacobian[gb][1]);
      const Param step{inv.a * res[0] + inv.b * res[1], inv.c * res[0] + inv.d * res[1]};
      double damping = 1.0;
      bool accepted = false;
      for (int h = 0; h < 30; ++h, damping *= 0.5) {
        const Param trial{u[0] - damping * step[0], u[1] - damping * step[1]};
        if (!outer.contains(trial)) continue;
        const auto jt = rotated_jet(trial);
        const auto rt = graph_residual(jt);
        const double nt = std::hypot(rt[0], rt[1]);
        if (nt < norm) {
          u = trial;
          j = jt;
          res = rt;
          norm = nt;
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        if (norm <= 1e-8 * std::hypot(z[0], z[1]) || norm <= tol) break;  // stalled at rounding level
        throw NonConvergenceError("Newton inversion left the chart domain or stalled", norm);
      }
    }
    const auto inv = invert(j.jacobian[ga][0], j.jacobian[ga][1], j.jacobian[gb][0], j.jacobian[gb][1]);
    ChartJet<double> out;
    out.value = j.value;
    for (std::size_t k = 0; k < 4; ++k) {
      const double d1 = j.jacobian[k][0];
      const double d2 = j.jacobian[k][1];
      out.jacobian[k][0] = d1 * inv.a + d2 * inv.c;
      out.jacobian[k][1] = d1 * inv.b + d2 * inv.d;
    }
    out.value[ga] = z[0];
    out.value[gb] = z[1];
    out.jacobian[ga] = {1.0, 0.0};
    out.jacobian[gb] = {0.0, 1.0};
    return out;
  };

  const auto origin_graph = r0.value;
  report.newton_residual = std::hypot(origin_graph[ga], origin_graph[gb]);
  report.chart = make_graph_chart(std::move(jet), ParamBox::square(-w, w), report.xi, report.graph_indices,
                                  s.name().empty() ? std::string("adapted") : s.name() + "@adapted");
  report.jacobian_at_origin = report.chart->jet({0.0, 0.0}).jacobian;
  return report;
}

double block_form_defect(const AdaptedFrameReport& report) {
  // nan marks a free entry.
  constexpr double F = std::numeric_limits<double>::quiet_NaN();
  Jacobian42<double> pattern;
  switch (report.degree) {
    case 2:
      pattern = {{{1, 0}, {0, 1}, {0, 0}, {0, 0}}};
      break;
    case 3:
      pattern = {{{1, 0}, {0, F}, {0, 1}, {0, 0}}};
      break;
    case 4:
      pattern = {{{1, 0}, {0, F}, {0, F}, {0, 1}}};
      break;
    default:
      pattern = {{{F, F}, {F, F}, {1, 0}, {0, 1}}};
  }
  double defect = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < 2; ++i) {
      if (std::isnan(pattern[k][i])) continue;
      defect = std::max(defect, std::abs(report.jacobian_at_origin[k][i] - pattern[k][i]));
    }
  }
  return defect;
}

}  // namespace engel
