#include "engel/density.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "engel/errors.hpp"

namespace engel {

Plane Plane::coordinate(int a, int b) {
  if (a < 1 || b > 4 || a >= b) throw std::out_of_range("plane directions must satisfy 1 <= a < b <= 4");
  Plane p;
  p.v1 = {};
  p.v2 = {};
  p.v1[static_cast<std::size_t>(a - 1)] = 1.0;
  p.v2[static_cast<std::size_t>(b - 1)] = 1.0;
  p.w1 = kDegrees[static_cast<std::size_t>(a - 1)];
  p.w2 = kDegrees[static_cast<std::size_t>(b - 1)];
  return p;
}

Plane Plane::from_tangent_space(const HomogeneousTangentSpace& t) {
  Plane p;
  p.v1 = t.basis[0];
  p.v2 = t.basis[1];
  auto weight = [](const std::array<double, 4>& v) {
    int w = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (v[i] != 0.0) w = std::max(w, kDegrees[i]);
    }
    return w;
  };
  p.w1 = weight(p.v1);
  p.w2 = weight(p.v2);
  return p;
}

Point Plane::at(double a, double b) const {
  return Point(a * v1[0] + b * v2[0], a * v1[1] + b * v2[1], a * v1[2] + b * v2[2], a * v1[3] + b * v2[3]);
}

ParamBox Plane::bounding_box(const QuasiNorm& q, double big_r) const {
  ParamBox box;
  const std::array<const std::array<double, 4>*, 2> vs{&v1, &v2};
  for (std::size_t k = 0; k < 2; ++k) {
    double ext = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 4; ++i) {
      const double c = std::abs((*vs[k])[i]);
      if (c > 0.0) ext = std::min(ext, q.unit_extent(i) * std::pow(big_r, kDegrees[i]) / c);
    }
    box.lo[k] = -ext;
    box.hi[k] = ext;
  }
  return box;
}

double slice_area(const HomogeneousDistance& d, const Plane& plane, const Point& u, double r, int resolution) {
  if (!(r > 0.0)) throw std::invalid_argument("slice radius must be positive");
  // Rows run along the lower-degree direction so that each row meets the
  // slice in a single interval of the higher-degree one.
  Plane v = plane;
  if (v.w1 > v.w2) {
    std::swap(v.v1, v.v2);
    std::swap(v.w1, v.w2);
  }
  const ParamBox box = v.bounding_box(d.norm(), d.norm_of(u) + r);
  const Point ui = group_inverse(u);
  const auto& xi = d.xi();
  const auto& norm = d.norm();
  return clipped_integral(
      box, [](const Param&) { return 1.0; },
      [&](const Param& ab) { return norm(bch_product(ui, v.at(ab[0], ab[1]), xi)) <= r; }, resolution);
}

Estimate slice_area(const HomogeneousDistance& d, const Plane& v, const Point& u, double r, const QuadratureSpec& q) {
  q.validate();
  Estimate e;
  for (int level = 0; level < q.levels; ++level) e.levels.push_back(slice_area(d, v, u, r, q.resolution_at(level)));
  e.value = e.levels.back();
  e.error = std::abs(e.levels.back() - e.levels[e.levels.size() - 2]);
  e.converged = e.error <= std::max(q.abs_tol, q.rel_tol * std::abs(e.value));
  return e;
}

namespace {

// True when some sampled point of the domain boundary maps into the ball,
// i.e. the ball is not covered by the interior of the patch.
bool ball_reaches_boundary(const SurfaceChart& s, const Ball& ball, int per_side) {
  const ParamBox& dom = s.domain();
  for (int k = 0; k <= per_side; ++k) {
    const double t = static_cast<double>(k) / per_side;
    const double a = dom.lo[0] + t * dom.width(0);
    const double b = dom.lo[1] + t * dom.width(1);
    for (const Param& u : {Param{a, dom.lo[1]}, Param{a, dom.hi[1]}, Param{dom.lo[0], b}, Param{dom.hi[0], b}}) {
      if (ball.contains(s.point(u))) return true;
    }
  }
  return false;
}

using Objective = std::function<double(const std::array<double, 4>&)>;

struct Candidate {
  double value;
  std::array<double, 4> x;
};

std::array<double, 4> clamp_unit(const double* x) {
  std::array<double, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = std::clamp(x[i], -1.0, 1.0);
  return out;
}

double gsl_negated(const gsl_vector* v, void* params) {
  const auto& f = *static_cast<const Objective*>(params);
  return -f(clamp_unit(v->data));
}

// Maximizes f over [-1, 1]^4 with the GSL simplex method, evaluating at the
// projection of every trial point onto the cube.
Candidate simplex_maximize(const Objective& f, const std::array<double, 4>& x0, double step, int max_evaluations) {
  const gsl_multimin_fminimizer_type* type = gsl_multimin_fminimizer_nmsimplex2;
  gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(type, 4);
  gsl_vector* x = gsl_vector_alloc(4);
  gsl_vector* ss = gsl_vector_alloc(4);
  for (std::size_t i = 0; i < 4; ++i) {
    gsl_vector_set(x, i, x0[i]);
    gsl_vector_set(ss, i, step);
  }
  gsl_multimin_function fn{&gsl_negated, 4, const_cast<Objective*>(&f)};
  gsl_multimin_fminimizer_set(m, &fn, x, ss);
  for (int it = 0; it < max_evaluations; ++it) {
    if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), 1e-4) == GSL_SUCCESS) break;
  }
  Candidate best{-gsl_multimin_fminimizer_minimum(m), clamp_unit(gsl_multimin_fminimizer_x(m)->data)};
  gsl_vector_free(ss);
  gsl_vector_free(x);
  gsl_multimin_fminimizer_free(m);
  return best;
}

// Coarse grid over [-1, 1]^4 followed by simplex polishing of the best cells.
Candidate grid_then_simplex(const Objective& coarse, const Objective& fine, const SearchSpec& search) {
  if (search.grid < 2) throw std::invalid_argument("search grid must have >= 2 points per axis");
  static const bool handler_off = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)handler_off;
  const int g = search.grid;
  std::vector<Candidate> cells;
  cells.reserve(static_cast<std::size_t>(g * g * g * g));
  std::array<double, 4> x;
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) {
      for (int c = 0; c < g; ++c) {
        for (int e = 0; e < g; ++e) {
          x = {-1.0 + 2.0 * a / (g - 1), -1.0 + 2.0 * b / (g - 1), -1.0 + 2.0 * c / (g - 1), -1.0 + 2.0 * e / (g - 1)};
          cells.push_back({coarse(x), x});
        }
      }
    }
  }
  std::stable_sort(cells.begin(), cells.end(), [](const Candidate& l, const Candidate& r) { return l.value > r.value; });
  Candidate best{-std::numeric_limits<double>::infinity(), {}};
  const int starts = std::min<int>(search.starts, static_cast<int>(cells.size()));
  for (int k = 0; k < starts; ++k) {
    const Candidate start{fine(cells[static_cast<std::size_t>(k)].x), cells[static_cast<std::size_t>(k)].x};
    if (start.value > best.value) best = start;
    const Candidate c = simplex_maximize(fine, cells[static_cast<std::size_t>(k)].x, 1.0 / (g - 1), search.max_evaluations);
    if (c.value > best.value) best = c;
  }
  return best;
}

}  // namespace

SphericalFactor spherical_factor(const HomogeneousDistance& d, const Plane& v, const QuadratureSpec& q,
                                 const SearchSpec& search) {
  q.validate();
  const auto& norm = d.norm();
  auto center = [&](const std::array<double, 4>& x) {
    return Point(x[0], x[1], x[2] * norm.unit_extent(2), x[3] * norm.unit_extent(3));
  };
  const Objective coarse = [&](const std::array<double, 4>& x) {
    return slice_area(d, v, center(x), 1.0, search.coarse_resolution);
  };
  const Objective fine = [&](const std::array<double, 4>& x) {
    return slice_area(d, v, center(x), 1.0, search.polish_resolution);
  };
  const Candidate best = grid_then_simplex(coarse, fine, search);
  SphericalFactor out;
  out.center = center(best.x);
  out.coarse_best = best.value;
  out.value = slice_area(d, v, out.center, 1.0, q);
  return out;
}

DensityEstimate federer_density(const SurfaceChart& s, const HomogeneousDistance& d, const Param& u0, int degree,
                                const std::vector<double>& radii, const QuadratureSpec& q,
                                const SearchSpec& search) {
  q.validate();
  if (radii.empty()) throw std::invalid_argument("density needs at least one radius");
  const Point p = s.point(u0);
  const auto& norm = d.norm();
  DensityEstimate out;
  out.radii = radii;
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
    auto center = [&](const std::array<double, 4>& x) {
      const Point w(x[0], x[1], x[2] * norm.unit_extent(2), x[3] * norm.unit_extent(3));
      return bch_product(p, dilate(r, w), d.xi());
    };
    auto quotient = [&](const Point& c, int resolution) {
      const Ball ball{c, r, d};
      const ParamBox box = ball_preimage_box(s, ball);
      if (box.empty() || !s.domain().contains(box.lo) || !s.domain().contains(box.hi)) {
        throw DomainError("ball of radius " + std::to_string(r) + " is not covered by the chart");
      }
      const double mu = clipped_integral(
          box, [&](const Param& u) { return top_block_norm(s, u, degree); },
          [&](const Param& u) { return ball.contains(s.point(u)); }, resolution);
      return mu / std::pow(r, degree);
    };
    const Objective coarse = [&](const std::array<double, 4>& x) { return quotient(center(x), search.coarse_resolution); };
    const Objective fine = [&](const std::array<double, 4>& x) { return quotient(center(x), search.polish_resolution); };
    const Candidate best = grid_then_simplex(coarse, fine, search);
    const Point c = center(best.x);
    for (const Point& x : {c, p}) {
      if (ball_reaches_boundary(s, Ball{x, r, d}, 512)) {
        throw DomainError("ball of radius " + std::to_string(r) + " reaches the boundary of the chart");
      }
    }
    const Estimate e = intrinsic_measure(s, Ball{c, r, d}, degree, q);
    const double scale = std::pow(r, degree);
    out.maximized.push_back(e.value / scale);
    out.errors.push_back(e.error / scale);
    out.converged = out.converged && e.converged;
    out.centers.push_back(c);
    out.centered.push_back(intrinsic_measure(s, Ball{p, r, d}, degree, q).value / scale);
  }

  const auto& m = out.maximized;
  const std::size_t n = m.size();
  const double quad_error = *std::max_element(out.errors.begin(), out.errors.end());
  if (n >= 3) {
    const double a = m[n - 3];
    const double b = m[n - 2];
    const double c = m[n - 1];
    const bool monotone = (a < b && b < c) || (a > b && b > c);
    const double second = (c - b) - (b - a);
    const double spread = std::max({a, b, c}) - std::min({a, b, c});
    const double tiny = 1e-9 * (1.0 + std::abs(c));
    if (monotone && std::abs(second) > tiny && spread > std::max(quad_error, tiny)) {
      out.limit = c - (c - b) * (c - b) / second;
      out.error = std::max(std::abs(out.limit - c), quad_error);
      out.extrapolation = "aitken";
    } else {
      out.limit = c;
      out.error = std::max(spread, quad_error);
      out.extrapolation = "last";
    }
  } else {
    out.limit = m.back();
    out.error = n >= 2 ? std::max(std::abs(m[n - 1] - m[n - 2]), quad_error) : quad_error;
    out.extrapolation = "last";
  }
  return out;
}

std::array<double, 2> eta_map(const std::array<double, 2>& t, const std::array<int, 2>& b) {
  std::array<double, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    if (b[i] < 1 || b[i] > 3) throw std::invalid_argument("induced degrees must be in 1..3");
    const double a = std::abs(t[i]);
    const double sgn = t[i] > 0.0 ? 1.0 : (t[i] < 0.0 ? -1.0 : 0.0);
    out[i] = sgn * std::pow(a, b[i]) / b[i];
  }
  return out;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y, double* residual) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs >= 2 matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw std::invalid_argument("slope fit needs distinct abscissae");
  const double slope = (n * sxy - sx * sy) / den;
  const double icept = (sy - slope * sx) / n;
  if (residual) {
    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(y[i] - (icept + slope * x[i])));
    *residual = r;
  }
  return slope;
}

std::vector<double> dyadic_radii(int first_exponent, int last_exponent) {
  std::vector<double> out;
  for (int e = first_exponent; e <= last_exponent; ++e) out.push_back(std::ldexp(1.0, -e));
  return out;
}

ExponentFit gamma_expansion(const SurfaceChart& s, const Param& u0, const GammaSpec& spec,
                            const AdaptedFrameOptions& options) {
  if (spec.directions < 1 || spec.lambdas < 6) {
    throw std::invalid_argument("exponent fits need >= 1 direction and >= 6 dyadic lambdas");
  }
  ExponentFit fit;
  fit.frame = adapted_frame(s, u0, options);
  const auto& frame = fit.frame;
  const SurfaceChart& chart = *frame.chart;
  const auto b = frame.induced_degrees;
  const double w = 0.9 * frame.half_width;
  const double rho0 = std::min({1.0, std::pow(w * b[0], 1.0 / b[0]), std::pow(w * b[1], 1.0 / b[1])});

  for (int j = 0; j < spec.lambdas; ++j) fit.lambdas.push_back(std::ldexp(1.0, -j));
  for (int k = 0; k < spec.directions; ++k) {
    const double a = std::numbers::pi / spec.directions * (2 * k + 1) / 2.0;
    fit.directions.push_back({rho0 * std::cos(a), rho0 * std::sin(a)});
  }

  for (std::size_t c = 0; c < 4; ++c) {
    auto& comp = fit.components[c];
    comp.component = static_cast<int>(c) + 1;
    comp.required_degree = kDegrees[c];
    comp.graph = comp.component == frame.graph_indices[0] || comp.component == frame.graph_indices[1];
  }

  std::array<bool, 4> any_nonzero{};
  for (const auto& t0 : fit.directions) {
    std::array<std::vector<double>, 4> lx;
    std::array<std::vector<double>, 4> ly;
    for (double lam : fit.lambdas) {
      const std::array<double, 2> t{lam * t0[0], lam * t0[1]};
      const auto z = eta_map(t, b);
      const auto g = chart.jet({z[0], z[1]}).value;
      for (std::size_t c = 0; c < 4; ++c) {
        auto& comp = fit.components[c];
        if (comp.graph) {
          const std::size_t i = comp.component == frame.graph_indices[0] ? 0 : 1;
          const double ti = t[i];
          const double expected = (ti > 0.0 ? 1.0 : (ti < 0.0 ? -1.0 : 0.0)) *
                                  std::pow(std::abs(ti), comp.required_degree) / comp.required_degree;
          comp.graph_deviation = std::max(comp.graph_deviation, std::abs(g[c] - expected));
          continue;
        }
        const double scale = std::pow(lam * rho0, comp.required_degree);
        if (std::abs(g[c]) > spec.zero_floor * scale) {
          lx[c].push_back(std::log2(lam));
          ly[c].push_back(std::log2(std::abs(g[c])));
        }
      }
    }
    for (std::size_t c = 0; c < 4; ++c) {
      auto& comp = fit.components[c];
      if (comp.graph || lx[c].empty()) continue;
      any_nonzero[c] = true;
      double res = 0.0;
      const double slope = lx[c].size() >= 2 ? fit_slope(lx[c], ly[c], &res) : -std::numeric_limits<double>::infinity();
      if (slope < comp.slope) {
        comp.slope = slope;
        comp.residual = res;
        comp.worst_direction = t0;
      }
    }
  }
  for (std::size_t c = 0; c < 4; ++c) {
    auto& comp = fit.components[c];
    if (!comp.graph && !any_nonzero[c]) comp.exact_zero = true;
  }
  return fit;
}

namespace {

Point sample_box_face_biased(std::mt19937_64& rng, const std::array<double, 4>& extent) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_int_distribution<int> mode(0, 3);
  Point x;
  for (std::size_t i = 0; i < 4; ++i) {
    double s;
    switch (mode(rng)) {
      case 0:
        s = uni(rng) < 0 ? -1.0 : 1.0;
        break;
      case 1:
        s = 0.0;
        break;
      default:
        s = uni(rng);
    }
    x[i] = s * extent[i];
  }
  return x;
}

}  // namespace

BoxBallResult box_ball_lambda(const QuasiNorm& q, long samples, std::uint64_t seed) {
  q.validate();
  if (samples < 1) throw std::invalid_argument("sample count must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Point> box_points;
  std::vector<Point> ball_points;
  box_points.reserve(static_cast<std::size_t>(samples));
  ball_points.reserve(static_cast<std::size_t>(samples));
  for (long k = 0; k < samples; ++k) box_points.push_back(sample_box_face_biased(rng, {1.0, 1.0, 1.0, 1.0}));
  for (long k = 0; k < samples; ++k) {
    ball_points.push_back(sample_box_face_biased(rng, {1.0, 1.0, q.kappa3, q.kappa4}));
  }
  auto violations = [&](double lambda) {
    long inner = 0;
    long outer = 0;
    const Box big{1.0 / lambda};
    for (const auto& w : box_points) {
      if (q(dilate(lambda, w)) > 1.0) ++inner;
    }
    for (const auto& x : ball_points) {
      if (!big.contains(x)) ++outer;
    }
    return std::pair<long, long>{inner, outer};
  };
  // Both inclusions are monotone in lambda, so bisect over k / 1024.
  int lo = 0;
  int hi = 1024;
  {
    const auto [i, o] = violations(1.0);
    if (i == 0 && o == 0) lo = 1024;
  }
  while (hi - lo > 1 && lo < 1024) {
    const int mid = (lo + hi) / 2;
    const auto [i, o] = violations(mid / 1024.0);
    if (i == 0 && o == 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  BoxBallResult out;
  out.samples = samples;
  out.lambda = lo / 1024.0;
  if (lo > 0) {
    const auto [i, o] = violations(out.lambda);
    out.inner_violations = i;
    out.outer_violations = o;
  }
  return out;
}

DivergenceProbe divergence_probe(const SurfaceChart& s, const HomogeneousDistance& d, const Param& u0, double beta,
                                 const std::vector<double>& radii, const QuadratureSpec& q) {
  if (radii.size() < 2) throw std::invalid_argument("divergence probe needs >= 2 radii");
  const Point p = s.point(u0);
  DivergenceProbe out;
  out.beta = beta;
  out.radii = radii;
  std::vector<double> lx;
  std::vector<double> ly;
  for (double r : radii) {
    const Ball ball{p, r, d};
    const ParamBox box = ball_preimage_box(s, ball);
    if (!s.domain().contains(box.lo) || !s.domain().contains(box.hi)) {
      throw DomainError("radius " + std::to_string(r) + " is outside the chart coverage");
    }
    const Estimate e = ball_area(s, ball, q);
    out.areas.push_back(e.value);
    out.errors.push_back(e.error);
    out.converged = out.converged && e.converged;
    lx.push_back(std::log(r));
    ly.push_back(std::log(e.value));
  }
  out.area_slope = fit_slope(lx, ly);
  out.ratio_slope = out.area_slope - beta;
  return out;
}

}  // namespace engel
