#include "engel/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "engel/errors.hpp"
#include "engel/surfaces.hpp"

namespace engel {

void QuadratureSpec::validate() const {
  if (resolution < 1) throw std::invalid_argument("quadrature resolution must be >= 1");
  if (levels < 2) throw std::invalid_argument("quadrature needs at least 2 refinement levels");
  if (levels > 12) throw std::invalid_argument("quadrature refinement levels must be <= 12");
  if (mc_samples < 0) throw std::invalid_argument("Monte Carlo sample count must be >= 0");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be positive");
}

namespace {

constexpr int kBisections = 52;

double locate_transition(double u1, double a, double b, bool inside_at_a, const Indicator& inside) {
  for (int k = 0; k < kBisections && b - a > 1e-15 * (1.0 + std::abs(a)); ++k) {
    const double m = 0.5 * (a + b);
    if (inside({u1, m}) == inside_at_a) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double integrate_interval(double u1, double a, double b, double h, const Integrand& f) {
  const double len = b - a;
  if (!(len > 0.0)) return 0.0;
  const int k = std::max(1, static_cast<int>(std::ceil(len / h - 1e-9)));
  const double step = len / k;
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += f({u1, a + (i + 0.5) * step});
  return s * step;
}

}  // namespace

double clipped_integral(const ParamBox& box, const Integrand& f, const Indicator& inside, int resolution) {
  if (box.empty()) return 0.0;
  const int n = resolution;
  const double h1 = box.width(0) / n;
  const double h2 = box.width(1) / n;
  std::vector<double> nodes(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) nodes[static_cast<std::size_t>(j)] = box.lo[1] + h2 * j;
  nodes.back() = box.hi[1];
  std::vector<char> flag(nodes.size());

  struct Row {
    double value = 0.0;
    bool support = false;
  };
  // Clipped integral along u2 at fixed u1.
  auto row = [&](double u1) {
    Row out;
    for (std::size_t j = 0; j < nodes.size(); ++j) flag[j] = inside({u1, nodes[j]}) ? 1 : 0;
    double start = flag[0] ? nodes[0] : 0.0;
    bool in = flag[0] != 0;
    out.support = in;
    for (std::size_t j = 1; j < nodes.size(); ++j) {
      if ((flag[j] != 0) == in) continue;
      out.support = true;
      const double t = locate_transition(u1, nodes[j - 1], nodes[j], in, inside);
      if (in) {
        out.value += integrate_interval(u1, start, t, h2, f);
      } else {
        start = t;
      }
      in = !in;
    }
    if (in) out.value += integrate_interval(u1, start, nodes.back(), h2, f);
    return out;
  };

  // Rows are clipped in u1 as well: the support edges of the row integral
  // are located by bisection so that jumps at the edges cost O(h^2).
  std::vector<bool> support(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double u1 = i == n ? box.hi[0] : box.lo[0] + h1 * i;
    support[static_cast<std::size_t>(i)] = row(u1).support;
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = box.lo[0] + h1 * i;
    const double b = i + 1 == n ? box.hi[0] : a + h1;
    const bool sa = support[static_cast<std::size_t>(i)];
    const bool sb = support[static_cast<std::size_t>(i) + 1];
    if (sa == sb) {
      total += row(0.5 * (a + b)).value * (b - a);
      continue;
    }
    double lo = a;
    double hi = b;
    for (int k = 0; k < 40; ++k) {
      const double mid = 0.5 * (lo + hi);
      if (row(mid).support == sa) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double t = 0.5 * (lo + hi);
    if (sa) {
      total += row(0.5 * (a + t)).value * (t - a);
    } else {
      total += row(0.5 * (t + b)).value * (b - t);
    }
  }
  return total;
}

Estimate refine_clipped(const ParamBox& box, const Integrand& f, const Indicator& inside, const QuadratureSpec& q) {
  q.validate();
  Estimate e;
  if (box.empty()) {
    e.note = "empty region";
    e.levels.assign(static_cast<std::size_t>(q.levels), 0.0);
    return e;
  }
  for (int level = 0; level < q.levels; ++level) e.levels.push_back(clipped_integral(box, f, inside, q.resolution_at(level)));
  e.value = e.levels.back();
  e.error = std::abs(e.levels.back() - e.levels[e.levels.size() - 2]);
  e.converged = e.error <= std::max(q.abs_tol, q.rel_tol * std::abs(e.value));
  if (!e.converged && q.mc_samples > 0) {
    std::mt19937_64 rng(q.seed);
    std::uniform_real_distribution<double> d1(box.lo[0], box.hi[0]);
    std::uniform_real_distribution<double> d2(box.lo[1], box.hi[1]);
    double sum = 0.0;
    double sum2 = 0.0;
    for (long k = 0; k < q.mc_samples; ++k) {
      const Param u{d1(rng), d2(rng)};
      const double v = inside(u) ? f(u) : 0.0;
      sum += v;
      sum2 += v * v;
    }
    const double n = static_cast<double>(q.mc_samples);
    const double mean = sum / n;
    const double var = std::max(0.0, sum2 / n - mean * mean);
    e.value = mean * box.area();
    e.error = std::sqrt(var / n) * box.area();
    e.method = "monte-carlo";
    e.note = "tensor refinement did not converge";
    e.converged = e.error <= std::max(q.abs_tol, q.rel_tol * std::abs(e.value));
  }
  return e;
}

double riemannian_jacobian(const SurfaceChart& s, const Param& u) {
  return two_vector_norm(tangent_two_vector(s, u));
}

double top_block_norm(const SurfaceChart& s, const Param& u, int degree) {
  const auto v = tangent_two_vector(s, u);
  double acc = 0.0;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    if (degree_of_multiindex(kPairs[k][0], kPairs[k][1]) == degree) acc += v.c[k] * v.c[k];
  }
  return std::sqrt(acc);
}

Estimate riemannian_area(const SurfaceChart& s, const ParamBox& region, const Indicator& inside,
                         const QuadratureSpec& q) {
  const ParamBox box = region.intersect(s.domain());
  const Indicator ind = inside ? inside : Indicator([](const Param&) { return true; });
  return refine_clipped(box, [&](const Param& u) { return riemannian_jacobian(s, u); }, ind, q);
}

ParamBox ball_preimage_box(const SurfaceChart& s, const Ball& ball) {
  const auto g = s.graph_indices();
  if (!g) return s.domain();
  const auto& norm = ball.distance.norm();
  const double big_r = norm(ball.center) + ball.radius;
  ParamBox box;
  for (std::size_t i = 0; i < 2; ++i) {
    const int k = (*g)[i];
    const double ext = norm.unit_extent(static_cast<std::size_t>(k - 1)) * std::pow(big_r, kDegrees[static_cast<std::size_t>(k - 1)]);
    box.lo[i] = -ext;
    box.hi[i] = ext;
  }
  return box.intersect(s.domain());
}

namespace {

Estimate ball_integral(const SurfaceChart& s, const Ball& ball, const Integrand& f, const QuadratureSpec& q,
                       std::optional<ParamBox> region) {
  const ParamBox box = region ? region->intersect(s.domain()) : ball_preimage_box(s, ball);
  Estimate e;
  if (box.empty()) {
    q.validate();
    e.note = "ball disjoint from patch";
    e.levels.assign(static_cast<std::size_t>(q.levels), 0.0);
    return e;
  }
  const ParamBox dom = s.domain();
  Indicator inside = [&s, &ball, dom](const Param& u) { return dom.contains(u) && ball.contains(s.point(u)); };
  e = refine_clipped(box, f, inside, q);
  if (e.value == 0.0 && e.note.empty()) e.note = "ball disjoint from patch";
  return e;
}

}  // namespace

Estimate intrinsic_measure(const SurfaceChart& s, const Ball& ball, int degree, const QuadratureSpec& q,
                           std::optional<ParamBox> region) {
  if (degree < 2 || degree > 5) throw std::invalid_argument("surface degree must be in 2..5");
  return ball_integral(s, ball, [&s, degree](const Param& u) { return top_block_norm(s, u, degree); }, q, region);
}

Estimate ball_area(const SurfaceChart& s, const Ball& ball, const QuadratureSpec& q, std::optional<ParamBox> region) {
  return ball_integral(s, ball, [&s](const Param& u) { return riemannian_jacobian(s, u); }, q, region);
}

CompiledOneForm::CompiledOneForm(const OneForm<Rational>& w) {
  for (std::size_t l = 0; l < 4; ++l) c[l] = CompiledPolynomial(w.c[l]);
}

CompiledOneForm::CompiledOneForm(const OneForm<double>& w) {
  for (std::size_t l = 0; l < 4; ++l) c[l] = CompiledPolynomial(w.c[l]);
}

double CompiledOneForm::operator()(const std::array<double, 4>& y, const std::array<double, 4>& v) const {
  double s = 0.0;
  for (std::size_t l = 0; l < 4; ++l) s += c[l](y) * v[l];
  return s;
}

CompiledTwoForm::CompiledTwoForm(const TwoForm<Rational>& w) {
  for (std::size_t k = 0; k < 6; ++k) c[k] = CompiledPolynomial(w.c[k]);
}

CompiledTwoForm::CompiledTwoForm(const TwoForm<double>& w) {
  for (std::size_t k = 0; k < 6; ++k) c[k] = CompiledPolynomial(w.c[k]);
}

double CompiledTwoForm::pullback(const std::array<double, 4>& y, const std::array<double, 6>& m) const {
  double s = 0.0;
  for (std::size_t k = 0; k < 6; ++k) s += c[k](y) * m[k];
  return s;
}

Loop chart_circle(const SurfaceChart& s, const Param& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("loop radius must be positive");
  const ParamBox disk{{center[0] - radius, center[1] - radius}, {center[0] + radius, center[1] + radius}};
  if (!s.domain().contains(disk.lo) || !s.domain().contains(disk.hi)) {
    throw DomainError("disk of radius " + std::to_string(radius) + " leaves the chart domain");
  }
  return [s, center, radius](double t) {
    const double a = 2.0 * std::numbers::pi * t;
    const Param u{center[0] + radius * std::cos(a), center[1] + radius * std::sin(a)};
    const Param du{-2.0 * std::numbers::pi * radius * std::sin(a), 2.0 * std::numbers::pi * radius * std::cos(a)};
    const auto j = s.jet(u);
    LoopPoint p;
    p.y = j.value;
    for (std::size_t l = 0; l < 4; ++l) p.v[l] = j.jacobian[l][0] * du[0] + j.jacobian[l][1] * du[1];
    return p;
  };
}

Estimate line_integral(const CompiledOneForm& w, const Loop& loop, const QuadratureSpec& q) {
  q.validate();
  const auto a = loop(0.0);
  const auto b = loop(1.0);
  double gap = 0.0;
  double size = 0.0;
  for (std::size_t l = 0; l < 4; ++l) {
    gap = std::max(gap, std::abs(a.y[l] - b.y[l]));
    size = std::max(size, std::abs(a.y[l]));
  }
  if (gap > 1e-9 * (1.0 + size)) throw std::invalid_argument("line integral needs a closed loop");
  Estimate e;
  for (int level = 0; level < q.levels; ++level) {
    const int n = q.resolution_at(level);
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      const auto p = loop((k + 0.5) / n);
      s += w(p.y, p.v);
    }
    e.levels.push_back(s / n);
  }
  e.value = e.levels.back();
  e.error = std::abs(e.levels.back() - e.levels[e.levels.size() - 2]);
  e.converged = e.error <= std::max(q.abs_tol, q.rel_tol * std::abs(e.value));
  return e;
}

Estimate surface_integral(const CompiledTwoForm& w, const SurfaceChart& s, const Param& center, double radius,
                          const QuadratureSpec& q) {
  q.validate();
  if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
  const Param lo{center[0] - radius, center[1] - radius};
  const Param hi{center[0] + radius, center[1] + radius};
  if (!s.domain().contains(lo) || !s.domain().contains(hi)) {
    throw DomainError("disk of radius " + std::to_string(radius) + " leaves the chart domain");
  }
  Estimate e;
  for (int level = 0; level < q.levels; ++level) {
    const int nr = q.resolution_at(level);
    const int nt = 4 * nr;
    const double hr = radius / nr;
    const double ht = 2.0 * std::numbers::pi / nt;
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
      const double rho = (i + 0.5) * hr;
      double ring = 0.0;
      for (int k = 0; k < nt; ++k) {
        const double t = (k + 0.5) * ht;
        const auto j = s.jet({center[0] + rho * std::cos(t), center[1] + rho * std::sin(t)});
        ring += w.pullback(j.value, minors_of(j.jacobian));
      }
      total += ring * rho;
    }
    e.levels.push_back(total * hr * ht);
  }
  e.value = e.levels.back();
  e.error = std::abs(e.levels.back() - e.levels[e.levels.size() - 2]);
  e.converged = e.error <= std::max(q.abs_tol, q.rel_tol * std::abs(e.value));
  return e;
}

StokesReport stokes_check(const SurfaceChart& s, const Param& center, double radius, const QuadratureSpec& q) {
  CompiledOneForm theta4;
  CompiledTwoForm dtheta4;
  if (s.is_exact()) {
    const auto th = coframe_forms<Rational>(s.exact_xi());
    theta4 = CompiledOneForm(th[3]);
    dtheta4 = CompiledTwoForm(exterior_derivative(th[3]));
  } else {
    const auto th = coframe_forms<double>(s.xi());
    theta4 = CompiledOneForm(th[3]);
    dtheta4 = CompiledTwoForm(exterior_derivative(th[3]));
  }
  StokesReport r;
  r.radius = radius;
  r.line = line_integral(theta4, chart_circle(s, center, radius), q);
  r.surface = surface_integral(dtheta4, s, center, radius, q);
  r.defect = std::abs(r.line.value - r.surface.value);
  r.error = r.line.error + r.surface.error;
  r.normalized_ratio = r.surface.value / (std::numbers::pi * radius * radius);
  const auto j = s.jet(center);
  r.pointwise_limit = dtheta4.pullback(j.value, minors_of(j.jacobian));
  const auto tau = tangent_two_vector(s, center);
  r.predicted_limit = -s.xi().xi13 * tau.at(1, 3) - s.xi().xi23 * tau.at(2, 3);
  return r;
}

}  // namespace engel
