#include "engel/distance.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace engel {

void QuasiNorm::validate() const {
  if (!(kappa3 > 0.0) || !(kappa4 > 0.0) || !std::isfinite(kappa3) || !std::isfinite(kappa4)) {
    throw std::invalid_argument("quasi-norm constants must be positive and finite");
  }
}

double QuasiNorm::operator()(const Point& x) const {
  return std::max({std::abs(x[0]), std::abs(x[1]), std::sqrt(std::abs(x[2]) / kappa3),
                   std::cbrt(std::abs(x[3]) / kappa4)});
}

double QuasiNorm::unit_extent(std::size_t i) const {
  switch (i) {
    case 0:
    case 1:
      return 1.0;
    case 2:
      return kappa3;
    case 3:
      return kappa4;
    default:
      throw std::out_of_range("coordinate index");
  }
}

HomogeneousDistance::HomogeneousDistance(QuasiNorm norm, StructureCoefficients<double> xi)
    : norm_(norm), xi_(xi) {
  norm_.validate();
  xi_.validate();
}

double HomogeneousDistance::operator()(const Point& x, const Point& y) const {
  return norm_(bch_product(group_inverse(x), y, xi_));
}

bool Box::contains(const Point& x) const {
  return std::abs(x[0]) <= r && std::abs(x[1]) <= r && std::abs(x[2]) <= r * r && std::abs(x[3]) <= r * r * r;
}

namespace {

// Point of the unit ball: every coordinate uniform in its extent, with a
// bias toward the extremes and zero so that faces and edges of the box
// (where the triangle inequality is tight) are sampled.
Point sample_unit_ball(const QuasiNorm& q, std::mt19937_64& rng) {
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
    x[i] = s * q.unit_extent(i);
  }
  return x;
}

}  // namespace

TriangleDefectReport triangle_defect_sampler(const HomogeneousDistance& d, long samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("sample count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  const auto& q = d.norm();
  TriangleDefectReport report;
  report.max_defect = -std::numeric_limits<double>::infinity();
  report.samples = samples;
  constexpr double kRounding = 16.0 * std::numeric_limits<double>::epsilon();
  for (long n = 0; n < samples; ++n) {
    // By homogeneity only the ratio of the two radii matters.
    const Point x = sample_unit_ball(q, rng);
    const double s = radius(rng);
    const Point y = dilate(s, sample_unit_ball(q, rng));
    const double nx = q(x);
    const double ny = q(y);
    const double nxy = q(bch_product(x, y, d.xi()));
    double defect = nxy - (nx + ny);
    if (std::abs(defect) <= kRounding * (1.0 + nx + ny)) defect = 0.0;
    if (defect > report.max_defect) {
      report.max_defect = defect;
      report.worst_x = x;
      report.worst_y = y;
    }
  }
  return report;
}

double sampled_ball_diameter(const HomogeneousDistance& d, double r, long samples, std::uint64_t seed) {
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  std::mt19937_64 rng(seed);
  double best = 0.0;
  for (long n = 0; n < samples; ++n) {
    const Point x = dilate(r, sample_unit_ball(d.norm(), rng));
    const Point y = dilate(r, sample_unit_ball(d.norm(), rng));
    best = std::max(best, d(x, y));
  }
  return best;
}

double inner_product(const std::array<double, 4>& v, const std::array<double, 4>& w) {
  return v[0] * w[0] + v[1] * w[1] + v[2] * w[2] + v[3] * w[3];
}

double two_vector_norm(const TwoVector<double>& c) {
  double s = 0.0;
  for (double x : c.c) s += x * x;
  return std::sqrt(s);
}

}  // namespace engel
