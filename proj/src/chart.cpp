#include "engel/chart.hpp"

#include <algorithm>
#include <cmath>

#include "engel/errors.hpp"
#include "engel/frames.hpp"

namespace engel {

bool ParamBox::contains(const Param& u, double slack) const {
  return u[0] >= lo[0] - slack && u[0] <= hi[0] + slack && u[1] >= lo[1] - slack && u[1] <= hi[1] + slack;
}

double ParamBox::inner_distance(const Param& u) const {
  return std::min({u[0] - lo[0], hi[0] - u[0], u[1] - lo[1], hi[1] - u[1]});
}

ParamBox ParamBox::intersect(const ParamBox& other) const {
  return {{std::max(lo[0], other.lo[0]), std::max(lo[1], other.lo[1])},
          {std::min(hi[0], other.hi[0]), std::min(hi[1], other.hi[1])}};
}

LeftTranslation::LeftTranslation(const Point& q, const StructureCoefficients<double>& xi) {
  using P = Polynomial<double>;
  AlgebraElement<P> qp{P(q[0]), P(q[1]), P(q[2]), P(q[3])};
  AlgebraElement<P> y(coordinate_variables<double>());
  const auto prod = bch_product(qp, y, lift(xi));
  for (std::size_t i = 0; i < 4; ++i) {
    value_[i] = CompiledPolynomial(prod[i]);
    for (std::size_t j = 0; j < 4; ++j) jacobian_[i][j] = CompiledPolynomial(prod[i].partial(static_cast<int>(j)));
  }
}

std::array<double, 4> LeftTranslation::operator()(const std::array<double, 4>& y) const {
  return {value_[0](y), value_[1](y), value_[2](y), value_[3](y)};
}

std::array<std::array<double, 4>, 4> LeftTranslation::jacobian(const std::array<double, 4>& y) const {
  std::array<std::array<double, 4>, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) out[i][j] = jacobian_[i][j](y);
  }
  return out;
}

struct SurfaceChart::ExactData {
  std::array<RationalPolynomial, 4> components;
  std::array<std::array<RationalPolynomial, 2>, 4> partials;
  StructureCoefficients<Rational> xi;
  std::array<CompiledPolynomial, 4> compiled;
  std::array<std::array<CompiledPolynomial, 2>, 4> compiled_partials;
};

namespace {

std::optional<std::array<int, 2>> detect_graph(const std::array<RationalPolynomial, 4>& components) {
  const auto u1 = RationalPolynomial::variable(0);
  const auto u2 = RationalPolynomial::variable(1);
  std::optional<int> a;
  std::optional<int> b;
  for (int k = 0; k < 4; ++k) {
    if (!a && components[static_cast<std::size_t>(k)] == u1) a = k + 1;
    if (!b && components[static_cast<std::size_t>(k)] == u2) b = k + 1;
  }
  if (a && b && *a < *b) return std::array<int, 2>{*a, *b};
  return std::nullopt;
}

void check_parameter_only(const RationalPolynomial& p) {
  for (const auto& [e, c] : p.terms()) {
    if (e[2] != 0 || e[3] != 0) {
      throw std::invalid_argument("chart components may only depend on u1 and u2");
    }
  }
}

}  // namespace

SurfaceChart SurfaceChart::from_polynomials(const std::array<RationalPolynomial, 4>& components,
                                            const ParamBox& domain, const StructureCoefficients<Rational>& xi,
                                            std::string name) {
  xi.validate();
  if (domain.empty()) throw std::invalid_argument("chart domain is empty");
  auto data = std::make_shared<ExactData>();
  data->components = components;
  data->xi = xi;
  for (std::size_t k = 0; k < 4; ++k) {
    check_parameter_only(components[k]);
    data->compiled[k] = CompiledPolynomial(components[k]);
    for (int i = 0; i < 2; ++i) {
      data->partials[k][static_cast<std::size_t>(i)] = components[k].partial(i);
      data->compiled_partials[k][static_cast<std::size_t>(i)] =
          CompiledPolynomial(data->partials[k][static_cast<std::size_t>(i)]);
    }
  }
  SurfaceChart chart;
  chart.name_ = std::move(name);
  chart.domain_ = domain;
  chart.xi_ = convert<double>(xi);
  chart.graph_indices_ = detect_graph(components);
  chart.exact_ = data;
  chart.jet_ = [data](const Param& u) {
    const std::array<double, 4> x{u[0], u[1], 0.0, 0.0};
    ChartJet<double> j;
    for (std::size_t k = 0; k < 4; ++k) {
      j.value[k] = data->compiled[k](x);
      j.jacobian[k][0] = data->compiled_partials[k][0](x);
      j.jacobian[k][1] = data->compiled_partials[k][1](x);
    }
    return j;
  };
  return chart;
}

SurfaceChart SurfaceChart::from_function(JetFunction jet, const ParamBox& domain,
                                         const StructureCoefficients<double>& xi, std::string name) {
  xi.validate();
  if (domain.empty()) throw std::invalid_argument("chart domain is empty");
  SurfaceChart chart;
  chart.name_ = std::move(name);
  chart.domain_ = domain;
  chart.xi_ = xi;
  chart.jet_ = std::move(jet);
  return chart;
}

SurfaceChart make_graph_chart(SurfaceChart::JetFunction jet, const ParamBox& domain,
                              const StructureCoefficients<double>& xi, std::array<int, 2> graph_indices,
                              std::string name) {
  SurfaceChart chart = SurfaceChart::from_function(std::move(jet), domain, xi, std::move(name));
  chart.graph_indices_ = graph_indices;
  return chart;
}

const std::array<RationalPolynomial, 4>& SurfaceChart::components() const {
  if (!exact_) throw std::logic_error("chart has no exact polynomial components");
  return exact_->components;
}

const StructureCoefficients<Rational>& SurfaceChart::exact_xi() const {
  if (!exact_) throw std::logic_error("chart has no exact structure coefficients");
  return exact_->xi;
}

void SurfaceChart::check_domain(const Param& u) const {
  const double slack = 1e-12 * (1.0 + std::max(domain_.width(0), domain_.width(1)));
  if (!domain_.contains(u, slack)) {
    throw DomainError("parameter (" + std::to_string(u[0]) + ", " + std::to_string(u[1]) +
                      ") outside chart domain");
  }
}

ChartJet<double> SurfaceChart::jet(const Param& u) const {
  check_domain(u);
  return jet_(u);
}

ChartJet<Rational> SurfaceChart::exact_jet(const ExactParam& u) const {
  if (!exact_) throw std::logic_error("exact evaluation requires a polynomial chart");
  check_domain({u[0].get_d(), u[1].get_d()});
  const std::array<Rational, 4> x{u[0], u[1], Rational(0), Rational(0)};
  ChartJet<Rational> j;
  for (std::size_t k = 0; k < 4; ++k) {
    j.value[k] = exact_->components[k].evaluate(x);
    j.jacobian[k][0] = exact_->partials[k][0].evaluate(x);
    j.jacobian[k][1] = exact_->partials[k][1].evaluate(x);
  }
  return j;
}

Point SurfaceChart::point(const Param& u) const {
  const auto j = jet(u);
  return Point(j.value);
}

SurfaceChart SurfaceChart::with_domain(const ParamBox& domain) const {
  if (domain.empty()) throw std::invalid_argument("chart domain is empty");
  SurfaceChart copy = *this;
  copy.domain_ = domain;
  return copy;
}

SurfaceChart SurfaceChart::with_name(std::string name) const {
  SurfaceChart copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

SurfaceChart SurfaceChart::left_translated(const AlgebraElement<Rational>& q) const {
  if (!exact_) return left_translated(Point(q[0].get_d(), q[1].get_d(), q[2].get_d(), q[3].get_d()));
  using P = RationalPolynomial;
  AlgebraElement<P> qp{P(q[0]), P(q[1]), P(q[2]), P(q[3])};
  AlgebraElement<P> phi(exact_->components);
  const auto moved = bch_product(qp, phi, lift(exact_->xi));
  return from_polynomials(moved.c, domain_, exact_->xi, name_);
}

SurfaceChart SurfaceChart::left_translated(const Point& q) const {
  auto translation = std::make_shared<LeftTranslation>(q, xi_);
  JetFunction base = jet_;
  JetFunction moved = [translation, base](const Param& u) {
    const auto j = base(u);
    const auto d = translation->jacobian(j.value);
    ChartJet<double> out;
    out.value = (*translation)(j.value);
    for (std::size_t k = 0; k < 4; ++k) {
      for (std::size_t i = 0; i < 2; ++i) {
        double s = 0.0;
        for (std::size_t l = 0; l < 4; ++l) s += d[k][l] * j.jacobian[l][i];
        out.jacobian[k][i] = s;
      }
    }
    return out;
  };
  return from_function(std::move(moved), domain_, xi_, name_);
}

SurfaceChart SurfaceChart::reparametrized(const std::array<RationalPolynomial, 2>& substitution,
                                          const ParamBox& new_domain) const {
  if (!exact_) throw std::logic_error("reparametrization requires a polynomial chart");
  const std::array<RationalPolynomial, 4> subs{substitution[0], substitution[1], RationalPolynomial(),
                                               RationalPolynomial()};
  std::array<RationalPolynomial, 4> components;
  for (std::size_t k = 0; k < 4; ++k) components[k] = exact_->components[k].compose(subs);
  return from_polynomials(components, new_domain, exact_->xi, name_);
}

SurfaceChart linear_chart(const std::array<std::array<Rational, 2>, 4>& coefficients, const ParamBox& domain,
                          std::string name) {
  std::array<RationalPolynomial, 4> components;
  for (std::size_t k = 0; k < 4; ++k) {
    components[k] = RationalPolynomial(coefficients[k][0]) * RationalPolynomial::variable(0) +
                    RationalPolynomial(coefficients[k][1]) * RationalPolynomial::variable(1);
  }
  return SurfaceChart::from_polynomials(components, domain, StructureCoefficients<Rational>::standard(),
                                        std::move(name));
}

}  // namespace engel
