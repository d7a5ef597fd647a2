#pragma once

// Parametrized surface patches Phi : U -> E in exponential coordinates.

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "engel/algebra.hpp"
#include "engel/distance.hpp"
#include "engel/polynomial.hpp"

namespace engel {

using Param = std::array<double, 2>;
using ExactParam = std::array<Rational, 2>;

struct ParamBox {
  Param lo{-1.0, -1.0};
  Param hi{1.0, 1.0};

  static ParamBox square(double a, double b) { return {{a, a}, {b, b}}; }
  bool contains(const Param& u, double slack = 0.0) const;
  double width(std::size_t i) const { return hi[i] - lo[i]; }
  double area() const { return width(0) * width(1); }
  // Euclidean distance from an interior point to the boundary.
  double inner_distance(const Param& u) const;
  ParamBox intersect(const ParamBox& other) const;
  bool empty() const { return !(hi[0] > lo[0]) || !(hi[1] > lo[1]); }
};

template <class T>
struct ChartJet {
  std::array<T, 4> value{};
  std::array<std::array<T, 2>, 4> jacobian{};  // jacobian[k][i] = d phi_k / d u_i
};

// Polynomial left translation y -> q y with its Jacobian, compiled once.
class LeftTranslation {
 public:
  LeftTranslation(const Point& q, const StructureCoefficients<double>& xi);
  std::array<double, 4> operator()(const std::array<double, 4>& y) const;
  std::array<std::array<double, 4>, 4> jacobian(const std::array<double, 4>& y) const;

 private:
  std::array<CompiledPolynomial, 4> value_;
  std::array<std::array<CompiledPolynomial, 4>, 4> jacobian_;
};

class SurfaceChart {
 public:
  using JetFunction = std::function<ChartJet<double>(const Param&)>;

  // Components are polynomials in u1 (variable 0) and u2 (variable 1).
  static SurfaceChart from_polynomials(const std::array<RationalPolynomial, 4>& components, const ParamBox& domain,
                                       const StructureCoefficients<Rational>& xi, std::string name = {});
  // Numeric chart; the jet function must supply analytic first partials.
  static SurfaceChart from_function(JetFunction jet, const ParamBox& domain, const StructureCoefficients<double>& xi,
                                    std::string name = {});

  const std::string& name() const { return name_; }
  const ParamBox& domain() const { return domain_; }
  const StructureCoefficients<double>& xi() const { return xi_; }

  bool is_exact() const { return exact_ != nullptr; }
  const std::array<RationalPolynomial, 4>& components() const;
  const StructureCoefficients<Rational>& exact_xi() const;

  ChartJet<double> jet(const Param& u) const;
  ChartJet<Rational> exact_jet(const ExactParam& u) const;
  Point point(const Param& u) const;

  // Coordinates (1-based) whose components are exactly u1 and u2, when the
  // chart is in graph form over them.
  std::optional<std::array<int, 2>> graph_indices() const { return graph_indices_; }

  SurfaceChart with_domain(const ParamBox& domain) const;
  SurfaceChart with_name(std::string name) const;

  // q * Phi; exact when the chart is exact.
  SurfaceChart left_translated(const AlgebraElement<Rational>& q) const;
  SurfaceChart left_translated(const Point& q) const;

  // Phi o s where s is a polynomial map of the parameters; exact charts only.
  SurfaceChart reparametrized(const std::array<RationalPolynomial, 2>& substitution, const ParamBox& new_domain) const;

 private:
  struct ExactData;

  SurfaceChart() = default;
  void check_domain(const Param& u) const;

  std::string name_;
  ParamBox domain_;
  StructureCoefficients<double> xi_ = StructureCoefficients<double>::standard();
  std::shared_ptr<const ExactData> exact_;
  JetFunction jet_;
  std::optional<std::array<int, 2>> graph_indices_;

  friend SurfaceChart make_graph_chart(JetFunction, const ParamBox&, const StructureCoefficients<double>&,
                                       std::array<int, 2>, std::string);
};

// Numeric chart known to be in graph form over the given coordinates.
SurfaceChart make_graph_chart(SurfaceChart::JetFunction jet, const ParamBox& domain,
                              const StructureCoefficients<double>& xi, std::array<int, 2> graph_indices,
                              std::string name = {});

// The canonical planes used throughout: components given as expressions of
// u1, u2 with the standard structure coefficients.
SurfaceChart linear_chart(const std::array<std::array<Rational, 2>, 4>& coefficients, const ParamBox& domain,
                          std::string name = {});

}  // namespace engel
