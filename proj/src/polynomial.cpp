#include "engel/polynomial.hpp"

#include <sstream>

namespace engel {

Polynomial<double> to_double(const Polynomial<Rational>& p) {
  Polynomial<double> out;
  for (const auto& [e, c] : p.terms()) out += Polynomial<double>::monomial(c.get_d(), e);
  return out;
}

std::string to_string(const Polynomial<Rational>& p, const std::array<std::string, kNumVariables>& names) {
  if (p.is_zero_poly()) return "0";
  std::vector<std::pair<Exponent, Rational>> terms(p.terms().begin(), p.terms().end());
  // Highest total degree first; ties broken by descending lexicographic exponent.
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    int da = a.first[0] + a.first[1] + a.first[2] + a.first[3];
    int db = b.first[0] + b.first[1] + b.first[2] + b.first[3];
    if (da != db) return da > db;
    return a.first > b.first;
  });

  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    Rational magnitude = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;

    std::ostringstream mono;
    bool has_var = false;
    for (int k = 0; k < kNumVariables; ++k) {
      if (e[k] == 0) continue;
      if (has_var) mono << "*";
      mono << names[static_cast<std::size_t>(k)];
      if (e[k] > 1) mono << "^" << e[k];
      has_var = true;
    }
    if (!has_var) {
      os << magnitude.get_str();
    } else if (magnitude == 1) {
      os << mono.str();
    } else {
      os << magnitude.get_str() << "*" << mono.str();
    }
  }
  return os.str();
}

CompiledPolynomial::CompiledPolynomial(const Polynomial<Rational>& p) {
  for (const auto& [e, c] : p.terms()) {
    terms_.push_back({c.get_d(), e});
    for (int v : e) max_degree_ = std::max(max_degree_, v);
  }
}

CompiledPolynomial::CompiledPolynomial(const Polynomial<double>& p) {
  for (const auto& [e, c] : p.terms()) {
    terms_.push_back({c, e});
    for (int v : e) max_degree_ = std::max(max_degree_, v);
  }
}

double CompiledPolynomial::operator()(const std::array<double, kNumVariables>& x) const {
  constexpr int kStackDegree = 16;
  if (max_degree_ >= kStackDegree) {
    double total = 0.0;
    for (const auto& t : terms_) {
      double v = t.coefficient;
      for (int k = 0; k < kNumVariables; ++k) {
        for (int j = 0; j < t.exponent[k]; ++j) v *= x[k];
      }
      total += v;
    }
    return total;
  }
  double powers[kNumVariables][kStackDegree];
  for (int k = 0; k < kNumVariables; ++k) {
    powers[k][0] = 1.0;
    for (int j = 1; j <= max_degree_; ++j) powers[k][j] = powers[k][j - 1] * x[k];
  }
  double total = 0.0;
  for (const auto& t : terms_) {
    total += t.coefficient * powers[0][t.exponent[0]] * powers[1][t.exponent[1]] *
             powers[2][t.exponent[2]] * powers[3][t.exponent[3]];
  }
  return total;
}

}  // namespace engel
