#pragma once

// Sparse multivariate polynomials in four variables.
//
// The coefficient ring R is either Rational (exact identities) or double
// (frames with irrational structure coefficients). Terms are kept in a
// canonical map: exponents unique, no zero coefficients stored.

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "engel/rational.hpp"

namespace engel {

inline constexpr int kNumVariables = 4;
using Exponent = std::array<int, kNumVariables>;

// Degree weights of the graded coordinates y1..y4.
inline constexpr std::array<int, kNumVariables> kGradedWeights{1, 1, 2, 3};

template <class R>
class Polynomial {
 public:
  using Coefficient = R;
  using TermMap = std::map<Exponent, R>;

  Polynomial() = default;
  explicit Polynomial(const R& c) {
    if (!is_zero(c)) terms_.emplace(Exponent{}, c);
  }

  static Polynomial variable(int k) {
    check_variable(k);
    Exponent e{};
    e[k] = 1;
    return monomial(R(1), e);
  }

  static Polynomial monomial(const R& c, const Exponent& e) {
    Polynomial p;
    for (int v : e) {
      if (v < 0) throw std::invalid_argument("negative exponent");
    }
    if (!is_zero(c)) p.terms_.emplace(e, c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero_poly() const { return terms_.empty(); }

  R coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? R(0) : it->second;
  }

  // Constant term, i.e. the value at the origin.
  R constant_term() const { return coefficient(Exponent{}); }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
    return d;
  }

  int degree_in(int k) const {
    check_variable(k);
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[k]);
    return d;
  }

  static int weighted_degree(const Exponent& e,
                             const std::array<int, kNumVariables>& w = kGradedWeights) {
    return e[0] * w[0] + e[1] * w[1] + e[2] * w[2] + e[3] * w[3];
  }

  // True when every stored monomial has the given weighted degree. The zero
  // polynomial is homogeneous of every degree.
  bool is_weighted_homogeneous(int degree,
                               const std::array<int, kNumVariables>& w = kGradedWeights) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return weighted_degree(t.first, w) == degree; });
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, R(-c));
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial out;
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, R(-c));
    return out;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e;
        for (int k = 0; k < kNumVariables; ++k) e[k] = ea[k] + eb[k];
        out.add_term(e, R(ca * cb));
      }
    }
    return out;
  }
  friend Polynomial operator/(const Polynomial& a, const Polynomial& b) {
    // Only division by nonzero constants is meaningful in this ring.
    if (b.terms_.size() != 1 || b.terms_.begin()->first != Exponent{}) {
      throw std::domain_error("polynomial division by a non-constant");
    }
    const R& d = b.terms_.begin()->second;
    Polynomial out;
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, R(c / d));
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial partial(int k) const {
    check_variable(k);
    Polynomial out;
    for (const auto& [e, c] : terms_) {
      if (e[k] == 0) continue;
      Exponent d = e;
      d[k] -= 1;
      out.add_term(d, R(c * e[k]));
    }
    return out;
  }

  Polynomial pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative polynomial power");
    Polynomial result(R(1));
    Polynomial base = *this;
    while (n > 0) {
      if (n & 1) result *= base;
      n >>= 1;
      if (n > 0) base *= base;
    }
    return result;
  }

  // Evaluate at a point whose coordinates live in T (Rational, double or a
  // polynomial ring). Coefficients are converted with scalar_cast.
  template <class T>
  T evaluate(const std::array<T, kNumVariables>& x) const {
    T total = T(0);
    std::array<std::vector<T>, kNumVariables> powers;
    for (int k = 0; k < kNumVariables; ++k) {
      int dk = std::max(0, degree_in(k));
      powers[k].reserve(static_cast<std::size_t>(dk) + 1);
      powers[k].push_back(T(1));
      for (int j = 1; j <= dk; ++j) powers[k].push_back(T(powers[k].back() * x[k]));
    }
    for (const auto& [e, c] : terms_) {
      T term = scalar_cast<T>(c);
      for (int k = 0; k < kNumVariables; ++k) {
        if (e[k] > 0) term = T(term * powers[k][static_cast<std::size_t>(e[k])]);
      }
      total = T(total + term);
    }
    return total;
  }

  // Substitute subs[k] for variable k.
  Polynomial compose(const std::array<Polynomial, kNumVariables>& subs) const {
    Polynomial out;
    std::array<std::vector<Polynomial>, kNumVariables> powers;
    for (int k = 0; k < kNumVariables; ++k) {
      int dk = std::max(0, degree_in(k));
      powers[k].push_back(Polynomial(R(1)));
      for (int j = 1; j <= dk; ++j) powers[k].push_back(powers[k].back() * subs[k]);
    }
    for (const auto& [e, c] : terms_) {
      Polynomial term(c);
      for (int k = 0; k < kNumVariables; ++k) {
        if (e[k] > 0) term *= powers[k][static_cast<std::size_t>(e[k])];
      }
      out += term;
    }
    return out;
  }

 private:
  static void check_variable(int k) {
    if (k < 0 || k >= kNumVariables) throw std::out_of_range("polynomial variable index");
  }

  void add_term(const Exponent& e, const R& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  TermMap terms_;
};

using RationalPolynomial = Polynomial<Rational>;

template <class R>
struct ScalarTraits<Polynomial<R>> {
  static Polynomial<R> fraction(long n, long d) { return Polynomial<R>(engel::fraction<R>(n, d)); }
};

template <class R>
inline bool is_zero(const Polynomial<R>& p) {
  return p.is_zero_poly();
}

// Lift exact coefficients to doubles.
Polynomial<double> to_double(const Polynomial<Rational>& p);

// Canonical text form, highest total degree first, e.g. "u1^2 - 1/2*u2".
std::string to_string(const Polynomial<Rational>& p, const std::array<std::string, kNumVariables>& names);

// Dense evaluator for hot numeric loops; immutable after construction.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial<Rational>& p);
  explicit CompiledPolynomial(const Polynomial<double>& p);

  double operator()(const std::array<double, kNumVariables>& x) const;

 private:
  struct Term {
    double coefficient;
    Exponent exponent;
  };
  std::vector<Term> terms_;
  int max_degree_ = 0;
};

}  // namespace engel
