#pragma once

// Left-invariant frames, coframes and polynomial exterior calculus in the
// exponential coordinates y = (y1, y2, y3, y4) of a graded basis.

#include <array>

#include "engel/algebra.hpp"
#include "engel/polynomial.hpp"

namespace engel {

template <class T>
using Matrix4 = std::array<std::array<T, 4>, 4>;

// Row j holds the coefficients of the pushed-forward field Y_{j+1} over
// d/dy_1..d/dy_4. Upper unitriangular.
template <class T>
Matrix4<T> frame_matrix(const StructureCoefficients<T>& xi, const std::array<T, 4>& y) {
  const T h = fraction<T>(1, 2);
  const T tw = fraction<T>(1, 12);
  const T& y1 = y[0];
  const T& y2 = y[1];
  const T& y3 = y[2];
  const T zero = T(0);
  const T one = T(1);
  Matrix4<T> a;
  a[0] = {one, zero, T(-(h * xi.xi12 * y2)),
          T(-(T(h * y3 * xi.xi13) + T(tw * xi.xi12 * xi.xi13 * y1 * y2) + T(tw * xi.xi12 * xi.xi23 * y2 * y2)))};
  a[1] = {zero, one, T(h * y1 * xi.xi12),
          T(-(T(h * y3 * xi.xi23) - T(tw * xi.xi12 * xi.xi23 * y2 * y1) - T(tw * xi.xi12 * xi.xi13 * y1 * y1)))};
  a[2] = {zero, zero, one, T(h * T(y1 * xi.xi13 + y2 * xi.xi23))};
  a[3] = {zero, zero, zero, one};
  return a;
}

// Row k holds the coefficients of theta_{k+1} over dy_1..dy_4, transcribed
// from the closed-form dual basis.
template <class T>
Matrix4<T> coframe_matrix(const StructureCoefficients<T>& xi, const std::array<T, 4>& y) {
  const T h = fraction<T>(1, 2);
  const T s = fraction<T>(1, 6);
  const T& y1 = y[0];
  const T& y2 = y[1];
  const T& y3 = y[2];
  const T zero = T(0);
  const T one = T(1);
  Matrix4<T> th;
  th[0] = {one, zero, zero, zero};
  th[1] = {zero, one, zero, zero};
  th[2] = {T(xi.xi12 * h * y2), T(-(xi.xi12 * h * y1)), one, zero};
  th[3] = {T(T(h * y3 * xi.xi13) - T(s * xi.xi12 * y2 * T(xi.xi13 * y1 + xi.xi23 * y2))),
           T(T(s * xi.xi12 * y1 * T(xi.xi23 * y2 + xi.xi13 * y1)) + T(h * y3 * xi.xi23)),
           T(-(h * T(y1 * xi.xi13 + y2 * xi.xi23))), one};
  return th;
}

template <class R>
using VectorField = std::array<Polynomial<R>, 4>;

template <class R>
struct OneForm {
  std::array<Polynomial<R>, 4> c;  // sum_l c[l] dy_{l+1}
  friend bool operator==(const OneForm&, const OneForm&) = default;
};

template <class R>
struct TwoForm {
  std::array<Polynomial<R>, 6> c;  // kPairs order, dy_i ^ dy_j
  friend bool operator==(const TwoForm&, const TwoForm&) = default;
  bool is_zero_form() const {
    for (const auto& p : c) {
      if (!p.is_zero_poly()) return false;
    }
    return true;
  }
};

// Triples ordered (123, 124, 134, 234).
inline constexpr std::array<std::array<int, 3>, 4> kTriples{{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};

template <class R>
struct ThreeForm {
  std::array<Polynomial<R>, 4> c;
  bool is_zero_form() const {
    for (const auto& p : c) {
      if (!p.is_zero_poly()) return false;
    }
    return true;
  }
};

template <class R>
std::array<Polynomial<R>, 4> coordinate_variables() {
  return {Polynomial<R>::variable(0), Polynomial<R>::variable(1), Polynomial<R>::variable(2),
          Polynomial<R>::variable(3)};
}

template <class R>
StructureCoefficients<Polynomial<R>> lift(const StructureCoefficients<R>& xi) {
  return {Polynomial<R>(xi.xi12), Polynomial<R>(xi.xi13), Polynomial<R>(xi.xi23)};
}

// The four frame fields as polynomial vector fields.
template <class R>
std::array<VectorField<R>, 4> frame_fields(const StructureCoefficients<R>& xi) {
  xi.validate();
  return frame_matrix(lift(xi), coordinate_variables<R>());
}

// The dual coframe as transcribed in closed form.
template <class R>
std::array<OneForm<R>, 4> coframe_forms(const StructureCoefficients<R>& xi) {
  xi.validate();
  const auto th = coframe_matrix(lift(xi), coordinate_variables<R>());
  std::array<OneForm<R>, 4> out;
  for (std::size_t k = 0; k < 4; ++k) out[k].c = th[k];
  return out;
}

// The coframe recomputed from the frame as (A^T)^{-1}; A = I + N with N
// strictly upper triangular, so A^{-1} = I - N + N^2 - N^3 exactly.
template <class R>
std::array<OneForm<R>, 4> coframe_by_inversion(const std::array<VectorField<R>, 4>& frame) {
  using P = Polynomial<R>;
  Matrix4<P> n;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) n[i][j] = (i == j) ? frame[i][j] - P(R(1)) : frame[i][j];
  }
  auto mul = [](const Matrix4<P>& a, const Matrix4<P>& b) {
    Matrix4<P> c;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        P s;
        for (std::size_t k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
        c[i][j] = s;
      }
    }
    return c;
  };
  const Matrix4<P> n2 = mul(n, n);
  const Matrix4<P> n3 = mul(n2, n);
  std::array<OneForm<R>, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      P inv = (i == j ? P(R(1)) : P()) - n[i][j] + n2[i][j] - n3[i][j];
      out[j].c[i] = inv;  // transpose
    }
  }
  return out;
}

template <class R>
Polynomial<R> pairing(const OneForm<R>& w, const VectorField<R>& v) {
  Polynomial<R> s;
  for (std::size_t l = 0; l < 4; ++l) s += w.c[l] * v[l];
  return s;
}

template <class R>
OneForm<R> exterior_derivative(const Polynomial<R>& f) {
  OneForm<R> w;
  for (int l = 0; l < 4; ++l) w.c[static_cast<std::size_t>(l)] = f.partial(l);
  return w;
}

template <class R>
TwoForm<R> exterior_derivative(const OneForm<R>& w) {
  TwoForm<R> out;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    const int i = kPairs[k][0] - 1;
    const int j = kPairs[k][1] - 1;
    out.c[k] = w.c[static_cast<std::size_t>(j)].partial(i) - w.c[static_cast<std::size_t>(i)].partial(j);
  }
  return out;
}

template <class R>
ThreeForm<R> exterior_derivative(const TwoForm<R>& w) {
  ThreeForm<R> out;
  for (std::size_t k = 0; k < kTriples.size(); ++k) {
    const int a = kTriples[k][0];
    const int b = kTriples[k][1];
    const int c = kTriples[k][2];
    const auto& wbc = w.c[static_cast<std::size_t>(pair_position(b, c))];
    const auto& wac = w.c[static_cast<std::size_t>(pair_position(a, c))];
    const auto& wab = w.c[static_cast<std::size_t>(pair_position(a, b))];
    out.c[k] = wbc.partial(a - 1) - wac.partial(b - 1) + wab.partial(c - 1);
  }
  return out;
}

template <class R>
TwoForm<R> wedge(const OneForm<R>& a, const OneForm<R>& b) {
  TwoForm<R> out;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    const auto i = static_cast<std::size_t>(kPairs[k][0] - 1);
    const auto j = static_cast<std::size_t>(kPairs[k][1] - 1);
    out.c[k] = a.c[i] * b.c[j] - a.c[j] * b.c[i];
  }
  return out;
}

template <class R>
Polynomial<R> apply(const TwoForm<R>& w, const VectorField<R>& x, const VectorField<R>& y) {
  Polynomial<R> s;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    const auto i = static_cast<std::size_t>(kPairs[k][0] - 1);
    const auto j = static_cast<std::size_t>(kPairs[k][1] - 1);
    s += w.c[k] * (x[i] * y[j] - x[j] * y[i]);
  }
  return s;
}

// Coefficients of w in the basis {theta_i ^ theta_j : i < j}, obtained as
// w(Y_i, Y_j).
template <class R>
std::array<Polynomial<R>, 6> coframe_expansion(const TwoForm<R>& w, const std::array<VectorField<R>, 4>& frame) {
  std::array<Polynomial<R>, 6> out;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    out[k] = apply(w, frame[static_cast<std::size_t>(kPairs[k][0] - 1)],
                   frame[static_cast<std::size_t>(kPairs[k][1] - 1)]);
  }
  return out;
}

// Numeric evaluation helpers.
template <class T>
std::array<T, 4> apply_rows(const Matrix4<T>& m, const std::array<T, 4>& v) {
  std::array<T, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    T s = T(0);
    for (std::size_t j = 0; j < 4; ++j) s = T(s + m[i][j] * v[j]);
    out[i] = s;
  }
  return out;
}

}  // namespace engel
