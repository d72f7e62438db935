#pragma once

// Hankel polynomial f(x) = A x^{(m)} = sum_s v_s c_s(x), where c(x) is the
// coefficient vector of (x_1 + x_2 z + ... + x_n z^{n-1})^m. Grouping the
// m-fold sum by its subscript turns an n^m enumeration into a convolution power.

#include <cassert>
#include <stdexcept>
#include <vector>

#include "hankel/tensor_core.hpp"
#include "hankel/types.hpp"

namespace hankel {

template <typename DerivedA, typename DerivedB>
Vector<typename DerivedA::Scalar> convolve(const Eigen::MatrixBase<DerivedA>& a,
                                           const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Vector<Scalar> out = Vector<Scalar>::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] == Scalar(0)) continue;
    for (Eigen::Index j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// c_s = sum of x_{i_1}...x_{i_p} over 1-based tuples with i_1+...+i_p-p = s.
/// Length (n-1)p+1; the zeroth power is the constant polynomial 1.
template <typename Derived>
Vector<typename Derived::Scalar> coefficient_profile(const Eigen::MatrixBase<Derived>& x,
                                                     int power) {
  using Scalar = typename Derived::Scalar;
  if (power < 0) throw std::invalid_argument("convolution power must be >= 0");
  if (x.size() < 1) throw std::invalid_argument("point must be nonempty");
  Vector<Scalar> c = Vector<Scalar>::Constant(1, Scalar(1));
  for (int p = 0; p < power; ++p) c = convolve(c, x);
  return c;
}

namespace detail {
template <typename Scalar, typename Derived>
void check_point(const GeneratingVector<Scalar>& gen, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != gen.dim()) {
    throw std::invalid_argument("point dimension " + std::to_string(x.size()) +
                                " does not match tensor dimension " + std::to_string(gen.dim()));
  }
}
}  // namespace detail

/// Direct n^m enumeration; used to cross-check the convolution route.
template <typename Scalar, typename Derived>
Scalar eval_naive(const GeneratingVector<Scalar>& gen, const Eigen::MatrixBase<Derived>& x,
                  long long cap = kDenseCap) {
  detail::check_point(gen, x);
  const int m = gen.order();
  const int n = gen.dim();
  const long long total = dense_size(m, n, cap);
  if (total > cap) throw std::length_error("n^m exceeds the enumeration cap");

  std::vector<int> idx(m, 0);
  Scalar sum(0);
  for (long long t = 0; t < total; ++t) {
    int s = 0;
    Scalar term(1);
    for (int k = 0; k < m; ++k) {
      s += idx[k];
      term *= x[idx[k]];
    }
    sum += gen[s] * term;
    for (int k = m - 1; k >= 0; --k) {
      if (++idx[k] < n) break;
      idx[k] = 0;
    }
  }
  return sum;
}

template <typename Scalar, typename Derived>
Scalar eval_fast(const GeneratingVector<Scalar>& gen, const Eigen::MatrixBase<Derived>& x) {
  detail::check_point(gen, x);
  return gen.values().dot(coefficient_profile(x, gen.order()));
}

/// grad_i f = m * sum_t v_{t+i-1} d_t with d the (m-1)-fold profile.
template <typename Scalar, typename Derived>
Vector<Scalar> gradient(const GeneratingVector<Scalar>& gen, const Eigen::MatrixBase<Derived>& x) {
  detail::check_point(gen, x);
  const int m = gen.order();
  const Vector<Scalar> d = coefficient_profile(x, m - 1);
  Vector<Scalar> g(gen.dim());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    g[i] = Scalar(m) * gen.values().segment(i, d.size()).dot(d);
  }
  return g;
}

/// f_j(x) = sum of monomials whose 1-based index sum is j mod r, j = 0..r-1.
/// The components add up to (x_1 + ... + x_n)^m.
template <typename Derived>
Vector<typename Derived::Scalar> residue_components(const Eigen::MatrixBase<Derived>& x, int order,
                                                    int modulus) {
  using Scalar = typename Derived::Scalar;
  if (modulus < 1) throw std::invalid_argument("modulus r must be >= 1");
  const Vector<Scalar> c = coefficient_profile(x, order);
  Vector<Scalar> f = Vector<Scalar>::Zero(modulus);
  for (Eigen::Index s = 0; s < c.size(); ++s) f[(s + order) % modulus] += c[s];
  return f;
}

template <typename Scalar, typename Derived>
Vector<Scalar> residue_components(const CirculantSpec<Scalar>& spec,
                                  const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != spec.dim()) throw std::invalid_argument("point dimension does not match n");
  return residue_components(x, spec.order(), spec.index());
}

/// Coefficients of the degree-m polynomial p(alpha) = f(base + alpha * slope),
/// lowest power first. Recovered by exact rational interpolation at the
/// nodes alpha = 0, 1, ..., m; doubles convert to rationals without rounding.
template <typename Scalar>
std::vector<Rational> alpha_coefficients(const GeneratingVector<Scalar>& gen,
                                         const AlphaLine& line) {
  if (line.base.size() != gen.dim() || line.slope.size() != gen.dim()) {
    throw std::invalid_argument("alpha line dimension does not match n");
  }
  const int m = gen.order();
  const GeneratingVector<Rational> exact = gen.template cast<Rational>();
  const VectorXq base = line.base.cast<Rational>();
  const VectorXq slope = line.slope.cast<Rational>();

  // Newton divided differences on integer nodes.
  std::vector<Rational> dd(m + 1);
  for (int k = 0; k <= m; ++k) {
    const VectorXq x = base + Rational(k) * slope;
    dd[k] = eval_fast(exact, x);
  }
  for (int level = 1; level <= m; ++level) {
    for (int k = m; k >= level; --k) dd[k] = (dd[k] - dd[k - 1]) / Rational(level);
  }

  // Expand the Newton form into monomials, Horner style.
  std::vector<Rational> poly(m + 1, Rational(0));
  poly[0] = dd[m];
  for (int k = m - 1; k >= 0; --k) {
    // poly <- poly * (alpha - k) + dd[k]
    for (int p = m; p >= 1; --p) poly[p] = poly[p - 1] - Rational(k) * poly[p];
    poly[0] = -Rational(k) * poly[0] + dd[k];
  }
  return poly;
}

/// Family alpha e_{q-1} + e_q - alpha e_{q+1} at 1-based shift q.
template <typename Scalar>
std::vector<Rational> alpha_coefficients(const CirculantSpec<Scalar>& spec, int q) {
  return alpha_coefficients(spec.expand(), alpha_line(spec.dim(), q));
}

inline std::vector<double> to_double(const std::vector<Rational>& exact) {
  std::vector<double> out;
  out.reserve(exact.size());
  for (const auto& q : exact) out.push_back(q.template convert_to<double>());
  return out;
}

}  // namespace hankel
