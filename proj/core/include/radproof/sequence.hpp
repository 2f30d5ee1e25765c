#pragma once

#include <algorithm>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "radproof/interval.hpp"

namespace radproof {

/// Finitely supported Taylor coefficients {a}_0..{a}_deg, normed in l1.
template <class T>
struct TaylorSeq {
  std::vector<T> c;

  TaylorSeq() = default;
  explicit TaylorSeq(std::size_t degree) : c(degree + 1, T(0.0)) {}
  explicit TaylorSeq(std::vector<T> coeffs) : c(std::move(coeffs)) {}

  std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
  T operator[](std::size_t n) const { return n < c.size() ? c[n] : T(0.0); }
};

/// Chebyshev coefficients with w(s) = {a}_0 + 2 sum_{n>=1} {a}_n T_n(s),
/// normed by |a_0| + 2 sum |a_n| nu^n.
template <class T>
struct ChebSeq {
  std::vector<T> c;
  double nu = 1.0;

  ChebSeq() = default;
  ChebSeq(std::size_t degree, double nu_) : c(degree + 1, T(0.0)), nu(nu_) {}
  ChebSeq(std::vector<T> coeffs, double nu_) : c(std::move(coeffs)), nu(nu_) {}

  std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
  T operator[](std::size_t n) const { return n < c.size() ? c[n] : T(0.0); }
};

namespace detail {

template <class T> bool is_zero(const T& x) { return x == T(0.0); }
inline bool is_zero(const Interval& x) { return x.lo == 0.0 && x.hi == 0.0; }
inline bool is_zero(const CInterval& x) { return is_zero(x.re) && is_zero(x.im); }

/// One past the last coefficient that is not an exact zero.
template <class T> std::size_t support(const std::vector<T>& c) {
  std::size_t s = c.size();
  while (s > 0 && is_zero(c[s - 1])) --s;
  return s;
}

}  // namespace detail

// Products. Result degrees are deg a + deg b; exact zeros are skipped in the
// loops but kept in the dimensions.

template <class T>
TaylorSeq<T> cauchy_product(const TaylorSeq<T>& a, const TaylorSeq<T>& b) {
  TaylorSeq<T> r(a.degree() + b.degree());
  if (a.c.empty() || b.c.empty()) return r;
  const std::size_t sa = detail::support(a.c);
  const std::size_t sb = detail::support(b.c);
  for (std::size_t i = 0; i < sa; ++i) {
    if (detail::is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < sb; ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

template <class T>
ChebSeq<T> cheb_convolution(const ChebSeq<T>& a, const ChebSeq<T>& b) {
  if (a.nu != b.nu) throw NuMismatch("Chebyshev sequences carry different weights");
  ChebSeq<T> r(a.degree() + b.degree(), a.nu);
  if (a.c.empty() || b.c.empty()) return r;
  const long sa = static_cast<long>(detail::support(a.c));
  const long sb = static_cast<long>(detail::support(b.c));
  // {a*b}_n = sum_{m in Z} a_{|n-m|} b_{|m|}: a pair (i, j) of positive
  // indices lands on i + j and |i - j|, twice on 0 when i = j.
  for (long i = 0; i < sa; ++i) {
    if (detail::is_zero(a.c[i])) continue;
    for (long j = 0; j < sb; ++j) {
      const T p = a.c[i] * b.c[j];
      r.c[i + j] += p;
      if (i > 0 && j > 0) {
        r.c[std::labs(i - j)] += p;
        if (i == j) r.c[0] += p;
      }
    }
  }
  return r;
}

template <class T> TaylorSeq<T> operator+(const TaylorSeq<T>& a, const TaylorSeq<T>& b) {
  TaylorSeq<T> r(std::max(a.degree(), b.degree()));
  for (std::size_t n = 0; n < r.c.size(); ++n) r.c[n] = a[n] + b[n];
  return r;
}
template <class T> TaylorSeq<T> operator-(const TaylorSeq<T>& a, const TaylorSeq<T>& b) {
  TaylorSeq<T> r(std::max(a.degree(), b.degree()));
  for (std::size_t n = 0; n < r.c.size(); ++n) r.c[n] = a[n] - b[n];
  return r;
}
template <class T, class S> TaylorSeq<T> scale(const TaylorSeq<T>& a, const S& s) {
  TaylorSeq<T> r = a;
  for (auto& x : r.c) x = x * s;
  return r;
}
template <class T> ChebSeq<T> operator+(const ChebSeq<T>& a, const ChebSeq<T>& b) {
  if (a.nu != b.nu) throw NuMismatch("Chebyshev sequences carry different weights");
  ChebSeq<T> r(std::max(a.degree(), b.degree()), a.nu);
  for (std::size_t n = 0; n < r.c.size(); ++n) r.c[n] = a[n] + b[n];
  return r;
}
template <class T> ChebSeq<T> operator-(const ChebSeq<T>& a, const ChebSeq<T>& b) {
  if (a.nu != b.nu) throw NuMismatch("Chebyshev sequences carry different weights");
  ChebSeq<T> r(std::max(a.degree(), b.degree()), a.nu);
  for (std::size_t n = 0; n < r.c.size(); ++n) r.c[n] = a[n] - b[n];
  return r;
}
template <class T, class S> ChebSeq<T> scale(const ChebSeq<T>& a, const S& s) {
  ChebSeq<T> r = a;
  for (auto& x : r.c) x = x * s;
  return r;
}

// Norms. For interval carriers the result encloses the norm of every
// sequence in the box; its upper endpoint is the bound used downstream.

template <class T> auto norm(const TaylorSeq<T>& a) {
  using R = typename scalar_traits<T>::real;
  R s(0.0);
  for (const auto& x : a.c) s += modulus(x);
  return s;
}

/// Weights 1, 2nu, 2nu^2, ... enclosed for n = 0..degree.
std::vector<Interval> cheb_weights(double nu, std::size_t degree);

template <class T> auto norm(const ChebSeq<T>& a) {
  using R = typename scalar_traits<T>::real;
  R s(0.0);
  if (a.c.empty()) return s;
  s = R(modulus(a.c[0]));
  if constexpr (std::is_same_v<R, double>) {
    double w = 2.0;
    for (std::size_t n = 1; n < a.c.size(); ++n) {
      w *= a.nu;
      s += w * modulus(a.c[n]);
    }
  } else {
    const auto w = cheb_weights(a.nu, a.degree());
    for (std::size_t n = 1; n < a.c.size(); ++n) s += w[n] * modulus(a.c[n]);
  }
  return s;
}

template <class Seq> Seq truncate(const Seq& a, std::size_t n) {
  Seq r = a;
  r.c.resize(std::min(a.c.size(), n + 1));
  return r;
}

template <class Seq> Seq tail(const Seq& a, std::size_t n) {
  Seq r = a;
  for (std::size_t k = 0; k <= n && k < r.c.size(); ++k) r.c[k] = 0.0;
  return r;
}

/// Extends with zeros (or truncates) to exactly `degree`.
template <class Seq> Seq resized(const Seq& a, std::size_t degree) {
  Seq r = a;
  r.c.resize(degree + 1, typename decltype(r.c)::value_type(0.0));
  return r;
}

// Point evaluation.

template <class T, class X> T eval_taylor(const TaylorSeq<T>& a, const X& r) {
  T s(0.0);
  for (std::size_t k = a.c.size(); k-- > 0;) s = s * r + a.c[k];
  return s;
}

/// sum_{m>=1} (m / ell) a_m r^m.
template <class T, class X, class L> T eval_taylor_deriv_scaled(const TaylorSeq<T>& a, const X& r, const L& ell) {
  T s(0.0);
  for (std::size_t k = a.c.size(); k-- > 1;) s = s * r + a.c[k] * X(static_cast<double>(k));
  return s * r / ell;
}

template <class T> T eval_cheb_at_one(const ChebSeq<T>& a) {
  T s(0.0);
  for (std::size_t n = a.c.size(); n-- > 1;) s += a.c[n];
  return a.c.empty() ? s : a.c[0] + (s + s);
}

/// Operator norm of a grid of multiplication operators on the product space
/// normed by the max of component norms: max_i sum_j |m_ij|.
template <class Seq> Interval mult_operator_norm(const std::vector<std::vector<Seq>>& m) {
  double best = 0.0;
  for (const auto& row : m) {
    if (row.size() != m.size()) throw ArityMismatch("multiplication grid must be square");
    double s = 0.0;
    for (const auto& a : row) s = add_up(s, upper(norm(a)));
    best = std::max(best, s);
  }
  return {0.0, best};
}

/// Clenshaw evaluation of a_0 + 2 sum a_n T_n(s).
template <class T, class X> T eval_cheb(const ChebSeq<T>& a, const X& s) {
  if (a.c.empty()) return T(0.0);
  T b1(0.0), b2(0.0);
  const X two_s = s + s;
  for (std::size_t n = a.c.size(); n-- > 1;) {
    const T b0 = two_s * b1 - b2 + (a.c[n] + a.c[n]);
    b2 = b1;
    b1 = b0;
  }
  return s * b1 - b2 + a.c[0];
}

}  // namespace radproof
