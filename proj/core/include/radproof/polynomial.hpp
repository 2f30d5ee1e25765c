#pragma once

#include <cstddef>
#include <vector>

#include "radproof/interval.hpp"
#include "radproof/sequence.hpp"

namespace radproof {

struct Monomial {
  std::size_t target = 0;
  std::vector<int> powers;
  Interval coeff;

  int degree() const;
};

/// Polynomial map C^{q_in} -> C^{q_out} stored as a list of monomials.
class PolynomialMap {
public:
  PolynomialMap() = default;
  PolynomialMap(std::size_t q_in, std::size_t q_out, std::vector<Monomial> monomials);

  std::size_t q_in() const { return q_in_; }
  std::size_t q_out() const { return q_out_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  /// Total degree K.
  int degree() const;
  /// Largest exponent of variable j over all monomials.
  int max_power(std::size_t j) const;

  /// d/dzeta_j, with like terms merged.
  PolynomialMap derivative(std::size_t j) const;
  /// Same monomials with |coeff|.
  PolynomialMap absolutify() const;
  /// The map zeta -> p(c + zeta), expanded in zeta.
  PolynomialMap shifted(const std::vector<Interval>& c) const;
  /// Monomials of total degree >= 1 only.
  PolynomialMap without_constant() const;

  template <class X> std::vector<X> eval(const std::vector<X>& x) const;

private:
  void merge_like_terms();

  std::size_t q_in_ = 0;
  std::size_t q_out_ = 0;
  std::vector<Monomial> monomials_;
};

PolynomialMap operator+(const PolynomialMap& a, const PolynomialMap& b);
PolynomialMap operator*(const Interval& s, const PolynomialMap& p);

/// Arithmetic adaptors so one evaluation routine serves scalars and both
/// sequence spaces.
template <class X> struct carrier {
  static X mul(const X& a, const X& b) { return a * b; }
  static X add(const X& a, const X& b) { return a + b; }
  static X constant(const X&, const Interval& c) { return scalar_from<X>(c); }
  static X times(const X& a, const Interval& c) { return a * scalar_from<X>(c); }
};

template <class T> struct carrier<TaylorSeq<T>> {
  using X = TaylorSeq<T>;
  static X mul(const X& a, const X& b) { return cauchy_product(a, b); }
  static X add(const X& a, const X& b) { return a + b; }
  static X constant(const X&, const Interval& c) { return X(std::vector<T>{scalar_from<T>(c)}); }
  static X times(const X& a, const Interval& c) { return scale(a, scalar_from<T>(c)); }
};

template <class T> struct carrier<ChebSeq<T>> {
  using X = ChebSeq<T>;
  static X mul(const X& a, const X& b) { return cheb_convolution(a, b); }
  static X add(const X& a, const X& b) { return a + b; }
  static X constant(const X& like, const Interval& c) { return X(std::vector<T>{scalar_from<T>(c)}, like.nu); }
  static X times(const X& a, const Interval& c) { return scale(a, scalar_from<T>(c)); }
};

template <class X>
std::vector<X> PolynomialMap::eval(const std::vector<X>& x) const {
  using C = carrier<X>;
  if (x.size() != q_in_) throw ArityMismatch("polynomial evaluated on a point of the wrong arity");
  const X& like = x.front();
  std::vector<std::vector<X>> pw(q_in_);
  for (std::size_t j = 0; j < q_in_; ++j) {
    const int m = max_power(j);
    pw[j].reserve(static_cast<std::size_t>(m));
    if (m >= 1) pw[j].push_back(x[j]);
    for (int k = 2; k <= m; ++k) pw[j].push_back(C::mul(pw[j].back(), x[j]));
  }
  std::vector<X> out(q_out_, C::constant(like, Interval(0.0)));
  std::vector<bool> touched(q_out_, false);
  for (const auto& mono : monomials_) {
    X term;
    bool have = false;
    for (std::size_t j = 0; j < q_in_; ++j) {
      const int k = mono.powers[j];
      if (k == 0) continue;
      const X& f = pw[j][static_cast<std::size_t>(k - 1)];
      term = have ? C::mul(term, f) : f;
      have = true;
    }
    term = have ? C::times(term, mono.coeff) : C::constant(like, mono.coeff);
    out[mono.target] = touched[mono.target] ? C::add(out[mono.target], term) : term;
    touched[mono.target] = true;
  }
  return out;
}

/// A polynomial together with its first and second partial derivatives,
/// differentiated symbolically once.
class PolynomialJet {
public:
  PolynomialJet() = default;
  explicit PolynomialJet(PolynomialMap p);

  const PolynomialMap& map() const { return p_; }
  const PolynomialMap& d1(std::size_t j) const { return d1_[j]; }
  const PolynomialMap& d2(std::size_t j, std::size_t k) const { return d2_[j][k]; }
  std::size_t q_in() const { return p_.q_in(); }
  std::size_t q_out() const { return p_.q_out(); }
  int degree() const { return p_.degree(); }

  template <class X> std::vector<X> eval(const std::vector<X>& x) const { return p_.eval(x); }

  /// J[i][j] = dp_i/dzeta_j at x.
  template <class X> std::vector<std::vector<X>> jacobian(const std::vector<X>& x) const {
    std::vector<std::vector<X>> J(q_out(), std::vector<X>(q_in()));
    for (std::size_t j = 0; j < q_in(); ++j) {
      const auto col = d1_[j].eval(x);
      for (std::size_t i = 0; i < q_out(); ++i) J[i][j] = col[i];
    }
    return J;
  }

  /// [D^2 p(x)](a, b).
  template <class X>
  std::vector<X> hessian_apply(const std::vector<X>& x, const std::vector<X>& a, const std::vector<X>& b) const {
    using C = carrier<X>;
    std::vector<X> out(q_out(), C::constant(x.front(), Interval(0.0)));
    for (std::size_t j = 0; j < q_in(); ++j)
      for (std::size_t k = 0; k < q_in(); ++k) {
        if (d2_[j][k].monomials().empty()) continue;
        const auto h = d2_[j][k].eval(x);
        const X ab = C::mul(a[j], b[k]);
        for (std::size_t i = 0; i < q_out(); ++i) out[i] = C::add(out[i], C::mul(h[i], ab));
      }
    return out;
  }

  /// Upper bound of max_i sum_{j,k} d^2 p_abs,i / dzeta_j dzeta_k at the
  /// nonnegative point `radii`.
  Interval d2_abs_norm(const std::vector<Interval>& radii) const;

private:
  PolynomialMap p_;
  std::vector<PolynomialMap> d1_;
  std::vector<std::vector<PolynomialMap>> d2_;
};

}  // namespace radproof
