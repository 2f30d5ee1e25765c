#include "radproof/polynomial.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

namespace radproof {

int Monomial::degree() const { return std::accumulate(powers.begin(), powers.end(), 0); }

PolynomialMap::PolynomialMap(std::size_t q_in, std::size_t q_out, std::vector<Monomial> monomials)
    : q_in_(q_in), q_out_(q_out), monomials_(std::move(monomials)) {
  for (const auto& m : monomials_) {
    if (m.target >= q_out_) throw ArityMismatch("monomial target outside the output range");
    if (m.powers.size() != q_in_) throw ArityMismatch("monomial exponent vector has the wrong length");
    for (int k : m.powers)
      if (k < 0) throw ConfigError("negative exponent in a monomial");
  }
  merge_like_terms();
}

void PolynomialMap::merge_like_terms() {
  std::map<std::pair<std::size_t, std::vector<int>>, Interval> acc;
  std::vector<std::pair<std::size_t, std::vector<int>>> order;
  for (const auto& m : monomials_) {
    auto key = std::make_pair(m.target, m.powers);
    auto it = acc.find(key);
    if (it == acc.end()) {
      acc.emplace(key, m.coeff);
      order.push_back(std::move(key));
    } else {
      it->second += m.coeff;
    }
  }
  monomials_.clear();
  for (auto& key : order) {
    const Interval c = acc.at(key);
    if (c.lo == 0.0 && c.hi == 0.0) continue;
    monomials_.push_back({key.first, key.second, c});
  }
}

int PolynomialMap::degree() const {
  int k = 0;
  for (const auto& m : monomials_) k = std::max(k, m.degree());
  return k;
}

int PolynomialMap::max_power(std::size_t j) const {
  int k = 0;
  for (const auto& m : monomials_) k = std::max(k, m.powers[j]);
  return k;
}

PolynomialMap PolynomialMap::derivative(std::size_t j) const {
  if (j >= q_in_) throw ArityMismatch("derivative index outside the input range");
  std::vector<Monomial> out;
  for (const auto& m : monomials_) {
    if (m.powers[j] == 0) continue;
    Monomial d = m;
    d.coeff = m.coeff * Interval(static_cast<double>(m.powers[j]));
    d.powers[j] -= 1;
    out.push_back(std::move(d));
  }
  return {q_in_, q_out_, std::move(out)};
}

PolynomialMap PolynomialMap::absolutify() const {
  std::vector<Monomial> out = monomials_;
  for (auto& m : out) m.coeff = abs(m.coeff);
  return {q_in_, q_out_, std::move(out)};
}

PolynomialMap PolynomialMap::without_constant() const {
  std::vector<Monomial> out;
  for (const auto& m : monomials_)
    if (m.degree() >= 1) out.push_back(m);
  return {q_in_, q_out_, std::move(out)};
}

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * static_cast<double>(n - k + i) / static_cast<double>(i);
  return b;
}

}  // namespace

PolynomialMap PolynomialMap::shifted(const std::vector<Interval>& c) const {
  if (c.size() != q_in_) throw ArityMismatch("shift vector has the wrong length");
  std::vector<Monomial> out;
  for (const auto& m : monomials_) {
    // Expand prod_j (c_j + zeta_j)^{k_j} by the binomial theorem.
    std::vector<Monomial> partial{{m.target, std::vector<int>(q_in_, 0), m.coeff}};
    for (std::size_t j = 0; j < q_in_; ++j) {
      const int k = m.powers[j];
      if (k == 0) continue;
      std::vector<Monomial> next;
      for (const auto& t : partial)
        for (int e = 0; e <= k; ++e) {
          Monomial u = t;
          u.coeff = t.coeff * Interval(binomial(k, e)) * pow(c[j], k - e);
          u.powers[j] = e;
          next.push_back(std::move(u));
        }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return {q_in_, q_out_, std::move(out)};
}

PolynomialMap operator+(const PolynomialMap& a, const PolynomialMap& b) {
  if (a.q_in() != b.q_in() || a.q_out() != b.q_out()) throw ArityMismatch("sum of polynomial maps");
  std::vector<Monomial> m = a.monomials();
  m.insert(m.end(), b.monomials().begin(), b.monomials().end());
  return {a.q_in(), a.q_out(), std::move(m)};
}

PolynomialMap operator*(const Interval& s, const PolynomialMap& p) {
  std::vector<Monomial> m = p.monomials();
  for (auto& t : m) t.coeff = s * t.coeff;
  return {p.q_in(), p.q_out(), std::move(m)};
}

PolynomialJet::PolynomialJet(PolynomialMap p) : p_(std::move(p)) {
  const std::size_t n = p_.q_in();
  d1_.reserve(n);
  for (std::size_t j = 0; j < n; ++j) d1_.push_back(p_.derivative(j));
  d2_.assign(n, std::vector<PolynomialMap>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) d2_[j][k] = d1_[j].derivative(k);
}

Interval PolynomialJet::d2_abs_norm(const std::vector<Interval>& radii) const {
  if (radii.size() != q_in()) throw ArityMismatch("radius vector has the wrong length");
  std::vector<Interval> row(q_out(), Interval(0.0));
  for (std::size_t j = 0; j < q_in(); ++j)
    for (std::size_t k = 0; k < q_in(); ++k) {
      if (d2_[j][k].monomials().empty()) continue;
      const auto h = d2_[j][k].absolutify().eval(radii);
      for (std::size_t i = 0; i < q_out(); ++i) row[i] += h[i];
    }
  double best = 0.0;
  for (const auto& r : row) best = std::max(best, r.hi);
  return {0.0, best};
}

}  // namespace radproof
