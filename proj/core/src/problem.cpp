#include "radproof/problem.hpp"

#include <cmath>
#include <utility>

namespace radproof {

namespace {

std::vector<int> exps(std::initializer_list<int> k) { return {k}; }

}  // namespace

void validate(const EllipticProblem& p) {
  if (p.q == 0) throw ConfigError("problem has no components");
  if (p.d < 2) throw ConfigError("space dimension must be at least 2");
  if (p.N.q_in() != p.q || p.N.q_out() != p.q) throw ArityMismatch("N must map C^q to C^q");
  if (p.c.size() != p.q) throw ArityMismatch("equilibrium has the wrong length");
  if (p.N.degree() < 2) throw ConfigError("N must be a polynomial of order at least 2");
  const auto r = p.N.eval(p.c);
  for (std::size_t i = 0; i < p.q; ++i)
    if (!r[i].contains(0.0))
      throw ConfigError("N(c) does not enclose zero in component " + std::to_string(i + 1));
}

PolynomialMap derive_first_order(const EllipticProblem& p) {
  const std::size_t q = p.q;
  const std::size_t n = 1 + 2 * q;
  std::vector<Monomial> out;
  std::vector<int> k(n, 0);
  k[0] = 2;
  out.push_back({0, k, Interval(-1.0)});
  for (std::size_t i = 0; i < q; ++i) {
    std::vector<int> e(n, 0);
    e[1 + q + i] = 1;
    out.push_back({1 + i, e, Interval(1.0)});
    std::vector<int> xp(n, 0);
    xp[0] = 1;
    xp[1 + q + i] = 1;
    out.push_back({1 + q + i, xp, Interval(-(p.d - 1.0))});
  }
  for (const auto& m : p.N.monomials()) {
    std::vector<int> e(n, 0);
    for (std::size_t j = 0; j < q; ++j) e[1 + j] = m.powers[j];
    out.push_back({1 + q + m.target, e, -m.coeff});
  }
  return {n, n, std::move(out)};
}

EllipticProblem klein_gordon(const Interval& b1, const Interval& b2) {
  EllipticProblem p;
  p.name = "klein-gordon";
  p.q = 1;
  p.d = 3;
  p.N = PolynomialMap(1, 1, {{0, exps({1}), Interval(-1.0)}, {0, exps({2}), b1}, {0, exps({3}), b2}});
  p.c = {Interval(0.0)};
  return p;
}

EllipticProblem swift_hohenberg(const Interval& b1, const Interval& b2, const Interval& b3, const Interval& b4) {
  EllipticProblem p;
  p.name = "swift-hohenberg";
  p.q = 2;
  p.d = 2;
  p.N = PolynomialMap(2, 2,
                      {{0, exps({1, 0}), b4},
                       {0, exps({0, 1}), Interval(-1.0)},
                       {1, exps({0, 1}), b4},
                       {1, exps({1, 0}), -b1},
                       {1, exps({2, 0}), -b2},
                       {1, exps({3, 0}), -b3}});
  p.c = {Interval(0.0), Interval(0.0)};
  return p;
}

EllipticProblem swift_hohenberg() {
  return swift_hohenberg(Interval::ratio(-3, 5), sqrt(Interval(6.0)), Interval::ratio(-1, 10), Interval(1.0));
}

Interval fhn_equilibrium(const Interval& eps, const Interval& b1, const Interval& b2, const Interval& b3) {
  const Interval a = Interval(1.0) - eps * (b2 + b3);
  const Interval e = eps * b1;
  auto g = [&](const Interval& v) { return v * v * v - a * v + e; };
  // Smallest real root of a depressed cubic: start left of every root and
  // bisect on the sign change of the point midpoints.
  const double am = a.mid();
  const double em = e.mid();
  auto gm = [&](double v) { return v * v * v - am * v + em; };
  double lo = -1.0 - std::fabs(am) - std::fabs(em);
  double hi = lo;
  const double step = 1e-3;
  while (gm(hi) < 0.0) {
    hi += step;
    if (hi > 1.0 + std::fabs(am) + std::fabs(em)) throw DomainError("cubic has no sign change");
  }
  lo = hi - step;
  for (int it = 0; it < 200 && lo < hi; ++it) {
    const double m = 0.5 * (lo + hi);
    if (m <= lo || m >= hi) break;
    (gm(m) < 0.0 ? lo : hi) = m;
  }
  // Widen until the interval sign test certifies the bracket.
  double w = 1e-15;
  for (int it = 0; it < 60; ++it, w *= 2.0) {
    const double l = lo - w;
    const double h = hi + w;
    if (g(Interval(l)).hi < 0.0 && g(Interval(h)).lo > 0.0) return {l, h};
  }
  throw DomainError("could not certify the equilibrium of the FitzHugh-Nagumo system");
}

EllipticProblem fitzhugh_nagumo(const Interval& eps, const Interval& b1, const Interval& b2, const Interval& b3,
                                const Interval& b4) {
  EllipticProblem p;
  p.name = "fhn3";
  p.q = 3;
  p.d = 2;
  const Interval ie = Interval(1.0) / eps;
  const Interval ie2 = ie * ie;
  const Interval ib4 = Interval(1.0) / (b4 * b4);
  p.N = PolynomialMap(3, 3,
                      {{0, exps({1, 0, 0}), ie2},
                       {0, exps({3, 0, 0}), -ie2},
                       {0, exps({0, 0, 0}), -(ie * b1)},
                       {0, exps({0, 1, 0}), -(ie * b2)},
                       {0, exps({0, 0, 1}), -(ie * b3)},
                       {1, exps({1, 0, 0}), Interval(1.0)},
                       {1, exps({0, 1, 0}), Interval(-1.0)},
                       {2, exps({1, 0, 0}), ib4},
                       {2, exps({0, 0, 1}), -ib4}});
  const Interval cs = fhn_equilibrium(eps, b1, b2, b3);
  p.c = {cs, cs, cs};
  return p;
}

EllipticProblem fitzhugh_nagumo() {
  return fitzhugh_nagumo(Interval::ratio(3, 10), Interval::ratio(1, 2), Interval::ratio(1, 2), Interval(1.0),
                         Interval(3.0));
}

}  // namespace radproof
