#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "radproof/polynomial.hpp"
#include "radproof/problem.hpp"

using namespace radproof;

namespace {

double coeff_of(const PolynomialMap& p, std::size_t target, const std::vector<int>& powers) {
  double s = 0.0;
  for (const auto& m : p.monomials())
    if (m.target == target && m.powers == powers) s += m.coeff.mid();
  return s;
}

}  // namespace

TEST(FirstOrder, KleinGordonField) {
  const auto f = derive_first_order(klein_gordon());
  ASSERT_EQ(f.q_in(), 3u);
  std::mt19937 g(1);
  for (int t = 0; t < 100; ++t) {
    const double x = oracle::uniform(g, -2, 2), u = oracle::uniform(g, -2, 2), p = oracle::uniform(g, -2, 2);
    const auto y = f.eval(std::vector<double>{x, u, p});
    EXPECT_NEAR(y[0], -x * x, 1e-13);
    EXPECT_NEAR(y[1], p, 1e-13);
    EXPECT_NEAR(y[2], -2 * x * p + u - u * u - u * u * u, 1e-12);
  }
}

TEST(FirstOrder, ZeroNonlinearity) {
  EllipticProblem p;
  p.q = 1;
  p.d = 4;
  p.N = PolynomialMap(1, 1, {});
  p.c = {Interval(0.0)};
  const auto f = derive_first_order(p);
  const auto y = f.eval(std::vector<double>{0.5, 7.0, -2.0});
  EXPECT_DOUBLE_EQ(y[0], -0.25);
  EXPECT_DOUBLE_EQ(y[1], -2.0);
  EXPECT_DOUBLE_EQ(y[2], -3.0 * 0.5 * -2.0);
}

TEST(FirstOrder, SwiftHohenbergFiveVariableField) {
  const auto sh = swift_hohenberg();
  const auto f = derive_first_order(sh);
  ASSERT_EQ(f.q_in(), 5u);
  const double b1 = -0.6, b2 = std::sqrt(6.0), b3 = -0.1, b4 = 1.0;
  std::mt19937 g(2);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> w(5);
    for (auto& x : w) x = oracle::uniform(g, -1.5, 1.5);
    const double x = w[0], u1 = w[1], u2 = w[2], p1 = w[3], p2 = w[4];
    const double N1 = b4 * u1 - u2;
    const double N2 = b4 * u2 - b1 * u1 - b2 * u1 * u1 - b3 * u1 * u1 * u1;
    const auto y = f.eval(w);
    EXPECT_NEAR(y[0], -x * x, 1e-13);
    EXPECT_NEAR(y[1], p1, 1e-13);
    EXPECT_NEAR(y[2], p2, 1e-13);
    EXPECT_NEAR(y[3], -x * p1 - N1, 1e-12);
    EXPECT_NEAR(y[4], -x * p2 - N2, 1e-12);
  }
}

TEST(KleinGordon, EquilibriumAndLinearization) {
  const auto p = klein_gordon();
  EXPECT_TRUE(p.N.eval(std::vector<Interval>{Interval(0.0)})[0].contains(0.0));
  const PolynomialJet jet(p.N);
  EXPECT_TRUE(jet.jacobian(std::vector<Interval>{Interval(0.0)})[0][0].contains(-1.0));
}

TEST(KleinGordon, HessianOnTaylorSequences) {
  const PolynomialJet jet(klein_gordon().N);
  using S = TaylorSeq<double>;
  const std::vector<S> v{S({0.0, 1.0})};
  const std::vector<S> e0{S(std::vector<double>{1.0})};
  const auto h = jet.hessian_apply(v, e0, e0);
  // D^2 N(v)(e0, e0) = 2 b1 + 6 b2 v
  EXPECT_DOUBLE_EQ(h[0][0], 2.0);
  EXPECT_DOUBLE_EQ(h[0][1], 6.0);
}

TEST(KleinGordon, AbsoluteShiftedCoefficients) {
  const auto p = klein_gordon();
  const auto a = p.N.shifted(p.c).absolutify();
  EXPECT_DOUBLE_EQ(coeff_of(a, 0, {1}), 1.0);
  EXPECT_DOUBLE_EQ(coeff_of(a, 0, {2}), 1.0);
  EXPECT_DOUBLE_EQ(coeff_of(a, 0, {3}), 1.0);
}

TEST(Polynomial, ZeroMapStaysZero) {
  const PolynomialMap z(2, 2, {});
  const auto y = z.absolutify().eval(std::vector<double>{1.0, -3.0});
  EXPECT_EQ(y[0], 0.0);
  EXPECT_EQ(y[1], 0.0);
}

TEST(Polynomial, AbsoluteSwiftHohenbergFieldDominatesTermSum) {
  const auto f = derive_first_order(swift_hohenberg());
  const auto fa = f.absolutify();
  std::mt19937 g(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> w(5);
    for (auto& x : w) x = oracle::uniform(g, 0.0, 2.0);
    const auto y = fa.eval(w);
    std::vector<double> ref(5, 0.0);
    for (const auto& m : f.monomials()) {
      double term = std::fabs(m.coeff.mid());
      for (std::size_t j = 0; j < 5; ++j) term *= std::pow(w[j], m.powers[j]);
      ref[m.target] += term;
    }
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(y[i], ref[i], 1e-12 * (1.0 + ref[i]));
  }
}

TEST(SecondDerivativeBound, KleinGordon) {
  const PolynomialJet jet(klein_gordon().N.shifted({Interval(0.0)}));
  for (double rho : {0.0, 1e-7, 0.1, 2.0}) {
    const Interval b = jet.d2_abs_norm({Interval(rho)});
    EXPECT_TRUE(b.contains(2.0 + 6.0 * rho)) << rho;
  }
}

TEST(SecondDerivativeBound, KleinGordonAgreesWithFiniteDifferences) {
  const PolynomialMap nabs = klein_gordon().N.absolutify();
  const PolynomialJet jet(klein_gordon().N);
  const double rho = 0.3, h = 1e-4;
  auto at = [&](double x) { return nabs.eval(std::vector<double>{x})[0]; };
  const double fd = (at(rho + h) - 2 * at(rho) + at(rho - h)) / (h * h);
  EXPECT_NEAR(jet.d2_abs_norm({Interval(rho)}).hi, fd, 1e-5);
}

TEST(SecondDerivativeBound, LinearMapIsZero) {
  const PolynomialJet jet(PolynomialMap(1, 1, {{0, {1}, Interval(-3.0)}}));
  EXPECT_TRUE(jet.d2_abs_norm({Interval(5.0)}).contains(0.0));
}

TEST(SecondDerivativeBound, FitzHughNagumoCubicTerm) {
  const auto p = fitzhugh_nagumo();
  const PolynomialJet jet(p.N.shifted(p.c));
  const double R = 1e-3;
  const Interval b = jet.d2_abs_norm({Interval(R), Interval(R), Interval(R)});
  // Only eps^-2 U1^3 is nonlinear: |6 (c + zeta)| / eps^2 at |zeta| <= R.
  const double cs = -(5.0 + std::sqrt(145.0)) / 20.0;
  const double ref = 6.0 * (std::fabs(cs) + R) / 0.09;
  EXPECT_GE(b.hi, ref * (1 - 1e-12));
  EXPECT_LE(b.hi, ref * (1 + 1e-9));
}

TEST(Problem, NonlinearityDominatedByAbsoluteMap) {
  const auto sh = swift_hohenberg();
  const auto nabs = sh.N.absolutify();
  std::mt19937 g(4);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> u{oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2)};
    const auto y = sh.N.eval(u);
    const auto ya = nabs.eval(std::vector<double>{std::fabs(u[0]), std::fabs(u[1])});
    for (int i = 0; i < 2; ++i) EXPECT_LE(std::fabs(y[i]), ya[i] * (1 + 1e-14) + 1e-300);
  }
}

TEST(Problem, JacobianAgreesWithCentralDifferences) {
  const auto fn = fitzhugh_nagumo();
  const PolynomialJet jet(fn.N);
  std::mt19937 g(5);
  const double h = 1e-5;
  for (int t = 0; t < 20; ++t) {
    std::vector<double> u{oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1)};
    const auto J = jet.jacobian(u);
    for (std::size_t j = 0; j < 3; ++j) {
      auto up = u, dn = u;
      up[j] += h;
      dn[j] -= h;
      const auto fu = fn.N.eval(up), fd = fn.N.eval(dn);
      for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(J[i][j], (fu[i] - fd[i]) / (2 * h), 1e-6);
    }
  }
}

TEST(Problem, FirstOrderFieldVanishesOnExactLinearSolution) {
  // Delta u - u = 0 in d = 3 has the regular solution sinh(r) / r.
  EllipticProblem p;
  p.q = 1;
  p.d = 3;
  p.N = PolynomialMap(1, 1, {{0, {1}, Interval(-1.0)}});
  p.c = {Interval(0.0)};
  const auto f = derive_first_order(p);
  for (double r : {0.5, 1.0, 2.0, 3.5}) {
    const double u = std::sinh(r) / r;
    const double du = std::cosh(r) / r - std::sinh(r) / (r * r);
    const double ddu = std::sinh(r) / r - 2.0 * du / r;
    const auto y = f.eval(std::vector<double>{1.0 / r, u, du});
    EXPECT_NEAR(y[0], -1.0 / (r * r), 1e-14);
    EXPECT_NEAR(y[1], du, 1e-14);
    EXPECT_NEAR(y[2], ddu, 1e-12);
  }
}

TEST(Problem, ValidationRejectsBadInput) {
  auto p = klein_gordon();
  p.d = 1;
  EXPECT_THROW(validate(p), ConfigError);
  p = klein_gordon();
  p.c = {Interval(1.0)};
  EXPECT_THROW(validate(p), ConfigError);
  EXPECT_NO_THROW(validate(klein_gordon()));
}

TEST(Problem, FitzHughNagumoEquilibrium) {
  const Interval c = fhn_equilibrium(Interval::ratio(3, 10), Interval(0.5), Interval(0.5), Interval(1.0));
  const oracle::Float50 ref = -(5 + boost::multiprecision::sqrt(oracle::Float50(145))) / 20;
  EXPECT_LE(oracle::Float50(c.lo), ref);
  EXPECT_GE(oracle::Float50(c.hi), ref);
  EXPECT_LT(c.width(), 1e-14);
}
