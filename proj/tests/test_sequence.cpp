#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "radproof/sequence.hpp"

using namespace radproof;
using oracle::Float50;
using oracle::Rational;

namespace {

std::vector<double> random_ints(std::mt19937& g, std::size_t n) {
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<double> v(n);
  for (auto& x : v) x = d(g);
  return v;
}

TaylorSeq<Interval> to_interval(const TaylorSeq<double>& a) {
  return TaylorSeq<Interval>(std::vector<Interval>(a.c.begin(), a.c.end()));
}

}  // namespace

TEST(CauchyProduct, UnitIsIdentity) {
  const TaylorSeq<double> b({3.0, -1.0, 2.0});
  const auto r = cauchy_product(TaylorSeq<double>({1.0, 0.0, 0.0}), b);
  for (std::size_t n = 0; n <= 2; ++n) EXPECT_EQ(r[n], b[n]);
  for (std::size_t n = 3; n <= r.degree(); ++n) EXPECT_EQ(r[n], 0.0);
}

TEST(CauchyProduct, RTimesR) {
  const auto r = cauchy_product(TaylorSeq<double>({0.0, 1.0}), TaylorSeq<double>({0.0, 1.0}));
  ASSERT_EQ(r.degree(), 2u);
  EXPECT_EQ(r[0], 0.0);
  EXPECT_EQ(r[1], 0.0);
  EXPECT_EQ(r[2], 1.0);
}

TEST(CauchyProduct, RandomIntegerSequencesMatchDoubleLoop) {
  std::mt19937 g(1);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_ints(g, 7), b = random_ints(g, 7);
    const auto r = cauchy_product(TaylorSeq<double>(a), TaylorSeq<double>(b));
    std::vector<long long> ref(13, 0);
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) ref[i + j] += static_cast<long long>(a[i] * b[j]);
    for (std::size_t n = 0; n < 13; ++n) EXPECT_EQ(r[n], static_cast<double>(ref[n]));
  }
}

TEST(ChebConvolution, ConstantOneIsIdentity) {
  const ChebSeq<double> b({0.5, -1.0, 2.0}, 1.1);
  const auto r = cheb_convolution(ChebSeq<double>(std::vector<double>{1.0}, 1.1), b);
  for (std::size_t n = 0; n <= 2; ++n) EXPECT_EQ(r[n], b[n]);
}

TEST(ChebConvolution, T1SquaredMatchesProductIdentity) {
  // s has coefficient 1/2 in the a_0 + 2 sum a_n T_n convention.
  const ChebSeq<double> s({0.0, 0.5}, 1.0);
  const auto r = cheb_convolution(s, s);
  for (int k = 0; k <= 32; ++k) {
    const double x = -1.0 + 2.0 * k / 32.0;
    EXPECT_NEAR(eval_cheb(r, x), x * x, 1e-15);
    // T_1 T_1 = (T_0 + T_2) / 2
    EXPECT_NEAR(eval_cheb(r, x), 0.5 * (1.0 + std::cos(2.0 * std::acos(x))), 1e-15);
  }
  EXPECT_EQ(r[0], 0.5);
  EXPECT_EQ(r[1], 0.0);
  EXPECT_EQ(r[2], 0.25);
}

TEST(ChebConvolution, RandomSequencesMatchTwoSidedSum) {
  std::mt19937 g(2);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_ints(g, 6), b = random_ints(g, 6);
    const auto r = cheb_convolution(ChebSeq<double>(a, 1.0), ChebSeq<double>(b, 1.0));
    auto at = [](const std::vector<double>& v, long k) { return std::abs(k) < 6 ? v[std::abs(k)] : 0.0; };
    for (long n = 0; n <= 10; ++n) {
      double ref = 0.0;
      for (long m = -5; m <= 5; ++m) ref += at(a, n - m) * at(b, m);
      EXPECT_EQ(r[static_cast<std::size_t>(n)], ref);
    }
  }
}

TEST(ChebConvolution, WeightMismatchThrows) {
  EXPECT_THROW(cheb_convolution(ChebSeq<double>(std::vector<double>{1.0}, 1.1), ChebSeq<double>(std::vector<double>{1.0}, 1.2)), NuMismatch);
}

TEST(Norm, Taylor) { EXPECT_TRUE(norm(TaylorSeq<Interval>({Interval(1.0), Interval(-2.0), Interval(3.0)})).contains(6.0)); }

TEST(Norm, ChebWithNuTwo) { EXPECT_TRUE(norm(ChebSeq<Interval>({Interval(1.0), Interval(1.0)}, 2.0)).contains(5.0)); }

TEST(Norm, ChebRationalNuMatchesOracle) {
  std::mt19937 g(3);
  const Rational nu(5, 4);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_ints(g, 30);
    ChebSeq<Interval> s(std::vector<Interval>(a.begin(), a.end()), 1.25);
    Rational ref = boost::multiprecision::abs(Rational(static_cast<long long>(a[0])));
    Rational w = 2;
    for (std::size_t n = 1; n < a.size(); ++n) {
      w *= nu;
      ref += w * boost::multiprecision::abs(Rational(static_cast<long long>(a[n])));
    }
    EXPECT_TRUE(oracle::encloses(norm(s), ref));
  }
}

TEST(Projections, TruncateAndTail) {
  const TaylorSeq<double> a({1.0, 2.0, 3.0});
  const auto t = truncate(a, 1);
  ASSERT_EQ(t.c.size(), 2u);
  EXPECT_EQ(t[0], 1.0);
  EXPECT_EQ(t[1], 2.0);
  const auto tl = tail(a, 1);
  EXPECT_EQ(tl.c, (std::vector<double>{0.0, 0.0, 3.0}));
}

TEST(Projections, ResizedPadsWithZeros) {
  const auto r = resized(ChebSeq<double>({1.0, 2.0}, 1.1), 4);
  EXPECT_EQ(r.c, (std::vector<double>{1.0, 2.0, 0.0, 0.0, 0.0}));
  EXPECT_EQ(r.nu, 1.1);
}

TEST(EvalTaylor, ConstantAndIdentity) {
  EXPECT_EQ(eval_taylor(TaylorSeq<double>(std::vector<double>{4.5}), 0.7), 4.5);
  EXPECT_EQ(eval_taylor(TaylorSeq<double>({0.0, 1.0}), 0.5), 0.5);
}

TEST(EvalTaylor, IntervalHornerEnclosesWidePrecisionValue) {
  std::mt19937 g(4);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> a(12);
    for (auto& x : a) x = oracle::uniform(g, -3.0, 3.0);
    Float50 ref = 0, rp = 1;
    for (double x : a) {
      ref += Float50(x) * rp;
      rp *= Float50(0.3);
    }
    const Interval v = eval_taylor(to_interval(TaylorSeq<double>(a)), Interval(0.3));
    EXPECT_LE(Float50(v.lo), ref);
    EXPECT_GE(Float50(v.hi), ref);
    EXPECT_NEAR(eval_taylor(TaylorSeq<double>(a), 0.3), static_cast<double>(ref), 1e-14);
  }
}

TEST(EvalTaylor, ScaledDerivative) {
  // v = 1 + 2r + 3r^2: sum (m / ell) v_m r^m = (2r + 6r^2) / ell.
  const TaylorSeq<double> v({1.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(eval_taylor_deriv_scaled(v, 0.5, 2.0), (1.0 + 1.5) / 2.0);
}

TEST(EvalCheb, ConstantAndFirstMode) {
  EXPECT_EQ(eval_cheb(ChebSeq<double>(std::vector<double>{2.5}, 1.0), 0.3), 2.5);
  EXPECT_DOUBLE_EQ(eval_cheb(ChebSeq<double>({0.0, 1.0}, 1.0), 0.3), 0.6);
  EXPECT_EQ(eval_cheb_at_one(ChebSeq<double>({1.0, 2.0, 3.0}, 1.0)), 11.0);
}

TEST(EvalCheb, DegreeEightMatchesCosineSum) {
  std::mt19937 g(5);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> a(9);
    for (auto& x : a) x = oracle::uniform(g, -1.0, 1.0);
    const Float50 s(0.4);
    const Float50 th = boost::multiprecision::acos(s);
    Float50 ref = a[0];
    for (std::size_t n = 1; n < a.size(); ++n) ref += 2 * Float50(a[n]) * boost::multiprecision::cos(n * th);
    const ChebSeq<Interval> ai(std::vector<Interval>(a.begin(), a.end()), 1.0);
    const Interval v = eval_cheb(ai, Interval(0.4));
    EXPECT_LE(Float50(v.lo), ref);
    EXPECT_GE(Float50(v.hi), ref);
  }
}

TEST(MultOperatorNorm, IdentityGrid) {
  using S = ChebSeq<Interval>;
  const std::vector<std::vector<S>> grid{{S({Interval(1.0)}, 1.1), S({Interval(0.0)}, 1.1)},
                                         {S({Interval(0.0)}, 1.1), S({Interval(1.0)}, 1.1)}};
  EXPECT_TRUE(mult_operator_norm(grid).contains(1.0));
}

TEST(MultOperatorNorm, DiagonalGridIsMaxNorm) {
  using S = TaylorSeq<Interval>;
  const std::vector<std::vector<S>> grid{{S({Interval(1.0), Interval(-2.0)}), S({Interval(0.0)})},
                                         {S({Interval(0.0)}), S({Interval(0.5), Interval(4.0)})}};
  EXPECT_TRUE(mult_operator_norm(grid).contains(4.5));
}

TEST(MultOperatorNorm, RandomGridMatchesRationalRowSums) {
  std::mt19937 g(6);
  using S = ChebSeq<Interval>;
  for (int t = 0; t < 10; ++t) {
    std::vector<std::vector<S>> grid(2, std::vector<S>(2));
    Rational best = 0;
    for (int i = 0; i < 2; ++i) {
      Rational row = 0;
      for (int j = 0; j < 2; ++j) {
        const auto a = random_ints(g, 5);
        grid[i][j] = S(std::vector<Interval>(a.begin(), a.end()), 1.5);
        Rational w = 1;
        for (std::size_t n = 0; n < a.size(); ++n) {
          row += w * boost::multiprecision::abs(Rational(static_cast<long long>(a[n])));
          w = (n == 0 ? Rational(3) : w * Rational(3, 2));
        }
      }
      best = std::max(best, row);
    }
    const Interval n = mult_operator_norm(grid);
    EXPECT_GE(oracle::exact(n.hi), best);
    EXPECT_LE(n.hi, static_cast<double>(best) * (1.0 + 1e-12));
  }
}

TEST(Norm, DominatesSupremumOnSamplePoints) {
  std::mt19937 g(8);
  std::vector<double> a(20);
  for (auto& x : a) x = oracle::uniform(g, -1.0, 1.0);
  const TaylorSeq<double> ts(a);
  const ChebSeq<double> cs(a, 1.05);
  for (int k = 0; k < 64; ++k) {
    const double x = -1.0 + 2.0 * k / 63.0;
    EXPECT_LE(std::fabs(eval_taylor(ts, x)), norm(ts) * (1.0 + 1e-14));
    EXPECT_LE(std::fabs(eval_cheb(cs, x)), norm(cs) * (1.0 + 1e-14));
  }
}
