#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "radproof/bvp.hpp"

using namespace radproof;

namespace {

ProofData kg_small_data(const ProofConfig& cfg) { return ProofData(klein_gordon(), build_spectral_data(klein_gordon()), cfg); }

XVector<double> random_chi(std::mt19937& g, std::size_t q, const ProofConfig& cfg, double scale) {
  XVector<double> chi;
  for (std::size_t i = 0; i < q; ++i) {
    chi.eta.emplace_back(oracle::uniform(g, -scale, scale), 0.0);
    chi.phi.push_back(oracle::uniform(g, -scale, scale));
    TaylorSeq<double> v(cfg.nT());
    for (std::size_t n = 0; n < v.c.size(); ++n) v.c[n] = oracle::uniform(g, -scale, scale) * std::pow(0.5, n);
    chi.v.push_back(v);
  }
  for (std::size_t k = 0; k < 1 + 2 * q; ++k) {
    ChebSeq<double> w(cfg.nC(), cfg.nu);
    for (std::size_t n = 0; n < w.c.size(); ++n) w.c[n] = oracle::uniform(g, -scale, scale) * std::pow(0.5, n);
    chi.w.push_back(w);
  }
  return chi;
}

}  // namespace

TEST(TaylorBlock, ZeroNonlinearityAcceptsConstant) {
  EllipticProblem p;
  p.q = 1;
  p.d = 3;
  p.N = PolynomialMap(1, 1, {});
  p.c = {Interval(0.0)};
  const auto cfg = fixtures::small_config();
  const ProofData data(p, build_spectral_data(klein_gordon()), cfg);
  auto chi = fixtures::constant_chi(klein_gordon(), cfg);
  chi.phi[0] = 1.7;
  chi.v[0].c[0] = 1.7;
  const auto g = taylor_block_g(data, chi, cfg.nT());
  for (double x : g[0].c) EXPECT_EQ(x, 0.0);
}

TEST(TaylorBlock, ConstantForcingMatchesForwardRecurrence) {
  // N = -6 in d = 3: 2 * 3 * v_2 - 6 ell^2 = 0 gives v_2 = ell^2, higher terms vanish.
  EllipticProblem p;
  p.q = 1;
  p.d = 3;
  p.N = PolynomialMap(1, 1, {{0, {0}, Interval(-6.0)}});
  p.c = {Interval(0.0)};
  auto cfg = fixtures::small_config();
  cfg.ell = 0.75;
  const ProofData data(p, build_spectral_data(klein_gordon()), cfg);
  auto chi = fixtures::constant_chi(klein_gordon(), cfg);
  chi.phi[0] = 0.3;
  chi.v[0].c[0] = 0.3;
  chi.v[0].c[2] = cfg.ell * cfg.ell;
  const auto g = taylor_block_g(data, chi, cfg.nT());
  for (double x : g[0].c) EXPECT_EQ(x, 0.0);
}

TEST(BoundaryRows, EquilibriumGivesZero) {
  const auto cfg = fixtures::small_config();
  const ProofData data = kg_small_data(cfg);
  const auto chi = to_interval(fixtures::constant_chi(klein_gordon(), cfg));
  const auto [b1, b2] = boundary_rows(data, chi);
  EXPECT_TRUE(b1[0].contains({0.0, 0.0}));
  EXPECT_TRUE(b2[0].contains({0.0, 0.0}));
}

TEST(BoundaryRows, LinearCancellation) {
  const auto cfg = fixtures::small_config();
  const ProofData data = kg_small_data(cfg);
  auto chi = fixtures::constant_chi(klein_gordon(), cfg);
  chi.eta[0] = 1.0;
  chi.w[1].c[0] = 1.0;   // c + Gamma eta with Gamma = 1
  chi.w[2].c[0] = -1.0;  // -Gamma Lambda eta with Lambda = 1
  const auto [b1, b2] = boundary_rows(data, to_interval(chi));
  EXPECT_TRUE(b1[0].contains({0.0, 0.0}));
  EXPECT_TRUE(b2[0].contains({0.0, 0.0}));
}

TEST(ChebBlock, ConstantSolutionWithExactInverseRadius) {
  const auto p = fixtures::shifted_cubic();
  const auto cfg = fixtures::small_config(12, 60);
  const ProofData data(p, build_spectral_data(p), cfg);
  const auto chi = fixtures::constant_chi(p, cfg);
  const auto F = evaluate_F(data, chi, cfg.nT(), cfg.nC());
  for (const auto& h : F.h)
    for (double x : h.c) EXPECT_LT(std::fabs(x), 1e-15);
  for (const auto& g : F.g)
    for (double x : g.c) EXPECT_LT(std::fabs(x), 1e-15);
}

TEST(Jacobian, AgreesWithCentralDifferences) {
  std::mt19937 g(3);
  for (const auto& p : {klein_gordon(), swift_hohenberg()}) {
    auto cfg = fixtures::small_config(8, 10);
    const ProofData data(p, build_spectral_data(p), cfg);
    const Layout lay(p.q, cfg.nT(), cfg.nC());
    const auto chi = random_chi(g, p.q, cfg, 0.5);
    const Eigen::MatrixXcd J = assemble_DF(data, chi, lay);
    const Eigen::VectorXcd x = flatten(chi, lay);
    const double h = 1e-6;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      Eigen::VectorXcd xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      const Eigen::VectorXcd fp = flatten(evaluate_F(data, unflatten(xp, lay, cfg.nu), lay.nT, lay.nC), lay);
      const Eigen::VectorXcd fm = flatten(evaluate_F(data, unflatten(xm, lay, cfg.nu), lay.nT, lay.nC), lay);
      const Eigen::VectorXcd fd = (fp - fm) / (2 * h);
      for (Eigen::Index i = 0; i < x.size(); ++i)
        ASSERT_NEAR(std::abs(J(i, j) - fd(i)), 0.0, 1e-6 * (1.0 + std::abs(fd(i)))) << p.name << " " << i << "," << j;
    }
  }
}

TEST(NumericalInverse, IdentityAndSingular) {
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(5, 5);
  EXPECT_TRUE(numerical_inverse(I).isApprox(I));
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Random(5, 5);
  S.row(3) = S.row(1);
  EXPECT_THROW(numerical_inverse(S), SingularTruncatedJacobian);
}

TEST(Newton, StartingAtTheSolutionTakesNoStep) {
  const auto p = fixtures::shifted_cubic();
  const auto cfg = fixtures::small_config(12, 60);
  const ProofData data(p, build_spectral_data(p), cfg);
  const auto r = newton_refine(data, fixtures::constant_chi(p, cfg));
  EXPECT_LE(r.iterations, 1);
  EXPECT_LE(r.residual, 1e-14);
}

TEST(Newton, GarbageSeedIsReportedNotAccepted) {
  // All zeros with eta = 0: KG has the trivial branch v = 0, which is a
  // genuine zero of F, so Newton returns it and the residual says so.
  const auto cfg = fixtures::small_config(12, 40);
  const ProofData data = kg_small_data(cfg);
  auto chi = fixtures::constant_chi(klein_gordon(), cfg);
  try {
    const auto r = newton_refine(data, chi);
    EXPECT_LE(r.residual, 1e-12);
    EXPECT_LT(std::fabs(r.chi.phi[0]), 1e-10);
  } catch (const NewtonDiverged&) {
    SUCCEED();
  }
}

class KgRefinedTest : public ::testing::Test {
protected:
  static void SetUpTestSuite() { kg = new fixtures::KgRefined(); }
  static void TearDownTestSuite() {
    delete kg;
    kg = nullptr;
  }
  static fixtures::KgRefined* kg;
};
fixtures::KgRefined* KgRefinedTest::kg = nullptr;

TEST_F(KgRefinedTest, NewtonConvergesQuickly) {
  EXPECT_LE(kg->newton.iterations, 10);
  EXPECT_LE(kg->newton.residual, 1e-12);
  const auto& cfg = kg->cfg;
  const auto F = evaluate_F(*kg->data, kg->newton.chi, cfg.nT_num, cfg.nC_num);
  for (double x : F.g[0].c) EXPECT_LE(std::fabs(x), 1e-10);
  for (const auto& h : F.h) EXPECT_LE(norm(h), 1e-10);
  EXPECT_LE(std::abs(F.bnd1[0]), 1e-10);
  EXPECT_LE(std::abs(F.bnd2[0]), 1e-10);
}

TEST_F(KgRefinedTest, FunctionResidualBoundedBySequenceResidual) {
  const auto& chi = kg->newton.chi;
  const auto& cfg = kg->cfg;
  const auto g = taylor_block_g(*kg->data, chi, 3 * cfg.nT_num + 2)[0];
  double gnorm = 0.0;
  for (double x : g.c) gnorm += std::fabs(x);
  const auto& v = chi.v[0];
  for (int k = 1; k <= 16; ++k) {
    const double r = cfg.ell * cfg.r_star * k / 16.0;
    const double s = r / cfg.ell;
    double u = 0, du = 0, ddu = 0;
    for (std::size_t n = 0; n < v.c.size(); ++n) {
      u += v.c[n] * std::pow(s, n);
      if (n >= 1) du += n * v.c[n] * std::pow(s, n - 1) / cfg.ell;
      if (n >= 2) ddu += n * (n - 1.0) * v.c[n] * std::pow(s, n - 2) / (cfg.ell * cfg.ell);
    }
    const double res = ddu + 2.0 * du / r - u + u * u + u * u * u;
    EXPECT_LE(std::fabs(res), 1e3 * gnorm + 1e-12) << r;
  }
}

TEST_F(KgRefinedTest, TaylorMeetsChebyshev) {
  const auto& chi = kg->newton.chi;
  const double rs = kg->cfg.r_star;
  EXPECT_NEAR(eval_taylor(chi.v[0], rs), eval_cheb(chi.w[1], -1.0), 1e-10);
}

TEST_F(KgRefinedTest, FirstChebyshevComponentIsInverseRadius) {
  const auto& chi = kg->newton.chi;
  const auto& cfg = kg->cfg;
  for (int k = 0; k <= 32; ++k) {
    const double s = -1.0 + k / 16.0;
    const double r = cfg.ell * cfg.r_star + (s + 1.0) * cfg.L / 2.0;
    EXPECT_NEAR(eval_cheb(chi.w[0], s), 1.0 / r, 1e-10);
  }
}

TEST_F(KgRefinedTest, ApproximateInverseIsClose) {
  const auto chi = resized(kg->newton.chi, kg->cfg.nT(), kg->cfg.nC());
  const Eigen::MatrixXcd A = build_A(*kg->data, chi);
  const Layout lay(1, kg->cfg.nT(), kg->cfg.nC());
  const Eigen::MatrixXcd J = assemble_DF(*kg->data, chi, lay);
  const Eigen::MatrixXcd E = Eigen::MatrixXcd::Identity(A.rows(), A.cols()) - A * J;
  EXPECT_LT(E.cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Symmetrize, AveragesConjugatePairs) {
  const auto sd = build_spectral_data(swift_hohenberg());
  const auto cfg = fixtures::small_config();
  auto chi = fixtures::constant_chi(swift_hohenberg(), cfg);
  chi.eta = {{1.0, 2.0}, {3.0, 4.0}};
  symmetrize(chi, sd);
  EXPECT_EQ(chi.eta[0], std::conj(chi.eta[1]));
}
