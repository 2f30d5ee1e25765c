#include <cmath>

#include <gtest/gtest.h>

#include "radproof/interval_matrix.hpp"
#include "radproof/manifold.hpp"
#include "radproof/problem.hpp"
#include "radproof/spectra.hpp"

using namespace radproof;

namespace {

double kg_closed_form(double mu, double Ly) { return (1.0 + 1.5 * (1.0 + Ly) * mu) * (1.0 + Ly) * mu; }

}  // namespace

TEST(Growth, LinearProblemHasNone) {
  EllipticProblem p;
  p.q = 1;
  p.d = 2;
  p.N = PolynomialMap(1, 1, {{0, {1}, Interval(-2.0)}});
  p.c = {Interval(0.0)};
  EXPECT_TRUE(dn_growth_bound(p, Interval(0.5)).contains(0.0));
}

TEST(PsiHat, KleinGordonClosedForm) {
  const auto p = klein_gordon();
  const auto sd = build_spectral_data(p);
  for (double mu : {1e-8, 2.3e-7, 1e-4, 0.1})
    for (double Ly : {0.0, 0.05, 0.5}) {
      const double ref = kg_closed_form(mu, Ly);
      const Interval psi = psi_hat_bound(p, sd, Interval(mu), Ly);
      EXPECT_GE(psi.hi, ref * (1 - 1e-12));
      EXPECT_LE(psi.hi, 1.01 * ref);
    }
}

TEST(PsiHat, MonotoneInMuAndLy) {
  for (const auto& p : {klein_gordon(), swift_hohenberg(), fitzhugh_nagumo()}) {
    const auto sd = build_spectral_data(p);
    double prev_mu = 0.0;
    for (double mu = 1e-9; mu < 1e-1; mu *= 3.0) {
      double prev_ly = 0.0;
      for (double Ly = 0.0; Ly < 1.0; Ly += 0.1) {
        const double v = psi_hat_bound(p, sd, Interval(mu), Ly).hi;
        EXPECT_GE(v, prev_ly);
        prev_ly = v;
      }
      const double v = psi_hat_bound(p, sd, Interval(mu), 0.05).hi;
      EXPECT_GE(v, prev_mu);
      prev_mu = v;
    }
  }
}

TEST(PsiHat, SwiftHohenbergWithinTenTimesPrintedForm) {
  const auto p = swift_hohenberg();
  const auto sd = build_spectral_data(p);
  const double lg = op_norm_inf_upper(sd.Lambda_inv_matrix() * sd.Gamma_inv).hi;
  const double g = op_norm_inf_upper(sd.Gamma).hi;
  for (double mu : {1e-7, 1e-6, 1e-3}) {
    const double Ly = 0.03;
    const double ref = (std::sqrt(6.0) + 1.5 * 0.1 * (1 + Ly) * mu) * (1 + Ly) * mu * lg * g;
    EXPECT_LE(psi_hat_bound(p, sd, Interval(mu), Ly).hi, 10.0 * ref);
  }
}

TEST(Constraints, KleinGordonChart) {
  const auto p = klein_gordon();
  const auto sd = build_spectral_data(p);
  const Interval mu(2.3e-7);
  const double Ly = 0.05;
  const auto cert = check_constraints(lambda_hat(sd), Interval(0.068), mu, 1.0, Ly, psi_hat_bound(p, sd, mu, Ly), 3);
  EXPECT_TRUE(cert.c20a);
  EXPECT_TRUE(cert.c20b);
  EXPECT_TRUE(cert.c20c);
  EXPECT_TRUE(cert.passed());
}

TEST(Constraints, HugePsiViolatesFirstConstraint) {
  const auto cert = check_constraints(Interval(1.0), Interval(0.068), Interval(1.0), 1.0, 0.05, Interval(50.0), 3);
  EXPECT_FALSE(cert.c20a);
  EXPECT_FALSE(cert.passed());
}

TEST(Constraints, SwiftHohenbergChart) {
  const auto p = swift_hohenberg();
  const auto sd = build_spectral_data(p);
  const Interval mu(1e-6);
  const double Ly = 0.03;
  const auto cert = check_constraints(lambda_hat(sd), Interval(0.031), mu, 1.0, Ly, psi_hat_bound(p, sd, mu, Ly), 2);
  EXPECT_TRUE(cert.passed());
}

TEST(Constraints, AdverseEndpointsAreUsed) {
  // A boundary case that passes at the favourable endpoint of each input
  // must fail once the input is widened across the threshold.
  const Interval psi(0.0);
  const double Ly = 0.05;
  const auto base = check_constraints(Interval(1.0), Interval(0.068), Interval(1e-7), 1.0, Ly, psi, 3);
  ASSERT_TRUE(base.passed());

  // (20a) threshold on lambda_hat is 0.068 * 1.05.
  const double t = 0.068 * 1.05;
  EXPECT_FALSE(check_constraints(Interval(t * 0.999, 1.0), Interval(0.068), Interval(1e-7), 1.0, Ly, psi, 3).c20a);
  EXPECT_TRUE(check_constraints(Interval(t * 1.001, 1.0), Interval(0.068), Interval(1e-7), 1.0, Ly, psi, 3).c20a);

  // delta: the upper endpoint decides.
  EXPECT_FALSE(check_constraints(Interval(1.0), Interval(0.0, 2.0), Interval(1e-7), 1.0, Ly, psi, 3).c20a);
  // psi: the upper endpoint decides.
  EXPECT_FALSE(check_constraints(Interval(1.0), Interval(0.068), Interval(1e-7), 1.0, Ly, Interval(0.0, 5.0), 3).c20a);
  // Ly below the (20c) right-hand side fails.
  EXPECT_FALSE(check_constraints(Interval(1.0), Interval(0.068), Interval(1e-7), 1.0, 1e-3, psi, 3).c20c);
}

TEST(SearchLy, KleinGordonReturnsAdmissibleConstant) {
  const auto p = klein_gordon();
  const auto sd = build_spectral_data(p);
  const Interval mu(2.3e-7), delta(0.068);
  const Interval lh = lambda_hat(sd);
  const double Ly = search_Ly(lh, delta, [&](double l) { return psi_hat_bound(p, sd, mu, l); }, 3, 1.0);
  EXPECT_GE(Ly, 0.04);
  EXPECT_LE(Ly, 0.07);
  EXPECT_TRUE(check_constraints(lh, delta, mu, 1.0, Ly, psi_hat_bound(p, sd, mu, Ly), 3).passed());
}

TEST(SearchLy, ImpossibleDecayRate) {
  // lambda_hat <= (d - 1) delta / 2 cannot satisfy (20a) even with psi = 0.
  EXPECT_THROW(search_Ly(Interval(0.05), Interval(0.1), [](double) { return Interval(0.0); }, 2, 1.0), NoAdmissibleLy);
}

TEST(SearchLy, FitzHughNagumoNearReportedValue) {
  const auto p = fitzhugh_nagumo();
  const auto sd = build_spectral_data(p);
  const Interval mu(1e-7), delta(0.023);
  const Interval lh = lambda_hat(sd);
  const double Ly = search_Ly(lh, delta, [&](double l) { return psi_hat_bound(p, sd, mu, l); }, 2, 1.0);
  EXPECT_GT(Ly, 0.01);
  EXPECT_LT(Ly, 0.04);
}
