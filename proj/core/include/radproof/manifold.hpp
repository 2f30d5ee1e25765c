#pragma once

#include <functional>

#include "radproof/problem.hpp"
#include "radproof/spectra.hpp"

namespace radproof {

struct ManifoldCert {
  Interval delta;
  Interval mu;
  double Lx = 1.0;
  double Ly = 0.0;
  Interval psi_hat;
  Interval lambda_hat;
  bool c20a = false;
  bool c20b = false;
  bool c20c = false;

  bool passed() const { return c20a && c20b && c20c; }
};

/// B(R) = max_i sum_j sum_{|k|>=1} |coeff of zeta^k in dN_i/du_j (c + zeta)| R^{|k|},
/// the entrywise growth of DN(c + zeta) - DN(c) on the polydisk of radius R.
Interval dn_growth_bound(const EllipticProblem& p, const Interval& R);

/// 1/2 |Lambda^-1 Gamma^-1| B(R) |Gamma| with R = |Gamma| (1 + Ly) mu.
Interval psi_hat_bound(const EllipticProblem& p, const SpectralData& sd, const Interval& mu, double Ly);

/// Evaluates the three Lipschitz constraints with outward rounding on the
/// adverse side.
ManifoldCert check_constraints(const Interval& lambda_hat, const Interval& delta, const Interval& mu, double Lx,
                               double Ly, const Interval& psi_hat, int d);

/// Fixed-point iteration of the Ly constraint from 0 with psi_hat
/// re-evaluated at each iterate, then 10% slack and a certified check.
/// Throws NoAdmissibleLy when no candidate passes.
double search_Ly(const Interval& lambda_hat, const Interval& delta, const std::function<Interval(double)>& psi_of_Ly,
                 int d, double Lx);

}  // namespace radproof
