#include "radproof/manifold.hpp"

#include <algorithm>
#include <cmath>

namespace radproof {

Interval dn_growth_bound(const EllipticProblem& p, const Interval& R) {
  const PolynomialMap shifted = p.N.shifted(p.c);
  const std::vector<Interval> radii(p.q, R);
  std::vector<Interval> row(p.q, Interval(0.0));
  for (std::size_t j = 0; j < p.q; ++j) {
    const auto growth = shifted.derivative(j).without_constant().absolutify().eval(radii);
    for (std::size_t i = 0; i < p.q; ++i) row[i] += growth[i];
  }
  Interval best(0.0);
  for (const auto& r : row) best = max(best, r);
  return best;
}

Interval psi_hat_bound(const EllipticProblem& p, const SpectralData& sd, const Interval& mu, double Ly) {
  const Interval g_norm(op_norm_inf_upper(sd.Gamma).hi);
  const Interval lg_norm(op_norm_inf_upper(sd.Lambda_inv_matrix() * sd.Gamma_inv).hi);
  const Interval R = g_norm * (Interval(1.0) + Interval(Ly)) * Interval(mu.hi);
  return Interval(0.5) * lg_norm * dn_growth_bound(p, R) * g_norm;
}

ManifoldCert check_constraints(const Interval& lambda_hat, const Interval& delta, const Interval& mu, double Lx,
                               double Ly, const Interval& psi_hat, int d) {
  ManifoldCert c;
  c.delta = delta;
  c.mu = mu;
  c.Lx = Lx;
  c.Ly = Ly;
  c.psi_hat = psi_hat;
  c.lambda_hat = lambda_hat;

  // Every constraint gets easier as lambda_hat grows and harder as delta or
  // psi_hat grow, so the adverse endpoints are used as points.
  const Interval lam(lambda_hat.lo);
  const Interval del(delta.hi);
  const Interval psi(psi_hat.hi);
  const Interval h = Interval(d - 1.0) / Interval(2.0);
  const Interval one_ly = Interval(1.0) + Interval(Ly);
  const Interval a = (h * del + psi) * one_ly;
  const Interval b = (Interval(3.0) * h * del + Interval(2.0) * psi) * one_ly;
  const Interval two_lam = Interval(2.0) * lam;

  c.c20a = lam.lo > a.hi;
  if (!c.c20a) return c;
  const Interval den_a = two_lam - a;
  const Interval den_b = two_lam - b;
  c.c20c = den_a.lo > 0.0 && Interval(Ly).lo >= (a / den_a).hi;
  if (den_b.lo > 0.0 && den_a.lo > 0.0) {
    const Interval bracket = Interval(1.0) / den_a + a / (den_b * den_a);
    const Interval rhs = bracket * (h * one_ly + (h * del + psi) * Interval(Lx));
    c.c20b = Lx >= rhs.hi;
  }
  return c;
}

double search_Ly(const Interval& lambda_hat, const Interval& delta, const std::function<Interval(double)>& psi_of_Ly,
                 int d, double Lx) {
  const double h = 0.5 * (d - 1.0);
  double Ly = 0.0;
  for (int it = 0; it < 64; ++it) {
    const double a = (h * delta.hi + psi_of_Ly(Ly).hi) * (1.0 + Ly);
    const double den = 2.0 * lambda_hat.lo - a;
    if (!(lambda_hat.lo > a) || !(den > 0.0))
      throw NoAdmissibleLy("the decay constraint fails at Ly = " + to_decimal(Ly));
    const double next = a / den;
    const bool done = std::fabs(next - Ly) <= 1e-12 * std::max(1.0, next);
    Ly = next;
    if (done) break;
  }
  Ly *= 1.1;
  const ManifoldCert c = check_constraints(lambda_hat, delta, Interval(0.0), Lx, Ly, psi_of_Ly(Ly), d);
  if (!c.passed())
    throw NoAdmissibleLy("no admissible Ly: constraints (a, b, c) = (" + std::to_string(c.c20a) + ", " +
                         std::to_string(c.c20b) + ", " + std::to_string(c.c20c) + ") at Ly = " + to_decimal(Ly));
  return Ly;
}

}  // namespace radproof
