#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "radproof/bvp.hpp"
#include "radproof/pipeline.hpp"
#include "radproof/problem.hpp"
#include "radproof/spectra.hpp"

namespace fixtures {

using namespace radproof;

/// N(u) = -(u - 1/2) + (u - 1/2)^3 on R^3, expanded; u = 1/2 solves it.
inline EllipticProblem shifted_cubic() {
  EllipticProblem p;
  p.name = "shifted-cubic";
  p.q = 1;
  p.d = 3;
  p.N = PolynomialMap(1, 1,
                      {{0, {0}, Interval(0.375)},
                       {0, {1}, Interval(-0.25)},
                       {0, {2}, Interval(-1.5)},
                       {0, {3}, Interval(1.0)}});
  p.c = {Interval(0.5)};
  return p;
}

/// Geometry with x = 1 + 2 ell r_* / L = 5/4, so the 1/r coefficients decay
/// like 2^-n.
inline ProofConfig small_config(std::size_t nT = 12, std::size_t nC = 40) {
  ProofConfig c;
  c.ell = 1.0;
  c.r_star = 0.5;
  c.L = 4.0;
  c.nu = 1.05;
  c.nT_num = nT;
  c.nT_pad = 0;
  c.nC_num = nC;
  c.nC_pad = 0;
  return c;
}

/// The constant solution u = c written as chi, with 1/r coefficients exact
/// up to rounding.
inline XVector<double> constant_chi(const EllipticProblem& p, const ProofConfig& cfg) {
  XVector<double> chi;
  const std::size_t q = p.q;
  chi.eta.assign(q, 0.0);
  for (std::size_t i = 0; i < q; ++i) {
    chi.phi.push_back(p.c[i].mid());
    TaylorSeq<double> v(cfg.nT());
    v.c[0] = p.c[i].mid();
    chi.v.push_back(v);
  }
  chi.w.emplace_back(inverse_radius_coefficients(cfg.ell * cfg.r_star, cfg.L, cfg.nC()), cfg.nu);
  for (std::size_t i = 0; i < q; ++i) {
    ChebSeq<double> w(cfg.nC(), cfg.nu);
    w.c[0] = p.c[i].mid();
    chi.w.push_back(w);
  }
  for (std::size_t i = 0; i < q; ++i) chi.w.emplace_back(cfg.nC(), cfg.nu);
  return chi;
}

/// KG at the published orders, refined from the shooting seed.
struct KgRefined {
  EllipticProblem problem = klein_gordon();
  ProofConfig cfg;
  SpectralData sd;
  std::unique_ptr<ProofData> data;
  SeedProfile seed;
  NewtonResult newton;

  KgRefined() {
    cfg.ell = 0.45;
    cfg.r_star = 0.9;
    cfg.L = 14.295;
    cfg.nu = 1.02;
    cfg.nT_num = 60;
    cfg.nT_pad = 100;
    cfg.nC_num = 85;
    cfg.nC_pad = 200;
    sd = build_spectral_data(problem);
    data = std::make_unique<ProofData>(problem, sd, cfg);
    seed = shoot_seed(problem, cfg.r0(), 2.5, 2.8, 0, 4001);
    newton = newton_refine(*data, fit_series(seed, problem, sd, cfg), NewtonOptions{1e-13, 30, 3});
  }
};

}  // namespace fixtures
