#include "radproof/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace radproof {

namespace {

template <class C> C complex_const(const CInterval& z) {
  if constexpr (std::is_same_v<C, CInterval>)
    return z;
  else
    return z.mid();
}

template <class R> bool exact_zero(const R& x) { return detail::is_zero(x); }

}  // namespace

void ProofConfig::validate() const {
  if (!(ell > 0.0) || !(r_star > 0.0) || !(L > 0.0)) throw ConfigError("ell, r_star and L must be positive");
  if (!(nu > 1.0)) throw ConfigError("nu must exceed 1");
  if (nT() < 2) throw ConfigError("Taylor order must be at least 2");
  if (nC() < 1) throw ConfigError("Chebyshev order must be at least 1");
  if (!(varrho > 0.0)) throw ConfigError("varrho must be positive");
  const double cap = std::exp(-1.0 / static_cast<double>(nT() + 1));
  if (!(r_star <= down(cap)))
    throw ConfigError("r_star = " + to_decimal(r_star) + " exceeds exp(-1/(nT+1)) = " + to_decimal(cap));
}

Layout Layout::extended(std::size_t q, std::size_t nT, std::size_t nC, int K) {
  Layout l(q, nT, nC);
  l.w_len = static_cast<std::size_t>(K) * nC + 2;
  return l;
}

Layout::Slot Layout::locate(std::size_t idx) const {
  if (idx < q) return {Kind::Eta, idx, 0};
  if (idx < 2 * q) return {Kind::Phi, idx - q, 0};
  std::size_t r = idx - 2 * q;
  if (r < q * (nT + 1)) return {Kind::V, r / (nT + 1), r % (nT + 1)};
  r -= q * (nT + 1);
  if (r < (1 + 2 * q) * w_len) return {Kind::W, r / w_len, r % w_len};
  throw ArityMismatch("index outside the layout");
}

std::size_t Layout::block(std::size_t idx) const {
  const Slot s = locate(idx);
  switch (s.kind) {
    case Kind::Eta: return s.comp;
    case Kind::Phi: return q + s.comp;
    case Kind::V: return 2 * q + s.comp;
    case Kind::W: return 3 * q + s.comp;
  }
  return 0;
}

std::vector<Interval> Layout::weights(double nu) const {
  std::vector<Interval> w(dim(), Interval(1.0));
  const auto cw = cheb_weights(nu, w_len - 1);
  for (std::size_t k = 0; k < 1 + 2 * q; ++k)
    for (std::size_t n = 0; n < w_len; ++n) w[this->w(k, n)] = cw[n];
  return w;
}

ProofData::ProofData(EllipticProblem p, SpectralData sd, ProofConfig c)
    : problem(std::move(p)),
      N(problem.N),
      f(derive_first_order(problem)),
      spectral(std::move(sd)),
      GL(spectral.Gamma_Lambda()),
      cfg(c) {}

template <class R> XVector<R> resized(const XVector<R>& x, std::size_t nT, std::size_t nC) {
  XVector<R> y = x;
  for (auto& s : y.v) s = resized(s, nT);
  for (auto& s : y.w) s = resized(s, nC);
  return y;
}

XVector<Interval> to_interval(const XVector<double>& x) {
  XVector<Interval> y;
  for (const auto& e : x.eta) y.eta.emplace_back(e);
  for (double p : x.phi) y.phi.emplace_back(p);
  for (const auto& s : x.v) {
    TaylorSeq<Interval> t(s.degree());
    for (std::size_t n = 0; n < s.c.size(); ++n) t.c[n] = s.c[n];
    y.v.push_back(std::move(t));
  }
  for (const auto& s : x.w) {
    ChebSeq<Interval> t(s.degree(), s.nu);
    for (std::size_t n = 0; n < s.c.size(); ++n) t.c[n] = s.c[n];
    y.w.push_back(std::move(t));
  }
  return y;
}

Eigen::VectorXcd flatten(const XVector<double>& x, const Layout& lay) {
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(lay.dim()));
  for (std::size_t i = 0; i < lay.q; ++i) {
    y(lay.eta(i)) = x.eta[i];
    y(lay.phi(i)) = x.phi[i];
    for (std::size_t n = 0; n <= lay.nT; ++n) y(lay.v(i, n)) = x.v[i][n];
  }
  for (std::size_t k = 0; k < 1 + 2 * lay.q; ++k)
    for (std::size_t n = 0; n < lay.w_len; ++n) y(lay.w(k, n)) = x.w[k][n];
  return y;
}

XVector<double> unflatten(const Eigen::VectorXcd& y, const Layout& lay, double nu) {
  XVector<double> x;
  for (std::size_t i = 0; i < lay.q; ++i) {
    x.eta.push_back(y(lay.eta(i)));
    x.phi.push_back(y(lay.phi(i)).real());
    TaylorSeq<double> t(lay.nT);
    for (std::size_t n = 0; n <= lay.nT; ++n) t.c[n] = y(lay.v(i, n)).real();
    x.v.push_back(std::move(t));
  }
  for (std::size_t k = 0; k < 1 + 2 * lay.q; ++k) {
    ChebSeq<double> t(lay.w_len - 1, nu);
    for (std::size_t n = 0; n < lay.w_len; ++n) t.c[n] = y(lay.w(k, n)).real();
    x.w.push_back(std::move(t));
  }
  return x;
}

Eigen::VectorXcd flatten(const FVector<double>& f, const Layout& lay) {
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(lay.dim()));
  for (std::size_t i = 0; i < lay.q; ++i) {
    y(lay.eta(i)) = f.bnd1[i];
    y(lay.phi(i)) = f.bnd2[i];
    for (std::size_t n = 0; n <= lay.nT; ++n) y(lay.v(i, n)) = f.g[i][n];
  }
  for (std::size_t k = 0; k < 1 + 2 * lay.q; ++k)
    for (std::size_t n = 0; n < lay.w_len; ++n) y(lay.w(k, n)) = f.h[k][n];
  return y;
}

namespace {

template <class R>
std::vector<TaylorSeq<R>> g_from(const ProofData& data, const XVector<R>& chi, const std::vector<TaylorSeq<R>>& Nv,
                                 std::size_t nT) {
  const R ell2 = R(data.cfg.ell) * R(data.cfg.ell);
  const int d = data.problem.d;
  std::vector<TaylorSeq<R>> g;
  for (std::size_t i = 0; i < data.q(); ++i) {
    TaylorSeq<R> gi(nT);
    const auto& v = chi.v[i];
    gi.c[0] = v[0] - chi.phi[i];
    if (nT >= 1) gi.c[1] = v[1];
    for (std::size_t n = 2; n <= nT; ++n) {
      const double nn = static_cast<double>(n) * static_cast<double>(static_cast<int>(n) + d - 2);
      gi.c[n] = R(nn) * v[n] + ell2 * Nv[i][n - 2];
    }
    g.push_back(std::move(gi));
  }
  return g;
}

template <class R> R alt_coeff(std::size_t m) {
  if (m == 0) return R(1.0);
  if (m == 1) return R(-0.5);
  const double sign = (m % 2 == 0) ? -2.0 : 2.0;
  const double den = static_cast<double>(m) * static_cast<double>(m) - 1.0;
  return R(sign) / R(den);
}

template <class R>
std::vector<ChebSeq<R>> h_from(const ProofData& data, const XVector<R>& chi, const std::vector<ChebSeq<R>>& fw,
                               std::size_t nC) {
  const std::size_t q = data.q();
  const R ell(data.cfg.ell);
  const R rs(data.cfg.r_star);
  const R ell_r = ell * rs;
  const R L(data.cfg.L);
  const R half_L = L / R(2.0);
  std::vector<R> ic(1 + 2 * q);
  ic[0] = R(1.0) / ell_r;
  for (std::size_t i = 0; i < q; ++i) {
    ic[1 + i] = eval_taylor(chi.v[i], rs);
    ic[1 + q + i] = eval_taylor_deriv_scaled(chi.v[i], rs, ell_r);
  }
  std::vector<ChebSeq<R>> h;
  for (std::size_t k = 0; k < 1 + 2 * q; ++k) {
    const auto& f = fw[k];
    const auto& w = chi.w[k];
    ChebSeq<R> hk(nC, data.cfg.nu);
    R s(0.0);
    for (std::size_t m = 0; m < f.c.size(); ++m)
      if (!exact_zero(f.c[m])) s += alt_coeff<R>(m) * f.c[m];
    hk.c[0] = ic[k] + half_L * s - w[0];
    for (std::size_t n = 1; n <= nC; ++n)
      hk.c[n] = L / R(4.0 * static_cast<double>(n)) * (f[n - 1] - f[n + 1]) - w[n];
    h.push_back(std::move(hk));
  }
  return h;
}

}  // namespace

template <class R>
std::pair<std::vector<typename scalar_traits<R>::complex>, std::vector<typename scalar_traits<R>::complex>>
boundary_rows(const ProofData& data, const XVector<R>& chi) {
  using C = typename scalar_traits<R>::complex;
  const std::size_t q = data.q();
  std::vector<C> b1(q), b2(q);
  for (std::size_t i = 0; i < q; ++i) {
    C s1 = C(eval_cheb_at_one(chi.w[1 + i]) - scalar_from<R>(data.problem.c[i]));
    C s2 = C(eval_cheb_at_one(chi.w[1 + q + i]));
    for (std::size_t j = 0; j < q; ++j) {
      s1 -= complex_const<C>(data.spectral.Gamma(i, j)) * chi.eta[j];
      s2 += complex_const<C>(data.GL(i, j)) * chi.eta[j];
    }
    b1[i] = s1;
    b2[i] = s2;
  }
  return {b1, b2};
}

template <class R>
std::vector<TaylorSeq<R>> taylor_block_g(const ProofData& data, const XVector<R>& chi, std::size_t nT) {
  return g_from(data, chi, data.N.eval(chi.v), nT);
}

template <class R>
std::vector<ChebSeq<R>> cheb_block_h(const ProofData& data, const XVector<R>& chi, std::size_t nC) {
  return h_from(data, chi, data.f.eval(chi.w), nC);
}

template <class R>
FVector<R> evaluate_F(const ProofData& data, const XVector<R>& chi, std::size_t nT, std::size_t nC,
                      std::vector<TaylorSeq<R>>* full_N, std::vector<ChebSeq<R>>* full_f) {
  if (chi.v.size() != data.q() || chi.w.size() != 1 + 2 * data.q() || chi.eta.size() != data.q() ||
      chi.phi.size() != data.q())
    throw ArityMismatch("approximation does not match the problem arity");
  FVector<R> F;
  auto [b1, b2] = boundary_rows(data, chi);
  F.bnd1 = std::move(b1);
  F.bnd2 = std::move(b2);
  auto Nv = data.N.eval(chi.v);
  auto fw = data.f.eval(chi.w);
  F.g = g_from(data, chi, Nv, nT);
  F.h = h_from(data, chi, fw, nC);
  if (full_N) *full_N = std::move(Nv);
  if (full_f) *full_f = std::move(fw);
  return F;
}

template <class R>
JacobianColumns<R>::JacobianColumns(const ProofData& data, const XVector<R>& chi, Layout rows, Layout cols)
    : data_(data), rows_(rows), cols_(cols), d_(data.problem.d) {
  if (rows_.q != data.q() || cols_.q != data.q() || rows_.nT != cols_.nT)
    throw ArityMismatch("Jacobian layouts do not match the problem");
  dn_ = data.N.jacobian(chi.v);
  df_ = data.f.jacobian(chi.w);
  std::size_t max_deg = 0;
  for (const auto& row : df_)
    for (const auto& s : row) max_deg = std::max(max_deg, s.degree());
  const std::size_t n_alt = cols_.w_len + max_deg + 2;
  alt_.reserve(n_alt);
  for (std::size_t m = 0; m < n_alt; ++m) alt_.push_back(alt_coeff<R>(m));
  const R rs(data.cfg.r_star);
  rpow_.assign(rows_.nT + 1, R(1.0));
  for (std::size_t m = 1; m <= rows_.nT; ++m) rpow_[m] = rpow_[m - 1] * rs;
  const std::size_t q = data.q();
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      gamma_.push_back(complex_const<C>(data.spectral.Gamma(i, j)));
      gl_.push_back(complex_const<C>(data.GL(i, j)));
    }
  ell2_ = R(data.cfg.ell) * R(data.cfg.ell);
  L_ = R(data.cfg.L);
  ell_r_ = R(data.cfg.ell) * R(data.cfg.r_star);
}

template <class R> R JacobianColumns<R>::cheb_mult(std::size_t k, std::size_t j, std::size_t m, std::size_t p) const {
  const auto& c = df_[k][j];
  if (p == 0) return c[m];
  const std::size_t a = m > p ? m - p : p - m;
  return c[a] + c[m + p];
}

template <class R> R JacobianColumns<R>::alt_row(std::size_t k, std::size_t j, std::size_t p) const {
  const auto& c = df_[k][j];
  const std::size_t deg = c.degree();
  R s(0.0);
  if (p == 0) {
    for (std::size_t m = 0; m <= deg; ++m)
      if (!exact_zero(c.c[m])) s += alt_[m] * c.c[m];
    return s;
  }
  const std::size_t lo = p > deg ? p - deg : 0;
  for (std::size_t m = lo; m <= p + deg; ++m) {
    const std::size_t a = m > p ? m - p : p - m;
    if (!exact_zero(c.c[a])) s += alt_[m] * c.c[a];
  }
  for (std::size_t m = 0; m + p <= deg; ++m)
    if (!exact_zero(c.c[m + p])) s += alt_[m] * c.c[m + p];
  return s;
}

template <class R>
template <class RealSink, class ComplexSink>
void JacobianColumns<R>::visit(std::size_t col, RealSink&& real_sink, ComplexSink&& complex_sink) const {
  const std::size_t q = data_.q();
  const Layout::Slot s = cols_.locate(col);
  switch (s.kind) {
    case Layout::Kind::Eta: {
      const std::size_t j = s.comp;
      for (std::size_t i = 0; i < q; ++i) {
        complex_sink(rows_.eta(i), C(R(0.0)) - gamma_[i * q + j]);
        complex_sink(rows_.phi(i), gl_[i * q + j]);
      }
      return;
    }
    case Layout::Kind::Phi:
      real_sink(rows_.v(s.comp, 0), R(-1.0));
      return;
    case Layout::Kind::V: {
      const std::size_t j = s.comp;
      const std::size_t m = s.index;
      const std::size_t nT = rows_.nT;
      const double diag = m <= 1 ? 1.0 : static_cast<double>(m) * static_cast<double>(static_cast<int>(m) + d_ - 2);
      for (std::size_t i = 0; i < q; ++i) {
        if (i == j) real_sink(rows_.v(i, m), R(diag));
        const auto& c = dn_[i][j];
        for (std::size_t n = m + 2; n <= nT && n - 2 - m <= c.degree(); ++n) {
          const R& a = c.c[n - 2 - m];
          if (!exact_zero(a)) real_sink(rows_.v(i, n), ell2_ * a);
        }
      }
      real_sink(rows_.w(1 + j, 0), rpow_[m]);
      if (m >= 1) real_sink(rows_.w(1 + q + j, 0), R(static_cast<double>(m)) * rpow_[m] / ell_r_);
      return;
    }
    case Layout::Kind::W: {
      const std::size_t j = s.comp;
      const std::size_t p = s.index;
      const std::size_t nC = rows_.nC;
      if (j >= 1 && j <= q) real_sink(rows_.eta(j - 1), R(p == 0 ? 1.0 : 2.0));
      if (j > q) real_sink(rows_.phi(j - 1 - q), R(p == 0 ? 1.0 : 2.0));
      const R half_L = L_ / R(2.0);
      for (std::size_t k = 0; k < 1 + 2 * q; ++k) {
        const auto& c = df_[k][j];
        const bool zero_op = c.degree() == 0 && exact_zero(c.c[0]);
        const bool diag = k == j;
        if (zero_op) {
          if (diag && p <= nC) real_sink(rows_.w(k, p), R(-1.0));
          continue;
        }
        R a0 = half_L * alt_row(k, j, p);
        if (diag && p == 0) a0 = a0 - R(1.0);
        real_sink(rows_.w(k, 0), a0);
        const std::size_t deg = c.degree();
        const std::size_t n_lo = std::max<std::size_t>(1, p > deg + 1 ? p - deg - 1 : 1);
        const std::size_t n_hi = std::min(nC, p + deg + 1);
        for (std::size_t n = n_lo; n <= n_hi; ++n) {
          R val = L_ / R(4.0 * static_cast<double>(n)) * (cheb_mult(k, j, n - 1, p) - cheb_mult(k, j, n + 1, p));
          if (diag && n == p) val = val - R(1.0);
          real_sink(rows_.w(k, n), val);
        }
        if (diag && p >= 1 && p <= nC && (p < n_lo || p > n_hi)) real_sink(rows_.w(k, p), R(-1.0));
      }
      return;
    }
  }
}

template <class R> void JacobianColumns<R>::column(std::size_t col, std::vector<Entry>& out) const {
  out.clear();
  visit(
      col, [&](std::size_t row, const R& v) { out.emplace_back(row, C(v)); },
      [&](std::size_t row, const C& v) { out.emplace_back(row, v); });
}

Eigen::MatrixXcd assemble_DF(const ProofData& data, const XVector<double>& chi, const Layout& lay) {
  const XVector<double> x = resized(chi, lay.nT, lay.w_len - 1);
  JacobianColumns<double> jc(data, x, lay, lay);
  const auto n = static_cast<Eigen::Index>(lay.dim());
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n, n);
  std::vector<JacobianColumns<double>::Entry> e;
  for (std::size_t col = 0; col < lay.dim(); ++col) {
    jc.column(col, e);
    for (const auto& [row, v] : e) J(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += v;
  }
  return J;
}

void symmetrize(XVector<double>& chi, const SpectralData& sd) {
  for (std::size_t i = 0; i < sd.q(); ++i) {
    const std::size_t p = sd.partner[i];
    if (p > i) {
      const std::complex<double> a = 0.5 * (chi.eta[i] + std::conj(chi.eta[p]));
      chi.eta[i] = a;
      chi.eta[p] = std::conj(a);
    } else if (p == i && sd.Lambda[i].is_real() && sd.Gamma.is_real()) {
      chi.eta[i] = {chi.eta[i].real(), 0.0};
    }
  }
}

double residual_sup(const ProofData& data, const XVector<double>& chi) {
  const Layout lay(data.q(), data.cfg.nT_num, data.cfg.nC_num);
  const auto F = evaluate_F(data, resized(chi, lay.nT, lay.nC), lay.nT, lay.nC);
  return flatten(F, lay).cwiseAbs().maxCoeff();
}

NewtonResult newton_refine(const ProofData& data, XVector<double> chi0, const NewtonOptions& opt) {
  const Layout lay(data.q(), data.cfg.nT_num, data.cfg.nC_num);
  XVector<double> chi = resized(chi0, lay.nT, lay.nC);
  symmetrize(chi, data.spectral);
  NewtonResult out;
  double best = std::numeric_limits<double>::infinity();
  int stall = 0;
  for (int it = 0; it <= opt.max_iter; ++it) {
    const auto F = evaluate_F(data, chi, lay.nT, lay.nC);
    const Eigen::VectorXcd Fv = flatten(F, lay);
    const double res = Fv.cwiseAbs().maxCoeff();
    if (!std::isfinite(res)) throw NewtonDiverged("residual is not finite after " + std::to_string(it) + " steps");
    const double scale = std::max(1.0, flatten(chi, lay).cwiseAbs().maxCoeff());
    out.chi = chi;
    out.residual = res;
    out.iterations = it;
    if (res <= opt.tol * scale) return out;
    if (res < best) {
      best = res;
      stall = 0;
    } else if (++stall >= opt.stall_limit) {
      // Stagnation at the rounding floor counts as convergence.
      if (best <= 100.0 * opt.tol * scale) return out;
      throw NewtonDiverged("residual " + to_decimal(res) + " stopped decreasing");
    }
    if (it == opt.max_iter) break;
    const Eigen::MatrixXcd J = assemble_DF(data, chi, lay);
    const Eigen::VectorXcd dx = J.partialPivLu().solve(Fv);
    chi = unflatten(flatten(chi, lay) - dx, lay, data.cfg.nu);
    symmetrize(chi, data.spectral);
  }
  throw NewtonDiverged("no convergence within " + std::to_string(opt.max_iter) + " iterations (residual " +
                       to_decimal(out.residual) + ")");
}

Eigen::MatrixXcd build_A(const ProofData& data, const XVector<double>& chi) {
  const Layout lay(data.q(), data.cfg.nT(), data.cfg.nC());
  return numerical_inverse(assemble_DF(data, chi, lay));
}

Eigen::MatrixXcd numerical_inverse(const Eigen::MatrixXcd& J) {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(J);
  const double rc = lu.rcond();
  if (!(rc > 1e-15)) throw SingularTruncatedJacobian("reciprocal condition estimate " + to_decimal(rc));
  Eigen::MatrixXcd A = lu.inverse();
  if (!A.allFinite()) throw SingularTruncatedJacobian("numerical inverse is not finite");
  return A;
}

template XVector<double> resized(const XVector<double>&, std::size_t, std::size_t);
template XVector<Interval> resized(const XVector<Interval>&, std::size_t, std::size_t);
template FVector<double> evaluate_F(const ProofData&, const XVector<double>&, std::size_t, std::size_t,
                                    std::vector<TaylorSeq<double>>*, std::vector<ChebSeq<double>>*);
template FVector<Interval> evaluate_F(const ProofData&, const XVector<Interval>&, std::size_t, std::size_t,
                                      std::vector<TaylorSeq<Interval>>*, std::vector<ChebSeq<Interval>>*);
template std::vector<TaylorSeq<double>> taylor_block_g(const ProofData&, const XVector<double>&, std::size_t);
template std::vector<TaylorSeq<Interval>> taylor_block_g(const ProofData&, const XVector<Interval>&, std::size_t);
template std::vector<ChebSeq<double>> cheb_block_h(const ProofData&, const XVector<double>&, std::size_t);
template std::vector<ChebSeq<Interval>> cheb_block_h(const ProofData&, const XVector<Interval>&, std::size_t);
template std::pair<std::vector<std::complex<double>>, std::vector<std::complex<double>>> boundary_rows(
    const ProofData&, const XVector<double>&);
template std::pair<std::vector<CInterval>, std::vector<CInterval>> boundary_rows(const ProofData&,
                                                                                 const XVector<Interval>&);
template class JacobianColumns<double>;
template class JacobianColumns<Interval>;

}  // namespace radproof
