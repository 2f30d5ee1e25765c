#include "radproof/kantorovich.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace radproof {

namespace {

double hypot_up(double x, double y) {
  x = std::fabs(x);
  y = std::fabs(y);
  if (y == 0.0) return x;
  if (x == 0.0) return y;
  return up(std::sqrt(up(up(x * x) + up(y * y))));
}

std::vector<std::size_t> blocks_of(const Layout& lay) {
  std::vector<std::size_t> b(lay.dim());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = lay.block(i);
  return b;
}

std::vector<double> weight_bounds(const Layout& lay, double nu, bool upper_end) {
  const auto w = lay.weights(nu);
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = upper_end ? w[i].hi : w[i].lo;
  return out;
}

/// Row of `rows` holding the same unknown as column j of `cols`, if any.
long square_index(const Layout& rows, const Layout& cols, std::size_t j) {
  const auto s = cols.locate(j);
  switch (s.kind) {
    case Layout::Kind::Eta: return static_cast<long>(rows.eta(s.comp));
    case Layout::Kind::Phi: return static_cast<long>(rows.phi(s.comp));
    case Layout::Kind::V:
      return s.index <= rows.nT ? static_cast<long>(rows.v(s.comp, s.index)) : -1;
    case Layout::Kind::W:
      return s.index < rows.w_len ? static_cast<long>(rows.w(s.comp, s.index)) : -1;
  }
  return -1;
}

ThinMatrix select_cols(const ThinMatrix& A, const std::vector<Eigen::Index>& idx) {
  ThinMatrix s;
  s.re = A.re(Eigen::all, idx);
  if (!A.is_real()) s.im = A.im(Eigen::all, idx);
  s.mod = A.mod(Eigen::all, idx);
  return s;
}

Interval taylor_tail_norm(const TaylorSeq<Interval>& a, std::size_t from) {
  double s = 0.0;
  for (std::size_t n = from; n < a.c.size(); ++n) s = add_up(s, a.c[n].mag());
  return {0.0, s};
}

Interval cheb_tail_norm(const ChebSeq<Interval>& a, std::size_t from) {
  const auto w = cheb_weights(a.nu, a.degree());
  double s = 0.0;
  for (std::size_t n = from; n < a.c.size(); ++n) s = add_up(s, mul_up(w[n].hi, a.c[n].mag()));
  return {0.0, s};
}

}  // namespace

BlockNormAccumulator::BlockNormAccumulator(std::vector<std::size_t> row_block, std::size_t n_row_blocks,
                                           std::vector<double> row_weight, std::vector<std::size_t> col_block,
                                           std::size_t n_col_blocks, std::vector<double> col_weight)
    : row_block_(std::move(row_block)),
      n_row_blocks_(n_row_blocks),
      row_weight_(std::move(row_weight)),
      col_block_(std::move(col_block)),
      n_col_blocks_(n_col_blocks),
      col_weight_(std::move(col_weight)),
      acc_(n_row_blocks_ * n_col_blocks_, 0.0),
      scratch_(n_row_blocks_, 0.0) {
  if (row_block_.size() != row_weight_.size() || col_block_.size() != col_weight_.size())
    throw ArityMismatch("block and weight vectors differ in length");
  for (double w : col_weight_)
    if (!(w > 0.0)) throw DomainError("column weights must be positive");
}

BlockNormAccumulator BlockNormAccumulator::for_layouts(const Layout& rows, const Layout& cols, double nu) {
  return {blocks_of(rows), rows.num_blocks(), weight_bounds(rows, nu, true),
          blocks_of(cols), cols.num_blocks(), weight_bounds(cols, nu, false)};
}

void BlockNormAccumulator::add_column(std::size_t j, const double* mod) {
  std::fill(scratch_.begin(), scratch_.end(), 0.0);
  for (std::size_t k = 0; k < row_block_.size(); ++k)
    if (mod[k] != 0.0) scratch_[row_block_[k]] = add_up(scratch_[row_block_[k]], mul_up(row_weight_[k], mod[k]));
  const std::size_t b = col_block_[j];
  for (std::size_t I = 0; I < n_row_blocks_; ++I) {
    double& a = acc_[I * n_col_blocks_ + b];
    a = std::max(a, div_up(scratch_[I], col_weight_[j]));
  }
}

void BlockNormAccumulator::add_column(std::size_t j, const std::vector<std::size_t>& row_idx, const double* mod) {
  std::fill(scratch_.begin(), scratch_.end(), 0.0);
  for (std::size_t t = 0; t < row_idx.size(); ++t) {
    const std::size_t k = row_idx[t];
    scratch_[row_block_[k]] = add_up(scratch_[row_block_[k]], mul_up(row_weight_[k], mod[t]));
  }
  const std::size_t b = col_block_[j];
  for (std::size_t I = 0; I < n_row_blocks_; ++I) {
    double& a = acc_[I * n_col_blocks_ + b];
    a = std::max(a, div_up(scratch_[I], col_weight_[j]));
  }
}

Interval BlockNormAccumulator::result() const {
  double best = 0.0;
  for (std::size_t I = 0; I < n_row_blocks_; ++I) {
    double s = 0.0;
    for (std::size_t b = 0; b < n_col_blocks_; ++b) s = add_up(s, acc_[I * n_col_blocks_ + b]);
    best = std::max(best, s);
  }
  return {0.0, best};
}

Interval weighted_block_opnorm(const Eigen::MatrixXd& mod, const Layout& rows, const Layout& cols, double nu) {
  if (static_cast<std::size_t>(mod.rows()) != rows.dim() || static_cast<std::size_t>(mod.cols()) != cols.dim())
    throw ArityMismatch("matrix does not match the layouts");
  auto acc = BlockNormAccumulator::for_layouts(rows, cols, nu);
  for (Eigen::Index j = 0; j < mod.cols(); ++j) acc.add_column(static_cast<std::size_t>(j), mod.col(j).data());
  return acc.result();
}

Interval weighted_norm(const Eigen::VectorXd& mod, const Layout& lay, double nu) {
  if (static_cast<std::size_t>(mod.size()) != lay.dim()) throw ArityMismatch("vector does not match the layout");
  const auto w = lay.weights(nu);
  std::vector<double> s(lay.num_blocks(), 0.0);
  for (std::size_t k = 0; k < lay.dim(); ++k) {
    const auto b = lay.block(k);
    s[b] = add_up(s[b], mul_up(w[k].hi, mod(static_cast<Eigen::Index>(k))));
  }
  return {0.0, *std::max_element(s.begin(), s.end())};
}

Eigen::MatrixXd ball_magnitude(const BallMatrix& b) {
  Eigen::MatrixXd m(b.rows(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j)
    for (Eigen::Index i = 0; i < b.rows(); ++i) m(i, j) = b.mag(i, j);
  return m;
}

Interval operator_norm_A(const ThinMatrix& A, const ProofData& data) {
  const Layout lay(data.q(), data.cfg.nT(), data.cfg.nC());
  return weighted_block_opnorm(A.mod, lay, lay, data.cfg.nu);
}

Interval a_gamma_norm(const ThinMatrix& A, const ProofData& data) {
  const std::size_t q = data.q();
  const Layout lay(q, data.cfg.nT(), data.cfg.nC());
  if (static_cast<std::size_t>(A.rows()) != lay.dim()) throw ArityMismatch("A does not match the truncation");
  BallMatrix G(static_cast<Eigen::Index>(2 * q), static_cast<Eigen::Index>(q),
               !(data.spectral.Gamma.is_real() && data.GL.is_real()));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      G.set(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), data.spectral.Gamma(i, j));
      G.set(static_cast<Eigen::Index>(q + i), static_cast<Eigen::Index>(j), data.GL(i, j));
    }
  std::vector<Eigen::Index> idx(2 * q);
  for (std::size_t i = 0; i < 2 * q; ++i) idx[i] = static_cast<Eigen::Index>(i);
  const BallMatrix M = rigorous_product(select_cols(A, idx), G);
  // Domain C^q with the sup norm: every input coordinate is its own block.
  std::vector<std::size_t> col_block(q);
  for (std::size_t j = 0; j < q; ++j) col_block[j] = j;
  BlockNormAccumulator acc(blocks_of(lay), lay.num_blocks(), weight_bounds(lay, data.cfg.nu, true), col_block, q,
                           std::vector<double>(q, 1.0));
  const Eigen::MatrixXd mod = ball_magnitude(M);
  for (std::size_t j = 0; j < q; ++j) acc.add_column(j, mod.col(static_cast<Eigen::Index>(j)).data());
  return acc.result();
}

Interval compute_Y(const ProofData& data, const XVector<double>& chi, const ThinMatrix& A, BoundTerms* terms) {
  const auto& cfg = data.cfg;
  const std::size_t nT = cfg.nT(), nC = cfg.nC();
  const Layout lay(data.q(), nT, nC);
  const XVector<Interval> x = to_interval(resized(chi, nT, nC));
  std::vector<TaylorSeq<Interval>> Nv;
  std::vector<ChebSeq<Interval>> fw;
  const FVector<Interval> F = evaluate_F(data, x, nT, nC, &Nv, &fw);

  bool complex = false;
  for (std::size_t i = 0; i < data.q(); ++i) complex = complex || !F.bnd1[i].is_real() || !F.bnd2[i].is_real();
  BallMatrix Fb(static_cast<Eigen::Index>(lay.dim()), 1, complex);
  for (std::size_t i = 0; i < data.q(); ++i) {
    Fb.set(static_cast<Eigen::Index>(lay.eta(i)), 0, F.bnd1[i]);
    Fb.set(static_cast<Eigen::Index>(lay.phi(i)), 0, F.bnd2[i]);
    for (std::size_t n = 0; n <= nT; ++n) Fb.set(static_cast<Eigen::Index>(lay.v(i, n)), 0, F.g[i].c[n]);
  }
  for (std::size_t k = 0; k < 1 + 2 * data.q(); ++k)
    for (std::size_t n = 0; n <= nC; ++n) Fb.set(static_cast<Eigen::Index>(lay.w(k, n)), 0, F.h[k].c[n]);

  const BallMatrix AF = rigorous_product(A, Fb);
  const Interval finite = weighted_norm(ball_magnitude(AF).col(0), lay, cfg.nu);

  double tN = 0.0;
  for (const auto& s : Nv) tN = std::max(tN, taylor_tail_norm(s, nT - 1).hi);
  double tf = 0.0;
  for (const auto& s : fw) tf = std::max(tf, cheb_tail_norm(s, nC).hi);

  const Interval ell(cfg.ell), L(cfg.L), nu(cfg.nu);
  const double dn = static_cast<double>(nT);
  const Interval tail_T =
      ell * ell * Interval(0.0, tN) / (Interval(dn + 1.0) * Interval(dn + static_cast<double>(data.problem.d) - 1.0));
  const Interval tail_C = L * (nu + Interval(1.0) / nu) * Interval(0.0, tf) / Interval(4.0 * (nC + 1.0));
  if (terms) {
    terms->Y_finite = finite;
    terms->Y_tail_taylor = tail_T;
    terms->Y_tail_cheb = tail_C;
  }
  return Interval(0.0, (finite + max(tail_T, tail_C)).hi);
}

Interval compute_Z1(const ProofData& data, const XVector<double>& chi, const ThinMatrix& A, const Interval& A_norm,
                    BoundTerms* terms, std::size_t chunk) {
  const auto& cfg = data.cfg;
  const std::size_t q = data.q(), nT = cfg.nT(), nC = cfg.nC();
  const int K = data.K();
  const Layout rows(q, nT, nC);
  const Layout cols = Layout::extended(q, nT, nC, K);
  if (static_cast<std::size_t>(A.rows()) != rows.dim()) throw ArityMismatch("A does not match the truncation");
  const XVector<Interval> x = to_interval(resized(chi, nT, nC));
  const JacobianColumns<Interval> jc(data, x, rows, cols);
  const bool complex = !(data.spectral.Gamma.is_real() && data.GL.is_real());

  auto acc = BlockNormAccumulator::for_layouts(rows, cols, cfg.nu);
  const std::size_t D = rows.dim();
  std::vector<long> stamp(D, -1);
  std::vector<Eigen::Index> pos(D, 0);
  std::vector<std::vector<JacobianColumns<Interval>::Entry>> entries(chunk);
  std::vector<double> mod(D);

  for (std::size_t start = 0; start < cols.dim(); start += chunk) {
    const std::size_t cs = std::min(chunk, cols.dim() - start);
    std::vector<Eigen::Index> used;
    for (std::size_t jj = 0; jj < cs; ++jj) {
      auto& e = entries[jj];
      jc.column(start + jj, e);
      for (const auto& [r, v] : e) {
        if (stamp[r] != static_cast<long>(start)) {
          stamp[r] = static_cast<long>(start);
          pos[r] = static_cast<Eigen::Index>(used.size());
          used.push_back(static_cast<Eigen::Index>(r));
        }
      }
    }
    BallMatrix B(static_cast<Eigen::Index>(used.size()), static_cast<Eigen::Index>(cs), complex);
    for (std::size_t jj = 0; jj < cs; ++jj) {
      // Entries landing on the same row are summed before storage.
      std::vector<std::pair<std::size_t, CInterval>> merged;
      for (const auto& [r, v] : entries[jj]) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& m) { return m.first == r; });
        if (it == merged.end())
          merged.emplace_back(r, v);
        else
          it->second += v;
      }
      for (const auto& [r, v] : merged) B.set(pos[r], static_cast<Eigen::Index>(jj), v);
    }
    BallMatrix C;
    if (used.empty()) {
      C = BallMatrix(static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(cs), false);
    } else {
      C = rigorous_product(select_cols(A, used), B);
    }
    for (std::size_t jj = 0; jj < cs; ++jj) {
      const std::size_t j = start + jj;
      const long diag = square_index(rows, cols, j);
      const auto c = static_cast<Eigen::Index>(jj);
      for (std::size_t k = 0; k < D; ++k) {
        const auto r = static_cast<Eigen::Index>(k);
        const double p = (diag == static_cast<long>(k)) ? 1.0 : 0.0;
        const double re = p - C.re(r, c);
        const double im = C.is_real() ? 0.0 : C.im(r, c);
        double m = hypot_up(re, im);
        if (p != 0.0) m = up(m);
        mod[k] = C.is_thin() ? m : add_up(m, C.rad(r, c));
      }
      acc.add_column(j, mod.data());
    }
  }
  const Interval finite = acc.result();

  const Interval dn_norm = mult_operator_norm(jc.DN());
  const Interval df_norm = mult_operator_norm(jc.Df());
  const Interval ell(cfg.ell), L(cfg.L), nu(cfg.nu), rs(cfg.r_star);
  const double dnT = static_cast<double>(nT), dnC = static_cast<double>(nC);
  const Interval deriv_T = ell * ell * dn_norm / (Interval(dnT + 1.0) * Interval(dnT + data.problem.d - 1.0));
  const Interval deriv_C = L * (nu + Interval(1.0) / nu) * df_norm / Interval(4.0 * (dnC + 1.0));
  const Interval deriv = max(deriv_T, deriv_C);

  const Interval ext_w = Interval(2.0) / pow(nu, K * static_cast<int>(nC) + 2);
  const Interval taylor_ic = pow(rs, static_cast<int>(nT)) * max(rs, Interval(dnT + 1.0) / ell);
  const Interval alt_tail =
      L * df_norm / (pow(nu, static_cast<int>(nC) + 2) * (Interval(dnC + 2.0) * Interval(dnC + 2.0) - Interval(1.0)));
  const Interval ext = Interval(0.0, A_norm.hi) * max(ext_w, taylor_ic + alt_tail);

  if (terms) {
    terms->Z1_finite = finite;
    terms->Z1_deriv_tail = deriv;
    terms->Z1_ext_tail = ext;
    terms->DN_norm = dn_norm;
    terms->Df_norm = df_norm;
  }
  return Interval(0.0, (finite + deriv + ext).hi);
}

Interval compute_Z2(const ProofData& data, const XVector<double>& chi, const Interval& A_norm, double varrho,
                    BoundTerms* terms) {
  if (!(varrho > 0.0)) throw DomainError("varrho must be positive");
  const auto& cfg = data.cfg;
  const XVector<Interval> x = to_interval(resized(chi, cfg.nT(), cfg.nC()));
  std::vector<Interval> rv, rw;
  for (const auto& s : x.v) rv.emplace_back(add_up(norm(s).hi, varrho));
  for (const auto& s : x.w) rw.emplace_back(add_up(norm(s).hi, varrho));
  const Interval ell(cfg.ell), L(cfg.L), nu(cfg.nu);
  const Interval zN = ell * ell * data.N.d2_abs_norm(rv);
  const Interval zf = L * (Interval(1.0) + nu) / Interval(2.0) * data.f.d2_abs_norm(rw);
  if (terms) {
    terms->Z2_taylor = zN;
    terms->Z2_cheb = zf;
  }
  return Interval(0.0, ((Interval(0.0, A_norm.hi) + Interval(1.0)) * max(zN, zf)).hi);
}

double radii_poly(const Interval& Y, const Interval& Z1, const Interval& Z2, const Interval& a_gamma, double Ly,
                  const Interval& eta_norm, double rho) {
  const Interval aL = Interval(a_gamma.hi) * Interval(Ly);
  const Interval r(rho);
  const Interval p = Interval(Y.hi) + aL * Interval(eta_norm.hi) - (Interval(1.0) - Interval(Z1.hi) - aL) * r +
                     Interval(Z2.hi) / Interval(2.0) * r * r;
  return p.hi;
}

double contraction_rate(const Interval& Z1, const Interval& Z2, const Interval& a_gamma, double Ly, double rho) {
  return (Interval(a_gamma.hi) * Interval(Ly) + Interval(Z1.hi) + Interval(Z2.hi) * Interval(rho)).hi;
}

Interval solve_radii(const Interval& Y, const Interval& Z1, const Interval& Z2, const Interval& a_gamma, double Ly,
                     const Interval& eta_norm, double varrho) {
  const Interval aL = Interval(a_gamma.hi) * Interval(Ly);
  const Interval c = Interval(Y.hi) + aL * Interval(eta_norm.hi);
  const Interval b = Interval(1.0) - Interval(Z1.hi) - aL;
  if (!(b.lo > 0.0))
    throw Constraint45bFailed("1 - Z1 - |A(Gamma, Gamma Lambda)| Ly = " + to_decimal(b.lo) + " is not positive");
  const Interval disc = b * b - Interval(2.0) * Interval(Z2.hi) * c;
  if (!(disc.lo >= 0.0)) throw NegativeDiscriminant("discriminant lower bound " + to_decimal(disc.lo));

  // Smaller root in the cancellation-free form 2c / (b + sqrt(disc)).
  double rho = (Interval(2.0) * c / (b + sqrt(Interval(disc.lo)))).hi;
  bool ok = radii_poly(Y, Z1, Z2, a_gamma, Ly, eta_norm, rho) <= 0.0;
  for (int k = 0; !ok && k < 60; ++k) {
    rho = up(rho * (1.0 + std::ldexp(1.0, -52 + k)));
    ok = radii_poly(Y, Z1, Z2, a_gamma, Ly, eta_norm, rho) <= 0.0;
  }
  if (!ok) throw NegativeDiscriminant("no rho passes the radii inequality by substitution");
  const double rate = contraction_rate(Z1, Z2, a_gamma, Ly, rho);
  if (!(rate < 1.0)) throw Constraint45bFailed("contraction rate " + to_decimal(rate) + " at rho = " + to_decimal(rho));
  if (!(rho <= varrho))
    throw RhoExceedsVarrho("rho = " + to_decimal(rho) + " exceeds varrho = " + to_decimal(varrho));
  return Interval(rho);
}

bool check_symmetry(const XVector<double>& chi, const SpectralData& sd) {
  if (chi.eta.size() != sd.q()) return false;
  for (std::size_t i = 0; i < sd.q(); ++i) {
    const std::size_t p = sd.partner[i];
    if (p != i) {
      if (chi.eta[i] != std::conj(chi.eta[p])) return false;
    } else if (sd.Lambda[i].is_real() && sd.Gamma.is_real() && chi.eta[i].imag() != 0.0) {
      return false;
    }
  }
  for (const auto& v : chi.phi)
    if (!std::isfinite(v)) return false;
  return true;
}

Interval eta_norm(const XVector<double>& chi) {
  double m = 0.0;
  for (const auto& e : chi.eta) m = std::max(m, hypot_up(e.real(), e.imag()));
  return {0.0, m};
}

Interval c0_certificate(const Interval& rho, double Ly, const Interval& eta, const IntervalMatrix& Gamma) {
  const Interval g(op_norm_inf_upper(Gamma).hi);
  const Interval r(rho.hi);
  const Interval branch = g * (r + Interval(Ly) * (Interval(eta.hi) + r));
  return Interval(0.0, max(r, branch).hi);
}

}  // namespace radproof
