#pragma once

#include <complex>
#include <utility>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "radproof/polynomial.hpp"
#include "radproof/problem.hpp"
#include "radproof/rigorous_gemm.hpp"
#include "radproof/sequence.hpp"
#include "radproof/spectra.hpp"

namespace radproof {

/// Geometry and truncation of one proof.
struct ProofConfig {
  double ell = 1.0;
  double r_star = 0.5;
  double L = 1.0;
  double nu = 1.01;
  std::size_t nT_num = 20;
  std::size_t nT_pad = 0;
  std::size_t nC_num = 20;
  std::size_t nC_pad = 0;
  double varrho = 1e-6;

  std::size_t nT() const { return nT_num + nT_pad; }
  std::size_t nC() const { return nC_num + nC_pad; }
  double r0() const { return ell * r_star + L; }
  /// Checks positivity, nT >= 2, nC >= 1, nu > 1 and r_star <= e^{-1/(nT+1)}.
  void validate() const;
};

/// Index map of truncated vectors (eta, phi, v, w). Rows of F use the same
/// map with (boundary block 1, boundary block 2, g, h) in place of
/// (eta, phi, v, w). `w_len` coefficients are stored per Chebyshev component.
struct Layout {
  enum class Kind { Eta, Phi, V, W };
  struct Slot {
    Kind kind;
    std::size_t comp;
    std::size_t index;
  };

  std::size_t q = 1;
  std::size_t nT = 0;
  std::size_t nC = 0;
  std::size_t w_len = 1;

  Layout() = default;
  Layout(std::size_t q_, std::size_t nT_, std::size_t nC_) : q(q_), nT(nT_), nC(nC_), w_len(nC_ + 1) {}
  /// Columns of the Chebyshev blocks run up to K nC + 1.
  static Layout extended(std::size_t q, std::size_t nT, std::size_t nC, int K);

  std::size_t dim() const { return 2 * q + q * (nT + 1) + (1 + 2 * q) * w_len; }
  std::size_t eta(std::size_t i) const { return i; }
  std::size_t phi(std::size_t i) const { return q + i; }
  std::size_t v(std::size_t i, std::size_t n) const { return 2 * q + i * (nT + 1) + n; }
  std::size_t w(std::size_t k, std::size_t n) const { return 2 * q + q * (nT + 1) + k * w_len + n; }
  Slot locate(std::size_t idx) const;

  /// Norm blocks: each eta_i and phi_i alone, each v_i, each w_k.
  std::size_t num_blocks() const { return 5 * q + 1; }
  std::size_t block(std::size_t idx) const;
  /// Enclosures of the norm weights (1, or 2 nu^n inside Chebyshev blocks).
  std::vector<Interval> weights(double nu) const;
};

/// chi = (eta, phi, v, w) with real phi, v, w and complex eta.
template <class R> struct XVector {
  using C = typename scalar_traits<R>::complex;
  std::vector<C> eta;
  std::vector<R> phi;
  std::vector<TaylorSeq<R>> v;
  std::vector<ChebSeq<R>> w;
};

/// Residual blocks of F(chi; 0): boundary rows, Taylor rows g, Chebyshev rows h.
template <class R> struct FVector {
  using C = typename scalar_traits<R>::complex;
  std::vector<C> bnd1;
  std::vector<C> bnd2;
  std::vector<TaylorSeq<R>> g;
  std::vector<ChebSeq<R>> h;
};

/// Problem constants needed by F, in the chosen carrier.
struct ProofData {
  EllipticProblem problem;
  PolynomialJet N;
  PolynomialJet f;
  SpectralData spectral;
  IntervalMatrix GL;  ///< Gamma Lambda
  ProofConfig cfg;

  ProofData(EllipticProblem p, SpectralData sd, ProofConfig cfg);
  std::size_t q() const { return problem.q; }
  int K() const { return problem.N.degree(); }
};

/// Truncates / zero-pads every sequence to the given orders.
template <class R> XVector<R> resized(const XVector<R>& x, std::size_t nT, std::size_t nC);

/// Converts a floating-point approximation into thin intervals.
XVector<Interval> to_interval(const XVector<double>& x);

/// Flattening in the layout order. Complex entries keep their imaginary
/// part; real blocks are stored with zero imaginary part.
Eigen::VectorXcd flatten(const XVector<double>& x, const Layout& lay);
XVector<double> unflatten(const Eigen::VectorXcd& y, const Layout& lay, double nu);
Eigen::VectorXcd flatten(const FVector<double>& f, const Layout& lay);

/// F(chi; 0) truncated to the orders (nT, nC). `full_N`/`full_f` receive
/// the untruncated N(v) and f(w) when non-null.
template <class R>
FVector<R> evaluate_F(const ProofData& data, const XVector<R>& chi, std::size_t nT, std::size_t nC,
                      std::vector<TaylorSeq<R>>* full_N = nullptr, std::vector<ChebSeq<R>>* full_f = nullptr);

/// Taylor block alone: g_0 = v_0 - phi, g_1 = v_1,
/// g_n = n(n+d-2) v_n + ell^2 N(v)_{n-2}.
template <class R>
std::vector<TaylorSeq<R>> taylor_block_g(const ProofData& data, const XVector<R>& chi, std::size_t nT);

/// Chebyshev block alone.
template <class R>
std::vector<ChebSeq<R>> cheb_block_h(const ProofData& data, const XVector<R>& chi, std::size_t nC);

/// Boundary rows: w2(1) - c - Gamma eta and w3(1) + Gamma Lambda eta.
template <class R>
std::pair<std::vector<typename scalar_traits<R>::complex>, std::vector<typename scalar_traits<R>::complex>>
boundary_rows(const ProofData& data, const XVector<R>& chi);

/// Column-by-column access to DF(chi; 0) with rows truncated to `rows` and
/// columns indexed by `cols` (which may extend the Chebyshev blocks).
template <class R> class JacobianColumns {
public:
  using C = typename scalar_traits<R>::complex;

  JacobianColumns(const ProofData& data, const XVector<R>& chi, Layout rows, Layout cols);

  const Layout& rows() const { return rows_; }
  const Layout& cols() const { return cols_; }
  bool is_complex_column(std::size_t col) const { return cols_.locate(col).kind == Layout::Kind::Eta; }

  using Entry = std::pair<std::size_t, C>;
  /// Replaces `out` with the structurally nonzero entries (row, value) of
  /// column `col`. A row may appear more than once; entries add up.
  void column(std::size_t col, std::vector<Entry>& out) const;

  const std::vector<std::vector<TaylorSeq<R>>>& DN() const { return dn_; }
  const std::vector<std::vector<ChebSeq<R>>>& Df() const { return df_; }

private:
  template <class RealSink, class ComplexSink>
  void visit(std::size_t col, RealSink&& real_sink, ComplexSink&& complex_sink) const;
  R cheb_mult(std::size_t k, std::size_t j, std::size_t m, std::size_t p) const;
  R alt_row(std::size_t k, std::size_t j, std::size_t p) const;

  const ProofData& data_;
  Layout rows_;
  Layout cols_;
  std::vector<std::vector<TaylorSeq<R>>> dn_;
  std::vector<std::vector<ChebSeq<R>>> df_;
  std::vector<R> alt_;     ///< 1, -1/2, -2 (-1)^m / (m^2 - 1)
  std::vector<R> rpow_;    ///< r_*^m
  std::vector<C> gamma_;   ///< row-major Gamma
  std::vector<C> gl_;      ///< row-major Gamma Lambda
  R ell2_;
  R L_;
  R ell_r_;
  int d_;
};

/// Dense floating-point Jacobian on the square truncation `lay`.
Eigen::MatrixXcd assemble_DF(const ProofData& data, const XVector<double>& chi, const Layout& lay);

/// Dense Jacobian with interval entries: real columns go to `real`, eta
/// columns to `eta_cols` (complex).
struct IntervalJacobian {
  BallMatrix real;      ///< all columns except eta (eta columns left zero)
  BallMatrix eta_cols;  ///< rows x q, complex
};

struct NewtonResult {
  XVector<double> chi;
  double residual = 0.0;
  int iterations = 0;
};

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 50;
  int stall_limit = 3;
};

/// Floating-point Newton on F at the numerical orders, symmetrized after
/// every step. Throws NewtonDiverged.
NewtonResult newton_refine(const ProofData& data, XVector<double> chi0, const NewtonOptions& opt = {});

/// Sup-norm of F at the numerical orders.
double residual_sup(const ProofData& data, const XVector<double>& chi);

/// Numerical inverse of the square truncated Jacobian at (nT, nC).
/// Throws SingularTruncatedJacobian.
Eigen::MatrixXcd build_A(const ProofData& data, const XVector<double>& chi);

/// LU inverse with a reciprocal-condition check.
Eigen::MatrixXcd numerical_inverse(const Eigen::MatrixXcd& J);

/// Projects eta onto the S0-fixed set: conjugate pairs averaged, real
/// eigen-directions made real.
void symmetrize(XVector<double>& chi, const SpectralData& sd);

}  // namespace radproof
