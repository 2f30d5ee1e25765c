#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "radproof/bvp.hpp"
#include "radproof/manifold.hpp"
#include "radproof/rigorous_gemm.hpp"

namespace radproof {

/// Induced norm on a product space normed by the max over blocks of weighted
/// l1 block norms. Columns are fed one at a time as entrywise upper bounds of
/// |T_kj|; the result is
///   max_I sum_b max_{j in b} (sum_{k in I} w_k |T_kj|) / w_j.
class BlockNormAccumulator {
public:
  /// `row_weight` are upper bounds, `col_weight` lower bounds.
  BlockNormAccumulator(std::vector<std::size_t> row_block, std::size_t n_row_blocks, std::vector<double> row_weight,
                       std::vector<std::size_t> col_block, std::size_t n_col_blocks, std::vector<double> col_weight);
  static BlockNormAccumulator for_layouts(const Layout& rows, const Layout& cols, double nu);

  std::size_t rows() const { return row_block_.size(); }
  std::size_t cols() const { return col_block_.size(); }

  /// `mod[k]` bounds |T_kj| for every row k.
  void add_column(std::size_t j, const double* mod);
  /// Sparse variant: only rows listed in `row_idx` are nonzero.
  void add_column(std::size_t j, const std::vector<std::size_t>& row_idx, const double* mod);
  Interval result() const;

private:
  std::vector<std::size_t> row_block_;
  std::size_t n_row_blocks_;
  std::vector<double> row_weight_;
  std::vector<std::size_t> col_block_;
  std::size_t n_col_blocks_;
  std::vector<double> col_weight_;
  std::vector<double> acc_;  // n_row_blocks x n_col_blocks
  std::vector<double> scratch_;
};

/// Block-weighted operator norm of a matrix of upper moduli.
Interval weighted_block_opnorm(const Eigen::MatrixXd& mod, const Layout& rows, const Layout& cols, double nu);

/// Max over blocks of the weighted l1 norm of a vector of upper moduli.
Interval weighted_norm(const Eigen::VectorXd& mod, const Layout& lay, double nu);

/// Entrywise upper bound of |mid| + rad.
Eigen::MatrixXd ball_magnitude(const BallMatrix& b);

/// Individual summands, kept for reporting.
struct BoundTerms {
  Interval Y_finite;
  Interval Y_tail_taylor;
  Interval Y_tail_cheb;
  Interval Z1_finite;
  Interval Z1_deriv_tail;
  Interval Z1_ext_tail;
  Interval DN_norm;
  Interval Df_norm;
  Interval Z2_taylor;
  Interval Z2_cheb;
};

/// |A| on the square truncation.
Interval operator_norm_A(const ThinMatrix& A, const ProofData& data);

/// |A (Gamma, Gamma Lambda, 0, 0)| from C^q (sup norm) into X.
Interval a_gamma_norm(const ThinMatrix& A, const ProofData& data);

/// Residual bound: |A pi F(chi)| plus the two truncation tails.
Interval compute_Y(const ProofData& data, const XVector<double>& chi, const ThinMatrix& A, BoundTerms* terms = nullptr);

/// Linearization defect: the finite block on the extended Chebyshev range,
/// the derivative tails and the extension tail scaled by |A|.
Interval compute_Z1(const ProofData& data, const XVector<double>& chi, const ThinMatrix& A, const Interval& A_norm,
                    BoundTerms* terms = nullptr, std::size_t chunk = 256);

/// Second-derivative bound on the ball of radius varrho.
Interval compute_Z2(const ProofData& data, const XVector<double>& chi, const Interval& A_norm, double varrho,
                    BoundTerms* terms = nullptr);

/// Smallest rho satisfying the quadratic radii inequality, re-verified by
/// substitution, with the strict contraction check and rho <= varrho.
/// Throws NegativeDiscriminant, Constraint45bFailed or RhoExceedsVarrho.
Interval solve_radii(const Interval& Y, const Interval& Z1, const Interval& Z2, const Interval& a_gamma, double Ly,
                     const Interval& eta_norm, double varrho);

/// Left-hand sides of the two radii inequalities at rho (upper endpoints).
double radii_poly(const Interval& Y, const Interval& Z1, const Interval& Z2, const Interval& a_gamma, double Ly,
                  const Interval& eta_norm, double rho);
double contraction_rate(const Interval& Z1, const Interval& Z2, const Interval& a_gamma, double Ly, double rho);

/// True iff chi is fixed by the conjugation symmetry: eta pairwise conjugate
/// under the eigenpair pairing and real on real eigen-directions.
bool check_symmetry(const XVector<double>& chi, const SpectralData& sd);

/// Upper bound of max_i |eta_i|.
Interval eta_norm(const XVector<double>& chi);

/// max{rho, |Gamma| (rho + Ly (|eta| + rho))}.
Interval c0_certificate(const Interval& rho, double Ly, const Interval& eta_norm, const IntervalMatrix& Gamma);

}  // namespace radproof
