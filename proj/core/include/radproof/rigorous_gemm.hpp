#pragma once

#include <Eigen/Dense>

#include "radproof/interval.hpp"

namespace radproof {

/// Complex matrix in midpoint-radius form: every entry lies in the closed disk
/// of radius `rad(i,j)` around `re(i,j) + i·im(i,j)`. An empty `im` means the
/// imaginary midpoint is zero; an empty `rad` means the radius is zero.
struct BallMatrix {
  Eigen::MatrixXd re;
  Eigen::MatrixXd im;
  Eigen::MatrixXd rad;

  BallMatrix() = default;
  BallMatrix(Eigen::Index rows, Eigen::Index cols, bool complex);

  Eigen::Index rows() const { return re.rows(); }
  Eigen::Index cols() const { return re.cols(); }
  bool is_real() const { return im.size() == 0; }
  bool is_thin() const { return rad.size() == 0; }

  /// Stores an enclosure of x at (i, j).
  void set(Eigen::Index i, Eigen::Index j, const Interval& x);
  void set(Eigen::Index i, Eigen::Index j, const CInterval& z);
  /// Upper bound on |entry| over the disk.
  double mag(Eigen::Index i, Eigen::Index j) const;
  CInterval entry(Eigen::Index i, Eigen::Index j) const;

  BallMatrix middle_cols(Eigen::Index start, Eigen::Index count) const;
};

/// Thin (radius-free) complex matrix together with an upward rounded modulus.
struct ThinMatrix {
  Eigen::MatrixXd re;
  Eigen::MatrixXd im;   ///< empty when the matrix is real
  Eigen::MatrixXd mod;  ///< entrywise upper bound of |re + i im|

  ThinMatrix() = default;
  explicit ThinMatrix(const Eigen::MatrixXcd& m);
  explicit ThinMatrix(Eigen::MatrixXd m);
  Eigen::Index rows() const { return re.rows(); }
  Eigen::Index cols() const { return re.cols(); }
  bool is_real() const { return im.size() == 0; }
};

/// Rigorous enclosure of A·B. The midpoint is a floating-point product; the
/// radius adds the a priori rounding bound gamma_n |A||B| and the underflow
/// term, evaluated with a second product of magnitudes and rounded upward.
BallMatrix rigorous_product(const ThinMatrix& a, const BallMatrix& b);

/// gamma_n = n u / (1 - n u) rounded upward, with u = 2^-53.
double gamma_bound(Eigen::Index n);

}  // namespace radproof
