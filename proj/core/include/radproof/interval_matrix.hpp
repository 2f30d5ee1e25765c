#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "radproof/interval.hpp"

namespace radproof {

using CVector = std::vector<CInterval>;

/// Small dense matrix of complex intervals (row-major).
class IntervalMatrix {
public:
  IntervalMatrix() = default;
  IntervalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntervalMatrix identity(std::size_t n);
  static IntervalMatrix from_mid(const Eigen::MatrixXcd& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  CInterval& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const CInterval& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Eigen::MatrixXcd mid() const;
  bool is_real() const;
  CVector column(std::size_t j) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<CInterval> data_;
};

IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator*(const CInterval& s, const IntervalMatrix& a);
CVector operator*(const IntervalMatrix& a, const CVector& x);

/// Upper bound of max_i |v_i|.
Interval norm_inf_upper(const CVector& v);
/// Upper bound of the induced infinity norm (max row sum of moduli).
Interval op_norm_inf_upper(const IntervalMatrix& a);
/// Enclosure of the inverse of every point matrix in `a`.
/// Throws SingularEnclosure when the residual test cannot certify it.
IntervalMatrix inverse_enclosure(const IntervalMatrix& a);

}  // namespace radproof
