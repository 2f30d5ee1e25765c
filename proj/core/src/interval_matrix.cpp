#include "radproof/interval_matrix.hpp"

#include <algorithm>

namespace radproof {

IntervalMatrix IntervalMatrix::identity(std::size_t n) {
  IntervalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CInterval(1.0);
  return m;
}

IntervalMatrix IntervalMatrix::from_mid(const Eigen::MatrixXcd& m) {
  IntervalMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = CInterval(m(i, j));
  return r;
}

Eigen::MatrixXcd IntervalMatrix::mid() const {
  Eigen::MatrixXcd m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).mid();
  return m;
}

bool IntervalMatrix::is_real() const {
  return std::all_of(data_.begin(), data_.end(), [](const CInterval& z) { return z.is_real(); });
}

CVector IntervalMatrix::column(std::size_t j) const {
  CVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b) {
  if (a.cols() != b.rows()) throw ArityMismatch("matrix product dimensions");
  IntervalMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      CInterval s;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArityMismatch("matrix sum dimensions");
  IntervalMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArityMismatch("matrix difference dimensions");
  IntervalMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

IntervalMatrix operator*(const CInterval& s, const IntervalMatrix& a) {
  IntervalMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

CVector operator*(const IntervalMatrix& a, const CVector& x) {
  if (a.cols() != x.size()) throw ArityMismatch("matrix-vector dimensions");
  CVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    CInterval s;
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
    y[i] = s;
  }
  return y;
}

Interval norm_inf_upper(const CVector& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, z.mag());
  return {0.0, m};
}

Interval op_norm_inf_upper(const IntervalMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s = add_up(s, a(i, j).mag());
    best = std::max(best, s);
  }
  return {0.0, best};
}

IntervalMatrix inverse_enclosure(const IntervalMatrix& a) {
  if (a.rows() != a.cols()) throw ArityMismatch("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  const Eigen::MatrixXcd m = a.mid();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  if (!lu.isInvertible()) throw SingularEnclosure("midpoint matrix is numerically singular");
  const Eigen::MatrixXcd r = lu.inverse();
  if (!r.allFinite()) throw SingularEnclosure("numerical inverse is not finite");
  const IntervalMatrix R = IntervalMatrix::from_mid(r);
  // A^{-1} = (I - E)^{-1} R with E = I - R A, so |A^{-1} - R| <= |E||R| / (1 - |E|).
  const IntervalMatrix E = IntervalMatrix::identity(n) - R * a;
  const double e = op_norm_inf_upper(E).hi;
  if (!(e < 1.0)) throw SingularEnclosure("residual norm " + to_decimal(e) + " is not below 1");
  const double rn = op_norm_inf_upper(R).hi;
  const double delta = up(up(e * rn) / down(1.0 - e));
  IntervalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = disk(r(i, j), delta);
  return out;
}

}  // namespace radproof
