#include "radproof/rigorous_gemm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace radproof {

namespace {

constexpr double kUnit = 0x1p-53;
constexpr double kEta = std::numeric_limits<double>::denorm_min();

double hypot_up(double x, double y) {
  x = std::fabs(x);
  y = std::fabs(y);
  if (y == 0.0) return x;
  if (x == 0.0) return y;
  return up(std::sqrt(up(up(x * x) + up(y * y))));
}

}  // namespace

double gamma_bound(Eigen::Index n) {
  const double nu = static_cast<double>(n) * kUnit;
  return up(nu / down(1.0 - nu));
}

BallMatrix::BallMatrix(Eigen::Index rows, Eigen::Index cols, bool complex)
    : re(Eigen::MatrixXd::Zero(rows, cols)), rad(Eigen::MatrixXd::Zero(rows, cols)) {
  if (complex) im = Eigen::MatrixXd::Zero(rows, cols);
}

void BallMatrix::set(Eigen::Index i, Eigen::Index j, const Interval& x) {
  re(i, j) = x.mid();
  if (!is_real()) im(i, j) = 0.0;
  rad(i, j) = x.is_point() ? 0.0 : x.rad();
}

void BallMatrix::set(Eigen::Index i, Eigen::Index j, const CInterval& z) {
  if (is_real() && !z.is_real()) throw ArityMismatch("complex entry stored in a real ball matrix");
  re(i, j) = z.re.mid();
  if (!is_real()) im(i, j) = z.im.mid();
  rad(i, j) = hypot_up(z.re.is_point() ? 0.0 : z.re.rad(), z.im.is_point() ? 0.0 : z.im.rad());
}

double BallMatrix::mag(Eigen::Index i, Eigen::Index j) const {
  const double m = is_real() ? std::fabs(re(i, j)) : hypot_up(re(i, j), im(i, j));
  return is_thin() ? m : up(m + rad(i, j));
}

CInterval BallMatrix::entry(Eigen::Index i, Eigen::Index j) const {
  const double r = is_thin() ? 0.0 : rad(i, j);
  return disk({re(i, j), is_real() ? 0.0 : im(i, j)}, r);
}

BallMatrix BallMatrix::middle_cols(Eigen::Index start, Eigen::Index count) const {
  BallMatrix out;
  out.re = re.middleCols(start, count);
  if (!is_real()) out.im = im.middleCols(start, count);
  if (!is_thin()) out.rad = rad.middleCols(start, count);
  return out;
}

ThinMatrix::ThinMatrix(const Eigen::MatrixXcd& m) : re(m.real()) {
  if ((m.imag().array() != 0.0).any()) im = m.imag();
  mod.resize(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) mod(i, j) = hypot_up(re(i, j), is_real() ? 0.0 : im(i, j));
}

ThinMatrix::ThinMatrix(Eigen::MatrixXd m) : re(std::move(m)) { mod = re.cwiseAbs(); }

BallMatrix rigorous_product(const ThinMatrix& a, const BallMatrix& b) {
  if (a.cols() != b.rows()) throw ArityMismatch("rigorous product dimensions");
  const Eigen::Index n = a.cols();
  const bool complex = !a.is_real() || !b.is_real();
  BallMatrix c;
  c.re.noalias() = a.re * b.re;
  if (!b.is_real() && !a.is_real()) c.re.noalias() -= a.im * b.im;
  if (complex) {
    c.im = Eigen::MatrixXd::Zero(a.rows(), b.cols());
    if (!b.is_real()) c.im.noalias() += a.re * b.im;
    if (!a.is_real()) c.im.noalias() += a.im * b.re;
  }

  // Real and imaginary parts are sums of at most 2n products, so the disk
  // radius of the rounding error is at most 2 gamma_{2n} |A||B_mid|.
  // W = 2 gamma_{2n+2} |B_mid| + rad(B), rounded upward entrywise.
  const double g = gamma_bound(2 * n + 2);
  const double g2 = up(2.0 * g);
  Eigen::MatrixXd w(b.rows(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j)
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      const double m = b.is_real() ? std::fabs(b.re(i, j)) : hypot_up(b.re(i, j), b.im(i, j));
      double v = up(g2 * m);
      if (!b.is_thin()) v = up(v + b.rad(i, j));
      w(i, j) = v;
    }
  Eigen::MatrixXd s;
  s.noalias() = a.mod * w;

  // The computed magnitude product underestimates by at most gamma_n; the
  // midpoint sums add at most u per entry.
  const double inflate = up(1.0 + up(2.0 * g));
  const double floor_term = up(5.0 * static_cast<double>(n + 1) * kEta);
  const double u2 = 2.0 * kUnit;
  c.rad.resize(a.rows(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      double r = up(up(s(i, j) + floor_term) * inflate);
      double mid = std::fabs(c.re(i, j));
      if (complex) mid = up(mid + std::fabs(c.im(i, j)));
      r = up(r + up(u2 * mid));
      c.rad(i, j) = r;
    }
  return c;
}

}  // namespace radproof
