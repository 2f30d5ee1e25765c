#include "radproof/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace radproof {

namespace {

CInterval ball_hull(std::complex<double> z, double r) { return disk(z, r); }

double norm_inf(const CVector& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, z.mag());
  return m;
}

}  // namespace

EigenEnclosure verify_eigenpair(const IntervalMatrix& B, std::complex<double> lambda, Eigen::VectorXcd g,
                                double varrho) {
  const std::size_t q = B.rows();
  if (B.cols() != q || static_cast<std::size_t>(g.size()) != q) throw ArityMismatch("eigenpair dimensions");
  Eigen::Index k0 = 0;
  const double gnorm = g.cwiseAbs().maxCoeff(&k0);
  if (!(gnorm > 0.0) || !std::isfinite(gnorm)) throw DomainError("eigenvector seed is zero or not finite");
  const std::size_t k = static_cast<std::size_t>(k0);
  g /= g(k0);
  g(k0) = 1.0;

  const Eigen::MatrixXcd Bm = B.mid();
  const std::size_t n = q + 1;
  auto jacobian_mid = [&](std::complex<double> lam, const Eigen::VectorXcd& gv) {
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n, n);
    J(0, 1 + k0) = 1.0;
    J.block(1, 0, q, 1) = 2.0 * lam * gv;
    J.block(1, 1, q, q) = lam * lam * Eigen::MatrixXcd::Identity(q, q) - Bm;
    return J;
  };
  // A few Newton steps on the midpoint problem sharpen the seed.
  for (int it = 0; it < 8; ++it) {
    Eigen::VectorXcd F(n);
    F(0) = g(k0) - 1.0;
    F.tail(q) = lambda * lambda * g - Bm * g;
    const Eigen::VectorXcd dx = jacobian_mid(lambda, g).fullPivLu().solve(F);
    lambda -= dx(0);
    g -= dx.tail(q);
    if (dx.cwiseAbs().maxCoeff() < 1e-17) break;
  }
  g(k0) = 1.0;

  const Eigen::MatrixXcd Ainv = jacobian_mid(lambda, g).fullPivLu().inverse();
  if (!Ainv.allFinite()) throw ContractionFailed("eigen Jacobian is numerically singular");
  const IntervalMatrix A = IntervalMatrix::from_mid(Ainv);

  // Y = |A F(xbar)|.
  const CInterval lam(lambda);
  CVector gx(q);
  for (std::size_t i = 0; i < q; ++i) gx[i] = CInterval(g(static_cast<Eigen::Index>(i)));
  CVector F(n);
  F[0] = gx[k] - CInterval(1.0);
  const CVector Bg = B * gx;
  const CInterval lam2 = sqr(lam);
  for (std::size_t i = 0; i < q; ++i) F[1 + i] = lam2 * gx[i] - Bg[i];
  const double Y = norm_inf(A * F);

  // Z = sup over the ball of |I - A DF|, evaluated on its rectangular hull.
  const CInterval lb = ball_hull(lambda, varrho);
  IntervalMatrix DF(n, n);
  DF(0, 1 + k) = CInterval(1.0);
  const CInterval lb2 = sqr(lb);
  for (std::size_t i = 0; i < q; ++i) {
    const CInterval gi = ball_hull(g(static_cast<Eigen::Index>(i)), varrho);
    DF(1 + i, 0) = CInterval(2.0) * lb * gi;
    for (std::size_t j = 0; j < q; ++j) DF(1 + i, 1 + j) = -B(i, j);
    DF(1 + i, 1 + i) += lb2;
  }
  const double Z = op_norm_inf_upper(IntervalMatrix::identity(n) - A * DF).hi;
  if (!(Z < 1.0)) throw ContractionFailed("eigenpair contraction constant " + to_decimal(Z) + " is not below 1");
  const double rho = up(Y / down(1.0 - Z));
  if (!(rho <= varrho))
    throw ContractionFailed("eigenpair radius " + to_decimal(rho) + " exceeds " + to_decimal(varrho));

  EigenEnclosure out;
  out.lambda = disk(lambda, rho);
  out.g.resize(q);
  for (std::size_t i = 0; i < q; ++i) out.g[i] = i == k ? CInterval(1.0) : disk(g(static_cast<Eigen::Index>(i)), rho);
  out.radius = rho;
  out.Y = Y;
  out.Z = Z;
  return out;
}

bool SpectralData::is_real() const {
  return std::all_of(Lambda.begin(), Lambda.end(), [](const CInterval& z) { return z.is_real(); }) &&
         Gamma.is_real();
}

IntervalMatrix SpectralData::Lambda_matrix() const {
  IntervalMatrix m(q(), q());
  for (std::size_t i = 0; i < q(); ++i) m(i, i) = Lambda[i];
  return m;
}

IntervalMatrix SpectralData::Lambda_inv_matrix() const {
  IntervalMatrix m(q(), q());
  for (std::size_t i = 0; i < q(); ++i) m(i, i) = Lambda_inv[i];
  return m;
}

IntervalMatrix SpectralData::Gamma_Lambda() const { return Gamma * Lambda_matrix(); }

IntervalMatrix minus_DN(const EllipticProblem& p) {
  const PolynomialJet jet(p.N);
  const auto J = jet.jacobian(p.c);
  IntervalMatrix B(p.q, p.q);
  for (std::size_t i = 0; i < p.q; ++i)
    for (std::size_t j = 0; j < p.q; ++j) B(i, j) = CInterval(-J[i][j]);
  return B;
}

SpectralData build_spectral_data(const EllipticProblem& p, const SpectralOptions& opt) {
  return build_spectral_data(minus_DN(p), opt);
}

SpectralData build_spectral_data(const IntervalMatrix& B, const SpectralOptions& opt) {
  const std::size_t q = B.rows();
  if (B.cols() != q) throw ArityMismatch("-DN(c) must be square");
  const bool real_matrix = B.is_real();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(B.mid());
  if (es.info() != Eigen::Success) throw EigenvalueOnImaginaryAxis("numerical eigensolver failed");

  struct Seed {
    std::complex<double> lambda;
    Eigen::VectorXcd g;
  };
  std::vector<Seed> pairs;
  std::vector<Seed> reals;
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const std::complex<double> mu = es.eigenvalues()(k);
    const std::complex<double> lam = std::sqrt(mu);
    if (!(lam.real() > 1e-12 * std::sqrt(scale)))
      throw EigenvalueOnImaginaryAxis("eigenvalue " + to_decimal(mu.real()) + (mu.imag() < 0 ? "" : "+") +
                                      to_decimal(mu.imag()) + "i of -DN(c) has no root with positive real part");
    const bool is_real_mu = real_matrix && std::fabs(mu.imag()) <= 1e-12 * scale;
    if (is_real_mu)
      reals.push_back({lam, es.eigenvectors().col(k)});
    else if (!real_matrix || lam.imag() > 0.0)
      pairs.push_back({lam, es.eigenvectors().col(k)});
  }
  auto by_re = [](const Seed& a, const Seed& b) {
    return a.lambda.real() != b.lambda.real() ? a.lambda.real() < b.lambda.real() : a.lambda.imag() < b.lambda.imag();
  };
  std::sort(pairs.begin(), pairs.end(), by_re);
  std::sort(reals.begin(), reals.end(), by_re);
  if (real_matrix && 2 * pairs.size() + reals.size() != q)
    throw MultipleEigenvalue("could not pair the complex eigenvalues of -DN(c)");

  auto verify = [&](const Seed& s) {
    try {
      return verify_eigenpair(B, s.lambda, s.g, opt.varrho_eig);
    } catch (const ContractionFailed&) {
      return verify_eigenpair(B, s.lambda, s.g, opt.varrho_retry);
    }
  };

  SpectralData sd;
  sd.Lambda.reserve(q);
  std::vector<CVector> cols;
  for (const auto& s : pairs) {
    EigenEnclosure e = verify(s);
    if (real_matrix && !(e.lambda.im.lo > 0.0))
      throw MultipleEigenvalue("conjugate eigenvalue enclosure touches the real axis");
    const std::size_t i = sd.Lambda.size();
    sd.Lambda.push_back(e.lambda);
    cols.push_back(e.g);
    sd.partner.push_back(real_matrix ? i + 1 : i);
    sd.radii.push_back(e.radius);
    if (real_matrix) {
      sd.Lambda.push_back(conj(e.lambda));
      CVector gc(q);
      for (std::size_t k = 0; k < q; ++k) gc[k] = conj(e.g[k]);
      cols.push_back(gc);
      sd.partner.push_back(i);
      sd.radii.push_back(e.radius);
    }
  }
  for (const auto& s : reals) {
    Seed r = s;
    Eigen::Index kmax = 0;
    r.g.cwiseAbs().maxCoeff(&kmax);
    r.g /= r.g(kmax);
    r.lambda = {r.lambda.real(), 0.0};
    for (Eigen::Index k = 0; k < r.g.size(); ++k) r.g(k) = {r.g(k).real(), 0.0};
    EigenEnclosure e = verify(r);
    // The zero is unique in the ball and B is real, so it equals its own
    // conjugate: the imaginary parts vanish exactly.
    e.lambda.im = Interval(0.0);
    for (auto& z : e.g) z.im = Interval(0.0);
    sd.partner.push_back(sd.Lambda.size());
    sd.Lambda.push_back(e.lambda);
    cols.push_back(e.g);
    sd.radii.push_back(e.radius);
  }

  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j) {
      const auto& a = sd.Lambda[i];
      const auto& b = sd.Lambda[j];
      const bool overlap = a.re.lo <= b.re.hi && b.re.lo <= a.re.hi && a.im.lo <= b.im.hi && b.im.lo <= a.im.hi;
      if (overlap) throw MultipleEigenvalue("eigenvalue enclosures " + std::to_string(i + 1) + " and " +
                                            std::to_string(j + 1) + " overlap");
    }
  for (const auto& l : sd.Lambda)
    if (!(l.re.lo > 0.0)) throw EigenvalueOnImaginaryAxis("real part of an eigenvalue cannot be signed");

  sd.Gamma = IntervalMatrix(q, q);
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t i = 0; i < q; ++i) sd.Gamma(i, j) = cols[j][i];
  sd.Gamma_inv = inverse_enclosure(sd.Gamma);
  sd.Lambda_inv.resize(q);
  for (std::size_t i = 0; i < q; ++i) sd.Lambda_inv[i] = CInterval(1.0) / sd.Lambda[i];

  const std::size_t n = 1 + 2 * q;
  const IntervalMatrix GL = sd.Gamma_Lambda();
  const IntervalMatrix LiGi = sd.Lambda_inv_matrix() * sd.Gamma_inv;
  const CInterval half(0.5);
  sd.M = IntervalMatrix(n, n);
  sd.M_inv = IntervalMatrix(n, n);
  sd.M(0, 0) = CInterval(1.0);
  sd.M_inv(0, 0) = CInterval(1.0);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      sd.M(1 + i, 1 + j) = sd.Gamma(i, j);
      sd.M(1 + i, 1 + q + j) = sd.Gamma(i, j);
      sd.M(1 + q + i, 1 + j) = -GL(i, j);
      sd.M(1 + q + i, 1 + q + j) = GL(i, j);
      sd.M_inv(1 + i, 1 + j) = half * sd.Gamma_inv(i, j);
      sd.M_inv(1 + i, 1 + q + j) = -(half * LiGi(i, j));
      sd.M_inv(1 + q + i, 1 + j) = half * sd.Gamma_inv(i, j);
      sd.M_inv(1 + q + i, 1 + q + j) = half * LiGi(i, j);
    }
  return sd;
}

Interval lambda_hat(const SpectralData& sd) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& l : sd.Lambda) {
    lo = std::min(lo, l.re.lo);
    hi = std::min(hi, l.re.hi);
  }
  return {lo, hi};
}

}  // namespace radproof
