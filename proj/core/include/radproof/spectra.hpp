#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "radproof/interval_matrix.hpp"
#include "radproof/problem.hpp"

namespace radproof {

struct EigenEnclosure {
  CInterval lambda;
  CVector g;            ///< normalized so that g_1 = 1
  double radius = 0.0;  ///< certified distance to the seed
  double Y = 0.0;
  double Z = 0.0;
};

/// Encloses a zero (lambda, g) of F(lambda, g) = (g_k - 1, lambda^2 g - B g)
/// near the seed, where B = -DN(c) and k indexes the largest seed component,
/// which is rescaled to 1.
/// Throws ContractionFailed when Z >= 1 or the radius exceeds `varrho`.
EigenEnclosure verify_eigenpair(const IntervalMatrix& B, std::complex<double> lambda, Eigen::VectorXcd g,
                                double varrho);

struct SpectralData {
  CVector Lambda;  ///< diagonal of Lambda, Re > 0
  IntervalMatrix Gamma;
  IntervalMatrix Gamma_inv;
  CVector Lambda_inv;
  IntervalMatrix M;
  IntervalMatrix M_inv;
  /// partner[i] = index of the conjugate eigenpair, or i when real.
  std::vector<std::size_t> partner;
  std::vector<double> radii;

  std::size_t q() const { return Lambda.size(); }
  bool is_real() const;
  IntervalMatrix Lambda_matrix() const;
  IntervalMatrix Lambda_inv_matrix() const;
  IntervalMatrix Gamma_Lambda() const;
};

struct SpectralOptions {
  double varrho_eig = 1e-10;
  double varrho_retry = 1e-6;
};

/// Verified eigenstructure of -DN(c). Conjugate pairs come first, each
/// eigenvalue with positive imaginary part followed by its conjugate.
SpectralData build_spectral_data(const EllipticProblem& p, const SpectralOptions& opt = {});

/// Same, starting from an explicit matrix B = -DN(c).
SpectralData build_spectral_data(const IntervalMatrix& B, const SpectralOptions& opt = {});

/// Enclosure of min_i Re(lambda_i); its lower endpoint is the sound value.
Interval lambda_hat(const SpectralData& sd);

/// -DN(c) as an interval matrix.
IntervalMatrix minus_DN(const EllipticProblem& p);

}  // namespace radproof
