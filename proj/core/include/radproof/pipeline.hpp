#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "radproof/bvp.hpp"
#include "radproof/certificate.hpp"
#include "radproof/problem.hpp"
#include "radproof/spectra.hpp"

namespace radproof {

/// Sampled numerical solution u(r) on [0, r0], one row per radius.
struct SeedProfile {
  std::vector<double> r;
  std::vector<std::vector<double>> u;  ///< u[k][i] = u_i(r[k])

  std::size_t q() const { return u.empty() ? 0 : u.front().size(); }
  /// Checks that r is strictly increasing and every row has q entries.
  void validate() const;
};

std::string seed_to_json(const SeedProfile& s);
SeedProfile seed_from_json(const std::string& text);

struct SeedSpec {
  std::string mode = "shoot";  ///< "shoot" or "samples"
  std::string path;            ///< samples file, relative to the config
  double phi_lo = 0.0;
  double phi_hi = 0.0;
  int zeros = 0;  ///< number of sign changes of u - c for shooting
  std::size_t samples = 4001;
};

struct RunConfig {
  EllipticProblem problem;
  ProofConfig proof;
  double Lx = 1.0;
  std::optional<double> Ly;      ///< empty means search
  std::optional<double> varrho;  ///< empty means automatic
  SeedSpec seed;
  NewtonOptions newton;
  std::string source_json;
  std::filesystem::path base_dir;

  double r0() const { return proof.r0(); }
};

/// Parses a run configuration. Problem parameters accept decimal strings,
/// rationals "p/q" and "sqrt(x)"; geometry values are read as doubles.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// Shooting on u(0) for q = 1: adaptive Runge-Kutta from a Taylor start,
/// bisection on whether u - c changes sign more than `zeros` times before
/// u turns away from c. Throws NoSignChange.
SeedProfile shoot_seed(const EllipticProblem& p, double r0, double phi_lo, double phi_hi, int zeros = 0,
                       std::size_t samples = 4001);

/// Exact coefficients of 1/r on [ell r_*, r0] in the Chebyshev convention.
std::vector<double> inverse_radius_coefficients(double ell_r, double L, std::size_t degree);

/// Initial approximation at the numerical orders: Taylor coefficients by the
/// forward recurrence from u(0), Chebyshev coefficients by collocation of
/// the seed interpolant (exact ones for 1/r), eta from u(r0) = c + Gamma eta.
/// Throws InterpolationIllConditioned.
XVector<double> fit_series(const SeedProfile& seed, const EllipticProblem& p, const SpectralData& sd,
                           const ProofConfig& cfg);

/// Approximate profile and its region: "taylor", "cheb" or "tail".
struct ProfilePoint {
  double r;
  std::vector<double> u;
  std::string region;
};
std::vector<ProfilePoint> evaluate_profile(const XVector<double>& chi, const EllipticProblem& p,
                                           const SpectralData& sd, const ProofConfig& cfg);
std::string profile_to_csv(const std::vector<ProfilePoint>& pts);

struct ProofOutcome {
  ProofCertificate cert;
  XVector<double> chi;
  std::optional<SpectralData> spectral;
};

using LogFn = std::function<void(const std::string&)>;

/// seed, fit, spectral data, Newton, manifold chart, A, bounds, radii and
/// the C0 bound. Failures are rethrown as StageError after `out.cert`
/// records them.
void run_proof(const RunConfig& cfg, ProofOutcome& out, const LogFn& log = {});

/// Spectral stage alone.
ProofCertificate run_eigen_only(const RunConfig& cfg);

/// Seed according to the configuration (shooting or samples file).
SeedProfile make_seed(const RunConfig& cfg);

std::string library_version();

}  // namespace radproof
