#pragma once

#include <string>
#include <utility>
#include <vector>

#include "radproof/bvp.hpp"
#include "radproof/kantorovich.hpp"
#include "radproof/manifold.hpp"

namespace radproof {

/// Outcome of one proof attempt. A failing attempt keeps whatever was
/// computed before the failing stage.
struct ProofCertificate {
  std::string version;
  std::string problem;
  std::string config_json;  ///< echo of the run configuration
  ProofConfig cfg;

  std::vector<CInterval> Lambda;
  Interval lambda_hat;
  ManifoldCert manifold;

  double newton_residual = 0.0;
  int newton_iterations = 0;
  bool symmetric = false;

  Interval Y;
  Interval Z1;
  Interval Z2;
  Interval A_norm;
  Interval a_gamma_norm;
  Interval eta_norm;
  Interval rho_bar;
  Interval c0_bound;
  BoundTerms terms;

  bool passed = false;
  std::string failure_stage;
  std::string failure_kind;
  std::string failure_message;
  double wall_time = 0.0;
  std::vector<std::pair<std::string, double>> stage_times;
};

/// JSON with every interval as a pair of decimal strings [inf, sup].
std::string to_json(const ProofCertificate& c);
/// Inverse of to_json; interval endpoints round-trip exactly.
ProofCertificate certificate_from_json(const std::string& text);

/// Plain-text summary for terminals and logs.
std::string render_report(const ProofCertificate& c);

}  // namespace radproof
