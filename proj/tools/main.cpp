#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "radproof/pipeline.hpp"

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw radproof::ConfigError("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw radproof::ConfigError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int prove(const std::string& config, bool eigen_only, const std::string& profile, const std::string& cert_path,
          bool quiet) {
  const radproof::RunConfig cfg = radproof::load_run_config(config);
  radproof::ProofOutcome out;
  if (eigen_only) {
    try {
      out.cert = radproof::run_eigen_only(cfg);
    } catch (const radproof::StageError& e) {
      out.cert.problem = cfg.problem.name;
      out.cert.cfg = cfg.proof;
      out.cert.failure_stage = e.stage();
      out.cert.failure_kind = e.kind();
      out.cert.failure_message = e.detail();
    }
  } else {
    auto log = [quiet](const std::string& s) {
      if (!quiet) std::cerr << "  " << s << "\n";
    };
    try {
      radproof::run_proof(cfg, out, log);
    } catch (const radproof::StageError& e) {
      std::cerr << e.what() << "\n";
    }
  }
  if (!cert_path.empty()) write_text(cert_path, radproof::to_json(out.cert));
  if (!profile.empty() && out.spectral && !out.chi.v.empty())
    write_text(profile, radproof::profile_to_csv(radproof::evaluate_profile(out.chi, cfg.problem, *out.spectral,
                                                                           out.cert.cfg)));
  std::cout << radproof::render_report(out.cert);
  return out.cert.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computer-assisted proofs of radial solutions of elliptic systems"};
  app.set_version_flag("--version", radproof::library_version());
  app.require_subcommand(1);

  std::string config, profile, cert, seed_out;
  bool eigen_only = false, quiet = false;
  auto* prove_cmd = app.add_subcommand("prove", "run a proof and write its certificate");
  prove_cmd->add_option("--config", config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
  prove_cmd->add_flag("--eigen-only", eigen_only, "stop after the spectral stage");
  prove_cmd->add_option("--emit-profile", profile, "write the approximate profile as CSV");
  prove_cmd->add_option("--cert", cert, "write the certificate as JSON");
  prove_cmd->add_flag("-q,--quiet", quiet, "suppress stage progress");

  auto* seed_cmd = app.add_subcommand("seed", "compute the numerical seed only");
  seed_cmd->add_option("--config", config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
  seed_cmd->add_option("--out", seed_out, "output samples (JSON)")->required();

  auto* report_cmd = app.add_subcommand("report", "summarize a certificate");
  report_cmd->add_option("--cert", cert, "certificate (JSON)")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*prove_cmd) return prove(config, eigen_only, profile, cert, quiet);
    if (*seed_cmd) {
      write_text(seed_out, radproof::seed_to_json(radproof::make_seed(radproof::load_run_config(config))));
      return 0;
    }
    const auto c = radproof::certificate_from_json(read_text(cert));
    std::cout << radproof::render_report(c);
    return c.passed ? 0 : 1;
  } catch (const radproof::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
