#include "radproof/pipeline.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/math/interpolators/barycentric_rational.hpp>
#include <boost/numeric/odeint.hpp>
#include <json.hpp>

#include "radproof/kantorovich.hpp"
#include "radproof/manifold.hpp"

#ifndef RADPROOF_VERSION
#define RADPROOF_VERSION "0.0.0"
#endif

namespace radproof {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Interval param(const json& j) {
  if (j.is_number()) return Interval(j.get<double>());
  if (j.is_string()) return Interval::parse(j.get<std::string>());
  throw ConfigError("parameter must be a number or a string");
}

double number(const json& j, const std::string& what) {
  double x = 0.0;
  if (j.is_number()) {
    x = j.get<double>();
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    char* end = nullptr;
    x = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw ConfigError(what + " is not a decimal number: '" + s + "'");
  } else {
    throw ConfigError(what + " must be a number");
  }
  if (!std::isfinite(x)) throw ConfigError(what + " must be finite");
  return x;
}

double positive(const json& j, const std::string& what) {
  const double x = number(j, what);
  if (!(x > 0.0)) throw ConfigError(what + " must be positive");
  return x;
}

EllipticProblem builtin_problem(const std::string& name, const json& params) {
  auto get = [&](const char* key, const Interval& dflt) {
    return params.contains(key) ? param(params.at(key)) : dflt;
  };
  if (name == "klein-gordon") return klein_gordon(get("b1", Interval(1.0)), get("b2", Interval(1.0)));
  if (name == "swift-hohenberg")
    return swift_hohenberg(get("b1", Interval::ratio(-3, 5)), get("b2", sqrt(Interval(6.0))),
                           get("b3", Interval::ratio(-1, 10)), get("b4", Interval(1.0)));
  if (name == "fhn3")
    return fitzhugh_nagumo(get("eps", Interval::ratio(3, 10)), get("b1", Interval::ratio(1, 2)),
                           get("b2", Interval::ratio(1, 2)), get("b3", Interval(1.0)), get("b4", Interval(3.0)));
  throw ConfigError("unknown builtin problem '" + name + "'");
}

EllipticProblem custom_problem(const json& j) {
  EllipticProblem p;
  p.name = j.value("name", "custom");
  p.q = j.at("q").get<std::size_t>();
  p.d = j.at("d").get<int>();
  std::vector<Monomial> mons;
  for (const auto& m : j.at("monomials")) {
    Monomial mono;
    mono.target = m.at("target").get<std::size_t>();
    mono.powers = m.at("powers").get<std::vector<int>>();
    mono.coeff = param(m.at("coeff"));
    mons.push_back(std::move(mono));
  }
  p.N = PolynomialMap(p.q, p.q, std::move(mons));
  for (const auto& c : j.at("c")) p.c.push_back(param(c));
  return p;
}

/// Taylor coefficients of the radial solution with u(0) = phi, in the
/// variable r / ell, by forward substitution.
std::vector<TaylorSeq<double>> taylor_from_phi(const EllipticProblem& p, const std::vector<double>& phi, double ell,
                                               std::size_t order) {
  const std::size_t q = p.q;
  std::vector<TaylorSeq<double>> v(q, TaylorSeq<double>(order));
  for (std::size_t i = 0; i < q; ++i) v[i].c[0] = phi[i];
  const double ell2 = ell * ell;
  for (std::size_t n = 2; n <= order; ++n) {
    std::vector<TaylorSeq<double>> part(q);
    for (std::size_t i = 0; i < q; ++i) part[i] = truncate(v[i], n - 2);
    const auto Nv = p.N.eval(part);
    const double den = static_cast<double>(n) * static_cast<double>(static_cast<int>(n) + p.d - 2);
    for (std::size_t i = 0; i < q; ++i) v[i].c[n] = -ell2 * Nv[i][n - 2] / den;
  }
  return v;
}

using State = std::array<double, 2>;

struct RadialRhs {
  const EllipticProblem* p;
  void operator()(const State& y, State& dy, double r) const {
    const std::vector<double> u{y[0]};
    dy[0] = y[1];
    dy[1] = -(p->d - 1.0) / r * y[1] - p->N.eval(u)[0];
  }
};

constexpr double kShootStart = 1e-2;

State start_state(const EllipticProblem& p, double phi) {
  const auto v = taylor_from_phi(p, {phi}, 1.0, 24);
  return {eval_taylor(v[0], kShootStart), eval_taylor_deriv_scaled(v[0], kShootStart, kShootStart)};
}

/// -1 when u - c changes sign more than `zeros` times, +1 when u turns away
/// from c again before the next crossing (or reaches r0).
int classify(const EllipticProblem& p, double phi, double r0, int zeros) {
  namespace ode = boost::numeric::odeint;
  const double c = p.c[0].mid();
  auto stepper = ode::make_dense_output(1e-13, 1e-13, ode::runge_kutta_dopri5<State>());
  stepper.initialize(start_state(p, phi), kShootStart, 1e-3);
  const RadialRhs rhs{&p};
  double prev = phi - c;
  int crossings = 0;
  bool approaching = false;
  while (stepper.current_time() < r0) {
    stepper.do_step(rhs);
    const State& s = stepper.current_state();
    const double e = s[0] - c;
    if (!std::isfinite(e)) return +1;
    if (e * prev < 0.0) {
      if (++crossings > zeros) return -1;
      approaching = false;
    }
    if (e != 0.0) prev = e;
    if (e * s[1] < 0.0) approaching = true;
    if (approaching && e * s[1] > 0.0) return +1;
  }
  return +1;
}

SpectralData spectral_or_throw(const EllipticProblem& p) { return build_spectral_data(p); }

}  // namespace

std::string library_version() { return RADPROOF_VERSION; }

void SeedProfile::validate() const {
  if (r.size() != u.size()) throw InterpolationIllConditioned("radius and sample counts differ");
  if (r.size() < 8) throw InterpolationIllConditioned("seed needs at least 8 samples");
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (u[k].size() != q()) throw InterpolationIllConditioned("ragged seed rows");
    if (k > 0 && !(r[k] > r[k - 1])) throw InterpolationIllConditioned("seed radii must increase strictly");
  }
}

std::string seed_to_json(const SeedProfile& s) {
  json rows = json::array();
  for (std::size_t k = 0; k < s.r.size(); ++k) {
    json row = json::array({s.r[k]});
    for (double x : s.u[k]) row.push_back(x);
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

SeedProfile seed_from_json(const std::string& text) {
  SeedProfile s;
  try {
    const json rows = json::parse(text);
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() < 2) throw ConfigError("seed rows must be [r, u...]");
      s.r.push_back(row[0].get<double>());
      std::vector<double> u;
      for (std::size_t i = 1; i < row.size(); ++i) u.push_back(row[i].get<double>());
      s.u.push_back(std::move(u));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed seed file: ") + e.what());
  }
  s.validate();
  return s;
}

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  cfg.source_json = text;
  cfg.base_dir = base_dir;
  try {
    const json j = json::parse(text);
    const auto& pj = j.at("problem");
    if (pj.contains("custom"))
      cfg.problem = custom_problem(pj.at("custom"));
    else
      cfg.problem = builtin_problem(pj.at("name").get<std::string>(), pj.value("params", json::object()));
    validate(cfg.problem);

    const auto& g = j.at("geometry");
    cfg.proof.ell = positive(g.at("ell"), "ell");
    cfg.proof.r_star = positive(g.at("r_star"), "r_star");
    cfg.proof.L = positive(g.at("L"), "L");
    const auto& t = j.at("truncation");
    cfg.proof.nT_num = t.at("n_T_num").get<std::size_t>();
    cfg.proof.nT_pad = t.value("n_T_pad", std::size_t{0});
    cfg.proof.nC_num = t.at("n_C_num").get<std::size_t>();
    cfg.proof.nC_pad = t.value("n_C_pad", std::size_t{0});
    cfg.proof.nu = positive(t.at("nu"), "nu");

    if (j.contains("manifold")) {
      const auto& m = j["manifold"];
      if (m.contains("Lx")) cfg.Lx = positive(m["Lx"], "Lx");
      if (m.contains("Ly") && !(m["Ly"].is_string() && m["Ly"].get<std::string>() == "auto"))
        cfg.Ly = positive(m["Ly"], "Ly");
    }
    if (j.contains("varrho") && !(j["varrho"].is_string() && j["varrho"].get<std::string>() == "auto"))
      cfg.varrho = positive(j["varrho"], "varrho");

    if (j.contains("seed")) {
      const auto& s = j["seed"];
      cfg.seed.mode = s.value("mode", "shoot");
      cfg.seed.path = s.value("path", "");
      if (s.contains("phi_range")) {
        cfg.seed.phi_lo = number(s["phi_range"].at(0), "phi_range");
        cfg.seed.phi_hi = number(s["phi_range"].at(1), "phi_range");
      }
      cfg.seed.zeros = s.value("zeros", 0);
      cfg.seed.samples = s.value("samples", std::size_t{4001});
      if (cfg.seed.mode != "shoot" && cfg.seed.mode != "samples")
        throw ConfigError("seed mode must be 'shoot' or 'samples'");
      if (cfg.seed.mode == "samples" && cfg.seed.path.empty()) throw ConfigError("samples seed needs a path");
    }
    if (j.contains("newton")) {
      const auto& n = j["newton"];
      if (n.contains("tol")) cfg.newton.tol = positive(n["tol"], "newton.tol");
      cfg.newton.max_iter = n.value("max_iter", cfg.newton.max_iter);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed run configuration: ") + e.what());
  }
  ProofConfig check = cfg.proof;
  check.varrho = cfg.varrho.value_or(1.0);
  check.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_file(path), path.parent_path());
}

SeedProfile shoot_seed(const EllipticProblem& p, double r0, double phi_lo, double phi_hi, int zeros,
                       std::size_t samples) {
  namespace ode = boost::numeric::odeint;
  if (p.q != 1) throw ConfigError("shooting is implemented for scalar problems only");
  if (!(phi_lo < phi_hi)) throw ConfigError("phi range must satisfy lo < hi");
  if (samples < 8) throw ConfigError("at least 8 samples are needed");
  int f_lo = classify(p, phi_lo, r0, zeros);
  const int f_hi = classify(p, phi_hi, r0, zeros);
  if (f_lo == f_hi)
    throw NoSignChange("shooting classifies both ends of [" + to_decimal(phi_lo) + ", " + to_decimal(phi_hi) +
                       "] alike");
  double lo = phi_lo, hi = phi_hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (classify(p, mid, r0, zeros) == f_lo)
      lo = mid;
    else
      hi = mid;
  }
  const double phi = 0.5 * (lo + hi);

  SeedProfile s;
  s.r.resize(samples);
  for (std::size_t k = 0; k < samples; ++k) s.r[k] = r0 * static_cast<double>(k) / static_cast<double>(samples - 1);
  s.u.assign(samples, {0.0});
  const auto v = taylor_from_phi(p, {phi}, 1.0, 24);
  std::vector<double> times;
  std::size_t first = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    if (s.r[k] <= kShootStart) {
      s.u[k][0] = eval_taylor(v[0], s.r[k]);
      first = k + 1;
    }
  }
  times.push_back(kShootStart);
  for (std::size_t k = first; k < samples; ++k) times.push_back(s.r[k]);
  State y = start_state(p, phi);
  auto stepper = ode::make_dense_output(1e-13, 1e-13, ode::runge_kutta_dopri5<State>());
  std::size_t idx = first;
  ode::integrate_times(stepper, RadialRhs{&p}, y, times.begin(), times.end(), 1e-3,
                       [&](const State& st, double r) {
                         if (r == kShootStart && idx < samples && s.r[idx] != r) return;
                         if (idx < samples) s.u[idx++][0] = st[0];
                       });
  return s;
}

std::vector<double> inverse_radius_coefficients(double ell_r, double L, std::size_t degree) {
  const double x = 1.0 + 2.0 * ell_r / L;
  const double root = std::sqrt(x * x - 1.0);
  const double rho = x + root;
  std::vector<double> a(degree + 1);
  a[0] = (2.0 / L) / root;
  for (std::size_t n = 1; n <= degree; ++n) a[n] = -a[n - 1] / rho;
  return a;
}

XVector<double> fit_series(const SeedProfile& seed, const EllipticProblem& p, const SpectralData& sd,
                           const ProofConfig& cfg) {
  seed.validate();
  const std::size_t q = p.q;
  if (seed.q() != q) throw InterpolationIllConditioned("seed has the wrong number of components");
  const double ell_r = cfg.ell * cfg.r_star;
  const double r0 = cfg.r0();
  const double tol = 1e-9 * std::max(1.0, r0);
  if (seed.r.front() > tol || seed.r.back() < r0 - tol)
    throw InterpolationIllConditioned("seed does not cover [0, " + to_decimal(r0) + "]");

  XVector<double> chi;
  std::vector<double> phi = seed.u.front();
  chi.phi = phi;
  chi.v = taylor_from_phi(p, phi, cfg.ell, cfg.nT_num);

  std::vector<boost::math::barycentric_rational<double>> interp;
  for (std::size_t i = 0; i < q; ++i) {
    std::vector<double> x = seed.r, y(seed.r.size());
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = seed.u[k][i];
    interp.emplace_back(std::move(x), std::move(y), 3);
  }

  const std::size_t N = cfg.nC_num + 1;
  std::vector<ChebSeq<double>> w(1 + 2 * q, ChebSeq<double>(cfg.nC_num, cfg.nu));
  w[0].c = inverse_radius_coefficients(ell_r, cfg.L, cfg.nC_num);
  for (std::size_t jn = 0; jn < N; ++jn) {
    const double theta = std::numbers::pi * (static_cast<double>(jn) + 0.5) / static_cast<double>(N);
    const double s = std::cos(theta);
    const double r = ell_r + (s + 1.0) * 0.5 * cfg.L;
    for (std::size_t i = 0; i < q; ++i) {
      const double u = interp[i](r);
      const double du = interp[i].prime(r);
      if (!std::isfinite(u) || !std::isfinite(du))
        throw InterpolationIllConditioned("seed interpolant is not finite at r = " + to_decimal(r));
      for (std::size_t n = 0; n <= cfg.nC_num; ++n) {
        const double t = std::cos(static_cast<double>(n) * theta) / static_cast<double>(N);
        w[1 + i].c[n] += u * t;
        w[1 + q + i].c[n] += du * t;
      }
    }
  }
  chi.w = std::move(w);

  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(q));
  for (std::size_t i = 0; i < q; ++i) rhs(static_cast<Eigen::Index>(i)) = interp[i](r0) - p.c[i].mid();
  const Eigen::VectorXcd eta = sd.Gamma.mid().partialPivLu().solve(rhs);
  for (std::size_t i = 0; i < q; ++i) chi.eta.push_back(eta(static_cast<Eigen::Index>(i)));
  symmetrize(chi, sd);
  return chi;
}

std::vector<ProfilePoint> evaluate_profile(const XVector<double>& chi, const EllipticProblem& p,
                                           const SpectralData& sd, const ProofConfig& cfg) {
  const std::size_t q = p.q;
  const double ell_r = cfg.ell * cfg.r_star;
  const double r0 = cfg.r0();
  std::vector<ProfilePoint> pts;
  const int nT = 100, nCh = 800, nTail = 200;
  for (int k = 0; k <= nT; ++k) {
    const double r = ell_r * k / nT;
    ProfilePoint pt{r, std::vector<double>(q), "taylor"};
    for (std::size_t i = 0; i < q; ++i) pt.u[i] = eval_taylor(chi.v[i], r / cfg.ell);
    pts.push_back(std::move(pt));
  }
  for (int k = 0; k <= nCh; ++k) {
    const double s = -1.0 + 2.0 * k / nCh;
    const double r = ell_r + (s + 1.0) * 0.5 * cfg.L;
    ProfilePoint pt{r, std::vector<double>(q), "cheb"};
    for (std::size_t i = 0; i < q; ++i) pt.u[i] = eval_cheb(chi.w[1 + i], s);
    pts.push_back(std::move(pt));
  }
  const Eigen::MatrixXcd G = sd.Gamma.mid();
  for (int k = 0; k <= nTail; ++k) {
    const double r = r0 * std::pow(10.0, static_cast<double>(k) / nTail);
    ProfilePoint pt{r, std::vector<double>(q), "tail"};
    Eigen::VectorXcd y(static_cast<Eigen::Index>(q));
    for (std::size_t j = 0; j < q; ++j)
      y(static_cast<Eigen::Index>(j)) = std::exp(-sd.Lambda[j].mid() * (r - r0)) * chi.eta[j];
    const Eigen::VectorXcd u = G * y;
    for (std::size_t i = 0; i < q; ++i) pt.u[i] = p.c[i].mid() + u(static_cast<Eigen::Index>(i)).real();
    pts.push_back(std::move(pt));
  }
  return pts;
}

std::string profile_to_csv(const std::vector<ProfilePoint>& pts) {
  std::ostringstream o;
  o << "r";
  const std::size_t q = pts.empty() ? 0 : pts.front().u.size();
  for (std::size_t i = 0; i < q; ++i) o << ",u" << (i + 1);
  o << ",region\n";
  for (const auto& pt : pts) {
    o << to_decimal(pt.r);
    for (double x : pt.u) o << "," << to_decimal(x);
    o << "," << pt.region << "\n";
  }
  return o.str();
}

SeedProfile make_seed(const RunConfig& cfg) {
  if (cfg.seed.mode == "samples") {
    std::filesystem::path path(cfg.seed.path);
    if (path.is_relative()) path = cfg.base_dir / path;
    return seed_from_json(read_file(path));
  }
  return shoot_seed(cfg.problem, cfg.r0(), cfg.seed.phi_lo, cfg.seed.phi_hi, cfg.seed.zeros, cfg.seed.samples);
}

ProofCertificate run_eigen_only(const RunConfig& cfg) {
  ProofCertificate c;
  c.version = library_version();
  c.problem = cfg.problem.name;
  c.config_json = cfg.source_json;
  c.cfg = cfg.proof;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const SpectralData sd = spectral_or_throw(cfg.problem);
    c.Lambda = sd.Lambda;
    c.lambda_hat = lambda_hat(sd);
    c.passed = true;
  } catch (const Error& e) {
    c.failure_stage = "spectral";
    c.failure_kind = e.kind();
    c.failure_message = e.detail();
    c.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    throw StageError("spectral", e);
  }
  c.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

void run_proof(const RunConfig& cfg, ProofOutcome& out, const LogFn& log) {
  using clock = std::chrono::steady_clock;
  ProofCertificate& c = out.cert;
  c = ProofCertificate{};
  c.version = library_version();
  c.problem = cfg.problem.name;
  c.config_json = cfg.source_json;
  c.cfg = cfg.proof;
  const auto t_start = clock::now();
  auto say = [&](const std::string& s) {
    if (log) log(s);
  };
  auto stage = [&](const std::string& name, auto&& body) {
    const auto t0 = clock::now();
    try {
      body();
    } catch (const Error& e) {
      c.failure_stage = name;
      c.failure_kind = e.kind();
      c.failure_message = e.detail();
      c.wall_time = std::chrono::duration<double>(clock::now() - t_start).count();
      if (const auto* se = dynamic_cast<const StageError*>(&e)) throw *se;
      throw StageError(name, e);
    } catch (const std::exception& e) {
      const Error wrapped("InternalError", e.what());
      c.failure_stage = name;
      c.failure_kind = wrapped.kind();
      c.failure_message = wrapped.detail();
      c.wall_time = std::chrono::duration<double>(clock::now() - t_start).count();
      throw StageError(name, wrapped);
    }
    const double dt = std::chrono::duration<double>(clock::now() - t0).count();
    c.stage_times.emplace_back(name, dt);
    say(name + " done in " + to_decimal(std::round(dt * 1000.0) / 1000.0) + " s");
  };

  ProofConfig pc = cfg.proof;
  stage("config", [&] {
    ProofConfig check = pc;
    check.varrho = cfg.varrho.value_or(1.0);
    check.validate();
    validate(cfg.problem);
  });

  stage("spectral", [&] {
    out.spectral = spectral_or_throw(cfg.problem);
    c.Lambda = out.spectral->Lambda;
    c.lambda_hat = lambda_hat(*out.spectral);
  });
  const SpectralData& sd = *out.spectral;

  SeedProfile seed;
  stage("seed", [&] { seed = make_seed(cfg); });

  XVector<double> chi;
  stage("fit", [&] { chi = fit_series(seed, cfg.problem, sd, pc); });

  pc.varrho = cfg.varrho.value_or(1.0);
  ProofData data(cfg.problem, sd, pc);
  stage("newton", [&] {
    const NewtonResult nr = newton_refine(data, chi, cfg.newton);
    chi = resized(nr.chi, pc.nT(), pc.nC());
    c.newton_residual = nr.residual;
    c.newton_iterations = nr.iterations;
    say("newton residual " + to_decimal(nr.residual) + " after " + std::to_string(nr.iterations) + " steps");
  });
  out.chi = chi;

  stage("symmetry", [&] {
    c.symmetric = check_symmetry(chi, sd);
    if (!c.symmetric) throw SymmetryViolated("approximation is not fixed by the conjugation symmetry");
  });

  ThinMatrix A;
  stage("build_A", [&] { A = ThinMatrix(build_A(data, chi)); });

  stage("Y", [&] {
    c.A_norm = operator_norm_A(A, data);
    c.a_gamma_norm = a_gamma_norm(A, data);
    c.eta_norm = eta_norm(chi);
    c.Y = compute_Y(data, chi, A, &c.terms);
    say("Y <= " + to_decimal(c.Y.hi) + ", |A| <= " + to_decimal(c.A_norm.hi));
  });

  stage("Z1", [&] {
    c.Z1 = compute_Z1(data, chi, A, c.A_norm, &c.terms);
    say("Z1 <= " + to_decimal(c.Z1.hi));
    if (!(c.Z1.hi < 1.0))
      throw Constraint45bFailed("Z1 <= " + to_decimal(c.Z1.hi) + " is not below 1 (finite " +
                                to_decimal(c.terms.Z1_finite.hi) + ", derivative tails " +
                                to_decimal(c.terms.Z1_deriv_tail.hi) + ", extension " +
                                to_decimal(c.terms.Z1_ext_tail.hi) + ")");
  });

  stage("manifold", [&] {
    const Interval delta = Interval(1.0) / (Interval(pc.ell) * Interval(pc.r_star) + Interval(pc.L));
    auto chart = [&](double varrho) {
      const Interval mu(0.0, add_up(c.eta_norm.hi, varrho));
      auto psi = [&](double Ly) { return psi_hat_bound(cfg.problem, sd, mu, Ly); };
      const double Ly = cfg.Ly ? *cfg.Ly : search_Ly(c.lambda_hat, delta, psi, cfg.problem.d, cfg.Lx);
      return check_constraints(c.lambda_hat, delta, mu, cfg.Lx, Ly, psi(Ly), cfg.problem.d);
    };
    // Ten times the linearized radius (Y + |A(G, GL)| Ly |eta|) / (1 - Z1 - |A(G, GL)| Ly),
    // iterated with the chart since Ly depends on mu.
    auto linear_radius = [&](double Ly) {
      const Interval aL = Interval(c.a_gamma_norm.hi) * Interval(Ly);
      const Interval den = Interval(1.0) - Interval(c.Z1.hi) - aL;
      if (!(den.lo > 0.0)) return 1e-2;
      return std::clamp(10.0 * ((Interval(c.Y.hi) + aL * Interval(c.eta_norm.hi)) / den).hi, 1e-12, 1e-2);
    };
    if (cfg.varrho) {
      pc.varrho = *cfg.varrho;
      c.manifold = chart(pc.varrho);
    } else {
      pc.varrho = linear_radius(0.0);
      c.manifold = chart(pc.varrho);
      for (int it = 0; it < 8; ++it) {
        const double next = linear_radius(c.manifold.Ly);
        if (next <= pc.varrho) break;
        pc.varrho = next;
        c.manifold = chart(pc.varrho);
      }
    }
    c.cfg = pc;
    data.cfg = pc;
    if (!c.manifold.passed())
      throw ManifoldCheckFailed("constraints (a, b, c) = (" + std::to_string(c.manifold.c20a) + ", " +
                                std::to_string(c.manifold.c20b) + ", " + std::to_string(c.manifold.c20c) +
                                ") at Ly = " + to_decimal(c.manifold.Ly));
    say("manifold chart Ly = " + to_decimal(c.manifold.Ly) + ", varrho = " + to_decimal(pc.varrho));
  });

  stage("Z2", [&] {
    c.Z2 = compute_Z2(data, chi, c.A_norm, pc.varrho, &c.terms);
    say("Z2 <= " + to_decimal(c.Z2.hi));
  });

  stage("radii", [&] {
    c.rho_bar = solve_radii(c.Y, c.Z1, c.Z2, c.a_gamma_norm, c.manifold.Ly, c.eta_norm, pc.varrho);
    c.c0_bound = c0_certificate(c.rho_bar, c.manifold.Ly, c.eta_norm, sd.Gamma);
  });
  c.passed = true;
  c.wall_time = std::chrono::duration<double>(clock::now() - t_start).count();
}

}  // namespace radproof
