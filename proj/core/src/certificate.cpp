#include "radproof/certificate.hpp"

#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace radproof {

namespace {

using nlohmann::json;

double parse_endpoint(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ConfigError("malformed decimal '" + s + "'");
  return x;
}

json iv(const Interval& x) { return json::array({to_decimal(x.lo), to_decimal(x.hi)}); }
Interval iv(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("interval must be a pair [inf, sup]");
  return {parse_endpoint(j[0]), parse_endpoint(j[1])};
}
json civ(const CInterval& z) { return json{{"re", iv(z.re)}, {"im", iv(z.im)}}; }
CInterval civ(const json& j) { return {iv(j.at("re")), iv(j.at("im"))}; }

Interval get_iv(const json& j, const char* key) { return j.contains(key) ? iv(j.at(key)) : Interval(0.0); }

}  // namespace

std::string to_json(const ProofCertificate& c) {
  json j;
  j["version"] = c.version;
  j["problem"] = c.problem;
  j["passed"] = c.passed;
  if (!c.passed) {
    j["failure"] = {{"stage", c.failure_stage}, {"kind", c.failure_kind}, {"message", c.failure_message}};
  }
  j["config"] = c.config_json.empty() ? json::object() : json::parse(c.config_json);
  j["truncation"] = {{"ell", to_decimal(c.cfg.ell)},       {"r_star", to_decimal(c.cfg.r_star)},
                     {"L", to_decimal(c.cfg.L)},           {"nu", to_decimal(c.cfg.nu)},
                     {"n_T_num", c.cfg.nT_num},            {"n_T_pad", c.cfg.nT_pad},
                     {"n_C_num", c.cfg.nC_num},            {"n_C_pad", c.cfg.nC_pad},
                     {"varrho", to_decimal(c.cfg.varrho)}};
  json lam = json::array();
  for (const auto& z : c.Lambda) lam.push_back(civ(z));
  j["spectrum"] = {{"Lambda", lam}, {"lambda_hat", iv(c.lambda_hat)}};
  const auto& m = c.manifold;
  j["manifold"] = {{"delta", iv(m.delta)}, {"mu", iv(m.mu)},           {"Lx", to_decimal(m.Lx)},
                   {"Ly", to_decimal(m.Ly)}, {"psi_hat", iv(m.psi_hat)}, {"lambda_hat", iv(m.lambda_hat)},
                   {"c20a", m.c20a},         {"c20b", m.c20b},           {"c20c", m.c20c},
                   {"passed", m.passed()}};
  j["newton"] = {{"residual", to_decimal(c.newton_residual)}, {"iterations", c.newton_iterations}};
  j["symmetric"] = c.symmetric;
  j["bounds"] = {{"Y", iv(c.Y)},
                 {"Z1", iv(c.Z1)},
                 {"Z2", iv(c.Z2)},
                 {"A_norm", iv(c.A_norm)},
                 {"a_gamma_norm", iv(c.a_gamma_norm)},
                 {"eta_norm", iv(c.eta_norm)},
                 {"rho_bar", iv(c.rho_bar)},
                 {"c0_bound", iv(c.c0_bound)}};
  const auto& t = c.terms;
  j["terms"] = {{"Y_finite", iv(t.Y_finite)},         {"Y_tail_taylor", iv(t.Y_tail_taylor)},
                {"Y_tail_cheb", iv(t.Y_tail_cheb)},   {"Z1_finite", iv(t.Z1_finite)},
                {"Z1_deriv_tail", iv(t.Z1_deriv_tail)}, {"Z1_ext_tail", iv(t.Z1_ext_tail)},
                {"DN_norm", iv(t.DN_norm)},           {"Df_norm", iv(t.Df_norm)},
                {"Z2_taylor", iv(t.Z2_taylor)},       {"Z2_cheb", iv(t.Z2_cheb)}};
  json times = json::object();
  for (const auto& [k, v] : c.stage_times) times[k] = v;
  j["stage_seconds"] = times;
  j["wall_time_seconds"] = c.wall_time;
  return j.dump(2);
}

ProofCertificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("certificate is not valid JSON: ") + e.what());
  }
  ProofCertificate c;
  try {
    c.version = j.value("version", "");
    c.problem = j.value("problem", "");
    c.passed = j.value("passed", false);
    if (j.contains("failure")) {
      const auto& f = j["failure"];
      c.failure_stage = f.value("stage", "");
      c.failure_kind = f.value("kind", "");
      c.failure_message = f.value("message", "");
    }
    if (j.contains("config")) c.config_json = j["config"].dump();
    if (j.contains("truncation")) {
      const auto& t = j["truncation"];
      c.cfg.ell = parse_endpoint(t.at("ell"));
      c.cfg.r_star = parse_endpoint(t.at("r_star"));
      c.cfg.L = parse_endpoint(t.at("L"));
      c.cfg.nu = parse_endpoint(t.at("nu"));
      c.cfg.nT_num = t.at("n_T_num").get<std::size_t>();
      c.cfg.nT_pad = t.at("n_T_pad").get<std::size_t>();
      c.cfg.nC_num = t.at("n_C_num").get<std::size_t>();
      c.cfg.nC_pad = t.at("n_C_pad").get<std::size_t>();
      c.cfg.varrho = parse_endpoint(t.at("varrho"));
    }
    if (j.contains("spectrum")) {
      for (const auto& z : j["spectrum"].at("Lambda")) c.Lambda.push_back(civ(z));
      c.lambda_hat = get_iv(j["spectrum"], "lambda_hat");
    }
    if (j.contains("manifold")) {
      const auto& m = j["manifold"];
      c.manifold.delta = get_iv(m, "delta");
      c.manifold.mu = get_iv(m, "mu");
      c.manifold.Lx = parse_endpoint(m.at("Lx"));
      c.manifold.Ly = parse_endpoint(m.at("Ly"));
      c.manifold.psi_hat = get_iv(m, "psi_hat");
      c.manifold.lambda_hat = get_iv(m, "lambda_hat");
      c.manifold.c20a = m.value("c20a", false);
      c.manifold.c20b = m.value("c20b", false);
      c.manifold.c20c = m.value("c20c", false);
    }
    if (j.contains("newton")) {
      c.newton_residual = parse_endpoint(j["newton"].at("residual"));
      c.newton_iterations = j["newton"].value("iterations", 0);
    }
    c.symmetric = j.value("symmetric", false);
    if (j.contains("bounds")) {
      const auto& b = j["bounds"];
      c.Y = get_iv(b, "Y");
      c.Z1 = get_iv(b, "Z1");
      c.Z2 = get_iv(b, "Z2");
      c.A_norm = get_iv(b, "A_norm");
      c.a_gamma_norm = get_iv(b, "a_gamma_norm");
      c.eta_norm = get_iv(b, "eta_norm");
      c.rho_bar = get_iv(b, "rho_bar");
      c.c0_bound = get_iv(b, "c0_bound");
    }
    if (j.contains("terms")) {
      const auto& t = j["terms"];
      c.terms.Y_finite = get_iv(t, "Y_finite");
      c.terms.Y_tail_taylor = get_iv(t, "Y_tail_taylor");
      c.terms.Y_tail_cheb = get_iv(t, "Y_tail_cheb");
      c.terms.Z1_finite = get_iv(t, "Z1_finite");
      c.terms.Z1_deriv_tail = get_iv(t, "Z1_deriv_tail");
      c.terms.Z1_ext_tail = get_iv(t, "Z1_ext_tail");
      c.terms.DN_norm = get_iv(t, "DN_norm");
      c.terms.Df_norm = get_iv(t, "Df_norm");
      c.terms.Z2_taylor = get_iv(t, "Z2_taylor");
      c.terms.Z2_cheb = get_iv(t, "Z2_cheb");
    }
    if (j.contains("stage_seconds"))
      for (const auto& [k, v] : j["stage_seconds"].items()) c.stage_times.emplace_back(k, v.get<double>());
    c.wall_time = j.value("wall_time_seconds", 0.0);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed certificate: ") + e.what());
  }
  return c;
}

std::string render_report(const ProofCertificate& c) {
  std::ostringstream o;
  auto hi = [](const Interval& x) { return to_decimal(x.hi); };
  o << "problem      " << c.problem << "\n";
  o << "verdict      " << (c.passed ? "PASS" : "FAIL") << "\n";
  if (!c.passed && !c.failure_kind.empty())
    o << "failure      [" << c.failure_stage << "] " << c.failure_kind << ": " << c.failure_message << "\n";
  o << "orders       n_T = " << c.cfg.nT_num << "+" << c.cfg.nT_pad << ", n_C = " << c.cfg.nC_num << "+"
    << c.cfg.nC_pad << "\n";
  o << "geometry     ell = " << to_decimal(c.cfg.ell) << ", r_* = " << to_decimal(c.cfg.r_star)
    << ", L = " << to_decimal(c.cfg.L) << ", nu = " << to_decimal(c.cfg.nu) << ", varrho = "
    << to_decimal(c.cfg.varrho) << "\n";
  o << "lambda_hat   [" << to_decimal(c.lambda_hat.lo) << ", " << to_decimal(c.lambda_hat.hi) << "]\n";
  const auto& m = c.manifold;
  o << "manifold     Lx = " << to_decimal(m.Lx) << ", Ly = " << to_decimal(m.Ly) << ", delta <= " << hi(m.delta)
    << ", mu <= " << hi(m.mu) << ", psi_hat <= " << hi(m.psi_hat) << ", constraints " << m.c20a << m.c20b
    << m.c20c << "\n";
  o << "newton       residual " << to_decimal(c.newton_residual) << " after " << c.newton_iterations
    << " steps, symmetric " << (c.symmetric ? "yes" : "no") << "\n";
  o << "Y            <= " << hi(c.Y) << "  (finite " << hi(c.terms.Y_finite) << ", tails "
    << hi(c.terms.Y_tail_taylor) << " / " << hi(c.terms.Y_tail_cheb) << ")\n";
  o << "Z1           <= " << hi(c.Z1) << "  (finite " << hi(c.terms.Z1_finite) << ", derivative tails "
    << hi(c.terms.Z1_deriv_tail) << ", extension " << hi(c.terms.Z1_ext_tail) << ")\n";
  o << "Z2           <= " << hi(c.Z2) << "\n";
  o << "|A|          <= " << hi(c.A_norm) << ", |A(G, GL)| <= " << hi(c.a_gamma_norm) << ", |eta| <= "
    << hi(c.eta_norm) << "\n";
  o << "rho_bar      =  " << hi(c.rho_bar) << "\n";
  o << "C0 bound     <= " << hi(c.c0_bound) << "\n";
  o << "wall time    " << c.wall_time << " s\n";
  return o.str();
}

}  // namespace radproof
