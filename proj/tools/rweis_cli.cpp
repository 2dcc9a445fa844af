// Command-line front end. Every subcommand goes through the C API and renders
// the returned JSON as json, csv or plain text.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "rweis.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_cell(const Json& v) {
  std::string s = scalar_text(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

// The first array member, which holds the tabular part of a result.
const Json* table_of(const Json& j) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_array()) return &it.value();
  }
  return nullptr;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it.value().is_object()) {
      flatten(it.value(), key, out);
    } else if (!it.value().is_array()) {
      out.emplace_back(key, scalar_text(it.value()));
    }
  }
}

void render_csv(const Json& j, std::ostream& os) {
  const Json* table = table_of(j);
  if (table == nullptr || table->empty()) {
    std::vector<std::pair<std::string, std::string>> kv;
    flatten(j, "", kv);
    os << "key,value\n";
    for (const auto& [k, v] : kv) os << k << ',' << v << '\n';
    return;
  }
  if (!table->front().is_object()) {
    os << "index,value\n";
    for (std::size_t i = 0; i < table->size(); ++i) os << i << ',' << csv_cell((*table)[i]) << '\n';
    return;
  }
  bool first = true;
  for (auto it = table->front().begin(); it != table->front().end(); ++it) {
    os << (first ? "" : ",") << it.key();
    first = false;
  }
  os << '\n';
  for (const auto& row : *table) {
    first = true;
    for (auto it = row.begin(); it != row.end(); ++it) {
      os << (first ? "" : ",") << csv_cell(it.value());
      first = false;
    }
    os << '\n';
  }
}

void render_text(const std::string& command, const Json& j, std::ostream& os) {
  if ((command == "dedekind" || command == "kronecker" || command == "order") && j.contains("value")) {
    os << scalar_text(j["value"]) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> kv;
  flatten(j, "", kv);
  for (const auto& [k, v] : kv) os << k << ": " << v << '\n';
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& arr = it.value();
    if (!arr.is_array()) continue;
    if (arr.empty() || !arr.front().is_object()) {
      os << it.key() << ':';
      for (const auto& v : arr) os << ' ' << scalar_text(v);
      os << '\n';
      continue;
    }
    os << it.key() << ":\n";
    for (const auto& row : arr) {
      os << ' ';
      for (auto f = row.begin(); f != row.end(); ++f) os << ' ' << f.key() << '=' << scalar_text(f.value());
      os << '\n';
    }
  }
}

struct Parsed {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
};

Parsed parse_matrix(const std::string& text) {
  Parsed m;
  std::vector<std::int64_t> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const long long x = std::stoll(item, &pos);
    if (pos != item.size()) throw CLI::ValidationError("--matrix", "entries must be integers");
    v.push_back(x);
  }
  if (v.size() != 4) throw CLI::ValidationError("--matrix", "expected a,b,c,d");
  m.a = v[0];
  m.b = v[1];
  m.c = v[2];
  m.d = v[3];
  return m;
}

std::pair<std::int64_t, std::int64_t> parse_cusp_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw CLI::ValidationError("--cusp", "expected a/c");
  std::size_t p1 = 0, p2 = 0;
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  const long long a = std::stoll(num, &p1);
  const long long c = std::stoll(den, &p2);
  if (p1 != num.size() || p2 != den.size()) throw CLI::ValidationError("--cusp", "expected integers a/c");
  return {a, c};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational-weight Eisenstein series, eta-quotients and Gamma series"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  int threads = -1;
  unsigned precision = 53;
  std::int64_t c_max = 2000;
  std::uint64_t seed = 1;
  bool no_timing = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", threads, "Worker threads (default: RWEIS_THREADS, else all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--precision", precision, "Floating precision in bits (24..64)")->check(CLI::Range(24, 64));
  app.add_option("--c-max", c_max, "Truncation bound of the sums over c")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for randomized commands");
  app.add_flag("--no-timing", no_timing, "Report 0 seconds in verification output");

  // dedekind
  auto* ded = app.add_subcommand("dedekind", "Dedekind sum s(h, k)");
  ded->set_help_flag("--help", "Print this help message and exit");
  std::string ded_h, ded_k;
  bool ded_naive = false;
  ded->add_option("--h", ded_h)->required();
  ded->add_option("--k", ded_k)->required();
  ded->add_flag("--naive", ded_naive, "Sum the definition directly");

  // kronecker
  auto* kro = app.add_subcommand("kronecker", "Kronecker symbol (a|n)");
  std::int64_t kro_a = 0, kro_n = 0;
  kro->add_option("--a", kro_a)->required();
  kro->add_option("--n", kro_n)->required();

  // eta
  auto* eta = app.add_subcommand("eta", "Exact q-expansion of an eta-quotient");
  std::int64_t eta_level = 1, eta_terms = 10;
  std::string eta_exp;
  eta->add_option("--level", eta_level)->required();
  eta->add_option("--exp", eta_exp, "Exponents as n:r,n:r,...")->required();
  eta->add_option("--terms", eta_terms, "Number of coefficients")->check(CLI::PositiveNumber);
  std::string eta_tau;
  eta->add_option("--tau", eta_tau, "Evaluate numerically at x,y (tau = x + iy) instead");

  // order
  auto* ord = app.add_subcommand("order", "Order of an eta-quotient at a cusp");
  std::int64_t ord_level = 1;
  std::string ord_exp, ord_cusp;
  ord->add_option("--level", ord_level)->required();
  ord->add_option("--exp", ord_exp)->required();
  ord->add_option("--cusp", ord_cusp, "Cusp a/c")->required();

  // chi
  auto* chi = app.add_subcommand("chi", "Multiplier system value on a lifted matrix");
  std::int64_t chi_p = 2;
  std::string chi_r1, chi_rp, chi_matrix, chi_formula = "general";
  chi->add_option("--p", chi_p)->required();
  chi->add_option("--r1", chi_r1)->required();
  chi->add_option("--rp", chi_rp)->required();
  chi->add_option("--matrix", chi_matrix, "a,b,c,d")->required();
  chi->add_option("--formula", chi_formula)->check(CLI::IsMember({"general", "special", "integer"}));

  // eis
  auto* eis = app.add_subcommand("eis", "Eisenstein series coefficients");
  std::int64_t eis_p = 2, eis_n_max = 5;
  std::string eis_r1, eis_rp, eis_k, eis_cusp = "infty";
  eis->add_option("--p", eis_p)->required();
  eis->add_option("--r1", eis_r1)->required();
  eis->add_option("--rp", eis_rp)->required();
  eis->add_option("--k", eis_k)->required();
  eis->add_option("--cusp", eis_cusp)->check(CLI::IsMember({"infty", "one"}));
  eis->add_option("--n-max", eis_n_max)->check(CLI::NonNegativeNumber);
  eis->add_option("--c-max", c_max, "Truncation bound of the sums over c")->check(CLI::PositiveNumber);

  // gamma
  auto* gam = app.add_subcommand("gamma", "Gamma(k) from the exponential-sum series");
  std::string gam_k, gam_route = "auto";
  std::int64_t gam_n = 1;
  bool gam_extrapolate = false;
  gam->add_option("--k", gam_k, "p/q or a decimal")->required();
  gam->add_option("--route", gam_route)->check(CLI::IsMember({"p2", "p3", "auto"}));
  gam->add_option("--n", gam_n)->check(CLI::PositiveNumber);
  gam->add_option("--c-max", c_max, "Truncation bound of the sums over c")->check(CLI::PositiveNumber);
  gam->add_flag("--extrapolate", gam_extrapolate, "Richardson step (flagged, not part of the bound)");

  // verify
  auto* ver = app.add_subcommand("verify", "Check an identity numerically");
  std::string ver_identity;
  std::string ver_p, ver_n1, ver_ninf, ver_k, ver_r1, ver_rp;
  std::int64_t ver_n_max = -1;
  double ver_tol = 0;
  ver->add_option("--identity", ver_identity)
      ->required()
      ->check(CLI::IsMember({"thm71", "thm72", "carlitz", "classical", "gamma-examples"}));
  ver->add_option("--p", ver_p);
  ver->add_option("--n1", ver_n1);
  ver->add_option("--n-inf", ver_ninf);
  ver->add_option("--k", ver_k);
  ver->add_option("--r1", ver_r1);
  ver->add_option("--rp", ver_rp);
  ver->add_option("--n-max", ver_n_max);
  ver->add_option("--tol", ver_tol)->check(CLI::PositiveNumber);
  ver->add_option("--c-max", c_max, "Truncation bound of the sums over c")->check(CLI::PositiveNumber);

  // probe
  auto* prb = app.add_subcommand("probe", "Search for trivial multipliers missed by the three-condition test");
  std::int64_t prb_p = 5, prb_den = 2, prb_bound = 12;
  int prb_samples = 50;
  prb->add_option("--p", prb_p)->required();
  prb->add_option("--max-den", prb_den)->check(CLI::PositiveNumber);
  prb->add_option("--bound", prb_bound)->check(CLI::PositiveNumber);
  prb->add_option("--samples", prb_samples)->check(CLI::NonNegativeNumber);
  prb->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  std::unique_ptr<rweis_context, decltype(&rweis_context_destroy)> ctx(rweis_context_create(),
                                                                       &rweis_context_destroy);
  if (!ctx) {
    std::cerr << "error: out of memory\n";
    return kExitInternal;
  }
  if (threads >= 0) rweis_set_threads(ctx.get(), threads);
  rweis_set_precision(ctx.get(), precision);
  rweis_set_c_max(ctx.get(), c_max);
  rweis_set_timing(ctx.get(), no_timing ? 0 : 1);

  std::string command;
  rweis_status st = RWEIS_OK;
  int verdict = RWEIS_VERDICT_PASS;
  try {
    if (ded->parsed()) {
      command = "dedekind";
      st = rweis_dedekind(ctx.get(), ded_h.c_str(), ded_k.c_str(), ded_naive ? 1 : 0);
    } else if (kro->parsed()) {
      command = "kronecker";
      st = rweis_kronecker(ctx.get(), kro_a, kro_n);
    } else if (eta->parsed()) {
      command = "eta";
      if (eta_tau.empty()) {
        st = rweis_eta_series(ctx.get(), eta_level, eta_exp.c_str(), eta_terms);
      } else {
        const auto comma = eta_tau.find(',');
        if (comma == std::string::npos) throw CLI::ValidationError("--tau", "expected x,y");
        st = rweis_eta_eval(ctx.get(), eta_level, eta_exp.c_str(), std::stod(eta_tau.substr(0, comma)),
                            std::stod(eta_tau.substr(comma + 1)));
      }
    } else if (ord->parsed()) {
      command = "order";
      const auto [a, c] = parse_cusp_fraction(ord_cusp);
      st = rweis_order_at_cusp(ctx.get(), ord_level, ord_exp.c_str(), a, c);
    } else if (chi->parsed()) {
      command = "chi";
      const Parsed m = parse_matrix(chi_matrix);
      st = rweis_chi(ctx.get(), chi_p, chi_r1.c_str(), chi_rp.c_str(), m.a, m.b, m.c, m.d, chi_formula.c_str());
    } else if (eis->parsed()) {
      command = "eis";
      st = rweis_eisenstein(ctx.get(), eis_p, eis_r1.c_str(), eis_rp.c_str(), eis_k.c_str(), eis_cusp.c_str(),
                            eis_n_max);
    } else if (gam->parsed()) {
      command = "gamma";
      st = rweis_gamma(ctx.get(), gam_k.c_str(), gam_route.c_str(), gam_n, gam_extrapolate ? 1 : 0);
    } else if (ver->parsed()) {
      command = "verify";
      Json params = Json::object();
      auto put = [&](const char* key, const std::string& v) {
        if (!v.empty()) params[key] = v;
      };
      put("p", ver_p);
      put("n1", ver_n1);
      put("n_inf", ver_ninf);
      put("k", ver_k);
      put("r1", ver_r1);
      put("rp", ver_rp);
      if (ver_n_max >= 0) params["n_max"] = ver_n_max;
      if (ver_tol > 0) params["tol"] = ver_tol;
      params["c_max"] = c_max;
      st = rweis_verify(ctx.get(), ver_identity.c_str(), params.dump().c_str(), &verdict);
    } else if (prb->parsed()) {
      command = "probe";
      st = rweis_probe_condition3(ctx.get(), prb_p, prb_den, prb_bound, prb_samples, seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (st != RWEIS_OK) {
    std::cerr << "error: " << rweis_last_error(ctx.get()) << '\n';
    return (st == RWEIS_E_INVALID_ARGUMENT || st == RWEIS_E_DOMAIN) ? kExitUsage : kExitInternal;
  }

  const Json result = Json::parse(rweis_result_json(ctx.get()));
  if (format == "json") {
    std::cout << result.dump(2) << '\n';
  } else if (format == "csv") {
    render_csv(result, std::cout);
  } else {
    render_text(command, result, std::cout);
  }
  return verdict == RWEIS_VERDICT_FAIL ? kExitVerifyFailed : kExitOk;
}
