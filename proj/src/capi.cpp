#include "rweis.h"

#include <cstdlib>
#include <new>
#include <string>

#include "rweis/cover.hpp"
#include "rweis/multiplier.hpp"
#include "serialize.hpp"

using rweis::json::Json;

struct rweis_context {
  int threads = 0;
  unsigned precision = 53;
  std::int64_t c_max = 2000;
  bool timing = true;
  std::string error;
  std::string result;
};

namespace {

template <class Fn>
rweis_status guarded(rweis_context* ctx, Fn&& fn) {
  if (ctx == nullptr) return RWEIS_E_INVALID_ARGUMENT;
  ctx->error.clear();
  try {
    Json out = fn();
    ctx->result = out.dump();
    return RWEIS_OK;
  } catch (const rweis::InvalidArgument& e) {
    ctx->error = e.what();
    return RWEIS_E_INVALID_ARGUMENT;
  } catch (const rweis::DomainError& e) {
    ctx->error = e.what();
    return RWEIS_E_DOMAIN;
  } catch (const rweis::NumericalError& e) {
    ctx->error = e.what();
    return RWEIS_E_NUMERICAL;
  } catch (const nlohmann::json::exception& e) {
    ctx->error = std::string("bad JSON parameters: ") + e.what();
    return RWEIS_E_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    ctx->error = e.what();
    return RWEIS_E_INTERNAL;
  } catch (...) {
    ctx->error = "unknown failure";
    return RWEIS_E_INTERNAL;
  }
}

std::string_view need(const char* s, const char* what) {
  if (s == nullptr) throw rweis::InvalidArgument(std::string(what) + " is missing");
  return s;
}

rweis::Rational rational_arg(const char* s, const char* what) { return rweis::parse_rational(need(s, what)); }

rweis::GammaArg gamma_arg(std::string_view text) {
  if (text.find_first_of(".eE") == std::string_view::npos) return rweis::parse_rational(text);
  const std::string s(text);
  char* end = nullptr;
  const long double v = std::strtold(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw rweis::InvalidArgument("not a number: '" + s + "'");
  return v;
}

// Reads a Rational from a JSON value given as "p/q" or an integer.
rweis::Rational rational_field(const Json& j, const char* key, const rweis::Rational& fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_string()) return rweis::parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return rweis::make_rational(v.get<std::int64_t>(), 1);
  throw rweis::InvalidArgument(std::string(key) + " must be an integer or a \"p/q\" string");
}

std::int64_t int_field(const Json& j, const char* key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string()) return rweis::to_int64(rweis::parse_integer(v.get<std::string>()));
  throw rweis::InvalidArgument(std::string(key) + " must be an integer");
}

double double_field(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number()) throw rweis::InvalidArgument(std::string(key) + " must be a number");
  return v.get<double>();
}

// Recognizes the closed-form family and parameter t of a matrix, or returns 0.
std::pair<int, std::int64_t> detect_family(std::int64_t p, const rweis::Matrix2& m) {
  for (int family = 1; family <= 4; ++family) {
    std::int64_t t = 0;
    switch (family) {
      case 1: t = -m.a; break;
      case 2: t = m.a; break;
      case 3: t = (p + 1) % 2 == 0 ? -m.a / ((p + 1) / 2) : 0; break;
      default: t = (p + 1) % 2 == 0 ? m.a / ((p + 1) / 2) : 0; break;
    }
    if (t < 1) continue;
    try {
      if (rweis::special_family_matrix(p, family, t) == m) return {family, t};
    } catch (const rweis::DomainError&) {
    }
  }
  return {0, 0};
}

Json phase_json(const rweis::Phase& ph, unsigned precision) {
  const rweis::ComplexApprox z = rweis::e_of(ph, precision);
  return Json{{"phase", rweis::to_string(ph.value())}, {"re", static_cast<double>(z.re)},
              {"im", static_cast<double>(z.im)}};
}

}  // namespace

extern "C" {

const char* rweis_version(void) { return "1.0.0"; }

rweis_context* rweis_context_create(void) { return new (std::nothrow) rweis_context(); }

void rweis_context_destroy(rweis_context* ctx) { delete ctx; }

rweis_status rweis_set_threads(rweis_context* ctx, int threads) {
  if (ctx == nullptr || threads < 0) return RWEIS_E_INVALID_ARGUMENT;
  ctx->threads = threads;
  return RWEIS_OK;
}

rweis_status rweis_set_precision(rweis_context* ctx, unsigned bits) {
  if (ctx == nullptr) return RWEIS_E_INVALID_ARGUMENT;
  if (bits < 24 || bits > 64) {
    ctx->error = "precision must be in [24, 64] bits";
    return RWEIS_E_INVALID_ARGUMENT;
  }
  ctx->precision = bits;
  return RWEIS_OK;
}

rweis_status rweis_set_c_max(rweis_context* ctx, int64_t c_max) {
  if (ctx == nullptr) return RWEIS_E_INVALID_ARGUMENT;
  if (c_max < 1) {
    ctx->error = "c_max must be at least 1";
    return RWEIS_E_INVALID_ARGUMENT;
  }
  ctx->c_max = c_max;
  return RWEIS_OK;
}

rweis_status rweis_set_timing(rweis_context* ctx, int enabled) {
  if (ctx == nullptr) return RWEIS_E_INVALID_ARGUMENT;
  ctx->timing = enabled != 0;
  return RWEIS_OK;
}

const char* rweis_last_error(const rweis_context* ctx) { return ctx == nullptr ? "null context" : ctx->error.c_str(); }

const char* rweis_result_json(const rweis_context* ctx) { return ctx == nullptr ? "" : ctx->result.c_str(); }

rweis_status rweis_dedekind(rweis_context* ctx, const char* h, const char* k, int naive) {
  return guarded(ctx, [&] {
    const rweis::BigInt hh = rweis::parse_integer(need(h, "h"));
    const rweis::BigInt kk = rweis::parse_integer(need(k, "k"));
    if (kk < 1) throw rweis::InvalidArgument("k must be positive");
    const rweis::Rational v = naive != 0 ? rweis::dedekind_sum_naive(hh, kk) : rweis::dedekind_sum(hh, kk);
    return Json{{"h", rweis::to_string(hh)}, {"k", rweis::to_string(kk)}, {"value", rweis::to_string(v)}};
  });
}

rweis_status rweis_kronecker(rweis_context* ctx, int64_t a, int64_t n) {
  return guarded(ctx, [&] { return Json{{"a", a}, {"n", n}, {"value", rweis::kronecker(a, n)}}; });
}

rweis_status rweis_eta_series(rweis_context* ctx, int64_t level, const char* exponents, int64_t terms) {
  return guarded(ctx, [&] {
    if (terms < 1) throw rweis::InvalidArgument("terms must be at least 1");
    const rweis::EtaQuotientSpec spec(level, rweis::json::parse_exponents(need(exponents, "exponents")));
    // "terms" counts coefficients, so the truncation order is terms - 1.
    rweis::FracSeries s = rweis::eta_quotient_series(spec, static_cast<std::size_t>(std::max<int64_t>(terms - 1, 1)));
    s.coeffs.resize(static_cast<std::size_t>(terms));
    return rweis::json::to_json(s);
  });
}

rweis_status rweis_order_at_cusp(rweis_context* ctx, int64_t level, const char* exponents, int64_t a, int64_t c) {
  return guarded(ctx, [&] {
    const rweis::EtaQuotientSpec spec(level, rweis::json::parse_exponents(need(exponents, "exponents")));
    return Json{{"a", a}, {"c", c}, {"value", rweis::to_string(rweis::order_at_cusp(spec, a, c))}};
  });
}

rweis_status rweis_eta_eval(rweis_context* ctx, int64_t level, const char* exponents, double tau_re,
                            double tau_im) {
  return guarded(ctx, [&] {
    const rweis::EtaQuotientSpec spec(level, rweis::json::parse_exponents(need(exponents, "exponents")));
    const auto z = rweis::eval_eta_quotient(spec, {tau_re, tau_im}, ctx->precision);
    return rweis::json::to_json(z);
  });
}

rweis_status rweis_chi(rweis_context* ctx, int64_t p, const char* r1, const char* rp, int64_t a, int64_t b,
                       int64_t c, int64_t d, const char* formula) {
  return guarded(ctx, [&] {
    const rweis::PrimeLevelSpec spec(p, rational_arg(r1, "r1"), rational_arg(rp, "rp"));
    const rweis::Matrix2 m{a, b, c, d};
    if (m.det() != 1) throw rweis::DomainError("matrix is not in SL2(Z)");
    const std::string f = formula == nullptr ? "general" : formula;
    Json extra = Json::object();
    rweis::Phase ph;
    if (f == "general") {
      const rweis::EtaQuotientSpec eta = spec.eta_spec();
      ph = rweis::chi_general(eta, rweis::lift(m, eta.cover_order()));
    } else if (f == "special") {
      const auto [family, t] = detect_family(p, m);
      if (family == 0) throw rweis::DomainError("matrix is not in any of the four special families");
      ph = rweis::chi_special(spec, family, t);
      extra = Json{{"family", family}, {"t", t}};
    } else if (f == "integer") {
      ph = rweis::chi_integer(spec, m);
    } else {
      throw rweis::InvalidArgument("formula must be general, special or integer");
    }
    Json out = phase_json(ph, ctx->precision);
    out["formula"] = f;
    out["matrix"] = Json::array({a, b, c, d});
    for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = it.value();
    return out;
  });
}

rweis_status rweis_eisenstein(rweis_context* ctx, int64_t p, const char* r1, const char* rp, const char* k,
                              const char* cusp, int64_t n_max) {
  return guarded(ctx, [&] {
    rweis::EisensteinParams params{rweis::PrimeLevelSpec(p, rational_arg(r1, "r1"), rational_arg(rp, "rp")),
                                   rational_arg(k, "k"),
                                   rweis::parse_cusp(cusp == nullptr ? "infty" : cusp),
                                   ctx->c_max,
                                   ctx->precision,
                                   ctx->threads};
    const auto coeffs = rweis::qexpansion(params, n_max);
    Json list = Json::array();
    for (const auto& r : coeffs) list.push_back(rweis::json::to_json(r));
    return Json{{"p", p},
                {"r1", rweis::to_string(params.spec.r1())},
                {"rp", rweis::to_string(params.spec.rp())},
                {"k", rweis::to_string(params.k)},
                {"cusp", rweis::to_string(params.cusp)},
                {"c_max", params.c_max},
                {"coefficients", std::move(list)}};
  });
}

rweis_status rweis_gamma(rweis_context* ctx, const char* k, const char* route, int64_t n, int extrapolate) {
  return guarded(ctx, [&] {
    rweis::GammaRequest req;
    req.k = gamma_arg(need(k, "k"));
    req.route = rweis::parse_gamma_route(route == nullptr ? "auto" : route);
    req.n_choice = n;
    req.c_max = ctx->c_max;
    req.precision = ctx->precision;
    req.extrapolate = extrapolate != 0;
    req.threads = ctx->threads;
    return rweis::json::to_json(rweis::gamma_series(req));
  });
}

rweis_status rweis_verify(rweis_context* ctx, const char* identity, const char* params_json, int* verdict) {
  return guarded(ctx, [&] {
    const std::string id(need(identity, "identity"));
    const Json params = (params_json == nullptr || *params_json == '\0') ? Json::object() : Json::parse(params_json);
    if (!params.is_object()) throw rweis::InvalidArgument("verify parameters must be a JSON object");
    rweis::VerifyOptions opt;
    opt.n_max = int_field(params, "n_max", id == "classical" ? 10 : 5);
    opt.c_max = int_field(params, "c_max", ctx->c_max);
    opt.tol = double_field(params, "tol", 0);
    opt.precision = ctx->precision;
    opt.threads = ctx->threads;
    rweis::IdentityReport rep;
    if (id == "thm71") {
      rep = rweis::verify_thm71(int_field(params, "p", 3), rational_field(params, "n1", 1), opt);
    } else if (id == "thm72") {
      rep = rweis::verify_thm72(int_field(params, "p", 2), rational_field(params, "n_inf", 1), opt);
    } else if (id == "carlitz") {
      rep = rweis::verify_carlitz(opt);
    } else if (id == "classical") {
      rep = rweis::verify_classical(int_field(params, "p", 2), int_field(params, "k", 4),
                                    rational_field(params, "r1", 8), rational_field(params, "rp", 8), opt);
    } else if (id == "gamma-examples") {
      rep = rweis::verify_gamma_examples(opt);
    } else {
      throw rweis::InvalidArgument("unknown identity '" + id + "'");
    }
    if (verdict != nullptr) {
      *verdict = rep.verdict == rweis::Verdict::Pass   ? RWEIS_VERDICT_PASS
                 : rep.verdict == rweis::Verdict::Fail ? RWEIS_VERDICT_FAIL
                                                       : RWEIS_VERDICT_INFORMATIONAL;
    }
    return rweis::json::to_json(rep, ctx->timing);
  });
}

rweis_status rweis_probe_condition3(rweis_context* ctx, int64_t p, int64_t max_den, int64_t bound, int samples,
                                    uint64_t seed) {
  return guarded(ctx, [&] {
    if (max_den < 1 || bound < 1 || samples < 0) throw rweis::InvalidArgument("probe bounds must be positive");
    if (!rweis::is_prime(p)) throw rweis::InvalidArgument("p must be prime");
    Json list = Json::array();
    for (const auto& spec : rweis::probe_condition3_converse(p, max_den, bound, samples, seed)) {
      list.push_back(Json{{"r1", rweis::to_string(spec.r1())}, {"rp", rweis::to_string(spec.rp())}});
    }
    return Json{{"p", p},         {"max_den", max_den}, {"bound", bound},
                {"samples", samples}, {"seed", seed},   {"candidates", std::move(list)}};
  });
}

}  // extern "C"
