#include "rweis/verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>

#include "rweis/eisenstein.hpp"
#include "rweis/eta.hpp"
#include "rweis/gamma.hpp"

namespace rweis {

namespace {

using Clock = std::chrono::steady_clock;

long double to_ld(const Rational& x) { return to_long_double(GammaArg(x)); }

void add_row(IdentityReport& rep, std::string n, std::string exact, std::complex<long double> exact_value,
             const ComplexApprox& numeric, long double tail, bool informational) {
  ReportRow row;
  row.n = std::move(n);
  row.exact = std::move(exact);
  row.exact_re = exact_value.real();
  row.exact_im = exact_value.imag();
  row.numeric_re = numeric.re;
  row.numeric_im = numeric.im;
  const std::complex<long double> diff(numeric.re - exact_value.real(), numeric.im - exact_value.imag());
  row.residual = std::abs(diff) / std::max(1.0L, std::abs(exact_value));
  row.tail_bound = tail;
  row.informational = informational;
  rep.rows.push_back(std::move(row));
}

void finish(IdentityReport& rep, Clock::time_point start) {
  bool any_hard = false;
  bool ok = true;
  for (const auto& row : rep.rows) {
    if (row.informational) continue;
    any_hard = true;
    if (!(row.residual <= rep.tol)) ok = false;
  }
  rep.verdict = !any_hard ? Verdict::Informational : (ok ? Verdict::Pass : Verdict::Fail);
  rep.seconds = std::chrono::duration<double>(Clock::now() - start).count();
}

double pick_tol(const VerifyOptions& opt, const Rational& k) {
  return opt.tol > 0 ? opt.tol : default_tolerance(k);
}

EisensteinParams make_params(const PrimeLevelSpec& spec, const Rational& k, Cusp cusp,
                             const VerifyOptions& opt) {
  EisensteinParams params{spec, k, cusp, opt.c_max, opt.precision, opt.threads};
  return params;
}

void common_params(IdentityReport& rep, const VerifyOptions& opt) {
  rep.params.emplace_back("n_max", std::to_string(opt.n_max));
  rep.params.emplace_back("c_max", std::to_string(opt.c_max));
  rep.params.emplace_back("precision", std::to_string(opt.precision));
}

void check_window(std::int64_t p, const Rational& x, const char* name) {
  if (p == 2) {
    if (!(x > Rational(1, 2) && x <= 1)) throw DomainError(std::string(name) + " must lie in (1/2, 1] for p = 2");
  } else if (p == 3) {
    if (!(x > Rational(2, 3) && x <= 1)) throw DomainError(std::string(name) + " must lie in (2/3, 1] for p = 3");
  } else {
    throw InvalidArgument("p must be 2 or 3");
  }
}

void check_options(const VerifyOptions& opt) {
  if (opt.n_max < 0) throw InvalidArgument("n_max must be non-negative");
  if (opt.c_max < 1) throw InvalidArgument("c_max must be at least 1");
}

// -9 sum_{m | n} (m|3) m^2 for n >= 1.
Rational divisor_sum_coefficient(std::int64_t n) {
  if (n == 0) return 1;
  std::int64_t s = 0;
  for (std::int64_t m = 1; m <= n; ++m) {
    if (n % m == 0) s += kronecker(m, 3) * m * m;
  }
  return Rational(-9 * s);
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t f = 2; f <= n / f; ++f) {
    int e = 0;
    while (n % f == 0) {
      n /= f;
      ++e;
    }
    if (e > 0) out.emplace_back(f, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "informational";
  }
}

double default_tolerance(const Rational& k) {
  const Rational gap = k - 2;
  if (gap >= 1) return 1e-3;
  if (gap >= Rational(1, 2)) return 1e-2;
  return 5e-2;
}

bool is_informational_weight(const Rational& k) { return k - 2 < Rational(1, 5); }

IdentityReport verify_thm71(std::int64_t p, const Rational& n1, const VerifyOptions& opt) {
  const auto start = Clock::now();
  check_window(p, n1, "n1");
  check_options(opt);
  const Rational r1 = n1 * (p == 2 ? 16 : 9);
  const Rational rp = n1 * (p == 2 ? -8 : -3);
  const Rational k = n1 * (p == 2 ? 4 : 3);
  const PrimeLevelSpec spec(p, r1, rp);

  IdentityReport rep;
  rep.identity = "thm71";
  rep.params = {{"p", std::to_string(p)}, {"n1", to_string(n1)}, {"k", to_string(k)},
                {"r1", to_string(r1)},    {"rp", to_string(rp)}};
  common_params(rep, opt);
  rep.tol = pick_tol(opt, k);
  const bool info = is_informational_weight(k);

  const FracSeries exact = eta_quotient_series(spec.eta_spec(), static_cast<std::size_t>(std::max<std::int64_t>(opt.n_max, 1)));
  const auto coeffs = qexpansion(make_params(spec, k, Cusp::Infty, opt), opt.n_max);
  for (const auto& c : coeffs) {
    const auto n = static_cast<std::size_t>(to_int64(c.n.get_num()));
    add_row(rep, to_string(c.n), to_string(exact.coeffs[n]), {to_ld(exact.coeffs[n]), 0}, c.value, c.tail_bound,
            info);
  }
  finish(rep, start);
  return rep;
}

IdentityReport verify_thm72(std::int64_t p, const Rational& n_inf, const VerifyOptions& opt) {
  const auto start = Clock::now();
  check_window(p, n_inf, "n_inf");
  check_options(opt);
  const Rational r1 = n_inf * (p == 2 ? -8 : -3);
  const Rational rp = n_inf * (p == 2 ? 16 : 9);
  const Rational k = n_inf * (p == 2 ? 4 : 3);
  const PrimeLevelSpec spec(p, r1, rp);
  const std::int64_t m_inf = spec.m_inf();

  IdentityReport rep;
  rep.identity = "thm72";
  rep.params = {{"p", std::to_string(p)}, {"n_inf", to_string(n_inf)}, {"k", to_string(k)},
                {"r1", to_string(r1)},    {"rp", to_string(rp)}};
  common_params(rep, opt);
  rep.tol = pick_tol(opt, k);
  const bool info = is_informational_weight(k);

  // 2^{8 n} for p = 2; 3^{9n/2} e(-n/4) for p = 3.
  const long double ninf = to_ld(n_inf);
  std::complex<long double> scale;
  std::string scale_text;
  if (p == 2) {
    scale = std::pow(2.0L, 8 * ninf);
    scale_text = "2^(" + to_string(Rational(n_inf * 8)) + ")";
  } else {
    scale = std::pow(3.0L, 4.5L * ninf) * std::polar(1.0L, -std::numbers::pi_v<long double> * ninf / 2);
    scale_text = "3^(" + to_string(Rational(n_inf * 9 / 2)) + ")*e(" + to_string(Rational(-n_inf / 4)) + ")";
  }
  rep.params.emplace_back("scale", scale_text);

  // Coefficient of q^{j/m_inf} on the eta side is scale * A(j/m_inf - n_inf).
  const std::int64_t top = opt.n_max / m_inf + 1;
  const FracSeries exact = eta_quotient_series(spec.eta_spec(), static_cast<std::size_t>(top));
  const auto coeffs = qexpansion(make_params(spec, k, Cusp::One, opt), opt.n_max);
  for (const auto& c : coeffs) {
    const Rational shifted = c.n - n_inf;
    std::complex<long double> value = 0;
    std::string text = "0";
    if (is_integer(shifted) && shifted >= 0) {
      const Rational& a = exact.coeffs[static_cast<std::size_t>(to_int64(shifted.get_num()))];
      value = scale * to_ld(a);
      text = scale_text + "*" + to_string(a);
    }
    add_row(rep, to_string(c.n), text, value, c.value, c.tail_bound, info);
  }
  finish(rep, start);
  return rep;
}

IdentityReport verify_classical(std::int64_t p, std::int64_t k, const Rational& r1, const Rational& rp,
                                const VerifyOptions& opt) {
  const auto start = Clock::now();
  check_options(opt);
  const PrimeLevelSpec spec(p, r1, rp);
  if (!is_integer(spec.n_inf()) || !is_trivial_condition3(spec)) {
    throw DomainError("verify_classical needs a trivial character (r1 in 2Z, r1+rp in 4Z, p r1+rp in 24Z)");
  }
  IdentityReport rep;
  rep.identity = "classical";
  rep.params = {{"p", std::to_string(p)}, {"k", std::to_string(k)}, {"r1", to_string(r1)}, {"rp", to_string(rp)}};
  common_params(rep, opt);
  rep.tol = pick_tol(opt, Rational(k));
  const auto coeffs = qexpansion(make_params(spec, Rational(k), Cusp::Infty, opt), opt.n_max);
  for (const auto& c : coeffs) {
    const Rational exact = classical_coeff(p, k, to_int64(c.n.get_num()));
    add_row(rep, to_string(c.n), to_string(exact), {to_ld(exact), 0}, c.value, c.tail_bound, false);
  }
  finish(rep, start);
  return rep;
}

IdentityReport verify_carlitz(const VerifyOptions& opt) {
  const auto start = Clock::now();
  check_options(opt);
  const PrimeLevelSpec spec(3, Rational(9), Rational(-3));
  IdentityReport rep;
  rep.identity = "carlitz";
  rep.params = {{"p", "3"}, {"k", "3"}, {"r1", "9"}, {"rp", "-3"}};
  common_params(rep, opt);
  rep.tol = pick_tol(opt, Rational(3));

  const FracSeries eta = eta_quotient_series(spec.eta_spec(), static_cast<std::size_t>(std::max<std::int64_t>(opt.n_max, 1)));
  for (std::int64_t n = 0; n <= opt.n_max; ++n) {
    if (eta.coeffs[static_cast<std::size_t>(n)] != divisor_sum_coefficient(n)) {
      throw NumericalError("eta expansion disagrees with the divisor sum at n = " + std::to_string(n));
    }
  }
  rep.params.emplace_back("eta_series_exact_match", "true");
  const auto coeffs = qexpansion(make_params(spec, Rational(3), Cusp::Infty, opt), opt.n_max);
  for (const auto& c : coeffs) {
    const Rational exact = divisor_sum_coefficient(to_int64(c.n.get_num()));
    add_row(rep, to_string(c.n), to_string(exact), {to_ld(exact), 0}, c.value, c.tail_bound, false);
  }
  finish(rep, start);
  return rep;
}

PowerProduct& PowerProduct::mul(const Rational& c) {
  coefficient *= c;
  return *this;
}

PowerProduct& PowerProduct::mul_pi(const Rational& e) {
  Rational& slot = exponents["pi"];
  slot += e;
  if (slot == 0) exponents.erase("pi");
  return *this;
}

PowerProduct& PowerProduct::mul_power(std::int64_t base, const Rational& e) {
  if (base < 1) throw InvalidArgument("PowerProduct: base must be positive");
  for (const auto& [q, m] : factor(base)) {
    const std::string key = std::to_string(q);
    Rational total = exponents[key] + e * m;
    // Integral part moves into the coefficient.
    const BigInt whole = floor(total);
    total -= whole;
    BigInt qpow;
    const BigInt absw = abs(whole);
    mpz_pow_ui(qpow.get_mpz_t(), BigInt(std::to_string(q)).get_mpz_t(), absw.get_ui());
    if (whole >= 0) {
      coefficient *= qpow;
    } else {
      coefficient /= qpow;
    }
    if (total == 0) {
      exponents.erase(key);
    } else {
      exponents[key] = total;
    }
  }
  return *this;
}

std::string PowerProduct::to_string() const {
  std::string s = rweis::to_string(coefficient);
  for (const auto& [base, e] : exponents) s += "*" + base + "^(" + rweis::to_string(e) + ")";
  return s;
}

bool operator==(const PowerProduct& x, const PowerProduct& y) {
  return x.coefficient == y.coefficient && x.exponents == y.exponents;
}

IdentityReport verify_gamma_examples(const VerifyOptions& opt) {
  const auto start = Clock::now();
  check_options(opt);
  IdentityReport rep;
  rep.identity = "gamma-examples";
  rep.params = {{"c_max", std::to_string(opt.c_max)}, {"precision", std::to_string(opt.precision)}};

  // General prefactor (2 pi)^k n^{k-1} / A_p(n) * p^{-k}, the p^{-k} coming from (pc)^{-k}.
  auto general = [](std::int64_t p, const Rational& k, std::int64_t n, const Rational& a) {
    PowerProduct g;
    g.mul(1 / a).mul_power(2, k).mul_pi(k).mul_power(n, k - 1).mul_power(p, -k);
    return g;
  };
  const Rational k83(8, 3);
  const Rational a83 = eta_coefficient(2, k83 * 4, k83 * -2, 1);
  PowerProduct printed83;
  printed83.mul(Rational(-3, 32)).mul_pi(k83);
  const PowerProduct general83 = general(2, k83, 1, a83);

  const Rational k157(15, 7);
  const Rational a157 = eta_coefficient(3, k157 * 3, -k157, 2);
  PowerProduct printed157;
  printed157.mul(Rational(49, 540)).mul_power(2, k157).mul_pi(k157).mul_power(3, -k157).mul_power(2, Rational(8, 7));
  const PowerProduct general157 = general(3, k157, 2, a157);

  rep.params.emplace_back("prefactor_8_3", printed83.to_string());
  rep.params.emplace_back("prefactor_8_3_general", general83.to_string());
  rep.params.emplace_back("prefactor_8_3_match", printed83 == general83 ? "true" : "false");
  rep.params.emplace_back("prefactor_15_7", printed157.to_string());
  rep.params.emplace_back("prefactor_15_7_general", general157.to_string());
  rep.params.emplace_back("prefactor_15_7_match", printed157 == general157 ? "true" : "false");

  rep.tol = opt.tol > 0 ? opt.tol : default_tolerance(k83);

  GammaRequest req;
  req.c_max = opt.c_max;
  req.precision = opt.precision;
  req.threads = opt.threads;

  req.k = k83;
  req.route = GammaRoute::P2;
  const GammaResult g83 = gamma_series(req);
  add_row(rep, "Gamma(8/3)", "gamma_reference", {gamma_reference(to_ld(k83)).re, 0}, g83.value, g83.tail_bound,
          false);

  req.k = k157;
  req.route = GammaRoute::P3;
  req.n_choice = 2;
  const GammaResult g157 = gamma_series(req);
  add_row(rep, "Gamma(15/7)", "gamma_reference", {gamma_reference(to_ld(k157)).re, 0}, g157.value,
          g157.tail_bound, true);

  // A prefactor mismatch is a hard failure regardless of the numeric rows.
  finish(rep, start);
  if (!(printed83 == general83) || !(printed157 == general157)) rep.verdict = Verdict::Fail;
  return rep;
}

}  // namespace rweis
