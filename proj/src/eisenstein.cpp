#include "rweis/eisenstein.hpp"

#include <cmath>
#include <numbers>

#include "parallel.hpp"
#include "rweis/gamma.hpp"

namespace rweis {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

long double to_ld(const Rational& x) {
  return static_cast<long double>(x.get_num().get_d()) / static_cast<long double>(x.get_den().get_d());
}

void check_precision(unsigned precision) {
  if (precision < 24 || precision > 64) throw InvalidArgument("precision must be in [24, 64] bits");
}

long double rounding_unit(unsigned precision) {
  return std::ldexp(1.0L, precision <= 53 ? -52 : -63);
}

std::int64_t reduce(__int128 x, std::int64_t q) {
  __int128 r = x % q;
  if (r < 0) r += q;
  return static_cast<std::int64_t>(r);
}

// Integer data of r1 = u1/D, rp = up/D shared by both cusps.
struct Exponents {
  std::int64_t p;
  std::int64_t D;
  std::int64_t u1;
  std::int64_t up;

  explicit Exponents(const PrimeLevelSpec& spec)
      : p(spec.p()), D(spec.eta_spec().D()) {
    const Rational a = spec.r1() * D;
    const Rational b = spec.rp() * D;
    if (!fits_int64(a.get_num()) || !fits_int64(b.get_num())) {
      throw DomainError("exponent numerators are too large");
    }
    u1 = to_int64(a.get_num());
    up = to_int64(b.get_num());
  }
};

// Adds S(n, c) for every n in ns into out at cusp infinity.
template <class Real>
std::int64_t sum_infty(const Exponents& ex, std::int64_t n_inf, std::int64_t c,
                       const std::vector<std::int64_t>& ns, std::vector<std::complex<Real>>& out) {
  const std::int64_t pc = ex.p * c;
  const __int128 q128 = static_cast<__int128>(12) * ex.D * pc;
  if (q128 >= (static_cast<__int128>(1) << 62)) throw DomainError("truncation bound too large");
  const auto q = static_cast<std::int64_t>(q128);
  std::vector<detail::ComplexSum<Real>> acc(ns.size());
  std::int64_t terms = 0;
  for (std::int64_t d = 1; d < pc; ++d) {
    if (gcd64(d, pc) != 1) continue;
    ++terms;
    const std::int64_t a = inverse_mod(d, pc);
    const std::int64_t n1 = dedekind_sum_6k(-d, pc);
    const std::int64_t n2 = dedekind_sum_6k(-d, c);
    const __int128 twelve_d = 12 * static_cast<__int128>(ex.D);
    const std::int64_t base = reduce(-twelve_d * n_inf * (a + d) - static_cast<__int128>(ex.u1) * n1 -
                                         static_cast<__int128>(ex.up) * ex.p * n2,
                                     q);
    const std::int64_t step = reduce(twelve_d * d, q);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const std::int64_t num = reduce(base + static_cast<__int128>(ns[i] % q) * step, q);
      acc[i].add(detail::unit_root<Real>(num, q));
    }
  }
  for (std::size_t i = 0; i < ns.size(); ++i) out[i] = acc[i].value();
  return terms;
}

// Adds the cusp-1 inner sum for every n in ns; zero when p | c.
template <class Real>
std::int64_t sum_one(const Exponents& ex, const Rational& n_inf, std::int64_t c,
                     const std::vector<std::int64_t>& ns, std::vector<std::complex<Real>>& out,
                     std::int64_t shift) {
  std::fill(out.begin(), out.end(), std::complex<Real>{});
  if (c % ex.p == 0) return 0;
  const std::int64_t m_inf = to_int64(n_inf.get_den());
  const std::int64_t w = to_int64(n_inf.get_num());
  const __int128 twelve_d = 12 * static_cast<__int128>(ex.D);
  std::vector<detail::ComplexSum<Real>> acc(ns.size());
  std::int64_t terms = 0;
  for (std::int64_t d = 0; d < c * m_inf; ++d) {
    if (gcd64(c, d) != 1) continue;
    ++terms;
    auto [a, b] = complete_matrix_cusp1(ex.p, c, d);
    a += shift * ex.p * c;
    b += shift * ex.p * d;
    const std::int64_t big_a = a + c;
    const __int128 q128 = twelve_d * m_inf * big_a * c;
    if (q128 >= (static_cast<__int128>(1) << 62)) throw DomainError("truncation bound too large");
    const auto q = static_cast<std::int64_t>(q128);
    const std::int64_t h = -b - d;
    const std::int64_t n1 = dedekind_sum_6k(h, big_a);
    const std::int64_t n2 = dedekind_sum_6k(h, big_a / ex.p);
    const std::int64_t base =
        reduce(-twelve_d * c * w * (static_cast<__int128>(a) + b + d) -
                   static_cast<__int128>(m_inf) * c *
                       (static_cast<__int128>(ex.u1) * n1 + static_cast<__int128>(ex.up) * ex.p * n2),
               q);
    const std::int64_t step = reduce(twelve_d * big_a * d, q);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const std::int64_t num = reduce(base + static_cast<__int128>(ns[i] % q) * step, q);
      acc[i].add(detail::unit_root<Real>(num, q));
    }
  }
  for (std::size_t i = 0; i < ns.size(); ++i) out[i] = acc[i].value();
  return terms;
}

template <class Real>
ComplexApprox single_sum(unsigned precision, const auto& fill) {
  std::vector<std::complex<Real>> out(1);
  const std::int64_t terms = fill(out);
  ComplexApprox r;
  r.re = out[0].real();
  r.im = out[0].imag();
  r.err = static_cast<long double>(terms) * rounding_unit(precision) * 4;
  return r;
}

ComplexApprox dispatch_single(unsigned precision, const auto& fill_double, const auto& fill_long) {
  check_precision(precision);
  if (precision <= 53) return single_sum<double>(precision, fill_double);
  return single_sum<long double>(precision, fill_long);
}

int sign_of(const EisensteinParams& params) {
  const Rational half = (params.k - params.spec.kprime()) / 2;
  const BigInt e = half.get_num();
  return mpz_odd_p(e.get_mpz_t()) ? -1 : 1;
}

// Batch engine for both cusps: ns are the integer indices n >= 1.
std::vector<CoeffResult> compute(const EisensteinParams& params, const std::vector<std::int64_t>& ns) {
  validate(params);
  const Exponents ex(params.spec);
  const long double k = to_ld(params.k);
  const bool at_infty = params.cusp == Cusp::Infty;
  const Rational n_inf = params.spec.n_inf();
  const std::int64_t m_inf = params.spec.m_inf();
  const std::int64_t n_inf_int = at_infty ? to_int64(n_inf.get_num()) : 0;
  const int threads = detail::resolve_threads(params.threads);
  const std::size_t width = ns.size() + 1;  // last slot: weighted term count

  auto run = [&](auto tag) {
    using Real = decltype(tag);
    return detail::reduce_over_c(
        params.c_max, width, threads, [&](std::int64_t c, std::vector<std::complex<long double>>& out) {
          std::vector<std::complex<Real>> sums(ns.size());
          const std::int64_t terms = at_infty ? sum_infty<Real>(ex, n_inf_int, c, ns, sums)
                                              : sum_one<Real>(ex, n_inf, c, ns, sums, 0);
          const long double w = std::pow(static_cast<long double>(c), -k);
          for (std::size_t i = 0; i < ns.size(); ++i) {
            out[i] = std::complex<long double>(sums[i].real(), sums[i].imag()) * w;
          }
          out[ns.size()] = w * static_cast<long double>(terms);
        });
  };
  const std::vector<std::complex<long double>> totals =
      params.precision <= 53 ? run(double{}) : run(static_cast<long double>(0));

  const long double gamma_k = gamma_reference(k).re;
  const long double base_scale = at_infty ? static_cast<long double>(params.spec.p())
                                          : static_cast<long double>(m_inf);
  const long double prefactor = sign_of(params) * std::pow(2 * kPi, k) / (gamma_k * std::pow(base_scale, k));
  // Inner sums have at most p c (infinity) or m_inf c (cusp 1) terms.
  const long double tail_scale = base_scale * std::pow(static_cast<long double>(params.c_max), 2 - k) / (k - 2);
  const long double eps = rounding_unit(params.precision);

  std::vector<CoeffResult> out;
  out.reserve(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const long double scale = prefactor * std::pow(static_cast<long double>(ns[i]), k - 1);
    CoeffResult r;
    r.n = at_infty ? Rational(ns[i]) : make_rational(ns[i], m_inf);
    r.c_max = params.c_max;
    r.value.re = scale * totals[i].real();
    r.value.im = scale * totals[i].imag();
    r.tail_bound = std::fabs(scale) * tail_scale;
    r.value.err = r.tail_bound + std::fabs(scale) * totals[ns.size()].real() * eps * 8;
    out.push_back(r);
  }
  return out;
}

CoeffResult exact_result(const EisensteinParams& params, Rational n, long double value) {
  CoeffResult r;
  r.n = std::move(n);
  r.value.re = value;
  r.value.im = 0;
  r.value.err = 0;
  r.tail_bound = 0;
  r.c_max = params.c_max;
  return r;
}

}  // namespace

std::string to_string(Cusp cusp) { return cusp == Cusp::Infty ? "infty" : "one"; }

Cusp parse_cusp(std::string_view text) {
  if (text == "infty" || text == "inf") return Cusp::Infty;
  if (text == "one" || text == "1") return Cusp::One;
  throw InvalidArgument("cusp must be infty or one");
}

void validate(const EisensteinParams& params) {
  if (params.c_max < 1) throw InvalidArgument("c_max must be at least 1");
  check_precision(params.precision);
  if (params.k <= 2) throw DomainError("weight k must exceed 2");
  if (!is_integer((params.k - params.spec.kprime()) / 2)) {
    throw DomainError("(k - k')/2 must be an integer");
  }
  if (params.cusp == Cusp::Infty && !is_integer(params.spec.n_inf())) {
    throw DomainError("the series at infinity needs (r1 + p rp)/24 integral");
  }
  if (params.cusp == Cusp::One && !is_integer(params.spec.n_one())) {
    throw DomainError("the series at 1 needs (p r1 + rp)/24 integral");
  }
}

ComplexApprox exp_sum_infty(const PrimeLevelSpec& spec, std::int64_t n, std::int64_t c,
                            unsigned precision) {
  if (c < 1) throw InvalidArgument("c must be positive");
  if (!is_integer(spec.n_inf())) throw DomainError("exp_sum_infty needs (r1 + p rp)/24 integral");
  const Exponents ex(spec);
  const std::int64_t n_inf = to_int64(spec.n_inf().get_num());
  const std::vector<std::int64_t> ns{n};
  return dispatch_single(
      precision, [&](std::vector<std::complex<double>>& o) { return sum_infty<double>(ex, n_inf, c, ns, o); },
      [&](std::vector<std::complex<long double>>& o) { return sum_infty<long double>(ex, n_inf, c, ns, o); });
}

CoeffResult coeff_infty(const EisensteinParams& params, std::int64_t n) {
  if (params.cusp != Cusp::Infty) throw InvalidArgument("coeff_infty needs cusp = infty");
  if (n < 0) throw InvalidArgument("n must be non-negative");
  validate(params);
  if (n == 0) return exact_result(params, Rational(0), 1);
  return compute(params, {n}).front();
}

std::pair<std::int64_t, std::int64_t> complete_matrix_cusp1(std::int64_t p, std::int64_t c, std::int64_t d) {
  if (c < 1) throw InvalidArgument("c must be positive");
  if (gcd64(c, d) != 1) throw DomainError("gcd(c, d) must be 1");
  if (gcd64(c, p) != 1) throw DomainError("gcd(c, p) must be 1");
  // a = x mod c with x = d^{-1}, a = -c mod p: a = x + c * t with c t = -c - x mod p.
  const std::int64_t x = inverse_mod(d, c);
  const std::int64_t t = mod_floor((mod_floor(-c - x, p)) * inverse_mod(c, p), p);
  std::int64_t a = x + c * t;  // in [0, pc)
  const std::int64_t pc = p * c;
  // Smallest representative with a + c > 0.
  a = -c + 1 + mod_floor(a - (-c + 1), pc);
  const __int128 ad = static_cast<__int128>(a) * d - 1;
  return {a, static_cast<std::int64_t>(ad / c)};
}

ComplexApprox exp_sum_one(const PrimeLevelSpec& spec, std::int64_t n, std::int64_t c, unsigned precision,
                          std::int64_t shift) {
  if (c < 1) throw InvalidArgument("c must be positive");
  if (shift < 0) throw InvalidArgument("shift must be non-negative");
  const Exponents ex(spec);
  const Rational n_inf = spec.n_inf();
  const std::vector<std::int64_t> ns{n};
  return dispatch_single(
      precision,
      [&](std::vector<std::complex<double>>& o) { return sum_one<double>(ex, n_inf, c, ns, o, shift); },
      [&](std::vector<std::complex<long double>>& o) {
        return sum_one<long double>(ex, n_inf, c, ns, o, shift);
      });
}

CoeffResult coeff_one(const EisensteinParams& params, std::int64_t n) {
  if (params.cusp != Cusp::One) throw InvalidArgument("coeff_one needs cusp = one");
  if (n < 0) throw InvalidArgument("n must be non-negative");
  validate(params);
  if (n == 0) return exact_result(params, Rational(0), 0);
  return compute(params, {n}).front();
}

ComplexApprox kloosterman(std::int64_t r3, std::int64_t m, std::int64_t n, std::int64_t c, unsigned precision) {
  if (c < 1) throw InvalidArgument("c must be positive");
  auto fill = [&](auto& o) {
    using Real = typename std::decay_t<decltype(o)>::value_type::value_type;
    detail::ComplexSum<Real> acc;
    std::int64_t terms = 0;
    for (std::int64_t r = 0; r < c; ++r) {
      if (gcd64(r, c) != 1) continue;
      int psi = 1;
      if (r3 != 0) {
        const int sym = kronecker(r, 3);
        if (sym == 0) continue;
        psi = (sym == -1 && r3 % 2 != 0) ? -1 : 1;
      }
      ++terms;
      const std::int64_t rinv = inverse_mod(r, c);
      const std::int64_t num =
          reduce(static_cast<__int128>(mod_floor(m, c)) * r + static_cast<__int128>(mod_floor(n, c)) * rinv, c);
      const std::complex<Real> z = detail::unit_root<Real>(num, c);
      acc.add(psi == 1 ? z : -z);
    }
    o[0] = acc.value();
    return terms;
  };
  return dispatch_single(precision, fill, fill);
}

Rational classical_coeff(std::int64_t p, std::int64_t k, std::int64_t n) {
  if (!is_prime(p)) throw InvalidArgument("p must be prime");
  if (k < 4 || k % 2 != 0) throw DomainError("classical_coeff needs an even k >= 4");
  if (n < 0) throw InvalidArgument("n must be non-negative");
  if (n == 0) return 1;
  BigInt pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  const Rational e(k - 1);
  const Rational s_np = std::get<Rational>(sigma(e, make_rational(n, p)));
  const Rational s_n = std::get<Rational>(sigma(e, Rational(n)));
  const Rational bk = bernoulli(static_cast<unsigned>(k));
  return -(Rational(2 * k) / bk) / Rational(pk - 1) * (Rational(pk) * s_np - s_n);
}

std::vector<CoeffResult> qexpansion(const EisensteinParams& params, std::int64_t n_max) {
  if (n_max < 0) throw InvalidArgument("n_max must be non-negative");
  validate(params);
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n <= n_max; ++n) ns.push_back(n);
  std::vector<CoeffResult> out;
  out.push_back(exact_result(params, Rational(0), params.cusp == Cusp::Infty ? 1 : 0));
  if (!ns.empty()) {
    auto rest = compute(params, ns);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

}  // namespace rweis
