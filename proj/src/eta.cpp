#include "rweis/eta.hpp"

#include <cmath>
#include <numbers>

namespace rweis {

namespace {

using Complex = std::complex<long double>;

constexpr long double kPi = std::numbers::pi_v<long double>;

// Log(1 - x) for |x| < 1, accurate when x is tiny.
Complex log_one_minus(Complex x) {
  if (std::abs(x) < 1e-4L) {
    const Complex x2 = x * x;
    return -(x + x2 / 2.0L + x2 * x / 3.0L + x2 * x2 / 4.0L);
  }
  return std::log(1.0L - x);
}

struct LogEta {
  Complex value;
  long double tail;  // bound on the dropped part of the log series
  long double magnitude;  // sum of |terms|, for the rounding estimate
};

LogEta log_eta(Complex tau, long double target) {
  const Complex two_pi_i_tau = Complex(0, 2 * kPi) * tau;
  const long double qabs = std::exp(-2 * kPi * tau.imag());
  LogEta out{Complex(0, kPi / 12) * tau, 0, 0};
  out.magnitude = std::abs(out.value);
  long double qm_abs = 1;
  for (long m = 1;; ++m) {
    qm_abs *= qabs;
    const Complex term = log_one_minus(std::exp(two_pi_i_tau * static_cast<long double>(m)));
    out.value += term;
    out.magnitude += std::abs(term);
    const long double next = qm_abs * qabs;
    const long double tail = next / ((1 - qabs) * (1 - next));
    if (tail < target || m > 50'000'000) {
      out.tail = tail;
      break;
    }
  }
  return out;
}

}  // namespace

FracSeries multiply(const FracSeries& f, const FracSeries& g) {
  const std::size_t n = std::min(f.coeffs.size(), g.coeffs.size());
  FracSeries out;
  out.offset = f.offset + g.offset;
  out.coeffs.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (f.coeffs[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (g.coeffs[j] == 0) continue;
      out.coeffs[i + j] += f.coeffs[i] * g.coeffs[j];
    }
  }
  return out;
}

FracSeries eta_integer_series(std::size_t terms) {
  if (terms < 1) throw InvalidArgument("eta_integer_series: need at least one term");
  FracSeries out;
  out.offset = Rational(1, 24);
  out.coeffs.assign(terms + 1, Rational(0));
  out.coeffs[0] = 1;
  // Pentagonal numbers j(3j -+ 1)/2 carry (-1)^j.
  for (std::size_t j = 1;; ++j) {
    const std::size_t lo = j * (3 * j - 1) / 2;
    const std::size_t hi = j * (3 * j + 1) / 2;
    if (lo > terms) break;
    const int sign = j % 2 == 0 ? 1 : -1;
    out.coeffs[lo] = sign;
    if (hi <= terms) out.coeffs[hi] = sign;
  }
  return out;
}

FracSeries series_rational_power(const FracSeries& f, const Rational& r) {
  if (f.coeffs.empty() || f.coeffs[0] != 1) {
    throw DomainError("series_rational_power: constant coefficient must be 1");
  }
  const std::size_t n_max = f.truncation();
  std::vector<std::size_t> support;
  for (std::size_t j = 1; j <= n_max; ++j) {
    if (f.coeffs[j] != 0) support.push_back(j);
  }
  FracSeries g;
  g.offset = f.offset;
  g.coeffs.assign(n_max + 1, Rational(0));
  g.coeffs[0] = 1;
  // From f g' = r f' g:  n g_n = sum_{j=1}^{n} (r j - (n - j)) f_j g_{n-j}.
  for (std::size_t n = 1; n <= n_max; ++n) {
    Rational acc = 0;
    for (std::size_t j : support) {
      if (j > n) break;
      if (g.coeffs[n - j] == 0) continue;
      acc += (r * static_cast<unsigned long>(j) - static_cast<unsigned long>(n - j)) * f.coeffs[j] *
             g.coeffs[n - j];
    }
    g.coeffs[n] = acc / static_cast<unsigned long>(n);
  }
  return g;
}

FracSeries eta_quotient_series(const EtaQuotientSpec& spec, std::size_t terms) {
  if (terms < 1) throw InvalidArgument("eta_quotient_series: need at least one term");
  FracSeries unit = eta_integer_series(terms);
  unit.offset = 0;
  FracSeries out;
  out.offset = spec.leading_exponent();
  out.coeffs.assign(terms + 1, Rational(0));
  out.coeffs[0] = 1;
  for (const auto& [n, r] : spec.exponents()) {
    if (r == 0) continue;
    const auto step = static_cast<std::size_t>(n);
    FracSeries base;
    base.coeffs.assign(unit.coeffs.begin(), unit.coeffs.begin() + static_cast<long>(terms / step + 1));
    const FracSeries powered = series_rational_power(base, r);
    FracSeries spread;
    spread.coeffs.assign(terms + 1, Rational(0));
    for (std::size_t i = 0; i < powered.coeffs.size(); ++i) spread.coeffs[i * step] = powered.coeffs[i];
    FracSeries product = multiply(out, spread);
    out.coeffs = std::move(product.coeffs);
  }
  return out;
}

Rational order_at_cusp(const EtaQuotientSpec& spec, std::int64_t a, std::int64_t c) {
  if (c < 1) throw InvalidArgument("order_at_cusp: c must be positive");
  if (gcd64(a, c) != 1) throw DomainError("order_at_cusp: a and c must be coprime");
  Rational sum = 0;
  for (const auto& [n, r] : spec.exponents()) {
    const std::int64_t g = gcd64(n, c);
    sum += r * make_rational(g * g, n);
  }
  return sum / 24;
}

ComplexApprox eval_eta_quotient(const EtaQuotientSpec& spec, std::complex<long double> tau,
                                unsigned precision) {
  if (precision < 24 || precision > 64) throw InvalidArgument("precision must be in [24, 64] bits");
  if (tau.imag() <= 0) throw DomainError("eval_eta_quotient: tau must lie in the upper half plane");
  long double weight = 0;
  for (const auto& [n, r] : spec.exponents()) weight += std::fabs(static_cast<long double>(r.get_d()));
  const long double target = std::ldexp(1.0L, -static_cast<int>(precision)) / (1 + weight);

  Complex total = 0;
  long double tail = 0;
  long double magnitude = 0;
  for (const auto& [n, r] : spec.exponents()) {
    if (r == 0) continue;
    // Exponent as a long double: exact for the small fractions used here.
    const long double rr =
        static_cast<long double>(r.get_num().get_d()) / static_cast<long double>(r.get_den().get_d());
    const LogEta le = log_eta(tau * static_cast<long double>(n), target);
    total += rr * le.value;
    tail += std::fabs(rr) * le.tail;
    magnitude += std::fabs(rr) * le.magnitude;
  }
  const Complex value = std::exp(total);
  ComplexApprox out;
  out.re = value.real();
  out.im = value.imag();
  const long double eps = std::ldexp(1.0L, 1 - static_cast<int>(precision));
  out.err = std::abs(value) * (std::expm1(tail) + eps * (1 + magnitude));
  return out;
}

}  // namespace rweis
