#include "rweis/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "parallel.hpp"
#include "rweis/eta.hpp"

namespace rweis {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

bool is_pole(const GammaArg& k) {
  if (const auto* q = std::get_if<Rational>(&k)) return is_integer(*q) && *q <= 0;
  const long double x = std::get<long double>(k);
  return x <= 0 && x == std::floor(x);
}

long double window_top(GammaRoute route) { return route == GammaRoute::P3 ? 3.0L : 4.0L; }

// Shared inner loop: sum over 0 <= d < pc, gcd(d, pc) = 1, of e(phase(d)),
// where the phase is n d/(pc) - k (N1 - N2)/(6c) for p = 2 and
// n d/(pc) - k (N1 - N2)/(12c) for p = 3, with N1 = 6pc s(-d, pc) and
// N2 = 6c s(-d, c).
template <class Real>
struct Kernel {
  std::int64_t p;
  std::int64_t n;
  bool exact;
  std::int64_t u = 0, v = 1;  // k = u/v when exact
  long double k = 0;
  long double kfull = 0;

  std::complex<Real> sum_for(std::int64_t c, std::int64_t* count) const {
    const std::int64_t pc = p * c;
    const std::int64_t scale = p == 2 ? 6 : 12;  // denominator 6c or 12c of the Dedekind part
    detail::ComplexSum<Real> acc;
    std::int64_t terms = 0;
    for (std::int64_t d = 1; d < pc; ++d) {
      if (gcd64(d, pc) != 1) continue;
      ++terms;
      const std::int64_t m = dedekind_sum_6k(-d, pc) - dedekind_sum_6k(-d, c);
      if (exact) {
        const std::int64_t q = scale * v * c;
        // n d / (pc) = (scale/p) v n d / q
        const __int128 lin = static_cast<__int128>(scale / p) * v * ((n * d) % pc);
        __int128 num = (lin - static_cast<__int128>(u) * m) % q;
        if (num < 0) num += q;
        acc.add(detail::unit_root<Real>(static_cast<std::int64_t>(num), q));
      } else {
        long double x = static_cast<long double>((n * d) % pc) / static_cast<long double>(pc) -
                        k * static_cast<long double>(m) / static_cast<long double>(scale * c);
        x -= std::nearbyint(x);
        const Real angle = static_cast<Real>(2 * kPi * x);
        acc.add({std::cos(angle), std::sin(angle)});
      }
    }
    *count = terms;
    return acc.value();
  }
};

template <class Real>
std::vector<std::complex<long double>> run_series(const Kernel<Real>& kernel, long double k,
                                                  std::int64_t c_max, int threads,
                                                  std::int64_t* checkpoint,
                                                  std::vector<std::complex<long double>>* half) {
  return detail::reduce_over_c(
      c_max, 2, threads,
      [&](std::int64_t c, std::vector<std::complex<long double>>& out) {
        std::int64_t count = 0;
        const std::complex<Real> s = kernel.sum_for(c, &count);
        const long double w = std::pow(static_cast<long double>(kernel.p * c), -k);
        out[0] = std::complex<long double>(s.real(), s.imag()) * w;
        out[1] = w * static_cast<long double>(count);
      },
      checkpoint, half);
}

}  // namespace

long double to_long_double(const GammaArg& x) {
  if (const auto* q = std::get_if<Rational>(&x)) {
    return static_cast<long double>(q->get_num().get_d()) / static_cast<long double>(q->get_den().get_d());
  }
  return std::get<long double>(x);
}

std::string to_string(const GammaArg& x) {
  if (const auto* q = std::get_if<Rational>(&x)) return to_string(*q);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", std::get<long double>(x));
  return buf;
}

std::string to_string(GammaRoute route) {
  switch (route) {
    case GammaRoute::P2: return "p2";
    case GammaRoute::P3: return "p3";
    default: return "auto";
  }
}

GammaRoute parse_gamma_route(std::string_view text) {
  if (text == "p2") return GammaRoute::P2;
  if (text == "p3") return GammaRoute::P3;
  if (text == "auto") return GammaRoute::Auto;
  throw InvalidArgument("route must be p2, p3 or auto");
}

GammaReduction gamma_reduce(const GammaArg& k, GammaRoute route) {
  if (is_pole(k)) throw DomainError("Gamma has a pole at " + to_string(k));
  if (route == GammaRoute::Auto) {
    // P2 only where it is needed; everything else goes through the cheaper P3.
    const long double x = to_long_double(k);
    route = (x > 3 && x <= 4) ? GammaRoute::P2 : GammaRoute::P3;
  }
  const long double top = window_top(route);
  GammaReduction out;
  if (const auto* q = std::get_if<Rational>(&k)) {
    Rational x = *q;
    Rational mult = 1;
    while (x > static_cast<long>(top)) {
      x -= 1;
      mult *= x;
    }
    while (x <= 2) {
      mult /= x;
      x += 1;
    }
    out.k0 = x;
    out.multiplier = mult;
  } else {
    long double x = std::get<long double>(k);
    if (!std::isfinite(x)) throw InvalidArgument("gamma: k must be finite");
    long double mult = 1;
    while (x > top) {
      x -= 1;
      mult *= x;
    }
    while (x <= 2) {
      mult /= x;
      x += 1;
    }
    out.k0 = x;
    out.multiplier = mult;
  }
  out.route = route;
  return out;
}

Rational eta_coefficient(std::int64_t p, const Rational& r1, const Rational& rp, std::int64_t n) {
  if (n < 0) throw InvalidArgument("eta_coefficient: n must be non-negative");
  const FracSeries s = eta_quotient_series(EtaQuotientSpec(p, {{1, r1}, {p, rp}}),
                                           static_cast<std::size_t>(std::max<std::int64_t>(n, 1)));
  return s.coeffs[static_cast<std::size_t>(n)];
}

GammaResult gamma_series(const GammaRequest& req) {
  if (req.c_max < 1) throw InvalidArgument("c_max must be at least 1");
  if (req.n_choice < 1) throw InvalidArgument("n must be at least 1");
  if (req.precision < 24 || req.precision > 64) throw InvalidArgument("precision must be in [24, 64] bits");
  if (req.c_max > (std::int64_t{1} << 40)) throw InvalidArgument("c_max too large");

  GammaResult res;
  res.k = req.k;
  res.reduction = gamma_reduce(req.k, req.route);
  res.n = req.n_choice;
  res.c_max = req.c_max;
  const GammaArg& k0 = res.reduction.k0;
  const long double k = to_long_double(k0);
  const std::int64_t p = res.reduction.route == GammaRoute::P2 ? 2 : 3;

  // A_p(n; 4k, -2k) for p = 2 and A_p(n; 3k, -k) for p = 3.
  long double a_coeff;
  if (req.n_choice == 1) {
    a_coeff = -static_cast<long double>(p == 2 ? 4 : 3) * k;
  } else {
    const auto* q = std::get_if<Rational>(&k0);
    if (q == nullptr) throw InvalidArgument("gamma: n > 1 needs a rational k");
    const Rational r1 = *q * (p == 2 ? 4 : 3);
    const Rational rp = *q * (p == 2 ? -2 : -1);
    const Rational a = eta_coefficient(p, r1, rp, req.n_choice);
    if (a == 0) throw DomainError("gamma: A_p(n) vanishes for n = " + std::to_string(req.n_choice));
    a_coeff = static_cast<long double>(a.get_d());
  }

  const int threads = detail::resolve_threads(req.threads);
  std::int64_t checkpoint = req.extrapolate ? req.c_max / 2 : 0;
  std::vector<std::complex<long double>> half;
  std::vector<std::complex<long double>> total;
  auto run = [&](auto tag) {
    using Real = decltype(tag);
    Kernel<Real> kernel{p, req.n_choice, false};
    if (const auto* q = std::get_if<Rational>(&k0)) {
      kernel.exact = fits_int64(q->get_num()) && fits_int64(q->get_den()) &&
                     q->get_den() < BigInt(1) << 20;
      if (kernel.exact) {
        kernel.u = to_int64(q->get_num());
        kernel.v = to_int64(q->get_den());
      }
    }
    kernel.k = k;
    total = run_series(kernel, k, req.c_max, threads, req.extrapolate ? &checkpoint : nullptr, &half);
  };
  if (req.precision <= 53) {
    run(double{});
  } else {
    run(static_cast<long double>(0));
  }

  const long double mult = to_long_double(res.reduction.multiplier);
  const long double prefactor =
      mult * std::pow(2 * kPi, k) * std::pow(static_cast<long double>(req.n_choice), k - 1) / a_coeff;
  std::complex<long double> sum = total[0];
  res.raw_re = prefactor * sum.real();
  res.raw_im = prefactor * sum.imag();
  // sum_{c > C} (pc)^{-k} phi(pc) <= p^{1-k} C^{2-k} / (k - 2)
  res.tail_bound = std::fabs(prefactor) * std::pow(static_cast<long double>(p), 1 - k) *
                   std::pow(static_cast<long double>(req.c_max), 2 - k) / (k - 2);

  if (req.extrapolate && checkpoint > 0 && checkpoint < req.c_max && !half.empty()) {
    const long double big_c = std::pow(static_cast<long double>(req.c_max), 2 - k);
    const long double small_c = std::pow(static_cast<long double>(checkpoint), 2 - k);
    const std::complex<long double> alpha = (sum - half[0]) / (big_c - small_c);
    sum -= alpha * big_c;
    res.extrapolated = true;
  }
  const long double eps = std::ldexp(1.0L, 1 - static_cast<int>(std::min(req.precision, 53U)));
  const long double rounding =
      std::fabs(prefactor) * total[1].real() * eps * 8 + std::fabs(prefactor * sum.real()) * eps;
  res.value.re = prefactor * sum.real();
  res.value.im = prefactor * sum.imag();
  res.value.err = res.tail_bound + rounding;
  return res;
}

ComplexApprox gamma_reference(long double k, unsigned precision) {
  if (precision < 24 || precision > 64) throw InvalidArgument("precision must be in [24, 64] bits");
  if (!std::isfinite(k)) throw InvalidArgument("gamma_reference: k must be finite");
  if (k <= 0 && k == std::floor(k)) throw DomainError("Gamma has a pole at a non-positive integer");
  static constexpr std::array<long double, 9> kLanczos = {
      0.99999999999980993227684700473478L, 676.520368121885098567009190444019L,
      -1259.13921672240287047156078755283L, 771.3234287776530788486528258894L,
      -176.61502916214059906584551354L,     12.507343278686904814458936853L,
      -0.13857109526572011689554707L,       9.984369578019570859563e-6L,
      1.50563273514931155834e-7L};
  constexpr long double kG = 7;
  ComplexApprox out;
  if (k < 0.5L) {
    // Reflection: Gamma(k) Gamma(1 - k) = pi / sin(pi k).
    const ComplexApprox other = gamma_reference(1 - k, precision);
    out.re = kPi / (std::sin(kPi * k) * other.re);
  } else {
    const long double z = k - 1;
    long double x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<long double>(i));
    const long double t = z + kG + 0.5L;
    out.re = std::sqrt(2 * kPi) * std::pow(t, z + 0.5L) * std::exp(-t) * x;
  }
  out.im = 0;
  out.err = std::fabs(out.re) * 1e-14L;
  return out;
}

}  // namespace rweis
