// Acceptance run: one PASS/FAIL line per criterion with its measured runtime.
// Values for the numeric criteria are computed at one thread and recomputed at
// max(hardware threads, 4) by the determinism criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rweis/arith.hpp"
#include "rweis/cover.hpp"
#include "rweis/eisenstein.hpp"
#include "rweis/eta.hpp"
#include "rweis/gamma.hpp"
#include "rweis/multiplier.hpp"
#include "rweis/verify.hpp"

using namespace rweis;

namespace {

using Clock = std::chrono::steady_clock;

Rational q(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = secs < limit_s;
  const bool pass = out.ok && in_time;
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  %-28s %8.2f s (limit %g s)%s  %s\n", id, pass ? "PASS" : "FAIL", title, secs,
              limit_s, in_time ? "" : " TOO SLOW", out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// Numeric outputs of criteria 6 to 9, kept for the determinism comparison.
struct Snapshot {
  std::vector<long double> values;
  void add(const ComplexApprox& z) {
    values.push_back(z.re);
    values.push_back(z.im);
  }
  void add(const IdentityReport& rep) {
    for (const auto& r : rep.rows) {
      values.push_back(r.numeric_re);
      values.push_back(r.numeric_im);
    }
  }
};

VerifyOptions options(std::int64_t n_max, std::int64_t c_max, int threads) {
  VerifyOptions o;
  o.n_max = n_max;
  o.c_max = c_max;
  o.threads = threads;
  return o;
}

double worst_relative(const IdentityReport& rep, bool skip_zero_index) {
  double worst = 0;
  for (const auto& r : rep.rows) {
    if (skip_zero_index && r.n == "0") continue;
    const std::complex<long double> exact(r.exact_re, r.exact_im);
    const std::complex<long double> num(r.numeric_re, r.numeric_im);
    const long double scale = std::abs(exact);
    const long double err = std::abs(num - exact) / (scale > 0 ? scale : 1);
    worst = std::max(worst, static_cast<double>(err));
  }
  return worst;
}

Outcome classical(int threads, Snapshot& snap) {
  const auto rep = verify_classical(2, 4, q(8), q(8), options(10, 2000, threads));
  snap.add(rep);
  double worst = 0;
  for (const auto& r : rep.rows) {
    worst = std::max(worst, static_cast<double>(std::hypot(r.numeric_re - r.exact_re, r.numeric_im - r.exact_im)));
  }
  const bool q1 = rep.rows.size() == 11 && rep.rows[1].exact == "-16";
  return {q1 && worst <= 1e-3, "max |error| over n<=10 = " + fmt(worst)};
}

Outcome level3_infty(int threads, Snapshot& snap) {
  const auto rep = verify_thm71(3, q(1), options(5, 5000, threads));
  snap.add(rep);
  const double worst = worst_relative(rep, false);
  return {rep.rows.size() == 6 && worst <= 1e-3, "max relative error over n<=5 = " + fmt(worst)};
}

Outcome cusp_one(int threads, Snapshot& snap) {
  const auto rep = verify_thm72(2, q(1), options(5, 5000, threads));
  snap.add(rep);
  // Index 0 has exact value 0 at this cusp; relative error is taken on n >= 1.
  const double worst = worst_relative(rep, true);
  const double zero = std::hypot(static_cast<double>(rep.rows[0].numeric_re), static_cast<double>(rep.rows[0].numeric_im));
  return {rep.rows.size() == 6 && worst <= 1e-3 && zero == 0,
          "max relative error over 1<=n<=5 = " + fmt(worst) + ", scale 2^8 applied"};
}

Outcome gamma_values(int threads, Snapshot& snap) {
  GammaRequest req;
  req.threads = threads;
  auto rel = [](const GammaResult& r, long double exact) {
    return static_cast<double>(std::abs(std::complex<long double>(r.value.re, r.value.im) - exact) / exact);
  };

  req.k = GammaArg(q(4));
  req.route = GammaRoute::P2;
  req.c_max = 2000;
  const auto g4 = gamma_series(req);
  snap.add(g4.value);

  req.k = GammaArg(q(3));
  req.route = GammaRoute::P3;
  req.c_max = 5000;
  const auto g3 = gamma_series(req);
  snap.add(g3.value);

  req.k = GammaArg(q(8, 3));
  req.route = GammaRoute::P2;
  req.c_max = 10000;
  const auto g83 = gamma_series(req);
  snap.add(g83.value);
  const long double ref83 = gamma_reference(8.0L / 3).re;

  req.k = GammaArg(q(15, 7));
  req.route = GammaRoute::P3;
  req.n_choice = 2;
  req.c_max = 2000;
  const auto g157 = gamma_series(req);
  snap.add(g157.value);
  const long double ref157 = gamma_reference(15.0L / 7).re;

  const double e4 = rel(g4, 6), e3 = rel(g3, 2), e83 = rel(g83, ref83), e157 = rel(g157, ref157);
  return {e4 <= 1e-4 && e3 <= 1e-3 && e83 <= 1e-2,
          "rel err G(4)=" + fmt(e4) + " G(3)=" + fmt(e3) + " G(8/3)=" + fmt(e83) +
              " G(15/7)=" + fmt(e157) + " (informational)"};
}

}  // namespace

int main() {
  std::printf("acceptance run, hardware threads: %u\n", std::thread::hardware_concurrency());

  report(1, "Dedekind exactness", 10, [] {
    for (std::int64_t k = 1; k <= 300; ++k) {
      for (std::int64_t h = 0; h < k; ++h) {
        if (dedekind_sum(h, k) != dedekind_sum_naive(h, k)) {
          return Outcome{false, "fast != naive at (" + std::to_string(h) + ", " + std::to_string(k) + ")"};
        }
      }
    }
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::int64_t> dist(1, 1000000);
    int pairs = 0;
    while (pairs < 10000) {
      const std::int64_t h = dist(rng), k = dist(rng);
      if (gcd64(h, k) != 1) continue;
      ++pairs;
      const Rational rhs = q(-1, 4) + Rational(BigInt(h) * h + BigInt(k) * k + 1) / Rational(BigInt(12) * h * k);
      if (dedekind_sum(h, k) + dedekind_sum(k, h) != rhs) {
        return Outcome{false, "reciprocity fails at (" + std::to_string(h) + ", " + std::to_string(k) + ")"};
      }
    }
    return Outcome{true, "45150 equalities, 10000 reciprocity pairs"};
  });

  report(2, "Character suite", 30, [] {
    std::mt19937_64 rng(2);
    for (std::int64_t p : {2, 3, 5, 11}) {
      const PrimeLevelSpec s(p, q(44, 9), q(-4, 9));
      const auto spec = s.eta_spec();
      const std::int64_t ord = spec.cover_order();
      for (int i = 0; i < 1000; ++i) {
        const CoverElement g1(random_gamma0(p, 500, rng), ord, static_cast<std::int64_t>(rng() % ord));
        const CoverElement g2(random_gamma0(p, 500, rng), ord, static_cast<std::int64_t>(rng() % ord));
        if (!(chi_general(spec, compose(g1, g2)) == chi_general(spec, g1) + chi_general(spec, g2))) {
          return Outcome{false, "homomorphism fails for p=" + std::to_string(p)};
        }
      }
      for (auto [r1, rp] : {std::pair{q(9), q(-3)}, {q(16), q(-8)}, {q(5, 7), q(-2, 3)}}) {
        const PrimeLevelSpec t(p, r1, rp);
        const auto [at_t, at_one] = chi_T_and_cusp1(t);
        const auto eta = t.eta_spec();
        const auto g1 = lift(1, 0, 1, 1, eta.cover_order());
        const auto conj = compose(compose(g1, power(lift(1, 1, 0, 1, eta.cover_order()), p)), invert(g1));
        if (!(at_t == Phase(t.n_inf())) || !(at_one == Phase(t.n_one())) ||
            !(chi_general(eta, conj) == Phase(t.n_one()))) {
          return Outcome{false, "T or cusp 1 value wrong for p=" + std::to_string(p)};
        }
      }
    }
    const Rational r1 = q(44, 9), r11 = q(-4, 9);
    const auto spec = PrimeLevelSpec(11, r1, r11).eta_spec();
    const std::int64_t ord = spec.cover_order();
    const auto T = lift(1, 1, 0, 1, ord);
    const auto S = lift(0, -1, 1, 0, ord);
    const auto Si = invert(S);
    const auto w1 = compose(compose(compose(compose(compose(T, Si), power(T, 3)), Si), power(T, 4)), S);
    const auto w2 = compose(compose(compose(compose(compose(T, Si), power(T, 4)), Si), power(T, 3)), S);
    const bool lemma = chi_general(spec, T) == Phase((r1 + 11 * r11) / 24) &&
                       chi_general(spec, compose(S, S)) == Phase((-6 * r1 - 6 * r11) / 24) &&
                       chi_general(spec, w1) == Phase((11 * r1 + 13 * r11) / 24) &&
                       chi_general(spec, w2) == Phase((11 * r1 + 13 * r11) / 24);
    return Outcome{lemma, "4000 random pairs; level 11 generator values " + std::string(lemma ? "exact" : "WRONG")};
  });

  report(3, "Formula-family agreement", 60, [] {
    int special = 0, integer = 0;
    for (std::int64_t p = 2; p <= 50; ++p) {
      if (!is_prime(p)) continue;
      for (auto [r1, rp] : {std::pair{q(7, 6), q(-5, 4)}, {q(44, 9), q(-4, 9)}, {q(9), q(-3)}}) {
        const PrimeLevelSpec s(p, r1, rp);
        const auto spec = s.eta_spec();
        for (int family = 1; family <= 4; ++family) {
          if (p == 2 && family >= 3) continue;
          const std::int64_t m = family == 1 ? p - 1 : family == 2 ? p + 1 : family == 3 ? p - 2 : p + 2;
          for (std::int64_t t = 1; t <= m; ++t) {
            if (m % t != 0) continue;
            ++special;
            if (!(chi_special(s, family, t) == chi_general(spec, lift(special_family_matrix(p, family, t), spec.cover_order())))) {
              return Outcome{false, "family " + std::to_string(family) + " differs at p=" + std::to_string(p)};
            }
          }
        }
      }
    }
    std::mt19937_64 rng(3);
    for (std::int64_t p : {2, 3, 5, 7, 13}) {
      for (std::int64_t r1 = -24; r1 <= 24; r1 += 5) {
        for (std::int64_t rp = -30; rp <= 30; ++rp) {
          if ((r1 + p * rp) % 24 != 0) continue;
          const PrimeLevelSpec s(p, q(r1), q(rp));
          const auto spec = s.eta_spec();
          for (int i = 0; i < 50; ++i) {
            const Matrix2 g = random_gamma0(p, 1000, rng);
            ++integer;
            if (!(chi_integer(s, g) == chi_general(spec, lift(g, spec.cover_order())))) {
              return Outcome{false, "integer formula differs at p=" + std::to_string(p)};
            }
          }
        }
      }
    }
    return Outcome{true, std::to_string(special) + " family values, " + std::to_string(integer) + " integer-formula values"};
  });

  report(4, "Eta engine", 30, [] {
    const FracSeries unit = eta_integer_series(200);
    const FracSeries root = series_rational_power(unit, q(1, 2));
    if (multiply(root, root).coeffs != unit.coeffs) return Outcome{false, "square root does not square back"};
    const FracSeries level3 = eta_quotient_series(EtaQuotientSpec(3, {{1, q(9)}, {3, q(-3)}}), 100);
    for (std::int64_t n = 1; n <= 100; ++n) {
      std::int64_t s = 0;
      for (std::int64_t m = 1; m <= n; ++m) {
        if (n % m == 0) s += kronecker(m, 3) * m * m;
      }
      if (level3.coeffs[n] != -9 * s) return Outcome{false, "divisor-sum coefficient differs at n=" + std::to_string(n)};
    }
    std::mt19937_64 rng(4);
    for (int i = 0; i < 20; ++i) {
      const std::int64_t p = std::array<std::int64_t, 5>{2, 3, 5, 7, 11}[rng() % 5];
      const Rational r1 = q(static_cast<std::int64_t>(rng() % 61) - 30, 1 + static_cast<std::int64_t>(rng() % 12));
      const Rational rp = q(static_cast<std::int64_t>(rng() % 61) - 30, 1 + static_cast<std::int64_t>(rng() % 12));
      const FracSeries f = eta_quotient_series(EtaQuotientSpec(p, {{1, r1}, {p, rp}}), 2);
      if (f.coeffs[0] != 1 || f.coeffs[1] != -r1) return Outcome{false, "leading coefficients wrong"};
    }
    return Outcome{true, "round trip to order 200, divisor sums n<=100, 20 random leading pairs"};
  });

  report(5, "End-to-end modularity", 10, [] {
    std::mt19937_64 rng(5);
    const std::complex<long double> tau{0.3L, 1.1L};
    double worst = 0;
    int checked = 0;
    for (auto [p, r1, rp] : {std::tuple{2, q(16), q(-8)}, {3, q(9), q(-3)}, {11, q(44, 9), q(-4, 9)}}) {
      const PrimeLevelSpec s(p, r1, rp);
      const EtaQuotientSpec spec = s.eta_spec();
      const long double k = s.kprime().get_d();
      const auto f = eval_eta_quotient(spec, tau);
      const std::complex<long double> f_tau(f.re, f.im);
      for (int i = 0; i < 10; ++i) {
        const Matrix2 g = random_gamma0(p, 20, rng);
        const std::complex<long double> j = static_cast<long double>(g.c) * tau + static_cast<long double>(g.d);
        const auto v = eval_eta_quotient(spec, (static_cast<long double>(g.a) * tau + static_cast<long double>(g.b)) / j);
        const auto chi = e_of(chi_general(spec, lift(g, spec.cover_order())), 64);
        const auto diff = std::complex<long double>(v.re, v.im) * std::pow(j, -k) -
                          std::complex<long double>(chi.re, chi.im) * f_tau;
        worst = std::max(worst, static_cast<double>(std::abs(diff)));
        ++checked;
      }
    }
    return Outcome{worst < 1e-8, std::to_string(checked) + " transformations, max defect " + fmt(worst)};
  });

  Snapshot single;
  report(6, "Classical cross-check", 60, [&] { return classical(1, single); });
  report(7, "Level 3 series at infinity", 120, [&] { return level3_infty(1, single); });
  report(8, "Identity at cusp 1", 180, [&] { return cusp_one(1, single); });
  report(9, "Gamma values", 600, [&] { return gamma_values(1, single); });

  report(10, "Kloosterman rearrangement", 30, [] {
    double worst = 0;
    for (std::int64_t r3 = 0; r3 >= -5; --r3) {
      const PrimeLevelSpec s(3, q(-3 * r3), q(r3));
      const std::int64_t k = (r3 % 2 == 0) ? 4 : 3;
      const Rational h = (Rational(k) - s.kprime()) / 2;
      const long double sign = (h.get_num() % 2 != 0) ? -1.0L : 1.0L;
      const std::complex<long double> twist = std::polar(1.0L, -2 * 3.14159265358979323846L * k / 4);
      for (std::int64_t c = 1; c <= 50; ++c) {
        for (std::int64_t n = 1; n <= 5; ++n) {
          const auto d = exp_sum_infty(s, n, c);
          const auto kl = kloosterman(r3, c * c * r3 + n, c * c * r3, 3 * c);
          const auto diff = twist * std::complex<long double>(kl.re, kl.im) - sign * std::complex<long double>(d.re, d.im);
          worst = std::max(worst, static_cast<double>(std::abs(diff)));
        }
      }
    }
    return Outcome{worst < 1e-12, "max per-c difference " + fmt(worst)};
  });

  const int many = static_cast<int>(std::max(4u, std::thread::hardware_concurrency()));
  report(11, "Determinism across threads", 1200, [&] {
    Snapshot multi;
    classical(many, multi);
    level3_infty(many, multi);
    cusp_one(many, multi);
    gamma_values(many, multi);
    const bool same = multi.values.size() == single.values.size() &&
                      std::equal(multi.values.begin(), multi.values.end(), single.values.begin());
    return Outcome{same, std::to_string(single.values.size()) + " values at 1 vs " + std::to_string(many) +
                             " threads " + (same ? "bit-identical" : "DIFFER")};
  });

  std::printf("%s: %d criterion failure(s)\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
