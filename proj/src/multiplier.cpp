#include "rweis/multiplier.hpp"

#include <numeric>
#include <utility>

namespace rweis {

namespace {

Rational rat(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

BigInt big(std::int64_t x) { return BigInt(std::to_string(x)); }

}  // namespace

EtaQuotientSpec::EtaQuotientSpec(std::int64_t level, std::map<std::int64_t, Rational> exponents)
    : level_(level), exponents_(std::move(exponents)), d_(1) {
  if (level < 1) throw InvalidArgument("level must be positive");
  BigInt lcm = 1;
  for (const auto& [n, r] : exponents_) {
    if (n < 1 || level % n != 0) {
      throw InvalidArgument("exponent key " + std::to_string(n) + " does not divide the level");
    }
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den_mpz_t());
  }
  d_ = to_int64(lcm);
}

Rational EtaQuotientSpec::weight() const {
  Rational sum = 0;
  for (const auto& [n, r] : exponents_) sum += r;
  return sum / 2;
}

Rational EtaQuotientSpec::leading_exponent() const {
  Rational sum = 0;
  for (const auto& [n, r] : exponents_) sum += r * n;
  return sum / 24;
}

PrimeLevelSpec::PrimeLevelSpec(std::int64_t p, Rational r1, Rational rp)
    : p_(p), r1_(std::move(r1)), rp_(std::move(rp)) {
  if (!is_prime(p)) throw InvalidArgument("level " + std::to_string(p) + " is not prime");
}

Rational PrimeLevelSpec::n_inf() const { return (r1_ + rp_ * p_) / 24; }
Rational PrimeLevelSpec::n_one() const { return (r1_ * p_ + rp_) / 24; }
Rational PrimeLevelSpec::kprime() const { return (r1_ + rp_) / 2; }
std::int64_t PrimeLevelSpec::m_inf() const { return to_int64(n_inf().get_den()); }
std::int64_t PrimeLevelSpec::m_one() const { return to_int64(n_one().get_den()); }

EtaQuotientSpec PrimeLevelSpec::eta_spec() const {
  return EtaQuotientSpec(p_, {{1, r1_}, {p_, rp_}});
}

Phase chi_general(const EtaQuotientSpec& spec, const CoverElement& g) {
  if (g.order() != spec.cover_order()) {
    throw InvalidArgument("chi_general: element lives on a cover of order " +
                          std::to_string(g.order()) + ", expected " +
                          std::to_string(spec.cover_order()));
  }
  const Matrix2& m = g.matrix();
  const std::int64_t level = spec.level();
  if (m.c % level != 0) throw DomainError("chi_general: matrix is not in Gamma0(N)");

  const Rational k = spec.weight();
  Rational weighted = 0;  // sum n r_n
  for (const auto& [n, r] : spec.exponents()) weighted += r * n;

  Rational v;
  if (m.c > 0) {
    v = Rational(big(m.a + m.d)) / (24 * big(m.c)) * weighted - k / 4;
    for (const auto& [n, r] : spec.exponents()) v += r * dedekind_sum(big(-m.d), big(m.c / n)) / 2;
  } else if (m.c < 0) {
    v = Rational(big(m.a + m.d)) / (24 * big(m.c)) * weighted + k / 4;
    for (const auto& [n, r] : spec.exponents()) v += r * dedekind_sum(big(m.d), big(-m.c / n)) / 2;
  } else if (m.a > 0) {
    v = Rational(big(m.b)) / 24 * weighted;
  } else {
    v = -Rational(big(m.b)) / 24 * weighted - k / 2;
  }
  // eps^{-2Dk} with eps = e(j / 2D).
  return Phase(v - k * big(g.eps_index()));
}

std::pair<Phase, Phase> chi_T_and_cusp1(const PrimeLevelSpec& spec) {
  return {Phase(spec.n_inf()), Phase(spec.n_one())};
}

Matrix2 special_family_matrix(std::int64_t p, int family, std::int64_t t) {
  if (t < 1) throw DomainError("special family: t must be positive");
  auto require = [&](std::int64_t m, const char* what) {
    if (m % t != 0) throw DomainError(std::string("special family: t must divide ") + what);
  };
  if ((family == 3 || family == 4) && p < 3) throw DomainError("special families 3 and 4 need p >= 3");
  switch (family) {
    case 1:
      require(p - 1, "p-1");
      return {-t, -1, p, (p - 1) / t};
    case 2:
      require(p + 1, "p+1");
      return {t, 1, p, (p + 1) / t};
    case 3:
      require(p - 2, "p-2");
      return {-t * (p + 1) / 2, -(p - 1) / 2, p, (p - 2) / t};
    case 4:
      require(p + 2, "p+2");
      return {t * (p + 1) / 2, (p + 3) / 2, p, (p + 2) / t};
    default:
      throw InvalidArgument("special family must be 1, 2, 3 or 4");
  }
}

Phase chi_special(const PrimeLevelSpec& spec, int family, std::int64_t t) {
  const std::int64_t p = spec.p();
  special_family_matrix(p, family, t);  // validates (family, t)
  const Rational& r1 = spec.r1();
  const Rational& rp = spec.rp();
  switch (family) {
    case 1:
      return Phase((r1 + rp) * rat(p - (t * t + 3 * t + 1), 24 * t));
    case 2:
      return Phase((rp - r1) * rat(p + t * t - 3 * t + 1, 24 * t));
    case 3:
      return Phase(r1 * rat(p - (3 * t * t + 6 * t + 2), 48 * t) +
                   rp * rat((2 - t * t) * p - (t * t + 6 * t + 4), 48 * t));
    default:
      return Phase(r1 * rat(-p - (t * t - 6 * t + 2), 48 * t) +
                   rp * rat((t * t + 2) * p + t * t - 6 * t + 4, 48 * t));
  }
}

Phase chi_integer(const PrimeLevelSpec& spec, const Matrix2& m) {
  if (!is_integer(spec.r1()) || !is_integer(spec.rp())) {
    throw DomainError("chi_integer: exponents must be integers");
  }
  if (!is_integer(spec.n_inf())) throw DomainError("chi_integer: (r1 + p rp)/24 must be an integer");
  const std::int64_t p = spec.p();
  if (m.c % p != 0 || m.det() != 1) throw DomainError("chi_integer: matrix is not in Gamma0(p)");
  const std::int64_t rp = to_int64(spec.rp().get_num());
  const bool rp_odd = rp % 2 != 0;
  auto sign_phase = [&](int symbol) { return (symbol == -1 && rp_odd) ? Phase::of(1, 2) : Phase(); };

  if (p >= 5) return sign_phase(kronecker(m.d, p));
  if (p == 3) {
    return sign_phase(kronecker(m.d, 3)) +
           Phase(rat(-rp) * Rational(big(m.c) * big(m.a + m.d)) / 9);
  }
  // p == 2
  const std::int64_t half_c = m.c / 2;
  return sign_phase(kronecker(half_c, m.a)) +
         Phase(rat(rp) * Rational(big(m.a) * big(half_c - 1) + 1) / 8);
}

bool is_trivial_condition3(const PrimeLevelSpec& spec) {
  if (!is_integer(spec.n_inf())) throw DomainError("condition (3) presumes (r1 + p rp)/24 integral");
  const Rational& r1 = spec.r1();
  const Rational& rp = spec.rp();
  auto divisible = [](const Rational& x, int m) { return is_integer(x / m); };
  return divisible(r1, 2) && divisible(r1 + rp, 4) && divisible(r1 * spec.p() + rp, 24);
}

Matrix2 random_gamma0(std::int64_t level, std::int64_t max_entry, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> cdist(-max_entry / level, max_entry / level);
  std::uniform_int_distribution<std::int64_t> ddist(-max_entry, max_entry);
  for (;;) {
    const std::int64_t c = level * cdist(rng);
    const std::int64_t d = ddist(rng);
    if (d == 0 || gcd64(c, d) != 1) continue;
    if (c == 0) {
      std::uniform_int_distribution<std::int64_t> bdist(-max_entry, max_entry);
      return {d, bdist(rng), 0, d};
    }
    // a d - b c = 1 with a the representative of d^{-1} mod |c| of smallest size.
    const std::int64_t ac = c < 0 ? -c : c;
    std::int64_t a = inverse_mod(d, ac);
    if (a > ac / 2) a -= ac;
    const std::int64_t b = (a * d - 1) / c;
    return {a, b, c, d};
  }
}

std::vector<PrimeLevelSpec> probe_condition3_converse(std::int64_t p, std::int64_t max_den,
                                                      std::int64_t bound, int samples,
                                                      std::uint64_t seed) {
  std::vector<PrimeLevelSpec> found;
  std::mt19937_64 rng(seed);
  for (std::int64_t den = 1; den <= max_den; ++den) {
    for (std::int64_t u1 = -bound * den + 1; u1 < bound * den; ++u1) {
      for (std::int64_t up = -bound * den + 1; up < bound * den; ++up) {
        if (std::gcd(std::gcd(u1, up), den) != 1) continue;  // visit each pair once
        PrimeLevelSpec spec(p, rat(u1, den), rat(up, den));
        if (!is_integer(spec.n_inf()) || is_trivial_condition3(spec)) continue;
        const EtaQuotientSpec eta = spec.eta_spec();
        bool trivial = chi_general(eta, lift(-1, 0, 0, -1, eta.cover_order())).is_zero();
        for (int s = 0; trivial && s < samples; ++s) {
          trivial = chi_general(eta, lift(random_gamma0(p, 60, rng), eta.cover_order())).is_zero();
        }
        if (trivial) found.push_back(spec);
      }
    }
  }
  return found;
}

}  // namespace rweis
