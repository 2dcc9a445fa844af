#include <doctest.h>

#include <cmath>
#include <complex>

#include "rweis/eisenstein.hpp"
#include "rweis/error.hpp"

using namespace rweis;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

EisensteinParams params(std::int64_t p, Rational r1, Rational rp, Rational k, Cusp cusp, std::int64_t c_max) {
  EisensteinParams e{PrimeLevelSpec(p, std::move(r1), std::move(rp)), std::move(k)};
  e.cusp = cusp;
  e.c_max = c_max;
  return e;
}

std::complex<long double> z(const ComplexApprox& a) { return {a.re, a.im}; }

}  // namespace

TEST_CASE("validation") {
  CHECK_NOTHROW(validate(params(3, q(9), q(-3), q(3), Cusp::Infty, 10)));
  // k must exceed 2.
  CHECK_THROWS_AS(validate(params(2, q(8), q(8), q(2), Cusp::Infty, 10)), DomainError);
  // (k - k') / 2 must be an integer.
  CHECK_THROWS_AS(validate(params(3, q(9), q(-3), q(4), Cusp::Infty, 10)), DomainError);
  // n_inf must be integral at infinity.
  CHECK_THROWS_AS(validate(params(3, q(1), q(1), q(5), Cusp::Infty, 10)), DomainError);
  CHECK(parse_cusp("infty") == Cusp::Infty);
  CHECK(parse_cusp("one") == Cusp::One);
  CHECK_THROWS_AS(parse_cusp("zero"), InvalidArgument);
}

TEST_CASE("constant terms are exact") {
  const auto inf = coeff_infty(params(3, q(9), q(-3), q(3), Cusp::Infty, 50), 0);
  CHECK(inf.value.re == 1);
  CHECK(inf.value.im == 0);
  CHECK(inf.tail_bound == 0);
  const auto one = coeff_one(params(2, q(-8), q(16), q(4), Cusp::One, 50), 0);
  CHECK(one.value.re == 0);
  CHECK(one.value.im == 0);
}

TEST_CASE("matrix completion for the cusp 1") {
  CHECK(complete_matrix_cusp1(3, 1, 0) == std::pair<std::int64_t, std::int64_t>{2, -1});
  CHECK(complete_matrix_cusp1(3, 2, 1) == std::pair<std::int64_t, std::int64_t>{1, 0});
  for (std::int64_t p : {2, 3, 5, 11}) {
    for (std::int64_t c = 1; c < 40; ++c) {
      if (c % p == 0) continue;
      for (std::int64_t d = 0; d < 3 * c; ++d) {
        if (std::gcd(c, d) != 1) continue;
        const auto [a, b] = complete_matrix_cusp1(p, c, d);
        REQUIRE(a * d - b * c == 1);
        REQUIRE((a + c) % p == 0);
        REQUIRE(a + c > 0);
        REQUIRE(a + c <= p * c);
      }
    }
  }
}

TEST_CASE("classical coefficients") {
  CHECK(classical_coeff(2, 4, 0) == 1);
  CHECK(classical_coeff(2, 4, 1) == -16);
  CHECK(classical_coeff(2, 4, 2) == 112);
  CHECK_THROWS_AS(classical_coeff(2, 3, 1), DomainError);
}

TEST_CASE("trivial character series approaches the classical one") {
  const auto e = params(2, q(8), q(8), q(4), Cusp::Infty, 400);
  const auto coeffs = qexpansion(e, 6);
  REQUIRE(coeffs.size() == 7);
  for (std::int64_t n = 0; n <= 6; ++n) {
    const Rational exact = classical_coeff(2, 4, n);
    CHECK(std::fabs(static_cast<double>(coeffs[n].value.re) - exact.get_d()) <= coeffs[n].tail_bound);
    CHECK(std::fabs(static_cast<double>(coeffs[n].value.im)) <= coeffs[n].tail_bound + 1e-9);
  }
}

TEST_CASE("qexpansion matches single coefficients exactly") {
  const auto e = params(3, q(9), q(-3), q(3), Cusp::Infty, 120);
  const auto all = qexpansion(e, 4);
  for (std::int64_t n = 0; n <= 4; ++n) {
    const auto one = coeff_infty(e, n);
    CHECK(one.value.re == all[n].value.re);
    CHECK(one.value.im == all[n].value.im);
  }
}

TEST_CASE("tail bound shrinks and covers the change from doubling c_max") {
  auto e = params(3, q(9), q(-3), q(3), Cusp::Infty, 150);
  const auto a = coeff_infty(e, 2);
  e.c_max = 300;
  const auto b = coeff_infty(e, 2);
  CHECK(b.tail_bound < a.tail_bound);
  CHECK(std::abs(z(a.value) - z(b.value)) < a.tail_bound);
}

TEST_CASE("results do not depend on the thread count") {
  auto e = params(2, q(-8), q(16), q(4), Cusp::One, 200);
  e.threads = 1;
  const auto one = qexpansion(e, 3);
  e.threads = 4;
  const auto four = qexpansion(e, 3);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].value.re == four[i].value.re);
    CHECK(one[i].value.im == four[i].value.im);
  }
}

TEST_CASE("cusp 1 sums do not depend on the completion") {
  for (auto [p, r1, rp] : {std::tuple{2, q(-8), q(16)}, {3, q(-3), q(9)}, {2, q(-6), q(12)}}) {
    const PrimeLevelSpec s(p, r1, rp);
    for (std::int64_t c = 1; c <= 25; ++c) {
      if (c % p == 0) continue;
      for (std::int64_t n = 1; n <= 3; ++n) {
        const auto base = exp_sum_one(s, n, c);
        for (std::int64_t shift : {1, 2, 5}) {
          const auto moved = exp_sum_one(s, n, c, 53, shift);
          REQUIRE(moved.re == base.re);
          REQUIRE(moved.im == base.im);
        }
        CHECK_THROWS_AS(exp_sum_one(s, n, c, 53, -1), InvalidArgument);
      }
    }
  }
}

TEST_CASE("Kloosterman sums") {
  for (std::int64_t c = 1; c <= 30; ++c) {
    const auto k00 = kloosterman(0, 0, 0, c);
    CHECK(k00.re == doctest::Approx(static_cast<double>(euler_phi(c))));
    // Ramanujan sum c_c(1) is the Moebius function.
    std::int64_t mu = 1, m = c;
    for (std::int64_t f = 2; f * f <= m; ++f) {
      if (m % f != 0) continue;
      m /= f;
      mu = (m % f == 0) ? 0 : -mu;
      while (m % f == 0) m /= f;
    }
    if (m > 1) mu = -mu;
    const auto k10 = kloosterman(0, 1, 0, c);
    CHECK(std::fabs(static_cast<double>(k10.re) - mu) < 1e-12);
    CHECK(std::fabs(static_cast<double>(k10.im)) < 1e-12);
  }
}

TEST_CASE("level 3 sums equal twisted Kloosterman sums") {
  for (std::int64_t r3 = 0; r3 >= -5; --r3) {
    const PrimeLevelSpec s(3, q(-3 * r3), q(r3));
    const std::int64_t k = (r3 % 2 == 0) ? 4 : 3;
    const Rational h = (Rational(k) - s.kprime()) / 2;
    const long double sign = (h.get_num() % 2 != 0) ? -1.0L : 1.0L;
    const std::complex<long double> twist = std::polar(1.0L, -2 * 3.14159265358979323846L * k / 4);
    double worst = 0;
    for (std::int64_t c = 1; c <= 50; ++c) {
      for (std::int64_t n = 1; n <= 5; ++n) {
        const auto direct = z(exp_sum_infty(s, n, c));
        const auto kl = z(kloosterman(r3, c * c * r3 + n, c * c * r3, 3 * c));
        worst = std::max(worst, static_cast<double>(std::abs(twist * kl - sign * direct)));
      }
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("rational weight example runs") {
  const auto e = params(11, q(44, 9), q(-4, 9), q(20, 9), Cusp::Infty, 100);
  const auto coeffs = qexpansion(e, 3);
  CHECK(coeffs[0].value.re == 1);
  for (const auto& c : coeffs) {
    CHECK(std::isfinite(static_cast<double>(c.value.re)));
    CHECK(std::isfinite(static_cast<double>(c.value.im)));
    CHECK(std::isfinite(static_cast<double>(c.tail_bound)));
  }
}
