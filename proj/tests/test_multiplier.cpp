#include <doctest.h>

#include <random>

#include "rweis/cover.hpp"
#include "rweis/error.hpp"
#include "rweis/multiplier.hpp"

using namespace rweis;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

Phase chi_of(const PrimeLevelSpec& s, const Matrix2& m) {
  const auto spec = s.eta_spec();
  return chi_general(spec, lift(m, spec.cover_order()));
}

}  // namespace

TEST_CASE("spec derived quantities") {
  const PrimeLevelSpec s(11, q(44, 9), q(-4, 9));
  CHECK(s.n_inf() == 0);
  CHECK(s.kprime() == q(20, 9));
  CHECK(s.eta_spec().D() == 9);
  CHECK(s.eta_spec().cover_order() == 18);
  CHECK_THROWS_AS(PrimeLevelSpec(4, q(1), q(1)), InvalidArgument);
}

TEST_CASE("identity has trivial character") {
  const PrimeLevelSpec s(11, q(3, 7), q(-5, 2));
  CHECK(chi_of(s, Matrix2{}).is_zero());
}

TEST_CASE("values at T and at the cusp 1 generator") {
  for (auto [p, r1, rp] : {std::tuple{3, q(9), q(-3)}, {2, q(16), q(-8)}, {11, q(44, 9), q(-4, 9)},
                           {5, q(7, 3), q(2, 5)}, {7, q(-1, 2), q(5)}}) {
    const PrimeLevelSpec s(p, r1, rp);
    const auto [t, one] = chi_T_and_cusp1(s);
    CHECK(t == Phase(s.n_inf()));
    CHECK(one == Phase(s.n_one()));
    CHECK(chi_of(s, Matrix2{1, 1, 0, 1}) == Phase(s.n_inf()));
  }
  const auto [t3, one3] = chi_T_and_cusp1(PrimeLevelSpec(3, q(9), q(-3)));
  CHECK(t3.is_zero());
  CHECK(one3.is_zero());
  CHECK(chi_T_and_cusp1(PrimeLevelSpec(11, q(44, 9), q(-4, 9))).first.is_zero());
}

TEST_CASE("level 11 generator values") {
  for (auto [r1, r11] : {std::pair{q(44, 9), q(-4, 9)}, {q(1), q(0)}, {q(-5, 3), q(7, 2)}}) {
    const PrimeLevelSpec s(11, r1, r11);
    const auto spec = s.eta_spec();
    const std::int64_t ord = spec.cover_order();
    const auto T = lift(1, 1, 0, 1, ord);
    const auto S = lift(0, -1, 1, 0, ord);
    const auto Si = invert(S);
    const auto w1 = compose(compose(compose(compose(compose(T, Si), power(T, 3)), Si), power(T, 4)), S);
    const auto w2 = compose(compose(compose(compose(compose(T, Si), power(T, 4)), Si), power(T, 3)), S);
    CHECK(w1.matrix() == Matrix2{7, -2, 11, -3});
    CHECK(w2.matrix() == Matrix2{8, -3, 11, -4});
    CHECK(chi_general(spec, T) == Phase((r1 + 11 * r11) / 24));
    CHECK(chi_general(spec, compose(S, S)) == Phase((-6 * r1 - 6 * r11) / 24));
    CHECK(chi_general(spec, w1) == Phase((11 * r1 + 13 * r11) / 24));
    CHECK(chi_general(spec, w2) == Phase((11 * r1 + 13 * r11) / 24));
  }
}

TEST_CASE("character of the lift of -I") {
  for (auto [p, r1, rp] : {std::tuple{2, q(3, 4), q(1, 2)}, {3, q(9), q(-3)}, {11, q(44, 9), q(-4, 9)}}) {
    const PrimeLevelSpec s(p, r1, rp);
    CHECK(chi_of(s, Matrix2{-1, 0, 0, -1}) == Phase(-s.kprime() / 2));
  }
}

TEST_CASE("chi_general is a homomorphism") {
  std::mt19937_64 rng(21);
  for (std::int64_t p : {2, 3, 5, 11}) {
    for (auto [r1, rp] : {std::pair{q(44, 9), q(-4, 9)}, {q(3, 5), q(-7, 4)}, {q(9), q(-3)}}) {
      const auto spec = PrimeLevelSpec(p, r1, rp).eta_spec();
      const std::int64_t ord = spec.cover_order();
      for (int i = 0; i < 100; ++i) {
        const CoverElement g1(random_gamma0(p, 200, rng), ord, static_cast<std::int64_t>(rng() % ord));
        const CoverElement g2(random_gamma0(p, 200, rng), ord, static_cast<std::int64_t>(rng() % ord));
        REQUIRE(chi_general(spec, compose(g1, g2)) == chi_general(spec, g1) + chi_general(spec, g2));
      }
    }
  }
}

TEST_CASE("chi_general rejects matrices outside Gamma0(N)") {
  const auto spec = PrimeLevelSpec(3, q(9), q(-3)).eta_spec();
  CHECK_THROWS_AS(chi_general(spec, lift(7, -2, 11, -3, spec.cover_order())), DomainError);
}

TEST_CASE("special families") {
  const PrimeLevelSpec s3(3, q(9), q(-3));
  CHECK(chi_special(s3, 2, 1).is_zero());
  for (std::int64_t p : {5, 7, 13}) {
    const PrimeLevelSpec s(p, q(5, 3), q(1, 2));
    CHECK(chi_special(s, 1, 1) == Phase((s.r1() + s.rp()) * (p - 5) / 24));
    CHECK(chi_special(PrimeLevelSpec(p, q(5, 3), q(-5, 3)), 1, 1).is_zero());
  }
  CHECK_THROWS_AS(special_family_matrix(2, 3, 1), DomainError);
  CHECK_THROWS_AS(special_family_matrix(7, 1, 5), DomainError);
}

TEST_CASE("special families agree with the general formula") {
  for (std::int64_t p = 2; p <= 50; ++p) {
    if (!is_prime(p)) continue;
    const PrimeLevelSpec s(p, q(7, 6), q(-5, 4));
    const auto spec = s.eta_spec();
    for (int family = 1; family <= 4; ++family) {
      if (p == 2 && family >= 3) continue;
      const std::int64_t m = family == 1 ? p - 1 : family == 2 ? p + 1 : family == 3 ? p - 2 : p + 2;
      for (std::int64_t t = 1; t <= m; ++t) {
        if (m % t != 0) continue;
        const Matrix2 g = special_family_matrix(p, family, t);
        REQUIRE(chi_special(s, family, t) == chi_general(spec, lift(g, spec.cover_order())));
      }
    }
  }
}

TEST_CASE("integer formula examples") {
  const PrimeLevelSpec s3(3, q(9), q(-3));
  CHECK(chi_integer(s3, Matrix2{1, 0, 3, 1}).is_zero());
  const PrimeLevelSpec s2(2, q(16), q(-8));
  CHECK(chi_integer(s2, Matrix2{1, 0, 2, 1}).is_zero());
  std::mt19937_64 rng(4);
  const PrimeLevelSpec s5(5, q(4), q(4));
  for (int i = 0; i < 50; ++i) CHECK(chi_integer(s5, random_gamma0(5, 50, rng)).is_zero());
}

TEST_CASE("integer formula agrees with the general formula") {
  std::mt19937_64 rng(8);
  for (std::int64_t p : {2, 3, 5, 7, 13}) {
    for (std::int64_t r1 = -30; r1 <= 30; r1 += 7) {
      // rp chosen so that r1 + p rp is divisible by 24.
      for (std::int64_t rp = -40; rp <= 40; ++rp) {
        if ((r1 + p * rp) % 24 != 0) continue;
        const PrimeLevelSpec s(p, q(r1), q(rp));
        const auto spec = s.eta_spec();
        for (int i = 0; i < 20; ++i) {
          const Matrix2 g = random_gamma0(p, 300, rng);
          REQUIRE(chi_integer(s, g) == chi_general(spec, lift(g, spec.cover_order())));
        }
      }
    }
  }
}

TEST_CASE("three-condition triviality") {
  CHECK(is_trivial_condition3(PrimeLevelSpec(2, q(8), q(8))));
  CHECK_FALSE(is_trivial_condition3(PrimeLevelSpec(3, q(9), q(-3))));
  CHECK(is_trivial_condition3(PrimeLevelSpec(5, q(24), q(0))));
  std::mt19937_64 rng(12);
  int trivial_specs = 0;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    for (std::int64_t r1 = -24; r1 <= 24; r1 += 2) {
      for (std::int64_t rp = -24; rp <= 24; ++rp) {
        const PrimeLevelSpec s(p, q(r1), q(rp));
        if (!is_integer(s.n_inf()) || !is_trivial_condition3(s)) continue;
        ++trivial_specs;
        for (int i = 0; i < 10; ++i) REQUIRE(chi_of(s, random_gamma0(p, 500, rng)).is_zero());
      }
    }
  }
  CHECK(trivial_specs > 0);
}
