#pragma once

// Identity checks: Eisenstein coefficient engines against exact eta-quotient
// expansions and closed forms, Gamma series against the reference oracle.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rweis/arith.hpp"

namespace rweis {

enum class Verdict { Pass, Fail, Informational };

std::string to_string(Verdict v);

struct ReportRow {
  std::string n;      // index or label
  std::string exact;  // exact value as text
  long double exact_re = 0;
  long double exact_im = 0;
  long double numeric_re = 0;
  long double numeric_im = 0;
  /// |numeric - exact| / max(1, |exact|)
  long double residual = 0;
  long double tail_bound = 0;
  bool informational = false;
};

struct IdentityReport {
  std::string identity;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<ReportRow> rows;
  double tol = 0;
  Verdict verdict = Verdict::Pass;
  double seconds = 0;
};

/// Options shared by all checks. tol <= 0 selects the default for the weight:
/// 1e-3 when k - 2 >= 1, 1e-2 when k - 2 >= 1/2, 5e-2 otherwise; rows with
/// k - 2 < 1/5 are informational.
struct VerifyOptions {
  std::int64_t n_max = 5;
  std::int64_t c_max = 2000;
  double tol = 0;
  unsigned precision = 53;
  int threads = 0;
};

double default_tolerance(const Rational& k);
bool is_informational_weight(const Rational& k);

/// E^{i inf}_{4 n1, 2}(; 16 n1, -8 n1) = eta^{16 n1}(tau) eta^{-8 n1}(2 tau), 1/2 < n1 <= 1, and
/// E^{i inf}_{3 n1, 3}(; 9 n1, -3 n1) = eta^{9 n1}(tau) eta^{-3 n1}(3 tau), 2/3 < n1 <= 1.
IdentityReport verify_thm71(std::int64_t p, const Rational& n1, const VerifyOptions& opt);

/// E^1_{4 n, 2}(; -8 n, 16 n) = 2^{8 n} eta^{-8 n}(tau) eta^{16 n}(2 tau), 1/2 < n <= 1, and
/// E^1_{3 n, 3}(; -3 n, 9 n) = 3^{9n/2} e(-n/4) eta^{-3 n}(tau) eta^{9 n}(3 tau), 2/3 < n <= 1.
IdentityReport verify_thm72(std::int64_t p, const Rational& n_inf, const VerifyOptions& opt);

/// Trivial-character series against 1 - (2k/B_k)/(p^k - 1) sum (p^k sigma(n/p) - sigma(n)) q^n.
IdentityReport verify_classical(std::int64_t p, std::int64_t k, const Rational& r1, const Rational& rp,
                                const VerifyOptions& opt);

/// eta^9(tau) eta^{-3}(3 tau) = 1 - 9 sum_n sum_{m | n} (m|3) m^2 q^n, both as an exact
/// series identity and against the weight 3 Eisenstein coefficients.
IdentityReport verify_carlitz(const VerifyOptions& opt);

/// Prefactor of a Gamma series as coefficient * prod base^exponent, normalised so
/// that bases are primes or pi and exponents lie in [0, 1).
struct PowerProduct {
  Rational coefficient{1};
  std::map<std::string, Rational> exponents;  // "pi", "2", "3", ...

  PowerProduct& mul_power(std::int64_t base, const Rational& e);
  PowerProduct& mul_pi(const Rational& e);
  PowerProduct& mul(const Rational& c);
  std::string to_string() const;
  friend bool operator==(const PowerProduct& x, const PowerProduct& y);
};

/// The two introductory Gamma displays: Gamma(8/3) from the level 2 series and
/// Gamma(15/7) from the level 3 series with n = 2 (informational only), plus
/// exact checks that their printed prefactors equal the general ones.
IdentityReport verify_gamma_examples(const VerifyOptions& opt);

}  // namespace rweis
