#pragma once

// Exact number-theoretic primitives: rationals, phases in Q/Z, Dedekind sums,
// Kronecker symbols, Bernoulli numbers and divisor sums.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "rweis/error.hpp"

namespace rweis {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws InvalidArgument when den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "p/q", "p" or "-p/q". Whitespace is not accepted.
Rational parse_rational(std::string_view text);
BigInt parse_integer(std::string_view text);

std::string to_string(const Rational& x);
std::string to_string(const BigInt& x);

BigInt floor(const Rational& x);
bool is_integer(const Rational& x);
/// Fits into a signed 64-bit integer.
bool fits_int64(const BigInt& x);
std::int64_t to_int64(const BigInt& x);

/// Element of Q/Z, kept as the representative in [0, 1).
class Phase {
 public:
  Phase() = default;
  explicit Phase(const Rational& x);
  static Phase of(std::int64_t num, std::int64_t den) { return Phase(make_rational(num, den)); }

  const Rational& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  Phase operator+(const Phase& o) const { return Phase(value_ + o.value_); }
  Phase operator-(const Phase& o) const { return Phase(value_ - o.value_); }
  Phase operator-() const { return Phase(-value_); }
  Phase& operator+=(const Phase& o) { return *this = *this + o; }
  Phase times(const BigInt& m) const { return Phase(value_ * m); }

  friend bool operator==(const Phase& x, const Phase& y) { return x.value_ == y.value_; }

 private:
  Rational value_{0};
};

/// Numeric carrier for truncated series and transcendental values.
struct ComplexApprox {
  /// Sentinel for "no bound known".
  static constexpr long double kUnbounded = -1.0L;

  long double re = 0;
  long double im = 0;
  long double err = kUnbounded;

  bool bounded() const { return err >= 0; }
};

/// ((x)): x - floor(x) - 1/2 off the integers, 0 on them.
Rational sawtooth(const Rational& x);

/// Dedekind sum straight from its definition, O(k).
Rational dedekind_sum_naive(const BigInt& h, const BigInt& k);

/// Dedekind sum through the reciprocity chain, O(log k).
Rational dedekind_sum(const BigInt& h, const BigInt& k);

/// 6k * s(h, k) for k >= 1 and gcd(h, k) == 1; the result is always an
/// integer. Requires k < 2^62. Hot path of the exponential-sum engines.
std::int64_t dedekind_sum_6k(std::int64_t h, std::int64_t k);

/// Kronecker-Jacobi symbol (a|n) for arbitrary integers.
int kronecker(std::int64_t a, std::int64_t n);

/// B_k with B_1 = -1/2; odd k > 1 gives 0.
Rational bernoulli(unsigned k);

/// sigma_{s}(n) = sum of d^s over positive divisors d of n, and 0 when n is
/// not a positive integer. Integer exponents give an exact Rational,
/// anything else a floating value.
std::variant<Rational, double> sigma(const Rational& exponent, const Rational& n);

/// e(x) = exp(2 pi i x) rounded to `precision` bits (24..64).
ComplexApprox e_of(const Phase& x, unsigned precision = 53);

/// Integer helpers shared by the engines.
std::int64_t gcd64(std::int64_t a, std::int64_t b);
/// Inverse of a modulo m (m >= 1), in [0, m). Throws DomainError if not invertible.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);
/// Euler phi by trial division.
std::int64_t euler_phi(std::int64_t n);
bool is_prime(std::int64_t n);
/// Floor-mod into [0, m).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace rweis
