#pragma once

// Truncated Fourier coefficients of the rational-weight Eisenstein series on
// Gamma0(p) attached to eta^{r1}(tau) eta^{rp}(p tau), at the cusps i*infinity
// and 1.
//
// Every exponential-sum phase is assembled as an exact integer numerator over
// a common denominator and rounded once. The sums over c run in fixed chunks
// and are combined in index order, so values do not depend on the thread count.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rweis/arith.hpp"
#include "rweis/multiplier.hpp"

namespace rweis {

enum class Cusp { Infty, One };

std::string to_string(Cusp cusp);
Cusp parse_cusp(std::string_view text);

struct EisensteinParams {
  PrimeLevelSpec spec;
  Rational k;
  Cusp cusp = Cusp::Infty;
  std::int64_t c_max = 2000;
  unsigned precision = 53;
  int threads = 0;
};

/// Throws DomainError unless k > 2, (k - k')/2 is an integer and the cusp
/// integrality condition holds (n_inf in Z at infinity, n_one in Z at 1).
void validate(const EisensteinParams& params);

struct CoeffResult {
  /// Exponent of q: an integer at infinity, a multiple of 1/m_inf at 1.
  Rational n;
  ComplexApprox value;
  long double tail_bound = 0;
  std::int64_t c_max = 0;
};

/// Inner sum over 0 <= d < pc, gcd(d, pc) = 1, of
/// e((-n_inf a + (n - n_inf) d)/(pc) - (r1 s(-d, pc) + rp s(-d, c))/2), a = d^{-1} mod pc.
ComplexApprox exp_sum_infty(const PrimeLevelSpec& spec, std::int64_t n, std::int64_t c,
                            unsigned precision = 53);

/// Coefficient of q^n at infinity; n = 0 gives exactly 1.
CoeffResult coeff_infty(const EisensteinParams& params, std::int64_t n);

/// (a, b) with ad - bc = 1, a = d^{-1} mod c, p | a + c and a + c > 0 minimal.
std::pair<std::int64_t, std::int64_t> complete_matrix_cusp1(std::int64_t p, std::int64_t c,
                                                            std::int64_t d);

/// Inner sum of the expansion at the cusp 1 for fixed c (gcd(c, p) = 1) over
/// 0 <= d < c m_inf, gcd(c, d) = 1. `shift` >= 0 replaces (a, b) by
/// (a + shift pc, b + shift pd); the value must not depend on it.
ComplexApprox exp_sum_one(const PrimeLevelSpec& spec, std::int64_t n, std::int64_t c,
                          unsigned precision = 53, std::int64_t shift = 0);

/// Coefficient of q^{n/m_inf} at the cusp 1; n = 0 gives exactly 0.
CoeffResult coeff_one(const EisensteinParams& params, std::int64_t n);

/// K(psi, m, n; c) = sum_{r mod c, gcd(r, c) = 1} psi(r) e((m r + n r^{-1})/c)
/// with psi(r) = (r|3)^{r3}.
ComplexApprox kloosterman(std::int64_t r3, std::int64_t m, std::int64_t n, std::int64_t c,
                          unsigned precision = 53);

/// 1 - (2k/B_k)/(p^k - 1) sum (p^k sigma_{k-1}(n/p) - sigma_{k-1}(n)) q^n; n = 0 gives 1.
Rational classical_coeff(std::int64_t p, std::int64_t k, std::int64_t n);

/// Coefficients n = 0..n_max sharing one pass over (c, d).
std::vector<CoeffResult> qexpansion(const EisensteinParams& params, std::int64_t n_max);

}  // namespace rweis
