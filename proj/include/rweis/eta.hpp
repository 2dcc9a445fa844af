#pragma once

// Exact q-expansions of rational-power eta-quotients and their numeric values
// on the upper half plane.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "rweis/arith.hpp"
#include "rweis/multiplier.hpp"

namespace rweis {

/// q^offset * sum_{i <= N} coeffs[i] q^i, known exactly up to q^{offset + N}.
struct FracSeries {
  Rational offset{0};
  std::vector<Rational> coeffs;

  std::size_t truncation() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

/// Product of two unit-offset series, truncated to the shorter one.
FracSeries multiply(const FracSeries& f, const FracSeries& g);

/// Offset 1/24 and the coefficients of prod_{n >= 1} (1 - q^n) through q^N.
FracSeries eta_integer_series(std::size_t terms);

/// f^r for a series with constant coefficient 1, as a formal power series
/// (the offset is carried over unchanged, not multiplied by r).
FracSeries series_rational_power(const FracSeries& f, const Rational& r);

/// Coefficients A(0..N) and offset sum n r_n / 24 of the eta-quotient.
FracSeries eta_quotient_series(const EtaQuotientSpec& spec, std::size_t terms);

/// Order of the eta-quotient at the cusp a/c, c >= 1, gcd(a, c) = 1.
Rational order_at_cusp(const EtaQuotientSpec& spec, std::int64_t a, std::int64_t c);

/// Value of prod eta(n tau)^{r_n}, with log eta(tau) = pi i tau / 12 +
/// sum_m Log(1 - q^m). err bounds the truncation of the log series.
ComplexApprox eval_eta_quotient(const EtaQuotientSpec& spec, std::complex<long double> tau,
                                unsigned precision = 64);

}  // namespace rweis
