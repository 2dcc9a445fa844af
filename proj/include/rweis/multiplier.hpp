#pragma once

// Multiplier systems of rational-power eta-quotients on covers of Gamma0(N).
//
// Three independent evaluation routes are provided: the general Dedekind-sum
// formula, closed forms on four special matrix families, and Kronecker-symbol
// formulas for integer exponents. They are cross-checked against each other
// in the tests.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "rweis/arith.hpp"
#include "rweis/cover.hpp"

namespace rweis {

/// prod_{n | N} eta(n tau)^{r_n}.
class EtaQuotientSpec {
 public:
  EtaQuotientSpec(std::int64_t level, std::map<std::int64_t, Rational> exponents);

  std::int64_t level() const { return level_; }
  const std::map<std::int64_t, Rational>& exponents() const { return exponents_; }
  /// k' = (1/2) sum r_n.
  Rational weight() const;
  /// Minimal D with D * r_n integral for all n.
  std::int64_t D() const { return d_; }
  /// Order 2D of the cover the multiplier lives on.
  std::int64_t cover_order() const { return 2 * d_; }
  /// sum n r_n / 24, the exponent of the leading q-power.
  Rational leading_exponent() const;

 private:
  std::int64_t level_;
  std::map<std::int64_t, Rational> exponents_;
  std::int64_t d_;
};

/// eta(tau)^{r1} eta(p tau)^{rp} for a prime p.
class PrimeLevelSpec {
 public:
  PrimeLevelSpec(std::int64_t p, Rational r1, Rational rp);

  std::int64_t p() const { return p_; }
  const Rational& r1() const { return r1_; }
  const Rational& rp() const { return rp_; }
  /// (r1 + p rp) / 24
  Rational n_inf() const;
  /// (p r1 + rp) / 24
  Rational n_one() const;
  /// (r1 + rp) / 2
  Rational kprime() const;
  std::int64_t m_inf() const;
  std::int64_t m_one() const;

  EtaQuotientSpec eta_spec() const;

 private:
  std::int64_t p_;
  Rational r1_;
  Rational rp_;
};

/// chi(g) in Q/Z from the four-case Dedekind-sum formula. g must project to
/// Gamma0(N) and live on the cover of order spec.cover_order().
Phase chi_general(const EtaQuotientSpec& spec, const CoverElement& g);

/// (chi(T~), chi(g1 T~^p g1^{-1})) = (n_inf, n_one) mod 1 with g1 = (1,0;1,1).
std::pair<Phase, Phase> chi_T_and_cusp1(const PrimeLevelSpec& spec);

/// The matrix of closed-form family `family` (1..4) with parameter t.
/// Throws DomainError when t does not divide p-1, p+1, p-2, p+2 respectively,
/// or p == 2 for families 3 and 4.
Matrix2 special_family_matrix(std::int64_t p, int family, std::int64_t t);

/// Closed-form chi on the lift of special_family_matrix(p, family, t).
Phase chi_special(const PrimeLevelSpec& spec, int family, std::int64_t t);

/// Kronecker-symbol formula for integer r1, rp with n_inf integral, on the
/// lift of a Gamma0(p) matrix to the double cover.
Phase chi_integer(const PrimeLevelSpec& spec, const Matrix2& m);

/// r1 in 2Z, r1 + rp in 4Z and p r1 + rp in 24Z. Requires n_inf integral.
bool is_trivial_condition3(const PrimeLevelSpec& spec);

/// Searches exponents with denominator up to max_den and |r1|, |rp| < bound for
/// which chi looks trivial on `samples` random Gamma0(p) matrices but the
/// three-condition test fails. Candidates only; nothing is asserted.
std::vector<PrimeLevelSpec> probe_condition3_converse(std::int64_t p, std::int64_t max_den,
                                                      std::int64_t bound, int samples,
                                                      std::uint64_t seed);

/// Random element of Gamma0(N) with |c|, |d| <= max_entry (a, b are reduced
/// but may exceed the bound).
Matrix2 random_gamma0(std::int64_t level, std::int64_t max_entry, std::mt19937_64& rng);

}  // namespace rweis
