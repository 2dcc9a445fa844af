#pragma once

// Gamma values from the exponential-sum series attached to the level 2 and
// level 3 eta-quotient identities, plus an independent reference evaluation.

#include <cstdint>
#include <string>
#include <variant>

#include "rweis/arith.hpp"

namespace rweis {

/// A Gamma argument: exact rational, or a real number.
using GammaArg = std::variant<Rational, long double>;

long double to_long_double(const GammaArg& x);
std::string to_string(const GammaArg& x);

/// P2 is valid on (2, 4], P3 on (2, 3]. Auto picks P2 for k in (3, 4] and P3
/// for every other k.
enum class GammaRoute { P2, P3, Auto };

std::string to_string(GammaRoute route);
GammaRoute parse_gamma_route(std::string_view text);

struct GammaRequest {
  GammaArg k = Rational(3);
  GammaRoute route = GammaRoute::Auto;
  /// Which Fourier coefficient of the identity is used; n > 1 needs rational k.
  std::int64_t n_choice = 1;
  std::int64_t c_max = 2000;
  unsigned precision = 53;
  /// Richardson step on the model S + alpha C^{2-k}; never part of the bound.
  bool extrapolate = false;
  /// 0 means RWEIS_THREADS or all cores.
  int threads = 0;
};

struct GammaReduction {
  GammaArg k0;
  /// Gamma(k) = multiplier * Gamma(k0); exact for rational k.
  GammaArg multiplier;
  GammaRoute route;  // resolved, never Auto
};

/// Moves k into the window of `route` with Gamma(z + 1) = z Gamma(z).
/// Throws DomainError at the poles 0, -1, -2, ...
GammaReduction gamma_reduce(const GammaArg& k, GammaRoute route = GammaRoute::Auto);

struct GammaResult {
  GammaArg k;
  GammaReduction reduction;
  std::int64_t n = 1;
  std::int64_t c_max = 0;
  /// Reported value; err = tail_bound plus a rounding estimate.
  ComplexApprox value;
  /// Guaranteed truncation bound of the plain partial sum.
  long double tail_bound = 0;
  /// Plain partial sum, identical to value when extrapolated is false.
  long double raw_re = 0;
  long double raw_im = 0;
  bool extrapolated = false;
};

GammaResult gamma_series(const GammaRequest& req);

/// Lanczos approximation with reflection; relative error about 1e-15.
/// Independent of the series above and used as a test oracle.
ComplexApprox gamma_reference(long double k, unsigned precision = 64);

/// A_p(n; r1, rp): coefficient of q^{n_inf + n} in eta^{r1}(tau) eta^{rp}(p tau).
Rational eta_coefficient(std::int64_t p, const Rational& r1, const Rational& rp, std::int64_t n);

}  // namespace rweis
