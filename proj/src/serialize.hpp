#pragma once

// JSON shapes of the public results. Kept out of the installed headers so the
// C++ core does not leak the JSON library to consumers.

#include <json.hpp>

#include "rweis/eisenstein.hpp"
#include "rweis/eta.hpp"
#include "rweis/gamma.hpp"
#include "rweis/verify.hpp"

namespace rweis::json {

using Json = nlohmann::ordered_json;

Json to_json(const FracSeries& s);
Json to_json(const ComplexApprox& z);
Json to_json(const CoeffResult& r);
Json to_json(const GammaResult& r);
Json to_json(const IdentityReport& r, bool with_timing = true);

/// Parses "1:9,3:-3" into divisor -> exponent.
std::map<std::int64_t, Rational> parse_exponents(std::string_view text);

}  // namespace rweis::json
