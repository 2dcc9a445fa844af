#include "serialize.hpp"

#include <charconv>

namespace rweis::json {

namespace {

double num(long double x) { return static_cast<double>(x); }

std::int64_t parse_int64(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Json to_json(const FracSeries& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs) coeffs.push_back(to_string(c));
  return Json{{"offset", to_string(s.offset)}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const ComplexApprox& z) {
  Json j{{"re", num(z.re)}, {"im", num(z.im)}};
  if (z.bounded()) {
    j["err"] = num(z.err);
  } else {
    j["err"] = "unbounded";
  }
  return j;
}

Json to_json(const CoeffResult& r) {
  return Json{{"n", to_string(r.n)},
              {"re", num(r.value.re)},
              {"im", num(r.value.im)},
              {"tail_bound", num(r.tail_bound)},
              {"c_max", r.c_max}};
}

Json to_json(const GammaResult& r) {
  Json j{{"k", to_string(r.k)},
         {"route", to_string(r.reduction.route)},
         {"n", r.n},
         {"value_re", num(r.value.re)},
         {"value_im", num(r.value.im)},
         {"tail_bound", num(r.tail_bound)},
         {"extrapolated", r.extrapolated},
         {"c_max", r.c_max}};
  j["k0"] = to_string(r.reduction.k0);
  j["multiplier"] = to_string(r.reduction.multiplier);
  if (r.extrapolated) {
    j["raw_re"] = num(r.raw_re);
    j["raw_im"] = num(r.raw_im);
  }
  return j;
}

Json to_json(const IdentityReport& r, bool with_timing) {
  Json params = Json::object();
  for (const auto& [key, value] : r.params) params[key] = value;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"n", row.n},
                        {"exact", row.exact},
                        {"exact_re", num(row.exact_re)},
                        {"exact_im", num(row.exact_im)},
                        {"numeric_re", num(row.numeric_re)},
                        {"numeric_im", num(row.numeric_im)},
                        {"residual", num(row.residual)},
                        {"tail_bound", num(row.tail_bound)},
                        {"informational", row.informational}});
  }
  return Json{{"identity", r.identity},
              {"params", std::move(params)},
              {"tol", r.tol},
              {"rows", std::move(rows)},
              {"verdict", to_string(r.verdict)},
              {"seconds", with_timing ? r.seconds : 0.0}};
}

std::map<std::int64_t, Rational> parse_exponents(std::string_view text) {
  std::map<std::int64_t, Rational> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw InvalidArgument("exponent entries look like n:r, got '" + std::string(item) + "'");
    }
    const std::int64_t n = parse_int64(item.substr(0, colon));
    if (out.count(n) != 0) throw InvalidArgument("divisor " + std::to_string(n) + " listed twice");
    out[n] = parse_rational(item.substr(colon + 1));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw InvalidArgument("no exponents given");
  return out;
}

}  // namespace rweis::json
