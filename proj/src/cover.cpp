#include "rweis/cover.hpp"

#include <cmath>
#include <numbers>

namespace rweis {

namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw DomainError("matrix entry overflow");
  return r;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw DomainError("matrix entry overflow");
  return r;
}

// Principal argument of c*w + d where w is in the upper half plane. Real
// values are handled exactly so that negative reals always get +pi.
double principal_arg(std::int64_t c, std::int64_t d, std::complex<double> w) {
  if (c == 0) return d > 0 ? 0.0 : std::numbers::pi;
  return std::arg(static_cast<double>(c) * w + static_cast<double>(d));
}

// (arg A + arg B - arg AB) / 2pi, an integer up to rounding.
double cocycle_turns(const Matrix2& m1, const Matrix2& m2, std::complex<double> tau) {
  const std::complex<double> w =
      (static_cast<double>(m2.a) * tau + static_cast<double>(m2.b)) /
      (static_cast<double>(m2.c) * tau + static_cast<double>(m2.d));
  const Matrix2 prod = m1 * m2;
  const double arg_a = principal_arg(m1.c, m1.d, w);
  const double arg_b = principal_arg(m2.c, m2.d, tau);
  const double arg_ab = principal_arg(prod.c, prod.d, tau);
  return (arg_a + arg_b - arg_ab) / (2 * std::numbers::pi);
}

}  // namespace

std::int64_t Matrix2::det() const { return checked_mul(a, d) - checked_mul(b, c); }

Matrix2 Matrix2::operator*(const Matrix2& o) const {
  return {checked_add(checked_mul(a, o.a), checked_mul(b, o.c)),
          checked_add(checked_mul(a, o.b), checked_mul(b, o.d)),
          checked_add(checked_mul(c, o.a), checked_mul(d, o.c)),
          checked_add(checked_mul(c, o.b), checked_mul(d, o.d))};
}

CoverElement::CoverElement(const Matrix2& m, std::int64_t order, std::int64_t eps_index)
    : m_(m), order_(order), eps_index_(0) {
  if (order < 1) throw InvalidArgument("cover order must be positive");
  if (m.det() != 1) throw DomainError("matrix is not in SL2(Z)");
  eps_index_ = mod_floor(eps_index, order);
}

CoverElement lift(const Matrix2& m, std::int64_t order) { return CoverElement(m, order, 0); }

CoverElement identity_element(std::int64_t order) { return lift(Matrix2{}, order); }

double cocycle_residual(const Matrix2& m1, const Matrix2& m2, std::int64_t order,
                        std::complex<double> tau) {
  const double turns = cocycle_turns(m1, m2, tau);
  const double nearest = std::round(turns);
  const std::complex<double> delta = std::polar(1.0, 2 * std::numbers::pi * turns / order);
  const std::complex<double> root = std::polar(1.0, 2 * std::numbers::pi * nearest / order);
  return std::abs(delta - root);
}

std::int64_t cocycle_index(const Matrix2& m1, const Matrix2& m2, std::int64_t order,
                           std::complex<double> tau) {
  if (tau.imag() <= 0) throw InvalidArgument("sample point must lie in the upper half plane");
  const double turns = cocycle_turns(m1, m2, tau);
  if (cocycle_residual(m1, m2, order, tau) > 1e-6) {
    throw NumericalError("branch cocycle did not round to a root of unity");
  }
  return mod_floor(static_cast<std::int64_t>(std::llround(turns)), order);
}

CoverElement compose(const CoverElement& g1, const CoverElement& g2) {
  if (g1.order() != g2.order()) throw InvalidArgument("compose: mismatched cover orders");
  const std::int64_t delta = cocycle_index(g1.matrix(), g2.matrix(), g1.order());
  return CoverElement(g1.matrix() * g2.matrix(), g1.order(),
                      g1.eps_index() + g2.eps_index() + delta);
}

CoverElement invert(const CoverElement& g) {
  const Matrix2 inv = g.matrix().inverse();
  const std::int64_t delta = cocycle_index(g.matrix(), inv, g.order());
  return CoverElement(inv, g.order(), -g.eps_index() - delta);
}

CoverElement power(const CoverElement& g, std::int64_t n) {
  CoverElement base = n < 0 ? invert(g) : g;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  CoverElement acc = identity_element(g.order());
  while (e != 0) {
    if (e & 1U) acc = compose(acc, base);
    e >>= 1U;
    if (e != 0) base = compose(base, base);
  }
  return acc;
}

}  // namespace rweis
