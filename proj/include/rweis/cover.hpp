#pragma once

// The finite cover of SL2(Z) whose elements are pairs (matrix, root of unity);
// composition is twisted by the branch cocycle of principal fractional powers
// of (c tau + d).

#include <complex>
#include <cstdint>

#include "rweis/arith.hpp"

namespace rweis {

struct Matrix2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const;
  Matrix2 operator*(const Matrix2& o) const;
  Matrix2 inverse() const { return {d, -b, -c, a}; }
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// (M, eps) with eps an order-th root of unity, stored as the exact index j
/// of e(j / order).
class CoverElement {
 public:
  CoverElement(const Matrix2& m, std::int64_t order, std::int64_t eps_index);

  const Matrix2& matrix() const { return m_; }
  std::int64_t order() const { return order_; }
  std::int64_t eps_index() const { return eps_index_; }
  Phase eps() const { return Phase::of(eps_index_, order_); }

  friend bool operator==(const CoverElement&, const CoverElement&) = default;

 private:
  Matrix2 m_;
  std::int64_t order_;
  std::int64_t eps_index_;
};

/// The canonical lift (M, 1). Throws DomainError when det M != 1.
CoverElement lift(const Matrix2& m, std::int64_t order);
inline CoverElement lift(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                         std::int64_t order) {
  return lift(Matrix2{a, b, c, d}, order);
}

/// Index j with delta = e(j / order) for the product of the lifts of m1, m2,
/// evaluated numerically at `tau` and rounded. Throws NumericalError when the
/// evaluated delta is farther than 1e-6 from every order-th root of unity.
std::int64_t cocycle_index(const Matrix2& m1, const Matrix2& m2, std::int64_t order,
                           std::complex<double> tau = {0.0, 1.0});

/// Residual |delta - e(j/order)| of the rounding performed by cocycle_index.
double cocycle_residual(const Matrix2& m1, const Matrix2& m2, std::int64_t order,
                        std::complex<double> tau = {0.0, 1.0});

CoverElement compose(const CoverElement& g1, const CoverElement& g2);
CoverElement invert(const CoverElement& g);
CoverElement identity_element(std::int64_t order);
/// g^n for any integer n.
CoverElement power(const CoverElement& g, std::int64_t n);

}  // namespace rweis
