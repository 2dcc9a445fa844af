#include "rweis/arith.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

namespace rweis {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

constexpr long double kTwoPi = 6.283185307179586476925286766559005768L;

// Largest k for which the int64 reciprocity chain stays inside __int128.
constexpr std::int64_t kFastDedekindLimit = std::int64_t{1} << 40;

// 6k * s(h, k) for coprime (h, k) through the reciprocity chain on big integers.
BigInt dedekind_sum_6k_big(BigInt h, BigInt k) {
  std::vector<std::pair<BigInt, BigInt>> chain;
  h = h % k;
  if (h < 0) h += k;
  while (k > 1) {
    if (h == 0) throw DomainError("dedekind_sum_6k: arguments are not coprime");
    chain.emplace_back(h, k);
    BigInt next = k % h;
    k = h;
    h = next;
  }
  BigInt m = 0;  // 6k * s(h, k) of the innermost pair, which is (0, 1)
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const BigInt& hh = it->first;
    const BigInt& kk = it->second;
    BigInt twelve_hk_s = hh * hh + kk * kk + 1 - 3 * hh * kk - 2 * kk * m;
    m = twelve_hk_s / (2 * hh);
  }
  return m;
}

}  // namespace

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  return make_rational(BigInt(std::to_string(num)), BigInt(std::to_string(den)));
}

BigInt parse_integer(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw InvalidArgument("not an integer: '" + std::string(text) + "'");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!all_digits(den_text)) throw InvalidArgument("bad denominator in '" + std::string(text) + "'");
  return make_rational(num, BigInt(std::string(den_text), 10));
}

std::string to_string(const Rational& x) { return x.get_str(10); }
std::string to_string(const BigInt& x) { return x.get_str(10); }

BigInt floor(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

bool fits_int64(const BigInt& x) {
  static const BigInt lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
  static const BigInt hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
  return x >= lo && x <= hi;
}

std::int64_t to_int64(const BigInt& x) {
  if (!fits_int64(x)) throw DomainError("integer does not fit in 64 bits: " + to_string(x));
  return std::strtoll(x.get_str(10).c_str(), nullptr, 10);
}

Phase::Phase(const Rational& x) : value_(x - Rational(rweis::floor(x))) {}

Rational sawtooth(const Rational& x) {
  if (is_integer(x)) return Rational(0);
  return x - Rational(floor(x)) - Rational(1, 2);
}

Rational dedekind_sum_naive(const BigInt& h, const BigInt& k) {
  if (k < 1) throw InvalidArgument("dedekind_sum_naive: k must be positive");
  // ((r/k)) ((hr/k)) = (2r - k)(2m - k) / (4k^2) with m = hr mod k, m != 0.
  BigInt total = 0;
  if (fits_int64(k) && fits_int64(h)) {
    const std::int64_t kk = to_int64(k);
    const std::int64_t hh = mod_floor(to_int64(h % k), kk);
    __int128 acc = 0;
    for (std::int64_t r = 1; r < kk; ++r) {
      const auto m = static_cast<std::int64_t>((static_cast<__int128>(hh) * r) % kk);
      if (m == 0) continue;
      acc += static_cast<__int128>(2 * r - kk) * (2 * m - kk);
    }
    // |acc| < k^3, so it fits comfortably; go through a string for GMP.
    bool neg = acc < 0;
    unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(acc) : acc;
    std::string digits;
    do {
      digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(mag % 10)));
      mag /= 10;
    } while (mag != 0);
    total = BigInt((neg ? "-" : "") + digits, 10);
  } else {
    BigInt hh = h % k;
    if (hh < 0) hh += k;
    for (BigInt r = 1; r < k; ++r) {
      BigInt m = (hh * r) % k;
      if (m == 0) continue;
      total += (2 * r - k) * (2 * m - k);
    }
  }
  return make_rational(total, 4 * k * k);
}

std::int64_t dedekind_sum_6k(std::int64_t h, std::int64_t k) {
  if (k < 1) throw InvalidArgument("dedekind_sum_6k: k must be positive");
  if (k >= kFastDedekindLimit) throw InvalidArgument("dedekind_sum_6k: k too large for the fast path");
  h = mod_floor(h, k);
  std::array<std::int64_t, 128> hs{};
  std::array<std::int64_t, 128> ks{};
  std::size_t depth = 0;
  while (k > 1) {
    if (h == 0) throw DomainError("dedekind_sum_6k: arguments are not coprime");
    hs[depth] = h;
    ks[depth] = k;
    ++depth;
    const std::int64_t next = k % h;
    k = h;
    h = next;
  }
  __int128 m = 0;
  while (depth > 0) {
    --depth;
    const __int128 hh = hs[depth];
    const __int128 kk = ks[depth];
    const __int128 twelve_hk_s = hh * hh + kk * kk + 1 - 3 * hh * kk - 2 * kk * m;
    m = twelve_hk_s / (2 * hh);
  }
  return static_cast<std::int64_t>(m);
}

Rational dedekind_sum(const BigInt& h, const BigInt& k) {
  if (k < 1) throw InvalidArgument("dedekind_sum: k must be positive");
  BigInt hh = h % k;
  if (hh < 0) hh += k;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), hh.get_mpz_t(), k.get_mpz_t());
  const BigInt kr = k / g;
  hh /= g;
  if (kr == 1) return Rational(0);
  if (kr < BigInt(std::to_string(kFastDedekindLimit))) {
    const std::int64_t k64 = to_int64(kr);
    return make_rational(dedekind_sum_6k(to_int64(hh), k64), 6 * k64);
  }
  return make_rational(dedekind_sum_6k_big(hh, kr), 6 * kr);
}

int kronecker(std::int64_t a_in, std::int64_t n_in) {
  __int128 a = a_in;
  __int128 n = n_in;
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    if (twos % 2 == 1) {
      const auto r8 = static_cast<int>(((a % 8) + 8) % 8);
      if (r8 == 3 || r8 == 5) result = -result;
    }
  }
  // Jacobi symbol (a|n), n odd positive.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const auto r8 = static_cast<int>(n % 8);
      if (r8 == 3 || r8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

Rational bernoulli(unsigned k) {
  if (k > 1 && k % 2 == 1) return Rational(0);
  std::vector<Rational> b(k + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= k; ++m) {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    Rational acc = 0;
    BigInt binom = 1;  // C(m+1, 0)
    for (unsigned j = 0; j < m; ++j) {
      acc += binom * b[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = -acc / Rational(m + 1);
  }
  return b[k];
}

std::variant<Rational, double> sigma(const Rational& exponent, const Rational& n) {
  const bool exact = is_integer(exponent);
  if (!is_integer(n) || n <= 0) {
    if (exact) return Rational(0);
    return 0.0;
  }
  const std::int64_t nn = to_int64(n.get_num());
  std::vector<std::int64_t> divisors;
  for (std::int64_t d = 1; d <= nn / d; ++d) {
    if (nn % d != 0) continue;
    divisors.push_back(d);
    if (d != nn / d) divisors.push_back(nn / d);
  }
  if (exact) {
    const std::int64_t e = to_int64(exponent.get_num());
    Rational acc = 0;
    for (std::int64_t d : divisors) {
      BigInt pw;
      const BigInt base(std::to_string(d));
      mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
      acc += e < 0 ? Rational(BigInt(1), pw) : Rational(pw);
    }
    return acc;
  }
  const double s = exponent.get_d();
  double acc = 0;
  for (std::int64_t d : divisors) acc += std::pow(static_cast<double>(d), s);
  return acc;
}

ComplexApprox e_of(const Phase& x, unsigned precision) {
  if (precision < 24 || precision > 64) throw InvalidArgument("precision must be in [24, 64] bits");
  ComplexApprox out;
  out.err = std::ldexp(1.0L, 1 - static_cast<int>(precision));
  const Rational& v = x.value();
  const BigInt& den = v.get_den();
  if (den == 1 || den == 2 || den == 4) {
    const long q = Rational(v * 4).get_num().get_si();  // quarter turns
    static constexpr int kRe[4] = {1, 0, -1, 0};
    static constexpr int kIm[4] = {0, 1, 0, -1};
    out.re = kRe[q];
    out.im = kIm[q];
    out.err = 0;
    return out;
  }
  // Two-double split keeps ~106 bits of the turn count.
  mpf_class t(v, 128);
  const double hi = t.get_d();
  mpf_class rest = t - hi;
  long double turns = static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
  if (turns > 0.5L) turns -= 1.0L;
  const long double angle = kTwoPi * turns;
  if (precision <= 53) {
    out.re = static_cast<double>(std::cos(angle));
    out.im = static_cast<double>(std::sin(angle));
  } else {
    out.re = std::cos(angle);
    out.im = std::sin(angle);
  }
  return out;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m < 1) throw InvalidArgument("inverse_mod: modulus must be positive");
  if (m == 1) return 0;
  std::int64_t old_r = mod_floor(a, m);
  std::int64_t r = m;
  std::int64_t old_s = 1;
  std::int64_t s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw DomainError("inverse_mod: not invertible");
  return mod_floor(old_s, m);
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t f = 2; f <= n / f; ++f) {
    if (n % f != 0) continue;
    while (n % f == 0) n /= f;
    result -= result / f;
  }
  if (n > 1) result -= result / n;
  return result;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f <= n / f; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

}  // namespace rweis
