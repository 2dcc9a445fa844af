#pragma once

// Deterministic fan-out over truncation index c.
//
// The range 1..c_max is cut into fixed chunks whose size does not depend on
// the thread count. Workers pull chunk indices from an atomic counter and write
// each chunk's compensated partial sums into its own slot; the slots are then
// combined in index order. The result is therefore bit-identical for any
// number of threads.

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rweis::detail {

inline constexpr std::int64_t kChunk = 16;

/// requested > 0 wins; otherwise RWEIS_THREADS, otherwise all cores.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RWEIS_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Neumaier's variant of Kahan summation.
template <class Real>
struct CompensatedSum {
  Real sum = 0;
  Real comp = 0;

  void add(Real x) {
    const Real t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  Real value() const { return sum + comp; }
};

template <class Real>
struct ComplexSum {
  CompensatedSum<Real> re;
  CompensatedSum<Real> im;

  void add(std::complex<Real> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<Real> value() const { return {re.value(), im.value()}; }
};

/// Runs body(chunk) for chunk in [0, chunks) on up to `threads` workers.
/// The first exception thrown by any worker is rethrown here.
template <class Body>
void for_each_chunk(std::int64_t chunks, int threads, Body&& body) {
  const int workers = static_cast<int>(std::min<std::int64_t>(std::max(threads, 1), chunks));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::int64_t chunk = next.fetch_add(1);
      if (chunk >= chunks) return;
      try {
        body(chunk);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

/// Sums term(c, out) over c = 1..c_max for `width` parallel outputs.
/// term adds the already weighted contribution of c into out[0..width).
/// Returns the totals and, when `checkpoint` is positive, the partial sums
/// over c <= checkpoint (checkpoint is rounded down to a chunk boundary and
/// the rounded value is written back).
template <class Term>
std::vector<std::complex<long double>> reduce_over_c(std::int64_t c_max, std::size_t width,
                                                     int threads, Term&& term,
                                                     std::int64_t* checkpoint = nullptr,
                                                     std::vector<std::complex<long double>>* at_checkpoint =
                                                         nullptr) {
  const std::int64_t chunks = (c_max + kChunk - 1) / kChunk;
  std::vector<std::vector<std::complex<long double>>> partial(
      static_cast<std::size_t>(chunks), std::vector<std::complex<long double>>(width));
  for_each_chunk(chunks, threads, [&](std::int64_t chunk) {
    std::vector<ComplexSum<long double>> acc(width);
    std::vector<std::complex<long double>> out(width);
    const std::int64_t lo = chunk * kChunk + 1;
    const std::int64_t hi = std::min(c_max, lo + kChunk - 1);
    for (std::int64_t c = lo; c <= hi; ++c) {
      std::fill(out.begin(), out.end(), std::complex<long double>{});
      term(c, out);
      for (std::size_t i = 0; i < width; ++i) acc[i].add(out[i]);
    }
    auto& slot = partial[static_cast<std::size_t>(chunk)];
    for (std::size_t i = 0; i < width; ++i) slot[i] = acc[i].value();
  });

  std::int64_t stop_chunk = -1;
  if (checkpoint != nullptr && *checkpoint > 0) {
    stop_chunk = *checkpoint / kChunk;  // chunks fully below the checkpoint
    *checkpoint = stop_chunk * kChunk;
  }
  std::vector<ComplexSum<long double>> total(width);
  for (std::int64_t chunk = 0; chunk < chunks; ++chunk) {
    if (chunk == stop_chunk && at_checkpoint != nullptr) {
      at_checkpoint->resize(width);
      for (std::size_t i = 0; i < width; ++i) (*at_checkpoint)[i] = total[i].value();
    }
    const auto& slot = partial[static_cast<std::size_t>(chunk)];
    for (std::size_t i = 0; i < width; ++i) total[i].add(slot[i]);
  }
  std::vector<std::complex<long double>> result(width);
  for (std::size_t i = 0; i < width; ++i) result[i] = total[i].value();
  return result;
}

/// e(num / q) for 0 <= num < q, rounded once.
template <class Real>
inline std::complex<Real> unit_root(std::int64_t num, std::int64_t q) {
  constexpr Real kTwoPi = static_cast<Real>(6.283185307179586476925286766559005768L);
  if (2 * num > q) num -= q;
  const Real angle = kTwoPi * (static_cast<Real>(num) / static_cast<Real>(q));
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace rweis::detail
