#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace lattice_extremal {

namespace detail {
inline int& thread_count_slot() {
  static int n = 0;  // 0 = hardware default
  return n;
}
}  // namespace detail

inline void set_thread_count(int n) { detail::thread_count_slot() = n; }

inline int thread_count() {
  const int n = detail::thread_count_slot();
  if (n > 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

namespace detail {

template <class Body>
void run_blocks(std::int64_t nblocks, Body&& body) {
  const int nt = static_cast<int>(std::min<std::int64_t>(thread_count(), nblocks));
  if (nt <= 1) {
    for (std::int64_t b = 0; b < nblocks; ++b) body(b);
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      body(b);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nt - 1));
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace detail

// Fixed-size blocks independent of the thread count; block partials are
// combined in index order, so the result is identical for every --threads
// value.
inline constexpr std::int64_t kSumBlock = 4096;

template <class Term>
double block_sum(std::int64_t n, Term&& term) {
  if (n <= 0) return 0.0;
  const std::int64_t nblocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
  detail::run_blocks(nblocks, [&](std::int64_t b) {
    const std::int64_t lo = b * kSumBlock;
    const std::int64_t hi = std::min(n, lo + kSumBlock);
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(b)] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

// Element-wise independent work; writes must be disjoint per index.
template <class Fn>
void parallel_for(std::int64_t n, Fn&& fn) {
  if (n <= 0) return;
  constexpr std::int64_t kForBlock = 256;
  const std::int64_t nblocks = (n + kForBlock - 1) / kForBlock;
  detail::run_blocks(nblocks, [&](std::int64_t b) {
    const std::int64_t lo = b * kForBlock;
    const std::int64_t hi = std::min(n, lo + kForBlock);
    for (std::int64_t i = lo; i < hi; ++i) fn(i);
  });
}

}  // namespace lattice_extremal
