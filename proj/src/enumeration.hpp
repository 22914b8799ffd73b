#pragma once

// Bitmask enumeration helpers shared by the oracle and the representation audit.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <thread>
#include <vector>

#include "randfair/rational.hpp"

namespace randfair::detail {

// True when every partial sum of `values` fits comfortably in int64 and any
// product of two such sums fits in __int128.
inline bool fits_small(const std::vector<Integer>& values) {
  Integer total = 0;
  for (const auto& v : values) total += abs(v);
  return mpz_sizeinbase(total.get_mpz_t(), 2) < 60;
}

template <class Int>
std::vector<Int> convert(const std::vector<Integer>& values) {
  std::vector<Int> out;
  out.reserve(values.size());
  for (const auto& v : values) {
    if constexpr (std::is_same_v<Int, Integer>) {
      out.push_back(v);
    } else {
      out.push_back(static_cast<Int>(v.get_si()));
    }
  }
  return out;
}

// Visits every mask in [0, 2^bits) in Gray-code order. toggle(bit, now_set)
// runs before each visit except the first (mask 0).
template <class Toggle, class Visit>
void gray_walk(unsigned bits, Toggle&& toggle, Visit&& visit) {
  std::uint64_t mask = 0;
  visit(mask);
  const std::uint64_t count = std::uint64_t{1} << bits;
  for (std::uint64_t i = 1; i < count; ++i) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(i));
    mask ^= std::uint64_t{1} << bit;
    toggle(bit, ((mask >> bit) & 1U) != 0);
    visit(mask);
  }
}

// Runs task(i) for i in [0, n) on up to hardware_concurrency threads. Results
// are written by the task itself, so callers reduce in index order and the
// outcome does not depend on scheduling.
template <class Task>
void parallel_tasks(std::size_t n, bool parallel, Task&& task) {
  const std::size_t workers =
      parallel ? std::min<std::size_t>(n, std::max(1U, std::thread::hardware_concurrency())) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) task(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace randfair::detail
