#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "prpairs/summation.hpp"
#include "prpairs/types.hpp"

namespace prp {

// 0 selects std::thread::hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for every i in [0, count) on the worker pool and blocks.
// The first exception thrown by any task is rethrown here.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Rows per stripe for grid loops. Fixed, so results never depend on the
// number of threads.
inline constexpr u64 kRowsPerStripe = 16;

struct GridAccumulator {
  ComplexSum sum;
  u64 count = 0;
};

// Mean of cell(m, n) over m, n in [1, N]. Stripes of rows are reduced
// independently and merged in stripe order.
template <class Cell>
Complex grid_mean(u64 N, Cell&& cell) {
  if (N == 0) return {0.0, 0.0};
  std::size_t stripes = static_cast<std::size_t>((N + kRowsPerStripe - 1) / kRowsPerStripe);
  std::vector<ComplexSum> partial(stripes);
  parallel_for(stripes, [&](std::size_t s) {
    ComplexSum acc;
    u64 lo = 1 + s * kRowsPerStripe;
    u64 hi = std::min<u64>(N, lo + kRowsPerStripe - 1);
    for (u64 m = lo; m <= hi; ++m)
      for (u64 n = 1; n <= N; ++n) acc.add(cell(static_cast<i64>(m), static_cast<i64>(n)));
    partial[s] = acc;
  });
  ComplexSum total;
  for (const auto& p : partial) total.merge(p);
  double cells = static_cast<double>(N) * static_cast<double>(N);
  return total.value() / cells;
}

// Exact count of cells where pred(m, n) holds, m, n in [1, N].
template <class Pred>
u64 grid_count(u64 N, Pred&& pred) {
  if (N == 0) return 0;
  std::size_t stripes = static_cast<std::size_t>((N + kRowsPerStripe - 1) / kRowsPerStripe);
  std::vector<u64> partial(stripes, 0);
  parallel_for(stripes, [&](std::size_t s) {
    u64 c = 0;
    u64 lo = 1 + s * kRowsPerStripe;
    u64 hi = std::min<u64>(N, lo + kRowsPerStripe - 1);
    for (u64 m = lo; m <= hi; ++m)
      for (u64 n = 1; n <= N; ++n)
        if (pred(static_cast<i64>(m), static_cast<i64>(n))) ++c;
    partial[s] = c;
  });
  u64 total = 0;
  for (u64 c : partial) total += c;
  return total;
}

}  // namespace prp
