#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace ps4 {

/// Worker cap used by every parallel loop in the library. 0 selects
/// std::thread::hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count();

/// Fixed index-block size shared by all reductions.
inline constexpr std::size_t kReductionBlock = 4096;

/// Runs fn(block_index) for block_index in [0, n_blocks) on the worker pool.
/// Blocks are independent; the caller owns per-block output slots.
void parallel_for_blocks(std::size_t n_blocks,
                         const std::function<void(std::size_t)>& fn);

/// Pairwise reduction over a fixed left-to-right tree. The result depends
/// only on the values, never on the worker count.
template <typename T>
T pairwise_reduce(std::vector<T> values) {
  if (values.empty()) return T{};
  while (values.size() > 1) {
    std::size_t half = (values.size() + 1) / 2;
    for (std::size_t i = 0; i < values.size() / 2; ++i)
      values[i] = values[2 * i] + values[2 * i + 1];
    if (values.size() % 2 == 1) values[half - 1] = values.back();
    values.resize(half);
  }
  return values.front();
}

/// Deterministic sum of term(i) for i in [0, n): blocks of kReductionBlock
/// summed sequentially (possibly in parallel), then combined pairwise.
template <typename T, typename Term>
T deterministic_sum(std::size_t n, Term&& term) {
  std::size_t n_blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<T> partial(n_blocks, T{});
  parallel_for_blocks(n_blocks, [&](std::size_t b) {
    T acc{};
    std::size_t end = std::min(n, (b + 1) * kReductionBlock);
    for (std::size_t i = b * kReductionBlock; i < end; ++i) acc += term(i);
    partial[b] = acc;
  });
  return pairwise_reduce(std::move(partial));
}

}  // namespace ps4
