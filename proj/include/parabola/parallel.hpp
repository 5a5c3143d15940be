#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace parabola {

/// A half-open range [lo, hi) handed to one worker.
struct Chunk {
  std::uint64_t lo;
  std::uint64_t hi;
};

/// Splits [lo, hi) into chunks of at most `size` elements that never straddle
/// one of the given cut points. The layout depends only on the arguments, never
/// on the thread count, so reductions over it are reproducible.
inline std::vector<Chunk> make_chunks(std::uint64_t lo, std::uint64_t hi, std::uint64_t size,
                                      const std::vector<std::uint64_t>& cuts = {}) {
  std::vector<Chunk> chunks;
  auto cut_it = cuts.begin();
  std::uint64_t start = lo;
  while (start < hi) {
    while (cut_it != cuts.end() && *cut_it <= start) ++cut_it;
    std::uint64_t end = std::min(hi, start + std::max<std::uint64_t>(size, 1));
    if (cut_it != cuts.end() && *cut_it < end) end = *cut_it;
    chunks.push_back({start, end});
    start = end;
  }
  return chunks;
}

/// Evaluates fn(chunk) for every chunk on up to `threads` workers and returns
/// the results in chunk order.
template <typename Fn>
auto parallel_map(const std::vector<Chunk>& chunks, unsigned threads, Fn fn) {
  using R = decltype(fn(chunks.front()));
  std::vector<R> results(chunks.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < chunks.size(); ++i) results[i] = fn(chunks[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(chunks.size());
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < chunks.size(); i = next++) {
          try {
            results[i] = fn(chunks[i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

/// Maximum of a ratio over the dyadic block [lo, hi) of keys.
struct BlockMax {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  double max_ratio = 0;
  std::uint64_t argmax = 0;
};

/// Folds (key, ratio) into `blocks`; keys must arrive in ascending order.
/// Ties keep the smaller key.
inline void merge_block(std::vector<BlockMax>& blocks, std::uint64_t key, double ratio) {
  const int k = std::bit_width(key) - 1;
  const std::uint64_t lo = std::uint64_t{1} << k;
  if (blocks.empty() || blocks.back().lo != lo) {
    blocks.push_back({lo, lo << 1, ratio, key});
    return;
  }
  auto& b = blocks.back();
  if (ratio > b.max_ratio) {
    b.max_ratio = ratio;
    b.argmax = key;
  }
}

/// Thread budget from PARABOLA_POINTS_THREADS, else 1.
inline unsigned default_threads() {
  if (const char* env = std::getenv("PARABOLA_POINTS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace parabola
