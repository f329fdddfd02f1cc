#ifndef FDD2D_SRC_PARALLEL_H_
#define FDD2D_SRC_PARALLEL_H_

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace fdd2d::internal {

// Splits [0, count) into at most `workers` contiguous chunks and runs
// fn(begin, end) for each on its own thread. Results come back in chunk
// order so callers can reduce deterministically.
template <typename Result, typename Fn>
std::vector<Result> MapChunks(std::int64_t count, int workers, Fn fn) {
  workers = static_cast<int>(
      std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(count, 1)));
  std::vector<Result> results(workers);
  if (workers == 1) {
    results[0] = fn(std::int64_t{0}, count);
    return results;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = count * w / workers;
    const std::int64_t end = count * (w + 1) / workers;
    pool.emplace_back([&results, &fn, w, begin, end] {
      results[w] = fn(begin, end);
    });
  }
  pool.clear();  // joins
  return results;
}

}  // namespace fdd2d::internal

#endif  // FDD2D_SRC_PARALLEL_H_
