#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "gsfpp/random.hpp"

namespace gsfpp::mc {

/// Draws per substream. Draw i always comes from substream i / kBlockSize, so
/// output is independent of the number of worker threads.
inline constexpr std::size_t kBlockSize = 4096;

/// Worker count; 0 means std::thread::hardware_concurrency().
struct Parallelism {
  unsigned threads = 0;
};

/// Fills a vector with `count` draws of `draw(RandomStream&)`, ordered by
/// draw index. Exceptions thrown by a draw are rethrown on the caller.
template <class T, class Draw>
std::vector<T> generate(std::uint64_t master_seed, std::size_t count, Draw&& draw,
                        Parallelism par = {}) {
  std::vector<T> out(count);
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  unsigned workers = par.threads ? par.threads : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(blocks, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        RandomStream rng = RandomStream::substream(master_seed, b);
        const std::size_t end = std::min(count, (b + 1) * kBlockSize);
        for (std::size_t i = b * kBlockSize; i < end; ++i) out[i] = draw(rng);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace gsfpp::mc
