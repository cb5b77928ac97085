#pragma once

#include <cstdint>
#include <random>

namespace gsfpp {

/// Seeded stream of random variates used by every sampler.
///
/// Substreams for parallel Monte Carlo are derived with derive_seed(master,
/// index): the engine of substream `index` is seeded with
/// splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15). The rule depends
/// only on (master, index), so results do not depend on thread count.
///
/// Every variate is produced from the raw 64-bit engine output by code in this
/// library, never by std:: distributions, so sequences are identical across
/// standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream substream(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform();
  /// Standard exponential.
  double exponential();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Poisson variate with the given mean; inversion below mean 10 and
  /// Hormann's PTRS transformed rejection above. Means beyond 1e15 use the
  /// normal approximation; an infinite mean saturates at kPoissonCap.
  std::int64_t poisson(double mean);

  static constexpr std::int64_t kPoissonCap = std::int64_t{1} << 62;

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

}  // namespace gsfpp
