#pragma once

#include <cstdint>
#include <random>

namespace d2d {

/// Fixed stream tags used to derive independent substreams from one run seed.
/// The numeric values are part of the reproducibility contract; do not renumber.
enum class StreamTag : std::uint64_t {
  Topology = 1,
  Fading = 2,
  DownlinkEstimator = 3,
  UplinkEstimator = 4,
  EstimatorBlock = 5,
  Test = 99,
};

/// SplitMix64 finalizer over (seed, tag, index). Used for every substream split.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0);
inline std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0) {
  return derive_seed(seed, static_cast<std::uint64_t>(tag), index);
}

/// Seedable random stream. Uniform and exponential variates are produced from
/// the raw 64-bit mt19937_64 output with explicit transforms, so sequences are
/// identical across standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Exponential with unit mean.
  double unit_exponential();

  /// Independent stream derived from this stream's seed (not its state).
  RandomStream substream(StreamTag tag, std::uint64_t index = 0) const {
    return RandomStream(derive_seed(seed_, tag, index));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace d2d
