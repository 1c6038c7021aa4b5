#pragma once

#include <cstdint>
#include <limits>

namespace precollapse {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream keyed on (master seed, stream index): the n-th
/// draw of a stream depends only on the key and n, never on scheduling.
class StreamRng {
public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t master_seed, std::uint64_t stream_index)
      : key_(mix64(master_seed ^ mix64(stream_index + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t draws() const { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_{0};
};

} // namespace precollapse
