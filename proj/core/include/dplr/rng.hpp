#pragma once

#include <cstdint>
#include <vector>

namespace dplr {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based 64-bit generator.
//
//   key      = mix64(mix64(seed) ^ mix64(stream_id + 0x9E3779B97F4A7C15))
//   output_n = mix64(key + n * 0x9E3779B97F4A7C15),  n = 1, 2, ...
//
// Uniforms take the top 53 bits and sit strictly inside (0, 1). Normals use
// the Marsaglia polar method; the second variate of each accepted pair is
// cached and returned by the next call. Everything is integer arithmetic or
// IEEE basic operations plus std::log/std::sqrt, so sequences are stable
// across platforms for a given (seed, stream_id).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept;
  double uniform() noexcept;
  double normal() noexcept;

  // Independent stream for a trial or purpose; depends only on (seed,
  // stream_id, child), never on how much of this stream has been consumed.
  RngStream split(std::uint64_t child) const noexcept;

  // Every normal() result is appended to `log` while attached.
  void attach_draw_log(std::vector<double>* log) noexcept { draw_log_ = log; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
  std::vector<double>* draw_log_ = nullptr;
};

}  // namespace dplr
