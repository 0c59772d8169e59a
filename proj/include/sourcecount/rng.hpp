#pragma once

#include <cstdint>
#include <random>

namespace sourcecount {

/// Independent random stream keyed by (seed, stream_id).
///
/// The engine state is a pure function of the key, so Monte Carlo trials
/// can be generated in any order or on any thread and still reproduce.
class RngStream {
public:
  using Engine = std::mt19937_64;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  Engine &engine() { return engine_; }

  /// Stream id for trial `trial` of sweep point `point`.
  static std::uint64_t trial_stream(std::uint64_t point, std::uint64_t trial) {
    return (point << 32) | (trial & 0xffffffffULL);
  }

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  Engine engine_;
};

} // namespace sourcecount
