#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace ddd {

/// Seeded pseudo-random source used by the synthetic benchmark.
///
/// The bit stream is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Uniform and normal variates use explicit mappings (53-bit
/// mantissa, Box-Muller) rather than the implementation-defined standard
/// distributions, so reruns agree across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// SplitMix64 finaliser of (seed, stream); gives independent sub-streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// FNV-1a 64-bit hash, used to turn names into stream ids.
std::uint64_t stream_id(std::string_view name);

}  // namespace ddd
