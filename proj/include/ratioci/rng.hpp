#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace ratioci {

// Mixes a root seed with a list of stream keys (cell, run, replication, ...)
// into an independent 64-bit seed. Pure function of its inputs, so substreams
// do not depend on evaluation order or thread count.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) noexcept;

// xoshiro256** seeded through splitmix64. Output is fully specified, hence
// identical on every platform (unlike the std:: distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;

  // Uniform on the open interval (0, 1).
  double uniform() noexcept;

  // Uniform integer in [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  // Standard normal variate (Marsaglia polar method; exact).
  double normal() noexcept;

 private:
  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ratioci
