#pragma once

#include <array>
#include <cstdint>

namespace qcl {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
/// every output block is a pure function of (key, counter).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit constexpr Philox4x32(Key key) : key_(key) {}

  Counter operator()(Counter ctr) const;

 private:
  Key key_;
};

/// Normal variates addressed by (cell, sample, interval) under a 64-bit
/// seed. Results do not depend on evaluation order.
class CounterNormalStream {
 public:
  explicit constexpr CounterNormalStream(std::uint64_t seed)
      : rng_({static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}) {}

  /// Standard normal variate (Box-Muller on two 53-bit uniforms in (0, 1)).
  double normal(std::uint64_t cell, std::uint32_t sample, std::uint32_t interval) const;

 private:
  Philox4x32 rng_;
};

}  // namespace qcl
