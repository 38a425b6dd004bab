#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace poa {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view data);

/// Deterministic stream SHA256(key || counter), counter as 8 big-endian bytes.
class RandomStream {
 public:
  explicit RandomStream(const Digest& key) : key_(key) {}

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  /// Uniform in [0, bound), bound > 0.
  std::uint64_t uniform(std::uint64_t bound);

  /// Near-uniform field element from 64 stream bytes.
  template <class F>
  F next_field() {
    std::array<std::uint8_t, 64> wide{};
    fill(wide);
    return F::from_wide_bytes(wide);
  }

  /// Nonzero field element.
  template <class F>
  F next_nonzero() {
    for (;;) {
      F v = next_field<F>();
      if (!v.is_zero()) return v;
    }
  }

 private:
  Digest key_;
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t used_ = 32;
};

/// Node of the seed tree. Children are SHA256(node || label || index).
class Prf {
 public:
  explicit Prf(const Digest& key) : key_(key) {}
  /// Root node for a user-supplied seed string.
  static Prf from_seed(std::string_view seed);

  Prf derive(std::string_view label, std::uint64_t index = 0) const;
  RandomStream stream() const { return RandomStream(key_); }
  const Digest& key() const { return key_; }

 private:
  Digest key_;
};

std::string hex_encode(std::span<const std::uint8_t> bytes);

}  // namespace poa
