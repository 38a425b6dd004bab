#include "poa/prf.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <string>

namespace poa {

Digest sha256(std::span<const std::uint8_t> data) {
  Digest out{};
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Digest sha256(std::string_view data) {
  return sha256(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

void RandomStream::fill(std::span<std::uint8_t> out) {
  for (auto& byte : out) {
    if (used_ == block_.size()) {
      std::array<std::uint8_t, 40> in{};
      std::copy(key_.begin(), key_.end(), in.begin());
      for (int i = 0; i < 8; ++i) in[32 + i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
      ++counter_;
      block_ = sha256(in);
      used_ = 0;
    }
    byte = block_[used_++];
  }
}

std::uint64_t RandomStream::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

std::uint64_t RandomStream::uniform(std::uint64_t bound) {
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

Prf Prf::from_seed(std::string_view seed) {
  std::string buf = "poa.seed:";
  buf.append(seed);
  return Prf(sha256(buf));
}

Prf Prf::derive(std::string_view label, std::uint64_t index) const {
  std::string buf(key_.begin(), key_.end());
  buf.append(label);
  buf.push_back('\0');
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>(index >> (56 - 8 * i)));
  return Prf(sha256(buf));
}

std::string hex_encode(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

}  // namespace poa
