#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace poa {

using u128 = unsigned __int128;

/// Fixed-width 256-bit unsigned integer, four little-endian 64-bit limbs.
struct U256 {
  std::array<std::uint64_t, 4> limbs{};

  constexpr U256() = default;
  constexpr U256(std::uint64_t v) : limbs{v, 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
  constexpr U256(std::uint64_t l0, std::uint64_t l1, std::uint64_t l2, std::uint64_t l3)
      : limbs{l0, l1, l2, l3} {}

  /// Parses decimal, or hexadecimal with a `0x` prefix. Throws on overflow or bad digits.
  static constexpr U256 parse(std::string_view s);

  constexpr bool is_zero() const { return (limbs[0] | limbs[1] | limbs[2] | limbs[3]) == 0; }
  constexpr bool is_odd() const { return (limbs[0] & 1) != 0; }
  constexpr bool bit(std::size_t i) const { return i < 256 && ((limbs[i / 64] >> (i % 64)) & 1) != 0; }

  constexpr std::size_t bit_length() const {
    for (int i = 3; i >= 0; --i) {
      if (limbs[i] != 0) {
        return static_cast<std::size_t>(i) * 64 + (64 - static_cast<std::size_t>(__builtin_clzll(limbs[i])));
      }
    }
    return 0;
  }

  friend constexpr bool operator==(const U256&, const U256&) = default;
  friend constexpr std::strong_ordering operator<=>(const U256& a, const U256& b) {
    for (int i = 3; i >= 0; --i) {
      if (a.limbs[i] != b.limbs[i]) return a.limbs[i] <=> b.limbs[i];
    }
    return std::strong_ordering::equal;
  }
};

/// a += b, returns the carry out.
constexpr std::uint64_t add_in_place(U256& a, const U256& b) {
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const u128 s = static_cast<u128>(a.limbs[i]) + b.limbs[i] + carry;
    a.limbs[i] = static_cast<std::uint64_t>(s);
    carry = static_cast<std::uint64_t>(s >> 64);
  }
  return carry;
}

/// a -= b, returns the borrow out.
constexpr std::uint64_t sub_in_place(U256& a, const U256& b) {
  std::uint64_t borrow = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const u128 d = static_cast<u128>(a.limbs[i]) - b.limbs[i] - borrow;
    a.limbs[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1;
  }
  return borrow;
}

constexpr U256 operator+(U256 a, const U256& b) {
  add_in_place(a, b);
  return a;
}

constexpr U256 operator-(U256 a, const U256& b) {
  sub_in_place(a, b);
  return a;
}

constexpr U256 operator>>(const U256& a, unsigned shift) {
  if (shift >= 256) return U256{};
  U256 r;
  const unsigned limb_shift = shift / 64;
  const unsigned bit_shift = shift % 64;
  for (unsigned i = 0; i + limb_shift < 4; ++i) {
    r.limbs[i] = a.limbs[i + limb_shift] >> bit_shift;
    if (bit_shift != 0 && i + limb_shift + 1 < 4) {
      r.limbs[i] |= a.limbs[i + limb_shift + 1] << (64 - bit_shift);
    }
  }
  return r;
}

constexpr U256 operator<<(const U256& a, unsigned shift) {
  if (shift >= 256) return U256{};
  U256 r;
  const unsigned limb_shift = shift / 64;
  const unsigned bit_shift = shift % 64;
  for (unsigned i = limb_shift; i < 4; ++i) {
    r.limbs[i] = a.limbs[i - limb_shift] << bit_shift;
    if (bit_shift != 0 && i > limb_shift) {
      r.limbs[i] |= a.limbs[i - limb_shift - 1] >> (64 - bit_shift);
    }
  }
  return r;
}

/// Truncated (mod 2^256) product.
constexpr U256 operator*(const U256& a, const U256& b) {
  U256 r;
  for (std::size_t i = 0; i < 4; ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; i + j < 4; ++j) {
      const u128 t = static_cast<u128>(a.limbs[i]) * b.limbs[j] + r.limbs[i + j] + carry;
      r.limbs[i + j] = static_cast<std::uint64_t>(t);
      carry = static_cast<std::uint64_t>(t >> 64);
    }
  }
  return r;
}

/// Quotient and remainder by a nonzero 64-bit divisor.
constexpr std::pair<U256, std::uint64_t> divmod_small(const U256& a, std::uint64_t d) {
  if (d == 0) throw std::domain_error("divmod_small: zero divisor");
  U256 q;
  u128 rem = 0;
  for (int i = 3; i >= 0; --i) {
    const u128 cur = (rem << 64) | a.limbs[i];
    q.limbs[i] = static_cast<std::uint64_t>(cur / d);
    rem = cur % d;
  }
  return {q, static_cast<std::uint64_t>(rem)};
}

constexpr U256 U256::parse(std::string_view s) {
  U256 r;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    for (char c : s.substr(2)) {
      std::uint64_t digit = 0;
      if (c >= '0' && c <= '9') digit = static_cast<std::uint64_t>(c - '0');
      else if (c >= 'a' && c <= 'f') digit = static_cast<std::uint64_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') digit = static_cast<std::uint64_t>(c - 'A' + 10);
      else throw std::invalid_argument("U256::parse: bad hex digit");
      if ((r.limbs[3] >> 60) != 0) throw std::overflow_error("U256::parse: overflow");
      r = (r << 4) + U256(digit);
    }
    return r;
  }
  if (s.empty()) throw std::invalid_argument("U256::parse: empty string");
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("U256::parse: bad decimal digit");
    U256 ten_r = r * U256(10);
    // Overflow iff the truncated product divided back does not match.
    if (divmod_small(ten_r, 10).first != r) throw std::overflow_error("U256::parse: overflow");
    if (add_in_place(ten_r, U256(static_cast<std::uint64_t>(c - '0'))) != 0) {
      throw std::overflow_error("U256::parse: overflow");
    }
    r = ten_r;
  }
  return r;
}

inline std::string to_decimal(U256 a) {
  if (a.is_zero()) return "0";
  std::string out;
  while (!a.is_zero()) {
    auto [q, r] = divmod_small(a, 10);
    out.push_back(static_cast<char>('0' + r));
    a = q;
  }
  return {out.rbegin(), out.rend()};
}

inline std::string to_hex(const U256& a) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = "0x";
  bool leading = true;
  for (int i = 255; i >= 0; i -= 4) {
    const unsigned nibble = static_cast<unsigned>((a.limbs[i / 64] >> (i % 64 - 3)) & 0xf);
    if (leading && nibble == 0 && i > 3) continue;
    leading = false;
    out.push_back(kDigits[nibble]);
  }
  return out;
}

}  // namespace poa
