#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "poa/bigint.hpp"
#include "poa/errors.hpp"

namespace poa {

namespace detail {

// 2^k mod m for an odd modulus below 2^255, by repeated doubling.
constexpr U256 pow2_mod(unsigned k, const U256& m) {
  U256 x = U256(1);
  if (x >= m) sub_in_place(x, m);
  for (unsigned i = 0; i < k; ++i) {
    x = x << 1;
    if (x >= m) sub_in_place(x, m);
  }
  return x;
}

// -m^{-1} mod 2^64 by Newton iteration.
constexpr std::uint64_t mont_inv(std::uint64_t m0) {
  std::uint64_t x = 1;
  for (int i = 0; i < 7; ++i) x *= 2 - m0 * x;
  return ~x + 1;
}

}  // namespace detail

/// Prime field element in Montgomery form. `Params` supplies `modulus` (a U256
/// prime below 2^255) and a `name`; distinct Params are distinct types, so
/// mixing fields is a compile error.
template <class Params>
class Fp {
 public:
  using params_type = Params;

  static constexpr U256 kModulus = Params::modulus;
  static constexpr std::size_t kBits = kModulus.bit_length();
  static constexpr std::size_t kBytes = (kBits + 7) / 8;

  static_assert(kModulus.is_odd(), "modulus must be odd");
  static_assert(kBits < 255, "modulus must be below 2^254 for the no-carry product");

  constexpr Fp() = default;
  constexpr explicit Fp(std::uint64_t v) : mont_(mont_mul_wide(U256(v), kR2)) {}

  static constexpr Fp zero() { return Fp(); }
  static constexpr Fp one() { return from_mont(kR); }

  /// Any 256-bit integer, reduced modulo the field prime.
  static constexpr Fp from_u256(const U256& v) { return from_mont(mont_mul_wide(v, kR2)); }

  /// Canonical integer; fails with DomainError if v is not below the modulus.
  static constexpr Fp from_canonical(const U256& v) {
    if (v >= kModulus) throw DomainError("field element not below modulus");
    return from_u256(v);
  }

  /// Reduces a 512-bit big-endian byte string; used for near-uniform sampling.
  static Fp from_wide_bytes(std::span<const std::uint8_t, 64> bytes) {
    U256 hi;
    U256 lo;
    for (std::size_t i = 0; i < 32; ++i) {
      hi = (hi << 8) + U256(bytes[i]);
      lo = (lo << 8) + U256(bytes[32 + i]);
    }
    // hi * 2^256 + lo
    return from_u256(hi) * from_mont(kR2) + from_u256(lo);
  }

  constexpr U256 to_u256() const { return mont_mul_wide(mont_, U256(1)); }
  constexpr const U256& montgomery() const { return mont_; }

  constexpr bool is_zero() const { return mont_.is_zero(); }
  constexpr bool is_one() const { return mont_ == kR; }

  friend constexpr bool operator==(const Fp&, const Fp&) = default;

  constexpr Fp& operator+=(const Fp& o) {
    const std::uint64_t carry = add_in_place(mont_, o.mont_);
    if (carry != 0 || mont_ >= kModulus) sub_in_place(mont_, kModulus);
    return *this;
  }
  constexpr Fp& operator-=(const Fp& o) {
    if (sub_in_place(mont_, o.mont_) != 0) add_in_place(mont_, kModulus);
    return *this;
  }
  constexpr Fp& operator*=(const Fp& o) {
    mont_ = mont_mul(mont_, o.mont_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend constexpr Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend constexpr Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend constexpr Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  constexpr Fp operator-() const { return Fp() - *this; }

  constexpr Fp square() const { return *this * *this; }
  constexpr Fp dbl() const { return *this + *this; }

  constexpr Fp pow(const U256& e) const {
    Fp result = one();
    for (std::size_t i = e.bit_length(); i-- > 0;) {
      result = result.square();
      if (e.bit(i)) result *= *this;
    }
    return result;
  }

  /// Multiplicative inverse by Fermat's little theorem.
  Fp inverse() const {
    if (is_zero()) throw DivisionByZero();
    return pow(kModulus - U256(2));
  }

  /// Legendre symbol: 1 for nonzero squares, -1 for non-squares, 0 for zero.
  int legendre() const {
    if (is_zero()) return 0;
    return pow(kModulus >> 1).is_one() ? 1 : -1;
  }

  /// Square root (Tonelli-Shanks); nullopt for non-residues.
  std::optional<Fp> sqrt() const {
    if (is_zero()) return Fp();
    if (legendre() != 1) return std::nullopt;
    const auto& c = tonelli();
    Fp z = c.root;
    Fp t = pow(c.odd_part);
    Fp r = pow((c.odd_part + U256(1)) >> 1);
    std::size_t m = c.two_adicity;
    while (!t.is_one()) {
      std::size_t i = 0;
      Fp t2 = t;
      while (!t2.is_one()) {
        t2 = t2.square();
        ++i;
      }
      Fp b = z;
      for (std::size_t j = 0; j + i + 1 < m; ++j) b = b.square();
      m = i;
      z = b.square();
      t *= z;
      r *= b;
    }
    return r;
  }

  /// True when this element is larger than its negation (canonical integers).
  bool is_lexicographically_largest() const { return to_u256() > (kModulus >> 1); }

  static constexpr std::size_t two_adicity() {
    U256 t = kModulus - U256(1);
    std::size_t s = 0;
    while (!t.is_odd()) {
      t = t >> 1;
      ++s;
    }
    return s;
  }

  /// Primitive 2^log_size-th root of unity.
  static Fp root_of_unity(std::size_t log_size) {
    const auto& c = tonelli();
    if (log_size > c.two_adicity) throw DomainError("field lacks a root of unity of the requested order");
    Fp w = c.root;
    for (std::size_t i = log_size; i < c.two_adicity; ++i) w = w.square();
    return w;
  }

  /// Smallest quadratic non-residue; usable as a coset shift for 2-adic domains.
  static Fp nonresidue() { return tonelli().nonresidue; }

  /// Big-endian, kBytes wide.
  void write_bytes(std::span<std::uint8_t> out) const {
    const U256 v = to_u256();
    for (std::size_t i = 0; i < kBytes; ++i) {
      const std::size_t bit = 8 * (kBytes - 1 - i);
      out[i] = static_cast<std::uint8_t>(v.limbs[bit / 64] >> (bit % 64));
    }
  }

  std::array<std::uint8_t, kBytes> to_bytes() const {
    std::array<std::uint8_t, kBytes> out{};
    write_bytes(out);
    return out;
  }

  /// Reads a kBytes big-endian value; nullopt when not below the modulus.
  static std::optional<Fp> from_bytes(std::span<const std::uint8_t> in) {
    if (in.size() != kBytes) return std::nullopt;
    U256 v;
    for (std::uint8_t b : in) v = (v << 8) + U256(b);
    if (v >= kModulus) return std::nullopt;
    return from_u256(v);
  }

  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << to_decimal(a.to_u256()); }

 private:
  static constexpr U256 kR = detail::pow2_mod(256, kModulus);
  static constexpr U256 kR2 = detail::pow2_mod(512, kModulus);
  static constexpr std::uint64_t kInv = detail::mont_inv(kModulus.limbs[0]);

  static constexpr Fp from_mont(const U256& m) {
    Fp r;
    r.mont_ = m;
    return r;
  }

  // CIOS Montgomery product a*b/2^256 mod p. Valid for any a < 2^256 and b < p.
  static constexpr U256 mont_mul_wide(const U256& a, const U256& b) {
    std::array<std::uint64_t, 6> t{};
    for (std::size_t i = 0; i < 4; ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < 4; ++j) {
        const u128 s = static_cast<u128>(a.limbs[j]) * b.limbs[i] + t[j] + carry;
        t[j] = static_cast<std::uint64_t>(s);
        carry = static_cast<std::uint64_t>(s >> 64);
      }
      u128 s = static_cast<u128>(t[4]) + carry;
      t[4] = static_cast<std::uint64_t>(s);
      t[5] = static_cast<std::uint64_t>(s >> 64);

      const std::uint64_t m = t[0] * kInv;
      s = static_cast<u128>(m) * kModulus.limbs[0] + t[0];
      carry = static_cast<std::uint64_t>(s >> 64);
      for (std::size_t j = 1; j < 4; ++j) {
        s = static_cast<u128>(m) * kModulus.limbs[j] + t[j] + carry;
        t[j - 1] = static_cast<std::uint64_t>(s);
        carry = static_cast<std::uint64_t>(s >> 64);
      }
      s = static_cast<u128>(t[4]) + carry;
      t[3] = static_cast<std::uint64_t>(s);
      t[4] = t[5] + static_cast<std::uint64_t>(s >> 64);
    }
    U256 r(t[0], t[1], t[2], t[3]);
    if (t[4] != 0 || r >= kModulus) sub_in_place(r, kModulus);
    return r;
  }

  // Unrolled CIOS without the extra carry word; needs a, b < p and a modulus
  // whose top limb is below 2^63 - 1 (checked above via kBits < 256).
  static constexpr U256 mont_mul(const U256& a, const U256& b) {
    constexpr std::uint64_t p0 = kModulus.limbs[0], p1 = kModulus.limbs[1], p2 = kModulus.limbs[2],
                            p3 = kModulus.limbs[3];
    const std::uint64_t a0 = a.limbs[0], a1 = a.limbs[1], a2 = a.limbs[2], a3 = a.limbs[3];
    std::uint64_t t0 = 0, t1 = 0, t2 = 0, t3 = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      const std::uint64_t bi = b.limbs[i];
      u128 s = static_cast<u128>(a0) * bi + t0;
      t0 = static_cast<std::uint64_t>(s);
      s = static_cast<u128>(a1) * bi + t1 + static_cast<std::uint64_t>(s >> 64);
      t1 = static_cast<std::uint64_t>(s);
      s = static_cast<u128>(a2) * bi + t2 + static_cast<std::uint64_t>(s >> 64);
      t2 = static_cast<std::uint64_t>(s);
      s = static_cast<u128>(a3) * bi + t3 + static_cast<std::uint64_t>(s >> 64);
      t3 = static_cast<std::uint64_t>(s);
      const std::uint64_t t4 = static_cast<std::uint64_t>(s >> 64);

      const std::uint64_t m = t0 * kInv;
      s = static_cast<u128>(m) * p0 + t0;
      s = static_cast<u128>(m) * p1 + t1 + static_cast<std::uint64_t>(s >> 64);
      t0 = static_cast<std::uint64_t>(s);
      s = static_cast<u128>(m) * p2 + t2 + static_cast<std::uint64_t>(s >> 64);
      t1 = static_cast<std::uint64_t>(s);
      s = static_cast<u128>(m) * p3 + t3 + static_cast<std::uint64_t>(s >> 64);
      t2 = static_cast<std::uint64_t>(s);
      t3 = t4 + static_cast<std::uint64_t>(s >> 64);
    }
    U256 r(t0, t1, t2, t3);
    U256 d = r;
    if (sub_in_place(d, kModulus) == 0) return d;
    return r;
  }

  struct TonelliConstants {
    std::size_t two_adicity = 0;
    U256 odd_part;
    Fp nonresidue;
    Fp root;  // nonresidue^odd_part, a primitive 2^two_adicity-th root of unity
  };

  static const TonelliConstants& tonelli() {
    static const TonelliConstants c = [] {
      TonelliConstants k;
      k.two_adicity = two_adicity();
      k.odd_part = (kModulus - U256(1)) >> static_cast<unsigned>(k.two_adicity);
      Fp g(2);
      while (g.legendre() != -1) g += one();
      k.nonresidue = g;
      k.root = g.pow(k.odd_part);
      return k;
    }();
    return c;
  }

  U256 mont_;
};

/// Montgomery batch inversion; every element must be nonzero.
template <class F>
void batch_invert(std::span<F> values) {
  if (values.empty()) return;
  std::vector<F> prefix(values.size());
  F acc = F::one();
  for (std::size_t i = 0; i < values.size(); ++i) {
    prefix[i] = acc;
    acc *= values[i];
  }
  F inv = acc.inverse();
  for (std::size_t i = values.size(); i-- > 0;) {
    const F v = values[i];
    values[i] = inv * prefix[i];
    inv *= v;
  }
}

}  // namespace poa
