#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "poa/bigint.hpp"
#include "poa/field.hpp"

namespace poa {

// Extension tower for a BN-family profile:
//   Fq2  = Fq[i]  / (i^2 + 1)
//   Fq6  = Fq2[v] / (v^3 - xi)
//   Fq12 = Fq6[w] / (w^2 - v)

template <class P>
struct Fq2 {
  using Base = typename P::Fq;
  static_assert(Base::kModulus.limbs[0] % 4 == 3, "i^2 = -1 needs p = 3 mod 4");

  Base c0, c1;

  static constexpr Fq2 zero() { return {}; }
  static constexpr Fq2 one() { return {Base::one(), Base::zero()}; }

  constexpr bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  constexpr bool is_one() const { return c0.is_one() && c1.is_zero(); }
  friend constexpr bool operator==(const Fq2&, const Fq2&) = default;

  friend constexpr Fq2 operator+(const Fq2& a, const Fq2& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
  friend constexpr Fq2 operator-(const Fq2& a, const Fq2& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
  constexpr Fq2 operator-() const { return {-c0, -c1}; }
  friend constexpr Fq2 operator*(const Fq2& a, const Fq2& b) {
    const Base v0 = a.c0 * b.c0;
    const Base v1 = a.c1 * b.c1;
    return {v0 - v1, (a.c0 + a.c1) * (b.c0 + b.c1) - v0 - v1};
  }
  friend constexpr Fq2 operator*(const Fq2& a, const Base& s) { return {a.c0 * s, a.c1 * s}; }
  Fq2& operator+=(const Fq2& o) { return *this = *this + o; }
  Fq2& operator-=(const Fq2& o) { return *this = *this - o; }
  Fq2& operator*=(const Fq2& o) { return *this = *this * o; }

  constexpr Fq2 square() const {
    const Base ab = c0 * c1;
    return {(c0 + c1) * (c0 - c1), ab + ab};
  }
  constexpr Fq2 dbl() const { return *this + *this; }
  constexpr Fq2 conjugate() const { return {c0, -c1}; }

  /// Multiplication by the sextic non-residue xi = xi_c0 + i.
  constexpr Fq2 mul_by_xi() const {
    constexpr Base k(P::kXiC0);
    return {c0 * k - c1, c0 + c1 * k};
  }

  Fq2 inverse() const {
    const Base t = (c0.square() + c1.square()).inverse();
    return {c0 * t, -(c1 * t)};
  }

  Fq2 pow(const U256& e) const {
    Fq2 r = one();
    for (std::size_t i = e.bit_length(); i-- > 0;) {
      r = r.square();
      if (e.bit(i)) r *= *this;
    }
    return r;
  }

  /// Square root for p = 3 mod 4 (Adj / Rodriguez-Henriquez, algorithm 9).
  std::optional<Fq2> sqrt() const {
    if (is_zero()) return zero();
    const U256 p = Base::kModulus;
    const Fq2 a1 = pow((p - U256(3)) >> 2);
    const Fq2 alpha = a1.square() * *this;
    const Fq2 a0 = alpha.conjugate() * alpha;
    const Fq2 minus_one = -one();
    if (a0 == minus_one) return std::nullopt;
    const Fq2 x0 = a1 * *this;
    Fq2 x;
    if (alpha == minus_one) {
      x = Fq2{-x0.c1, x0.c0};
    } else {
      x = (one() + alpha).pow((p - U256(1)) >> 1) * x0;
    }
    if (x.square() != *this) return std::nullopt;
    return x;
  }

  bool is_lexicographically_largest() const {
    if (!c1.is_zero()) return c1.is_lexicographically_largest();
    return c0.is_lexicographically_largest();
  }

  static constexpr std::size_t kBytes = 2 * Base::kBytes;

  void write_bytes(std::span<std::uint8_t> out) const {
    c0.write_bytes(out.subspan(0, Base::kBytes));
    c1.write_bytes(out.subspan(Base::kBytes, Base::kBytes));
  }
  static std::optional<Fq2> from_bytes(std::span<const std::uint8_t> in) {
    if (in.size() != kBytes) return std::nullopt;
    auto a = Base::from_bytes(in.subspan(0, Base::kBytes));
    auto b = Base::from_bytes(in.subspan(Base::kBytes, Base::kBytes));
    if (!a || !b) return std::nullopt;
    return Fq2{*a, *b};
  }
};

template <class P>
struct Fq6 {
  using F2 = Fq2<P>;
  F2 c0, c1, c2;

  static constexpr Fq6 zero() { return {}; }
  static constexpr Fq6 one() { return {F2::one(), F2::zero(), F2::zero()}; }
  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  friend constexpr bool operator==(const Fq6&, const Fq6&) = default;

  friend Fq6 operator+(const Fq6& a, const Fq6& b) { return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2}; }
  friend Fq6 operator-(const Fq6& a, const Fq6& b) { return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2}; }
  Fq6 operator-() const { return {-c0, -c1, -c2}; }

  friend Fq6 operator*(const Fq6& a, const Fq6& b) {
    const F2 v0 = a.c0 * b.c0;
    const F2 v1 = a.c1 * b.c1;
    const F2 v2 = a.c2 * b.c2;
    return {
        v0 + ((a.c1 + a.c2) * (b.c1 + b.c2) - v1 - v2).mul_by_xi(),
        (a.c0 + a.c1) * (b.c0 + b.c1) - v0 - v1 + v2.mul_by_xi(),
        (a.c0 + a.c2) * (b.c0 + b.c2) - v0 - v2 + v1,
    };
  }

  Fq6 square() const { return *this * *this; }

  /// Multiplication by v.
  Fq6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }

  Fq6 inverse() const {
    const F2 t0 = c0.square() - (c1 * c2).mul_by_xi();
    const F2 t1 = c2.square().mul_by_xi() - c0 * c1;
    const F2 t2 = c1.square() - c0 * c2;
    const F2 norm = c0 * t0 + (c2 * t1).mul_by_xi() + (c1 * t2).mul_by_xi();
    const F2 inv = norm.inverse();
    return {t0 * inv, t1 * inv, t2 * inv};
  }
};

template <class P>
struct Fq12 {
  using F2 = Fq2<P>;
  using F6 = Fq6<P>;
  F6 c0, c1;

  static Fq12 one() { return {F6::one(), F6::zero()}; }
  bool is_one() const { return c0 == F6::one() && c1.is_zero(); }
  friend constexpr bool operator==(const Fq12&, const Fq12&) = default;

  friend Fq12 operator*(const Fq12& a, const Fq12& b) {
    const F6 v0 = a.c0 * b.c0;
    const F6 v1 = a.c1 * b.c1;
    return {v0 + v1.mul_by_v(), (a.c0 + a.c1) * (b.c0 + b.c1) - v0 - v1};
  }
  Fq12& operator*=(const Fq12& o) { return *this = *this * o; }

  Fq12 square() const {
    const F6 ab = c0 * c1;
    return {(c0 + c1) * (c0 + c1.mul_by_v()) - ab - ab.mul_by_v(), ab + ab};
  }

  Fq12 conjugate() const { return {c0, -c1}; }

  Fq12 inverse() const {
    const F6 t = (c0.square() - c1.square().mul_by_v()).inverse();
    return {c0 * t, -(c1 * t)};
  }

  Fq12 pow(const U256& e) const {
    Fq12 r = one();
    for (std::size_t i = e.bit_length(); i-- > 0;) {
      r = r.square();
      if (e.bit(i)) r *= *this;
    }
    return r;
  }

  /// Coefficient of w^k in the flat basis {1, w, ..., w^5}.
  const F2& coeff(std::size_t k) const {
    const F6& half = (k % 2 == 0) ? c0 : c1;
    switch (k / 2) {
      case 0: return half.c0;
      case 1: return half.c1;
      default: return half.c2;
    }
  }
  F2& coeff(std::size_t k) { return const_cast<F2&>(static_cast<const Fq12&>(*this).coeff(k)); }

  /// x -> x^p, using w^p = xi^((p-1)/6) w.
  Fq12 frobenius() const {
    const auto& g = frobenius_coeffs();
    Fq12 r;
    for (std::size_t k = 0; k < 6; ++k) r.coeff(k) = coeff(k).conjugate() * g[k];
    return r;
  }

  /// gamma_k = xi^(k(p-1)/6), k = 0..5.
  static const std::array<F2, 6>& frobenius_coeffs() {
    static const std::array<F2, 6> g = [] {
      std::array<F2, 6> out;
      const U256 e = divmod_small(P::Fq::kModulus - U256(1), 6).first;
      const F2 base = F2::one().mul_by_xi().pow(e);
      out[0] = F2::one();
      for (std::size_t k = 1; k < 6; ++k) out[k] = out[k - 1] * base;
      return out;
    }();
    return g;
  }

  /// Sparse product with a line value l0 + l1 w + l3 w^3 (l0 in Fq).
  Fq12 mul_by_line(const typename P::Fq& l0, const F2& l1, const F2& l3) const {
    Fq12 line;
    line.c0.c0 = F2{l0, P::Fq::zero()};
    line.c1.c0 = l1;
    line.c1.c1 = l3;
    return *this * line;
  }
};

}  // namespace poa
