#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "poa/bigint.hpp"
#include "poa/errors.hpp"
#include "poa/field.hpp"
#include "poa/profiles.hpp"
#include "poa/tower.hpp"

namespace poa {

// Prime-order groups of the pairing curve, y^2 = x^3 + b (a = 0).

template <class P>
struct G1Curve {
  using Profile = P;
  using Field = typename P::Fq;
  using Scalar = typename P::Fr;
  static constexpr bool kCofactorOne = true;  // BN curves: #E(Fq) = r
  static Field b() { return Field(P::kB); }
  static Field generator_x() { return Field::from_canonical(U256::parse(P::kG1X)); }
  static Field generator_y() { return Field::from_canonical(U256::parse(P::kG1Y)); }
};

template <class P>
struct G2Curve {
  using Profile = P;
  using Field = Fq2<P>;
  using Scalar = typename P::Fr;
  static constexpr bool kCofactorOne = false;
  static Field b() {
    static const Field v = Field{typename P::Fq(P::kB), P::Fq::zero()} * Field::one().mul_by_xi().inverse();
    return v;
  }
  static Field generator_x() {
    return {P::Fq::from_canonical(U256::parse(P::kG2X0)), P::Fq::from_canonical(U256::parse(P::kG2X1))};
  }
  static Field generator_y() {
    return {P::Fq::from_canonical(U256::parse(P::kG2Y0)), P::Fq::from_canonical(U256::parse(P::kG2Y1))};
  }
};

template <class C>
struct AffinePoint {
  using Field = typename C::Field;
  Field x{};
  Field y{};
  bool infinity = true;

  static AffinePoint identity() { return {}; }
  static AffinePoint generator() { return {C::generator_x(), C::generator_y(), false}; }

  bool is_on_curve() const { return infinity || y.square() == x.square() * x + C::b(); }
  AffinePoint operator-() const { return infinity ? *this : AffinePoint{x, -y, false}; }

  friend bool operator==(const AffinePoint& a, const AffinePoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
};

template <class C>
class JacobianPoint {
 public:
  using Field = typename C::Field;
  using Scalar = typename C::Scalar;
  using Affine = AffinePoint<C>;

  JacobianPoint() : x_(Field::one()), y_(Field::one()), z_() {}
  JacobianPoint(const Affine& a)  // NOLINT(google-explicit-constructor)
      : x_(a.infinity ? Field::one() : a.x), y_(a.infinity ? Field::one() : a.y),
        z_(a.infinity ? Field() : Field::one()) {}

  static JacobianPoint identity() { return {}; }
  static JacobianPoint generator() { return Affine::generator(); }

  bool is_identity() const { return z_.is_zero(); }

  JacobianPoint dbl() const {
    if (is_identity()) return *this;
    const Field a = x_.square();
    const Field b = y_.square();
    const Field c = b.square();
    const Field d = ((x_ + b).square() - a - c).dbl();
    const Field e = a.dbl() + a;
    const Field f = e.square();
    JacobianPoint r;
    r.x_ = f - d.dbl();
    r.y_ = e * (d - r.x_) - c.dbl().dbl().dbl();
    r.z_ = (y_ * z_).dbl();
    return r;
  }

  friend JacobianPoint operator+(const JacobianPoint& p, const JacobianPoint& q) {
    if (p.is_identity()) return q;
    if (q.is_identity()) return p;
    const Field z1z1 = p.z_.square();
    const Field z2z2 = q.z_.square();
    const Field u1 = p.x_ * z2z2;
    const Field u2 = q.x_ * z1z1;
    const Field s1 = p.y_ * q.z_ * z2z2;
    const Field s2 = q.y_ * p.z_ * z1z1;
    const Field h = u2 - u1;
    const Field rr = (s2 - s1).dbl();
    if (h.is_zero()) {
      return rr.is_zero() ? p.dbl() : identity();
    }
    const Field i = h.dbl().square();
    const Field j = h * i;
    const Field v = u1 * i;
    JacobianPoint r;
    r.x_ = rr.square() - j - v.dbl();
    r.y_ = rr * (v - r.x_) - (s1 * j).dbl();
    r.z_ = ((p.z_ + q.z_).square() - z1z1 - z2z2) * h;
    return r;
  }

  /// this + q for an affine q.
  JacobianPoint add_mixed(const Affine& q) const {
    if (q.infinity) return *this;
    if (is_identity()) return JacobianPoint(q);
    const Field z1z1 = z_.square();
    const Field u2 = q.x * z1z1;
    const Field s2 = q.y * z_ * z1z1;
    const Field h = u2 - x_;
    const Field rr = (s2 - y_).dbl();
    if (h.is_zero()) {
      return rr.is_zero() ? dbl() : identity();
    }
    const Field hh = h.square();
    const Field i = hh.dbl().dbl();
    const Field j = h * i;
    const Field v = x_ * i;
    JacobianPoint r;
    r.x_ = rr.square() - j - v.dbl();
    r.y_ = rr * (v - r.x_) - (y_ * j).dbl();
    r.z_ = (z_ + h).square() - z1z1 - hh;
    return r;
  }

  JacobianPoint operator-() const {
    JacobianPoint r = *this;
    r.y_ = -r.y_;
    return r;
  }
  friend JacobianPoint operator-(const JacobianPoint& p, const JacobianPoint& q) { return p + (-q); }
  JacobianPoint& operator+=(const JacobianPoint& q) { return *this = *this + q; }

  JacobianPoint mul(const U256& k) const {
    JacobianPoint r;
    for (std::size_t i = k.bit_length(); i-- > 0;) {
      r = r.dbl();
      if (k.bit(i)) r += *this;
    }
    return r;
  }
  friend JacobianPoint operator*(const Scalar& k, const JacobianPoint& p) { return p.mul(k.to_u256()); }

  Affine to_affine() const {
    if (is_identity()) return Affine::identity();
    const Field zinv = z_.inverse();
    const Field zinv2 = zinv.square();
    return {x_ * zinv2, y_ * zinv2 * zinv, false};
  }

  friend bool operator==(const JacobianPoint& p, const JacobianPoint& q) {
    if (p.is_identity() || q.is_identity()) return p.is_identity() == q.is_identity();
    const Field z1z1 = p.z_.square();
    const Field z2z2 = q.z_.square();
    return p.x_ * z2z2 == q.x_ * z1z1 && p.y_ * z2z2 * q.z_ == q.y_ * z1z1 * p.z_;
  }

  const Field& x() const { return x_; }
  const Field& y() const { return y_; }
  const Field& z() const { return z_; }

 private:
  Field x_, y_, z_;
};

template <class P>
using G1Affine = AffinePoint<G1Curve<P>>;
template <class P>
using G2Affine = AffinePoint<G2Curve<P>>;
template <class P>
using G1 = JacobianPoint<G1Curve<P>>;
template <class P>
using G2 = JacobianPoint<G2Curve<P>>;

/// r * P == O for the prime group order r.
template <class C>
bool in_prime_subgroup(const AffinePoint<C>& p) {
  if (!p.is_on_curve()) return false;
  if constexpr (C::kCofactorOne) return true;
  return JacobianPoint<C>(p).mul(C::Scalar::kModulus).is_identity();
}

template <class C>
std::vector<AffinePoint<C>> batch_to_affine(std::span<const JacobianPoint<C>> points) {
  using F = typename C::Field;
  std::vector<F> zs;
  zs.reserve(points.size());
  for (const auto& p : points) {
    if (!p.is_identity()) zs.push_back(p.z());
  }
  // Fq2 has no span-based batch inverse helper; do it inline.
  std::vector<F> prefix(zs.size());
  F acc = F::one();
  for (std::size_t i = 0; i < zs.size(); ++i) {
    prefix[i] = acc;
    acc = acc * zs[i];
  }
  if (!zs.empty()) {
    F inv = acc.inverse();
    for (std::size_t i = zs.size(); i-- > 0;) {
      const F z = zs[i];
      zs[i] = inv * prefix[i];
      inv = inv * z;
    }
  }
  std::vector<AffinePoint<C>> out;
  out.reserve(points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    if (p.is_identity()) {
      out.push_back(AffinePoint<C>::identity());
      continue;
    }
    const F zinv = zs[k++];
    const F zinv2 = zinv.square();
    out.push_back({p.x() * zinv2, p.y() * zinv2 * zinv, false});
  }
  return out;
}

namespace detail {

inline std::size_t msm_window(std::size_t n) {
  if (n < 32) return 3;
  std::size_t log = 0;
  while ((std::size_t{1} << log) < n) ++log;
  return std::max<std::size_t>(4, log * 7 / 10 + 1);
}

inline std::size_t window_digit(const U256& k, std::size_t start, std::size_t width) {
  std::size_t d = 0;
  for (std::size_t b = 0; b < width; ++b) {
    if (k.bit(start + b)) d |= std::size_t{1} << b;
  }
  return d;
}

}  // namespace detail

/// Multi-scalar multiplication sum_i k_i * B_i. Scalars 0 and 1 are handled
/// directly; the rest go through the bucket method.
template <class C>
JacobianPoint<C> msm(std::span<const AffinePoint<C>> bases, std::span<const U256> scalars) {
  if (bases.size() != scalars.size()) throw ShapeError("msm: length mismatch");
  using J = JacobianPoint<C>;
  J result;
  std::vector<AffinePoint<C>> big_bases;
  std::vector<U256> big;
  std::size_t max_bits = 0;
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    const std::size_t bits = scalars[i].bit_length();
    if (bits == 0) continue;
    if (bits == 1) {
      result = result.add_mixed(bases[i]);
      continue;
    }
    big_bases.push_back(bases[i]);
    big.push_back(scalars[i]);
    max_bits = std::max(max_bits, bits);
  }
  if (big.empty()) return result;

  const std::size_t c = detail::msm_window(big.size());
  const std::size_t windows = (max_bits + c - 1) / c;
  std::vector<J> buckets((std::size_t{1} << c) - 1);
  J acc;
  for (std::size_t w = windows; w-- > 0;) {
    for (std::size_t i = 0; i < c; ++i) acc = acc.dbl();
    std::fill(buckets.begin(), buckets.end(), J::identity());
    for (std::size_t i = 0; i < big.size(); ++i) {
      const std::size_t d = detail::window_digit(big[i], w * c, c);
      if (d != 0) buckets[d - 1] = buckets[d - 1].add_mixed(big_bases[i]);
    }
    J running;
    J sum;
    for (std::size_t i = buckets.size(); i-- > 0;) {
      running += buckets[i];
      sum += running;
    }
    acc += sum;
  }
  return result + acc;
}

template <class C>
JacobianPoint<C> msm(std::span<const AffinePoint<C>> bases, std::span<const typename C::Scalar> scalars) {
  std::vector<U256> ints;
  ints.reserve(scalars.size());
  for (const auto& s : scalars) ints.push_back(s.to_u256());
  return msm<C>(bases, std::span<const U256>(ints));
}

/// Windowed precomputation for repeated multiplication of one fixed base.
template <class C>
class FixedBaseTable {
 public:
  using J = JacobianPoint<C>;
  using Affine = AffinePoint<C>;

  explicit FixedBaseTable(const J& base, std::size_t window = 8) : window_(window) {
    const std::size_t bits = C::Scalar::kBits;
    const std::size_t windows = (bits + window - 1) / window;
    const std::size_t per = (std::size_t{1} << window) - 1;
    std::vector<J> all;
    all.reserve(windows * per);
    J b = base;
    for (std::size_t w = 0; w < windows; ++w) {
      J acc = b;
      for (std::size_t d = 1; d <= per; ++d) {
        all.push_back(acc);
        acc += b;
      }
      for (std::size_t i = 0; i < window; ++i) b = b.dbl();
    }
    table_ = batch_to_affine<C>(all);
    windows_ = windows;
  }

  J mul(const U256& k) const {
    const std::size_t per = (std::size_t{1} << window_) - 1;
    J r;
    for (std::size_t w = 0; w < windows_; ++w) {
      const std::size_t d = detail::window_digit(k, w * window_, window_);
      if (d != 0) r = r.add_mixed(table_[w * per + d - 1]);
    }
    return r;
  }

  std::vector<Affine> batch_mul(std::span<const typename C::Scalar> scalars) const {
    std::vector<J> out;
    out.reserve(scalars.size());
    for (const auto& s : scalars) out.push_back(mul(s.to_u256()));
    return batch_to_affine<C>(out);
  }

 private:
  std::size_t window_;
  std::size_t windows_ = 0;
  std::vector<Affine> table_;
};

// Serialization. Coordinates are big-endian; Fq2 is c0 || c1. The compressed
// form stores x with two flag bits (infinity, y is the larger root) in the spare
// top bits of the first byte, or in a leading flag byte when the base field has
// fewer than two spare bits. Uncompressed is x || y with all-zero bytes for O.

template <class C>
struct PointCodec {
  using Field = typename C::Field;
  using Base = typename C::Profile::Fq;
  static constexpr std::size_t kSpareBits = 8 * Base::kBytes - Base::kBits;
  static constexpr bool kFlagByte = kSpareBits < 2;
  static constexpr std::size_t kCompressedSize = Field::kBytes + (kFlagByte ? 1 : 0);
  static constexpr std::size_t kUncompressedSize = 2 * Field::kBytes;
  static constexpr std::uint8_t kInfinityFlag = 0x80;
  static constexpr std::uint8_t kLargestFlag = 0x40;

  static void write_compressed(const AffinePoint<C>& p, std::span<std::uint8_t> out) {
    std::fill(out.begin(), out.end(), 0);
    std::uint8_t flags = 0;
    const std::size_t off = kFlagByte ? 1 : 0;
    if (p.infinity) {
      flags = kInfinityFlag;
    } else {
      p.x.write_bytes(out.subspan(off, Field::kBytes));
      if (p.y.is_lexicographically_largest()) flags = kLargestFlag;
    }
    out[0] |= flags;
  }

  static std::optional<AffinePoint<C>> read_compressed(std::span<const std::uint8_t> in, bool check_subgroup = true) {
    if (in.size() != kCompressedSize) return std::nullopt;
    const std::uint8_t flags = in[0] & (kInfinityFlag | kLargestFlag);
    std::vector<std::uint8_t> body;
    if (kFlagByte) {
      if ((in[0] & ~(kInfinityFlag | kLargestFlag)) != 0) return std::nullopt;
      body.assign(in.begin() + 1, in.end());
    } else {
      body.assign(in.begin(), in.end());
      body[0] &= static_cast<std::uint8_t>(~(kInfinityFlag | kLargestFlag));
    }
    if (flags & kInfinityFlag) {
      if ((flags & kLargestFlag) != 0) return std::nullopt;
      for (auto b : body) {
        if (b != 0) return std::nullopt;
      }
      return AffinePoint<C>::identity();
    }
    auto x = Field::from_bytes(body);
    if (!x) return std::nullopt;
    auto y = (x->square() * *x + C::b()).sqrt();
    if (!y) return std::nullopt;
    if (y->is_lexicographically_largest() != ((flags & kLargestFlag) != 0)) *y = -*y;
    AffinePoint<C> p{*x, *y, false};
    if (check_subgroup && !in_prime_subgroup(p)) return std::nullopt;
    return p;
  }

  static void write_uncompressed(const AffinePoint<C>& p, std::span<std::uint8_t> out) {
    std::fill(out.begin(), out.end(), 0);
    if (p.infinity) return;
    p.x.write_bytes(out.subspan(0, Field::kBytes));
    p.y.write_bytes(out.subspan(Field::kBytes, Field::kBytes));
  }

  /// With check_subgroup unset only the curve equation is checked.
  static std::optional<AffinePoint<C>> read_uncompressed(std::span<const std::uint8_t> in, bool check_subgroup = true) {
    if (in.size() != kUncompressedSize) return std::nullopt;
    if (std::all_of(in.begin(), in.end(), [](std::uint8_t b) { return b == 0; })) {
      return AffinePoint<C>::identity();
    }
    auto x = Field::from_bytes(in.subspan(0, Field::kBytes));
    auto y = Field::from_bytes(in.subspan(Field::kBytes, Field::kBytes));
    if (!x || !y) return std::nullopt;
    AffinePoint<C> p{*x, *y, false};
    if (check_subgroup ? !in_prime_subgroup(p) : !p.is_on_curve()) return std::nullopt;
    return p;
  }
};

}  // namespace poa
