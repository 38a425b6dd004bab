#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "poa/bigint.hpp"
#include "poa/errors.hpp"

namespace poa {

/// Affine point on a short Weierstrass curve; `infinity` marks O.
template <class F>
struct InnerPoint {
  F x{};
  F y{};
  bool infinity = true;

  static InnerPoint identity() { return {}; }
  static InnerPoint affine(const F& x, const F& y) { return {x, y, false}; }

  InnerPoint operator-() const { return infinity ? *this : InnerPoint{x, -y, false}; }

  friend bool operator==(const InnerPoint& a, const InnerPoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
};

/// y^2 = x^3 + a x + b over F with the chord-and-tangent law.
template <class F>
class WeierstrassCurve {
 public:
  using Point = InnerPoint<F>;

  WeierstrassCurve(const F& a, const F& b) : a_(a), b_(b) {
    const F disc = F(4) * a * a * a + F(27) * b * b;
    if (disc.is_zero()) throw DomainError("singular curve: 4a^3 + 27b^2 = 0");
  }

  const F& a() const { return a_; }
  const F& b() const { return b_; }

  bool is_on_curve(const Point& p) const {
    return p.infinity || p.y.square() == (p.x.square() + a_) * p.x + b_;
  }

  /// Chord-and-tangent addition (affine). Handles O, P = Q and P = -Q.
  Point add(const Point& p, const Point& q) const {
    if (p.infinity) return q;
    if (q.infinity) return p;
    F m;
    if (p.x == q.x) {
      if (p.y != q.y || p.y.is_zero()) return Point::identity();
      const F xx = p.x.square();
      m = (xx + xx + xx + a_) / p.y.dbl();
    } else {
      m = (q.y - p.y) / (q.x - p.x);
    }
    const F x3 = m.square() - p.x - q.x;
    return {x3, m * (p.x - x3) - p.y, false};
  }

  Point dbl(const Point& p) const { return add(p, p); }
  Point sub(const Point& p, const Point& q) const { return add(p, -q); }

  /// k * P (Jacobian double-and-add internally; the result is normalized).
  Point mul(const U256& k, const Point& p) const {
    Jac r;
    const Jac base = Jac::from(p);
    for (std::size_t i = k.bit_length(); i-- > 0;) {
      r = jdbl(r);
      if (k.bit(i)) r = jadd(r, base);
    }
    return to_affine(r);
  }

  /// Point with the given x, choosing the root y that is not lexicographically largest.
  std::optional<Point> lift_x(const F& x) const {
    const F rhs = (x.square() + a_) * x + b_;
    auto y = rhs.sqrt();
    if (!y) return std::nullopt;
    if (y->is_lexicographically_largest()) *y = -*y;
    return Point{x, *y, false};
  }

  /// Every point of the group, for small test curves only.
  std::vector<Point> enumerate(std::uint64_t field_size) const {
    std::vector<Point> out{Point::identity()};
    for (std::uint64_t xi = 0; xi < field_size; ++xi) {
      const F x(xi);
      const F rhs = (x.square() + a_) * x + b_;
      auto y = rhs.sqrt();
      if (!y) continue;
      out.push_back({x, *y, false});
      if (!y->is_zero()) out.push_back({x, -*y, false});
    }
    return out;
  }

 private:
  struct Jac {
    F x = F::one();
    F y = F::one();
    F z{};
    static Jac from(const Point& p) {
      if (p.infinity) return {};
      return {p.x, p.y, F::one()};
    }
    bool is_identity() const { return z.is_zero(); }
  };

  Jac jdbl(const Jac& p) const {
    if (p.is_identity() || p.y.is_zero()) return {};
    // dbl-2007-bl
    const F xx = p.x.square();
    const F yy = p.y.square();
    const F yyyy = yy.square();
    const F zz = p.z.square();
    const F s = ((p.x + yy).square() - xx - yyyy).dbl();
    const F m = xx + xx + xx + a_ * zz.square();
    Jac r;
    r.x = m.square() - s.dbl();
    r.y = m * (s - r.x) - yyyy.dbl().dbl().dbl();
    r.z = (p.y + p.z).square() - yy - zz;
    return r;
  }

  Jac jadd(const Jac& p, const Jac& q) const {
    if (p.is_identity()) return q;
    if (q.is_identity()) return p;
    const F z1z1 = p.z.square();
    const F z2z2 = q.z.square();
    const F u1 = p.x * z2z2;
    const F u2 = q.x * z1z1;
    const F s1 = p.y * q.z * z2z2;
    const F s2 = q.y * p.z * z1z1;
    if (u1 == u2) return s1 == s2 ? jdbl(p) : Jac{};
    const F h = u2 - u1;
    const F i = h.dbl().square();
    const F j = h * i;
    const F rr = (s2 - s1).dbl();
    const F v = u1 * i;
    Jac r;
    r.x = rr.square() - j - v.dbl();
    r.y = rr * (v - r.x) - (s1 * j).dbl();
    r.z = ((p.z + q.z).square() - z1z1 - z2z2) * h;
    return r;
  }

  static Point to_affine(const Jac& p) {
    if (p.is_identity()) return Point::identity();
    const F zi = p.z.inverse();
    const F zi2 = zi.square();
    return {p.x * zi2, p.y * zi2 * zi, false};
  }

  F a_, b_;
};

// Inner point encodings. Compressed: one tag byte (0x00 for O, 0x02 / 0x03 for
// even / odd y) then x. Uncompressed: x || y, all zero bytes for O.

template <class F>
constexpr std::size_t kInnerCompressedSize = 1 + F::kBytes;
template <class F>
constexpr std::size_t kInnerUncompressedSize = 2 * F::kBytes;

template <class F>
void write_inner_compressed(const InnerPoint<F>& p, std::span<std::uint8_t> out) {
  std::fill(out.begin(), out.end(), 0);
  if (p.infinity) return;
  out[0] = p.y.to_u256().is_odd() ? 0x03 : 0x02;
  p.x.write_bytes(out.subspan(1, F::kBytes));
}

template <class F>
std::optional<InnerPoint<F>> read_inner_compressed(const WeierstrassCurve<F>& curve, std::span<const std::uint8_t> in) {
  if (in.size() != kInnerCompressedSize<F>) return std::nullopt;
  if (in[0] == 0x00) {
    for (std::size_t i = 1; i < in.size(); ++i) {
      if (in[i] != 0) return std::nullopt;
    }
    return InnerPoint<F>::identity();
  }
  if (in[0] != 0x02 && in[0] != 0x03) return std::nullopt;
  auto x = F::from_bytes(in.subspan(1));
  if (!x) return std::nullopt;
  auto p = curve.lift_x(*x);
  if (!p) return std::nullopt;
  if (p->y.to_u256().is_odd() != (in[0] == 0x03)) p->y = -p->y;
  return p;
}

template <class F>
void write_inner_uncompressed(const InnerPoint<F>& p, std::span<std::uint8_t> out) {
  std::fill(out.begin(), out.end(), 0);
  if (p.infinity) return;
  p.x.write_bytes(out.subspan(0, F::kBytes));
  p.y.write_bytes(out.subspan(F::kBytes, F::kBytes));
}

template <class F>
std::optional<InnerPoint<F>> read_inner_uncompressed(const WeierstrassCurve<F>& curve,
                                                     std::span<const std::uint8_t> in) {
  if (in.size() != kInnerUncompressedSize<F>) return std::nullopt;
  bool all_zero = true;
  for (auto b : in) all_zero = all_zero && b == 0;
  if (all_zero) return InnerPoint<F>::identity();
  auto x = F::from_bytes(in.subspan(0, F::kBytes));
  auto y = F::from_bytes(in.subspan(F::kBytes, F::kBytes));
  if (!x || !y) return std::nullopt;
  InnerPoint<F> p{*x, *y, false};
  if (!curve.is_on_curve(p)) return std::nullopt;
  return p;
}

}  // namespace poa
