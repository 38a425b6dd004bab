#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "poa/bigint.hpp"
#include "poa/errors.hpp"
#include "poa/prf.hpp"
#include "poa/profiles.hpp"
#include "poa/weierstrass.hpp"

namespace poa {

// Seeds for the nothing-up-my-sleeve generators. A point is derived as
//   x0 = SHA256(seed) read big-endian, reduced mod the base prime,
//   x  = x0, x0 + 1, ... until x^3 + a x + b is a square and the point
//        differs from every previously fixed generator (and their negations);
//   y  = the root that is not lexicographically largest.
// The inner group has prime order, so any such point generates it.
inline constexpr std::string_view kPedersenHSeed = "poa/inner-curve/pedersen-H/v1";
inline constexpr std::string_view kAccumulatorSeed = "poa/inner-curve/accumulator/v1";

/// The embedded curve carrying keys, addresses and Pedersen commitments.
template <class P>
struct InnerCurve {
  using Base = typename P::Fr;    // coordinates (the SNARK field)
  using Scalar = typename P::Fq;  // exponents; the group order is |Fq|
  using Point = InnerPoint<Base>;

  WeierstrassCurve<Base> curve;
  U256 order;
  Point G;
  Point H;
  Point A;  // accumulator offset for in-circuit windowed multiplication

  Point add(const Point& p, const Point& q) const { return curve.add(p, q); }
  Point mul(const Scalar& k, const Point& p) const { return curve.mul(k.to_u256(), p); }
  Point mul(const U256& k, const Point& p) const { return curve.mul(k, p); }

  static const InnerCurve& get() {
    static const InnerCurve c = [] {
      InnerCurve k{WeierstrassCurve<Base>(Base::zero(), -Base(P::kInnerBNeg)), Scalar::kModulus, {}, {}, {}};
      k.G = Point::affine(Base::from_canonical(U256::parse(P::kInnerGX)),
                          Base::from_canonical(U256::parse(P::kInnerGY)));
      if (!k.curve.is_on_curve(k.G)) throw DomainError("inner generator is not on the curve");
      k.H = k.derive(kPedersenHSeed, {k.G});
      k.A = k.derive(kAccumulatorSeed, {k.G, k.H});
      return k;
    }();
    return c;
  }

  /// Hash-and-increment derivation described above.
  Point derive(std::string_view seed, std::initializer_list<Point> avoid) const {
    const Digest d = sha256(seed);
    U256 v;
    for (auto b : d) v = (v << 8) + U256(b);
    Base x = Base::from_u256(v);
    for (;;) {
      auto p = curve.lift_x(x);
      if (p) {
        bool clash = false;
        for (const auto& q : avoid) clash = clash || q.x == p->x;
        if (!clash) return *p;
      }
      x += Base::one();
    }
  }
};

/// c = m G + b H
template <class P>
InnerPoint<typename P::Fr> pedersen_commit(const typename P::Fq& m, const typename P::Fq& blind) {
  const auto& c = InnerCurve<P>::get();
  return c.add(c.mul(m, c.G), c.mul(blind, c.H));
}

template <class P>
bool pedersen_open(const InnerPoint<typename P::Fr>& commitment, const typename P::Fq& m, const typename P::Fq& blind) {
  return pedersen_commit<P>(m, blind) == commitment;
}

}  // namespace poa
