#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "poa/bigint.hpp"
#include "poa/ec.hpp"
#include "poa/tower.hpp"

namespace poa {

// Optimal ate pairing on a BN-family profile. Affine Miller loop over the
// bits of 6u + 2, then the lines through pi(Q) and -pi^2(Q). Lines use the
// D-type twist psi(x, y) = (x w^2, y w^3); a line with slope lambda through T,
// evaluated at P, is yP - lambda xP w + (lambda xT - yT) w^3.

template <class P>
using GT = Fq12<P>;

namespace detail {

template <class P>
U256 ate_loop_count() {
  return U256(P::kU) * U256(6) + U256(2);
}

/// pi(Q) on the twist: (conj(x) gamma_2, conj(y) gamma_3).
template <class P>
G2Affine<P> twist_frobenius(const G2Affine<P>& q) {
  if (q.infinity) return q;
  const auto& g = Fq12<P>::frobenius_coeffs();
  return {q.x.conjugate() * g[2], q.y.conjugate() * g[3], false};
}

}  // namespace detail

/// Line coefficients of the Miller loop for a fixed G2 point.
template <class P>
class G2Prepared {
 public:
  using F2 = Fq2<P>;

  struct Line {
    F2 lambda;    // slope; the w coefficient is -lambda * xP
    F2 constant;  // lambda xT - yT, the w^3 coefficient
    bool trivial = true;  // vertical or degenerate; contributes nothing after final exponentiation
  };

  G2Prepared() = default;
  explicit G2Prepared(const G2Affine<P>& q) : infinity_(q.infinity) {
    if (infinity_) return;
    const U256 n = detail::ate_loop_count<P>();
    G2Affine<P> t = q;
    for (std::size_t i = n.bit_length() - 1; i-- > 0;) {
      lines_.push_back(step(t, t));
      if (n.bit(i)) lines_.push_back(step(t, q));
    }
    const G2Affine<P> q1 = detail::twist_frobenius<P>(q);
    const G2Affine<P> q2 = -detail::twist_frobenius<P>(q1);
    lines_.push_back(step(t, q1));
    lines_.push_back(step(t, q2));
  }

  bool is_infinity() const { return infinity_; }
  const std::vector<Line>& lines() const { return lines_; }

 private:
  // Line through t and s (tangent when equal); advances t to t + s.
  static Line step(G2Affine<P>& t, const G2Affine<P>& s) {
    Line l;
    if (t.infinity) {
      t = s;
      return l;
    }
    if (s.infinity) return l;
    F2 lambda;
    if (t.x == s.x) {
      if (t.y != s.y || t.y.is_zero()) {
        t = G2Affine<P>::identity();
        return l;
      }
      const F2 xx = t.x.square();
      lambda = (xx + xx + xx) * t.y.dbl().inverse();
    } else {
      lambda = (s.y - t.y) * (s.x - t.x).inverse();
    }
    l.lambda = lambda;
    l.constant = lambda * t.x - t.y;
    l.trivial = false;
    const F2 x3 = lambda.square() - t.x - s.x;
    const F2 y3 = lambda * (t.x - x3) - t.y;
    t = {x3, y3, false};
    return l;
  }

  bool infinity_ = true;
  std::vector<Line> lines_;
};

/// prod_i f_{Q_i}(P_i), before the final exponentiation.
template <class P>
Fq12<P> miller_loop(std::span<const std::pair<G1Affine<P>, const G2Prepared<P>*>> pairs) {
  using F2 = Fq2<P>;
  std::vector<std::pair<G1Affine<P>, const G2Prepared<P>*>> live;
  for (const auto& pr : pairs) {
    if (!pr.first.infinity && !pr.second->is_infinity()) live.push_back(pr);
  }
  Fq12<P> f = Fq12<P>::one();
  if (live.empty()) return f;

  auto apply = [&](std::size_t idx) {
    for (const auto& [p, q] : live) {
      const auto& l = q->lines()[idx];
      if (l.trivial) continue;
      f = f.mul_by_line(p.y, -(l.lambda * F2{p.x, P::Fq::zero()}), l.constant);
    }
  };

  const U256 n = detail::ate_loop_count<P>();
  std::size_t idx = 0;
  for (std::size_t i = n.bit_length() - 1; i-- > 0;) {
    f = f.square();
    apply(idx++);
    if (n.bit(i)) apply(idx++);
  }
  apply(idx++);
  apply(idx++);
  return f;
}

template <class P>
Fq12<P> final_exponentiation(const Fq12<P>& f) {
  // Easy part: f^((p^6 - 1)(p^2 + 1)); the result lies in the cyclotomic subgroup,
  // where inversion is conjugation.
  const Fq12<P> f1 = f.conjugate() * f.inverse();
  const Fq12<P> f2 = f1.frobenius().frobenius() * f1;

  // Hard part: (p^4 - p^2 + 1) / r = l0 + l1 p + l2 p^2 + l3 p^3 with
  //   l3 = 1, l2 = 6u^2 + 1, l1 = -(36u^3 + 18u^2 + 12u - 1), l0 = -(36u^3 + 30u^2 + 18u + 2).
  const U256 u(P::kU);
  const U256 u2 = u * u;
  const U256 u3 = u2 * u;
  const U256 l2 = U256(6) * u2 + U256(1);
  const U256 l1 = U256(36) * u3 + U256(18) * u2 + U256(12) * u - U256(1);
  const U256 l0 = U256(36) * u3 + U256(30) * u2 + U256(18) * u + U256(2);

  const Fq12<P> fp = f2.frobenius();
  const Fq12<P> fp2 = fp.frobenius();
  const Fq12<P> fp3 = fp2.frobenius();
  return f2.pow(l0).conjugate() * fp.pow(l1).conjugate() * fp2.pow(l2) * fp3;
}

template <class P>
Fq12<P> pairing(const G1Affine<P>& p, const G2Affine<P>& q) {
  const G2Prepared<P> prep(q);
  const std::pair<G1Affine<P>, const G2Prepared<P>*> pr{p, &prep};
  return final_exponentiation<P>(miller_loop<P>(std::span(&pr, 1)));
}

}  // namespace poa
