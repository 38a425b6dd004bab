#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "poa/bigint.hpp"
#include "poa/errors.hpp"
#include "poa/groth16.hpp"
#include "poa/inner_curve.hpp"
#include "poa/r1cs.hpp"

namespace poa {

// Circuit gadgets over the SNARK field Fr. Each gadget emits its constraints
// in the constructor and fills its wires in generate(), libsnark style.

template <class F>
struct PointWires {
  LinearCombination<F> x, y;

  static PointWires constant(const InnerPoint<F>& p) { return {p.x, p.y}; }
  InnerPoint<F> value(const Assignment<F>& t) const { return InnerPoint<F>::affine(x.evaluate(t), y.evaluate(t)); }
};

/// numbits booleanity constraints plus one packing constraint.
template <class F>
class UnpackGadget {
 public:
  UnpackGadget(ConstraintSystem<F>& cs, LinearCombination<F> packed, std::size_t numbits) : packed_(std::move(packed)) {
    LinearCombination<F> sum;
    F pow2 = F::one();
    bits_.reserve(numbits);
    for (std::size_t i = 0; i < numbits; ++i) {
      const Variable b = cs.allocate_aux();
      bits_.push_back(b);
      cs.enforce(b, b, b);
      sum += LinearCombination<F>(b) * pow2;
      pow2 = pow2.dbl();
    }
    cs.enforce(F::one(), sum, packed_);
  }

  /// Writes the low numbits bits of value. A value that does not fit leaves the
  /// packing constraint unsatisfied.
  void generate(Assignment<F>& t, const U256& value) const {
    for (std::size_t i = 0; i < bits_.size(); ++i) t[bits_[i]] = value.bit(i) ? F::one() : F::zero();
  }

  const std::vector<Variable>& bits() const { return bits_; }

 private:
  LinearCombination<F> packed_;
  std::vector<Variable> bits_;
};

/// Chord addition in 3 constraints:
///   m (x2 - x1) = y2 - y1,  m m = x3 + x1 + x2,  m (x1 - x3) = y3 + y1.
template <class F>
class PointAddGadget {
 public:
  PointAddGadget(ConstraintSystem<F>& cs, PointWires<F> p, PointWires<F> q)
      : PointAddGadget(cs, std::move(p), std::move(q), cs.allocate_aux(), cs.allocate_aux()) {}

  /// Writes the sum into existing wires (for example public outputs).
  PointAddGadget(ConstraintSystem<F>& cs, PointWires<F> p, PointWires<F> q, Variable x3, Variable y3)
      : p_(std::move(p)), q_(std::move(q)), m_(cs.allocate_aux()), x3_(x3), y3_(y3) {
    cs.enforce(m_, q_.x - p_.x, q_.y - p_.y);
    cs.enforce(m_, m_, LinearCombination<F>(x3_) + p_.x + q_.x);
    cs.enforce(m_, p_.x - LinearCombination<F>(x3_), LinearCombination<F>(y3_) + p_.y);
  }

  void generate(Assignment<F>& t) const {
    const F x1 = p_.x.evaluate(t);
    const F y1 = p_.y.evaluate(t);
    const F x2 = q_.x.evaluate(t);
    const F y2 = q_.y.evaluate(t);
    if (x1 == x2) throw ExceptionalPointError("in-circuit addition of points with equal x-coordinates");
    const F m = (y2 - y1) / (x2 - x1);
    const F x3 = m.square() - x1 - x2;
    t[m_] = m;
    t[x3_] = x3;
    t[y3_] = m * (x1 - x3) - y1;
  }

  PointWires<F> out() const { return {x3_, y3_}; }

 private:
  PointWires<F> p_, q_;
  Variable m_, x3_, y3_;
};

/// Precomputed window constants A + d * 2^(w k) * base for the windows of one base.
template <class P>
struct WindowTable {
  using Point = InnerPoint<typename P::Fr>;
  std::vector<std::array<Point, 4>> windows;

  /// Two-bit windows for numbits / 2 windows, plus a one-bit window if numbits is odd.
  static WindowTable build(const Point& base, std::size_t numbits) {
    const auto& c = InnerCurve<P>::get();
    WindowTable t;
    Point step = base;  // 4^k * base
    for (std::size_t k = 0; 2 * k < numbits; ++k) {
      std::array<Point, 4> w;
      w[0] = c.A;
      for (std::size_t d = 1; d < 4; ++d) w[d] = c.add(w[d - 1], step);
      t.windows.push_back(w);
      step = c.add(c.add(step, step), c.add(step, step));
    }
    return t;
  }
};

/// Adds sum_i bits_i 2^i base to an accumulator chain. Every window adds
/// A + d 4^k base (never the identity), so each window is one P_add plus the
/// product of its two bits: 4 constraints. An odd leftover bit costs one
/// P_add (3 constraints). The caller removes the accumulated multiple of A.
template <class P>
class WindowedMulGadget {
 public:
  using F = typename P::Fr;
  using LC = LinearCombination<F>;

  WindowedMulGadget(ConstraintSystem<F>& cs, PointWires<F> acc, const std::vector<Variable>& bits,
                    const WindowTable<P>& table)
      : bits_(bits) {
    PointWires<F> cur = std::move(acc);
    for (std::size_t k = 0; 2 * k < bits.size(); ++k) {
      const auto& w = table.windows.at(k);
      const Variable b0 = bits[2 * k];
      PointWires<F> sel;
      if (2 * k + 1 < bits.size()) {
        const Variable b1 = bits[2 * k + 1];
        const Variable prod = cs.allocate_aux();
        cs.enforce(b0, b1, prod);
        products_.push_back(prod);
        sel.x = select4(b0, b1, prod, w[0].x, w[1].x, w[2].x, w[3].x);
        sel.y = select4(b0, b1, prod, w[0].y, w[1].y, w[2].y, w[3].y);
      } else {
        sel.x = LC(w[0].x) + LC(b0) * (w[1].x - w[0].x);
        sel.y = LC(w[0].y) + LC(b0) * (w[1].y - w[0].y);
      }
      adders_.emplace_back(cs, cur, sel);
      cur = adders_.back().out();
    }
    out_ = cur;
  }

  /// Number of accumulator offsets A added along the chain.
  std::size_t offsets() const { return adders_.size(); }
  PointWires<F> out() const { return out_; }

  /// Bits must already be assigned.
  void generate(Assignment<F>& t) const {
    for (std::size_t k = 0; k < products_.size(); ++k) t[products_[k]] = t[bits_[2 * k]] * t[bits_[2 * k + 1]];
    for (const auto& a : adders_) a.generate(t);
  }

 private:
  // c0 + b0 (c1 - c0) + b1 (c2 - c0) + b0 b1 (c3 - c2 - c1 + c0)
  static LC select4(Variable b0, Variable b1, Variable prod, const F& c0, const F& c1, const F& c2, const F& c3) {
    return LC(c0) + LC(b0) * (c1 - c0) + LC(b1) * (c2 - c0) + LC(prod) * (c3 - c2 - c1 + c0);
  }

  std::vector<Variable> bits_;
  std::vector<Variable> products_;
  std::vector<PointAddGadget<F>> adders_;
  PointWires<F> out_;
};

/// x * base for a fixed base: unpack (numbits + 1), windows, accumulator removal (3).
/// For numbits = 256: 257 + 128 * 4 + 3 = 772 constraints.
template <class P>
class ScalarMulGadget {
 public:
  using F = typename P::Fr;

  ScalarMulGadget(ConstraintSystem<F>& cs, LinearCombination<F> scalar, const InnerPoint<F>& base, std::size_t numbits)
      : table_(WindowTable<P>::build(base, numbits)),
        unpack_(cs, std::move(scalar), numbits),
        chain_(cs, PointWires<F>::constant(start()), unpack_.bits(), table_),
        remove_(cs, chain_.out(), PointWires<F>::constant(removal(chain_.offsets()))) {}

  /// scalar is the integer multiplier (bits); the packed wire is set separately.
  void generate(Assignment<F>& t, const U256& scalar) const {
    unpack_.generate(t, scalar);
    chain_.generate(t);
    remove_.generate(t);
  }

  PointWires<F> out() const { return remove_.out(); }

  /// Chains start at the constant 2A.
  static InnerPoint<F> start() {
    const auto& c = InnerCurve<P>::get();
    return c.add(c.A, c.A);
  }
  /// -(2 + offsets) A
  static InnerPoint<F> removal(std::size_t offsets) {
    const auto& c = InnerCurve<P>::get();
    return -c.mul(U256(2 + offsets), c.A);
  }

 private:
  WindowTable<P> table_;
  UnpackGadget<F> unpack_;
  WindowedMulGadget<P> chain_;
  PointAddGadget<F> remove_;
};

enum class CompareMode { kPaper, kHardened };

/// s = [computed == expected]. Paper mode: s = sx sy and s s = s with sx, sy
/// prover-supplied (2 constraints). Hardened mode: s (x' - x) = 0,
/// s (y' - y) = 0, s s = s (3 constraints).
template <class F>
class CompareGadget {
 public:
  CompareGadget(ConstraintSystem<F>& cs, PointWires<F> computed, PointWires<F> expected, CompareMode mode)
      : computed_(std::move(computed)), expected_(std::move(expected)), mode_(mode) {
    if (mode_ == CompareMode::kPaper) {
      sx_ = cs.allocate_aux();
      sy_ = cs.allocate_aux();
      s_ = cs.allocate_aux();
      cs.enforce(sx_, sy_, s_);
    } else {
      s_ = cs.allocate_aux();
      cs.enforce(s_, computed_.x - expected_.x, F::zero());
      cs.enforce(s_, computed_.y - expected_.y, F::zero());
    }
    cs.enforce(s_, s_, s_);
  }

  /// Assignment from the already-assigned point wires. With claim unset the
  /// output is s = 0 even for equal points (an under-claim, which both modes allow).
  void generate(Assignment<F>& t, bool claim = true) const {
    const bool ex = computed_.x.evaluate(t) == expected_.x.evaluate(t);
    const bool ey = computed_.y.evaluate(t) == expected_.y.evaluate(t);
    if (mode_ == CompareMode::kPaper) {
      t[sx_] = ex && claim ? F::one() : F::zero();
      t[sy_] = ey ? F::one() : F::zero();
    }
    t[s_] = ex && ey && claim ? F::one() : F::zero();
  }

  Variable s() const { return s_; }

 private:
  PointWires<F> computed_, expected_;
  CompareMode mode_;
  Variable sx_, sy_, s_;
};

inline constexpr std::size_t kBalanceBits = 51;
inline constexpr std::size_t kScalarBits = 256;
inline constexpr std::uint64_t kMaxBalance = (std::uint64_t{1} << kBalanceBits) - 1;

/// Sub-counts of the Pedersen gadget.
struct PedersenCounts {
  std::size_t bv_gate = 0;      // b = s v
  std::size_t bg_mul = 0;       // unpack b + windows over G
  std::size_t rh_mul = 0;       // unpack r + windows over H
  std::size_t accumulator = 0;  // shared removal of the accumulated A multiples
  std::size_t total = 0;
};

/// c = b G + r H with b = s v, written into the wires `out`. The G and H
/// multiplications share one accumulator chain so a zero balance is not an
/// exceptional case.
template <class P>
class PedersenGadget {
 public:
  using F = typename P::Fr;
  using LC = LinearCombination<F>;

  PedersenGadget(ConstraintSystem<F>& cs, LC s, Variable v, Variable out_x, Variable out_y) {
    const auto& c = InnerCurve<P>::get();
    std::size_t mark = cs.num_constraints();
    b_ = cs.allocate_aux();
    cs.enforce(std::move(s), v, b_);
    counts_.bv_gate = take(cs, mark);

    g_table_ = WindowTable<P>::build(c.G, kBalanceBits);
    unpack_b_.emplace_back(cs, b_, kBalanceBits);
    g_chain_.emplace_back(cs, PointWires<F>::constant(ScalarMulGadget<P>::start()), unpack_b_[0].bits(), g_table_);
    counts_.bg_mul = take(cs, mark);

    r_ = cs.allocate_aux();
    h_table_ = WindowTable<P>::build(c.H, kScalarBits);
    unpack_r_.emplace_back(cs, r_, kScalarBits);
    h_chain_.emplace_back(cs, g_chain_[0].out(), unpack_r_[0].bits(), h_table_);
    counts_.rh_mul = take(cs, mark);

    const std::size_t offsets = g_chain_[0].offsets() + h_chain_[0].offsets();
    remove_.emplace_back(cs, h_chain_[0].out(), PointWires<F>::constant(ScalarMulGadget<P>::removal(offsets)), out_x,
                         out_y);
    counts_.accumulator = take(cs, mark);
    counts_.total = counts_.bv_gate + counts_.bg_mul + counts_.rh_mul + counts_.accumulator;
  }

  /// s and v must already be assigned. r is the integer blinding factor.
  void generate(Assignment<F>& t, std::uint64_t b, const U256& r) const {
    t[b_] = F(b);
    unpack_b_[0].generate(t, U256(b));
    g_chain_[0].generate(t);
    t[r_] = F::from_u256(r);
    unpack_r_[0].generate(t, r);
    h_chain_[0].generate(t);
    remove_[0].generate(t);
  }

  const PedersenCounts& counts() const { return counts_; }

 private:
  static std::size_t take(const ConstraintSystem<F>& cs, std::size_t& mark) {
    const std::size_t d = cs.num_constraints() - mark;
    mark = cs.num_constraints();
    return d;
  }

  // Vectors hold single members so construction order follows emission order.
  Variable b_, r_;
  WindowTable<P> g_table_, h_table_;
  std::vector<UnpackGadget<F>> unpack_b_, unpack_r_;
  std::vector<WindowedMulGadget<P>> g_chain_, h_chain_;
  std::vector<PointAddGadget<F>> remove_;
  PedersenCounts counts_;
};

enum class CircuitKind { kFull, kCommitmentOnly };

struct CircuitCounts {
  std::size_t unpack_x = 0;  // inside C_MUL
  std::size_t c_mul = 0;
  std::size_t c_cmp = 0;
  PedersenCounts ped;
  std::size_t total = 0;
};

/// Public statement for one address: key y and balance v < 2^51.
template <class P>
struct PoaInstance {
  InnerPoint<typename P::Fr> y;
  std::uint64_t v = 0;
};

/// Secret side: key x, ownership bit s, blinding r.
template <class P>
struct PoaWitness {
  typename P::Fq x;
  bool s = false;
  typename P::Fq r;
};

/// C_PoA = C_MUL, C_CMP, C_PED. Public wires in order: y.x, y.y, v, c.x, c.y.
/// The commitment-only kind drops C_MUL and C_CMP and fixes s = 0.
template <class P>
class PoaCircuit {
 public:
  using F = typename P::Fr;
  using LC = LinearCombination<F>;
  static constexpr std::size_t kNumInputs = 5;

  PoaCircuit(CircuitKind kind, CompareMode mode) : kind_(kind), mode_(mode) {
    const auto& c = InnerCurve<P>::get();
    yx_ = cs_.allocate_public();
    yy_ = cs_.allocate_public();
    v_ = cs_.allocate_public();
    cx_ = cs_.allocate_public();
    cy_ = cs_.allocate_public();

    LC s;
    if (kind_ == CircuitKind::kFull) {
      x_ = cs_.allocate_aux();
      std::size_t mark = cs_.num_constraints();
      mul_.emplace_back(cs_, x_, c.G, kScalarBits);
      counts_.c_mul = cs_.num_constraints() - mark;
      counts_.unpack_x = kScalarBits + 1;
      mark = cs_.num_constraints();
      cmp_.emplace_back(cs_, mul_[0].out(), PointWires<F>{yx_, yy_}, mode_);
      counts_.c_cmp = cs_.num_constraints() - mark;
      s = cmp_[0].s();
    }
    ped_.emplace_back(cs_, s, v_, cx_, cy_);
    counts_.ped = ped_[0].counts();
    counts_.total = cs_.num_constraints();
    cs_.seal();
  }

  CircuitKind kind() const { return kind_; }
  CompareMode mode() const { return mode_; }
  const ConstraintSystem<F>& cs() const { return cs_; }
  const CircuitCounts& counts() const { return counts_; }

  /// Honest full assignment; the commitment is c = s v G + r H.
  Assignment<F> generate_witness(const PoaInstance<P>& inst, const PoaWitness<P>& w) const {
    if (inst.v > kMaxBalance) throw NotSatisfiedError("balance exceeds 2^51 - 1");
    if (kind_ == CircuitKind::kCommitmentOnly && w.s) throw StateError("the commitment-only circuit fixes s = 0");
    Assignment<F> t(cs_.num_variables());
    t[yx_] = inst.y.x;
    t[yy_] = inst.y.y;
    t[v_] = F(inst.v);
    bool s = false;
    if (kind_ == CircuitKind::kFull) {
      const U256 x = w.x.to_u256();
      t[x_] = F::from_u256(x);
      mul_[0].generate(t, x);
      cmp_[0].generate(t, w.s);
      s = t[cmp_[0].s()].is_one();
      if (s != w.s) throw KeyMismatchError("x G does not equal the claimed key");
    }
    const std::uint64_t b = s ? inst.v : 0;
    const auto cpt = pedersen_commit<P>(typename P::Fq(b), w.r);
    if (cpt.infinity) throw ExceptionalPointError("commitment is the point at infinity");
    t[cx_] = cpt.x;
    t[cy_] = cpt.y;
    ped_[0].generate(t, b, w.r.to_u256());
    return t;
  }

  PublicInputs<P> public_inputs(const PoaInstance<P>& inst, const InnerPoint<F>& commitment) const {
    if (inst.y.infinity || commitment.infinity) throw DomainError("public points must be affine");
    return {cs_.layout_hash(), {inst.y.x, inst.y.y, F(inst.v), commitment.x, commitment.y}};
  }

  Variable s_wire() const {
    if (kind_ != CircuitKind::kFull) throw StateError("no s wire in the commitment-only circuit");
    return cmp_[0].s();
  }

 private:
  CircuitKind kind_;
  CompareMode mode_;
  ConstraintSystem<F> cs_;
  Variable yx_, yy_, v_, cx_, cy_, x_;
  std::vector<ScalarMulGadget<P>> mul_;
  std::vector<CompareGadget<F>> cmp_;
  std::vector<PedersenGadget<P>> ped_;
  CircuitCounts counts_;
};

}  // namespace poa
