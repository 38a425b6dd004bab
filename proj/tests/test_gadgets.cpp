#include "doctest.h"
#include "oracles.hpp"
#include "poa/gadgets.hpp"
#include "poa/prf.hpp"
#include "poa/profiles.hpp"

using namespace poa;
using P = Bn254;
using F = P::Fr;
using Fq = P::Fq;
using LC = LinearCombination<F>;

TEST_CASE("unpack gadget") {
  ConstraintSystem<F> cs;
  const Variable v = cs.allocate_public();
  const UnpackGadget<F> g(cs, v, 6);
  cs.seal();
  CHECK(cs.num_constraints() == 7);
  for (std::uint64_t x = 0; x < 64; ++x) {
    Assignment<F> t(cs.num_variables());
    t[v] = F(x);
    g.generate(t, U256(x));
    CHECK(cs.is_satisfied(t));
    for (std::size_t i = 0; i < 6; ++i) CHECK(t[g.bits()[i]] == F((x >> i) & 1));
    t[v] = F(x + 1);
    CHECK_FALSE(cs.is_satisfied(t));
  }
  // A non-boolean bit breaks booleanity even if the sum matches.
  Assignment<F> t(cs.num_variables());
  t[v] = F(2);
  t[g.bits()[0]] = F(2);
  CHECK_FALSE(cs.is_satisfied(t));
}

TEST_CASE("point addition gadget") {
  const auto& c = InnerCurve<P>::get();
  ConstraintSystem<F> cs;
  const Variable px = cs.allocate_aux(), py = cs.allocate_aux(), qx = cs.allocate_aux(), qy = cs.allocate_aux();
  const Variable rx = cs.allocate_aux(), ry = cs.allocate_aux();
  const PointAddGadget<F> add(cs, {px, py}, {qx, qy}, rx, ry);
  cs.seal();
  CHECK(cs.num_constraints() == 3);
  RandomStream rng = Prf::from_seed("padd").stream();
  for (int i = 0; i < 10; ++i) {
    const auto p = c.mul(rng.next_field<Fq>(), c.G);
    const auto q = c.mul(rng.next_field<Fq>(), c.G);
    Assignment<F> t(cs.num_variables());
    t[px] = p.x;
    t[py] = p.y;
    t[qx] = q.x;
    t[qy] = q.y;
    add.generate(t);
    CHECK(cs.is_satisfied(t));
    CHECK(add.out().value(t) == c.add(p, q));
    t[ry] += F::one();
    CHECK_FALSE(cs.is_satisfied(t));
  }
  Assignment<F> t(cs.num_variables());
  t[px] = t[qx] = c.G.x;
  t[py] = t[qy] = c.G.y;
  CHECK_THROWS_AS(add.generate(t), ExceptionalPointError);
}

namespace {

struct SmallMul {
  ConstraintSystem<F> cs;
  Variable k;
  std::optional<ScalarMulGadget<P>> g;
  explicit SmallMul(std::size_t bits) {
    k = cs.allocate_public();
    g.emplace(cs, k, InnerCurve<P>::get().G, bits);
    cs.seal();
  }
  Assignment<F> witness(std::uint64_t kv) const {
    Assignment<F> t(cs.num_variables());
    t[k] = F(kv);
    g->generate(t, U256(kv));
    return t;
  }
};

}  // namespace

TEST_CASE("scalar multiplication gadget, every 8-bit scalar") {
  const auto& c = InnerCurve<P>::get();
  SmallMul m(8);
  // unpack 9, four windows of 4, removal 3
  CHECK(m.cs.num_constraints() == 28);
  SmallMul odd(7);
  CHECK(odd.cs.num_constraints() == 8 + 3 * 4 + 3 + 3);
  // k = 0 would land on the identity in the final removal step.
  CHECK_THROWS_AS(m.witness(0), ExceptionalPointError);
  for (std::uint64_t k = 1; k < 256; ++k) {
    const auto t = m.witness(k);
    CHECK(m.cs.is_satisfied(t));
    CHECK(m.g->out().value(t) == c.mul(U256(k), c.G));
    if (k < 128) {
      const auto to = odd.witness(k);
      CHECK(odd.cs.is_satisfied(to));
      CHECK(odd.g->out().value(to) == c.mul(U256(k), c.G));
    }
  }
}

TEST_CASE("small gadget circuits: satisfaction iff t divides p (long division oracle)") {
  RandomStream rng = Prf::from_seed("gadget-qap").stream();
  SmallMul m(8);
  REQUIRE(m.cs.num_constraints() <= 50);
  int sat = 0, unsat = 0;
  for (int i = 0; i < 40; ++i) {
    auto t = m.witness(1 + rng.uniform(255));
    if (i % 2 == 1) {
      const std::size_t w = 1 + rng.uniform(m.cs.num_variables() - 1);
      t.values[w] += F(1 + rng.uniform(3));
    }
    const bool s = m.cs.is_satisfied(t);
    CHECK(oracle::qap_divides(m.cs, t) == s);
    (s ? sat : unsat)++;
  }
  CHECK(sat >= 15);
  CHECK(unsat >= 15);
}

TEST_CASE("compare gadget modes") {
  const auto& c = InnerCurve<P>::get();
  for (const CompareMode mode : {CompareMode::kPaper, CompareMode::kHardened}) {
    ConstraintSystem<F> cs;
    const Variable ax = cs.allocate_public(), ay = cs.allocate_public(), bx = cs.allocate_aux(), by = cs.allocate_aux();
    const CompareGadget<F> cmp(cs, {ax, ay}, {bx, by}, mode);
    cs.seal();
    CHECK(cs.num_constraints() == (mode == CompareMode::kPaper ? 2u : 3u));
    auto assign = [&](const InnerPoint<F>& a, const InnerPoint<F>& b) {
      Assignment<F> t(cs.num_variables());
      t[ax] = a.x;
      t[ay] = a.y;
      t[bx] = b.x;
      t[by] = b.y;
      return t;
    };
    const auto g2 = c.add(c.G, c.G);

    auto t = assign(c.G, c.G);
    cmp.generate(t);
    CHECK(t[cmp.s()].is_one());
    CHECK(cs.is_satisfied(t));
    cmp.generate(t, false);  // under-claim
    CHECK(t[cmp.s()].is_zero());
    CHECK(cs.is_satisfied(t));

    t = assign(c.G, g2);
    cmp.generate(t);
    CHECK(t[cmp.s()].is_zero());
    CHECK(cs.is_satisfied(t));
    // Over-claim: s = 1 for different points. Only the hardened mode refuses.
    t[cmp.s()] = F::one();
    const bool forged = mode == CompareMode::kPaper ? [&] {
      auto u = t;
      for (std::uint32_t w = 5; w < cs.num_variables(); ++w) u.values[w] = F::one();
      return cs.is_satisfied(u);
    }() : cs.is_satisfied(t);
    CHECK(forged == (mode == CompareMode::kPaper));
    t[cmp.s()] = F(2);
    CHECK_FALSE(cs.is_satisfied(t));
  }
}

TEST_CASE("circuit constraint counts") {
  const PoaCircuit<P> full(CircuitKind::kFull, CompareMode::kPaper);
  CHECK(full.counts().c_mul == 772);
  CHECK(full.counts().unpack_x == 257);
  CHECK(full.counts().c_cmp == 2);
  CHECK(full.counts().ped.total == 928);
  CHECK(full.counts().ped.rh_mul == 769);
  CHECK(full.counts().ped.bg_mul == 155);
  CHECK(full.counts().ped.bv_gate == 1);
  CHECK(full.counts().ped.accumulator == 3);
  CHECK(full.cs().num_constraints() == 1702);
  CHECK(full.cs().num_inputs() == 5);

  const PoaCircuit<P> hard(CircuitKind::kFull, CompareMode::kHardened);
  CHECK(hard.counts().c_cmp == 3);
  CHECK(hard.cs().num_constraints() == 1703);
  CHECK(hard.cs().layout_hash() != full.cs().layout_hash());

  const PoaCircuit<P> commit(CircuitKind::kCommitmentOnly, CompareMode::kPaper);
  CHECK(commit.cs().num_constraints() == 928);
  CHECK(commit.cs().num_inputs() == 5);
  CHECK_THROWS_AS(commit.s_wire(), StateError);
}

TEST_CASE("full circuit witnesses") {
  const auto& c = InnerCurve<P>::get();
  RandomStream rng = Prf::from_seed("poa-circuit").stream();
  for (const CompareMode mode : {CompareMode::kPaper, CompareMode::kHardened}) {
    const PoaCircuit<P> full(CircuitKind::kFull, mode);
    const PoaCircuit<P> commit(CircuitKind::kCommitmentOnly, mode);
    const Fq x = rng.next_nonzero<Fq>();
    const PoaInstance<P> inst{c.mul(x, c.G), 123456789};
    const Fq r = rng.next_nonzero<Fq>();

    // Owned: c = v G + r H.
    auto t = full.generate_witness(inst, {x, true, r});
    CHECK(full.cs().is_satisfied(t));
    CHECK(t[full.s_wire()].is_one());
    const auto in = full.public_inputs(inst, pedersen_commit<P>(Fq(inst.v), r));
    for (std::size_t i = 0; i < 5; ++i) CHECK(t.values[i + 1] == in.values[i]);

    // Under-claim and wrong keys give s = 0 and c = r H.
    t = full.generate_witness(inst, {x, false, r});
    CHECK(full.cs().is_satisfied(t));
    CHECK(t[full.s_wire()].is_zero());
    const Fq other = x + Fq::one();
    t = full.generate_witness(inst, {other, false, r});
    CHECK(full.cs().is_satisfied(t));
    CHECK(full.public_inputs(inst, pedersen_commit<P>(Fq::zero(), r)).values[3] == t.values[4]);
    CHECK_THROWS_AS(full.generate_witness(inst, {other, true, r}), KeyMismatchError);

    // Forging s = 1 for a wrong key: flip s and patch the commitment wires
    // honestly downstream. The hardened compare still rejects.
    if (mode == CompareMode::kHardened) {
      t[full.s_wire()] = F::one();
      CHECK_FALSE(full.cs().is_satisfied(t));
    }

    // Zero balance and s = 0 both stay non-exceptional.
    const PoaInstance<P> empty{inst.y, 0};
    CHECK(full.cs().is_satisfied(full.generate_witness(empty, {x, true, r})));
    auto tc = commit.generate_witness(inst, {Fq::zero(), false, r});
    CHECK(commit.cs().is_satisfied(tc));
    CHECK_THROWS_AS(commit.generate_witness(inst, {x, true, r}), StateError);
    CHECK_THROWS_AS(commit.generate_witness(empty, {Fq::zero(), false, Fq::zero()}), ExceptionalPointError);
    const PoaInstance<P> big{inst.y, kMaxBalance + 1};
    CHECK_THROWS_AS(full.generate_witness(big, {x, true, r}), NotSatisfiedError);
    CHECK(full.cs().is_satisfied(full.generate_witness({inst.y, kMaxBalance}, {x, true, r})));

    // Committing to the wrong value breaks the circuit.
    tc[Variable{4}] = pedersen_commit<P>(Fq(1), r).x;
    CHECK_FALSE(commit.cs().is_satisfied(tc));
  }
}

TEST_CASE("paper-mode compare lets a wrong key claim ownership") {
  const auto& c = InnerCurve<P>::get();
  RandomStream rng = Prf::from_seed("overclaim").stream();
  for (const CompareMode mode : {CompareMode::kPaper, CompareMode::kHardened}) {
    const PoaCircuit<P> full(CircuitKind::kFull, mode);
    const Fq x = rng.next_nonzero<Fq>();
    const PoaInstance<P> inst{c.mul(x, c.G), 5000};
    const Fq r = rng.next_nonzero<Fq>();
    // C_MUL wires for a wrong key, spliced onto the compare and Pedersen wires
    // of the honest owner: s = 1 and c = v G + r H.
    const auto wrong = full.generate_witness(inst, {x + Fq::one(), false, r});
    const auto owner = full.generate_witness(inst, {x, true, r});
    const std::uint32_t cut = full.s_wire().index - (mode == CompareMode::kPaper ? 2 : 0);
    auto forged = wrong;
    for (std::uint32_t i = cut; i < forged.size(); ++i) forged.values[i] = owner.values[i];
    forged.values[4] = owner.values[4];
    forged.values[5] = owner.values[5];
    CHECK(forged[full.s_wire()].is_one());
    CHECK(full.cs().is_satisfied(forged) == (mode == CompareMode::kPaper));
  }
}
