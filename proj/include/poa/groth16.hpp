#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "poa/ec.hpp"
#include "poa/errors.hpp"
#include "poa/pairing.hpp"
#include "poa/prf.hpp"
#include "poa/qap.hpp"
#include "poa/r1cs.hpp"
#include "poa/serialize.hpp"

namespace poa {

// Groth16 over a BN-family profile. Notation: x is the secret evaluation
// point, K_i = beta u_i(x) + alpha v_i(x) + w_i(x), n = |domain|, l = number of
// public wires besides the constant, m + 1 = number of wires.

template <class P>
struct Trapdoor {
  using Fr = typename P::Fr;
  Fr alpha, beta, gamma, delta, x;
};

template <class P>
struct VerifyingKey {
  Digest layout_hash{};
  G1Affine<P> alpha_g1;
  G2Affine<P> beta_g2, gamma_g2, delta_g2;
  std::vector<G1Affine<P>> gamma_abc_g1;  // K_i / gamma, i = 0..l

  std::size_t num_inputs() const { return gamma_abc_g1.empty() ? 0 : gamma_abc_g1.size() - 1; }
};

template <class P>
struct ProvingKey {
  Digest layout_hash{};
  ConstraintSystem<typename P::Fr> cs;
  QapOptions qap_options;
  G1Affine<P> alpha_g1, beta_g1, delta_g1;
  G2Affine<P> beta_g2, delta_g2;
  std::vector<G1Affine<P>> powers_g1;  // x^i, i < n
  std::vector<G2Affine<P>> powers_g2;  // x^i, i < n
  std::vector<G1Affine<P>> l_query;    // K_i / delta, i > l
  std::vector<G1Affine<P>> h_query;    // x^i t(x) / delta, i <= n - 2
  // Per-wire evaluations, so the prover's sums skip zero and one wire values.
  std::vector<G1Affine<P>> a_query;     // u_i(x), every wire
  std::vector<G1Affine<P>> b_g1_query;  // v_i(x)
  std::vector<G2Affine<P>> b_g2_query;  // v_i(x)
};

template <class P>
struct Crs {
  ProvingKey<P> pk;
  VerifyingKey<P> vk;
  std::optional<Trapdoor<P>> trapdoor;  // test mode only
};

template <class P>
struct Proof {
  G1Affine<P> a;
  G2Affine<P> b;
  G1Affine<P> c;

  friend bool operator==(const Proof&, const Proof&) = default;

  using G1Codec = PointCodec<G1Curve<P>>;
  using G2Codec = PointCodec<G2Curve<P>>;
  static constexpr std::size_t kCompressedSize = 2 * G1Codec::kCompressedSize + G2Codec::kCompressedSize;
  static constexpr std::size_t kUncompressedSize = 2 * G1Codec::kUncompressedSize + G2Codec::kUncompressedSize;

  void write_compressed(std::span<std::uint8_t> out) const {
    G1Codec::write_compressed(a, out.subspan(0, G1Codec::kCompressedSize));
    G2Codec::write_compressed(b, out.subspan(G1Codec::kCompressedSize, G2Codec::kCompressedSize));
    G1Codec::write_compressed(c, out.subspan(G1Codec::kCompressedSize + G2Codec::kCompressedSize));
  }
  std::vector<std::uint8_t> to_bytes(bool compressed = true) const {
    std::vector<std::uint8_t> out(compressed ? kCompressedSize : kUncompressedSize);
    if (compressed) {
      write_compressed(out);
    } else {
      std::span<std::uint8_t> s(out);
      G1Codec::write_uncompressed(a, s.subspan(0, G1Codec::kUncompressedSize));
      G2Codec::write_uncompressed(b, s.subspan(G1Codec::kUncompressedSize, G2Codec::kUncompressedSize));
      G1Codec::write_uncompressed(c, s.subspan(G1Codec::kUncompressedSize + G2Codec::kUncompressedSize));
    }
    return out;
  }

  /// Decodes either encoding (chosen by length); nullopt for anything off-curve or off-subgroup.
  static std::optional<Proof> from_bytes(std::span<const std::uint8_t> in) {
    Proof p;
    if (in.size() == kCompressedSize) {
      auto a = G1Codec::read_compressed(in.subspan(0, G1Codec::kCompressedSize));
      auto b = G2Codec::read_compressed(in.subspan(G1Codec::kCompressedSize, G2Codec::kCompressedSize));
      auto c = G1Codec::read_compressed(in.subspan(G1Codec::kCompressedSize + G2Codec::kCompressedSize));
      if (!a || !b || !c) return std::nullopt;
      return Proof{*a, *b, *c};
    }
    if (in.size() == kUncompressedSize) {
      auto a = G1Codec::read_uncompressed(in.subspan(0, G1Codec::kUncompressedSize));
      auto b = G2Codec::read_uncompressed(in.subspan(G1Codec::kUncompressedSize, G2Codec::kUncompressedSize));
      auto c = G1Codec::read_uncompressed(in.subspan(G1Codec::kUncompressedSize + G2Codec::kUncompressedSize));
      if (!a || !b || !c) return std::nullopt;
      return Proof{*a, *b, *c};
    }
    return std::nullopt;
  }
};

/// Public wire values a_1..a_l tagged with the circuit they belong to.
template <class P>
struct PublicInputs {
  Digest layout_hash{};
  std::vector<typename P::Fr> values;
};

struct SetupOptions {
  bool test_mode = false;  // keep the trapdoor in the returned Crs
  QapOptions qap;
};

template <class P>
Crs<P> setup(const ConstraintSystem<typename P::Fr>& cs, RandomStream& rng, const SetupOptions& opt = {}) {
  using Fr = typename P::Fr;
  if (!cs.sealed()) throw StateError("setup needs a sealed constraint system");
  const Qap<Fr> qap = Qap<Fr>::compile(cs, opt.qap);
  const std::size_t n = qap.degree();
  const std::size_t l = cs.num_inputs();
  const std::size_t m1 = cs.num_variables();

  Trapdoor<P> td;
  td.alpha = rng.next_nonzero<Fr>();
  td.beta = rng.next_nonzero<Fr>();
  td.gamma = rng.next_nonzero<Fr>();
  td.delta = rng.next_nonzero<Fr>();
  do {
    td.x = rng.next_nonzero<Fr>();
  } while (qap.domain().evaluate_vanishing(td.x).is_zero());

  const auto ev = qap.evaluate_at(td.x);
  const Fr gamma_inv = td.gamma.inverse();
  const Fr delta_inv = td.delta.inverse();

  std::vector<Fr> powers(n);
  Fr acc = Fr::one();
  for (auto& p : powers) {
    p = acc;
    acc *= td.x;
  }
  std::vector<Fr> k(m1);
  for (std::size_t i = 0; i < m1; ++i) k[i] = td.beta * ev.u[i] + td.alpha * ev.v[i] + ev.w[i];
  std::vector<Fr> abc(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(l + 1));
  for (auto& v : abc) v *= gamma_inv;
  std::vector<Fr> lq(k.begin() + static_cast<std::ptrdiff_t>(l + 1), k.end());
  for (auto& v : lq) v *= delta_inv;
  std::vector<Fr> hq(n - 1);
  const Fr t_over_delta = ev.t * delta_inv;
  for (std::size_t i = 0; i + 1 < n; ++i) hq[i] = powers[i] * t_over_delta;

  const FixedBaseTable<G1Curve<P>> t1(G1<P>::generator());
  const FixedBaseTable<G2Curve<P>> t2(G2<P>::generator());
  auto g1 = [&](const Fr& s) { return t1.mul(s.to_u256()).to_affine(); };
  auto g2 = [&](const Fr& s) { return t2.mul(s.to_u256()).to_affine(); };

  Crs<P> crs;
  auto& pk = crs.pk;
  pk.cs = cs;
  pk.layout_hash = cs.layout_hash();
  pk.qap_options = opt.qap;
  pk.alpha_g1 = g1(td.alpha);
  pk.beta_g1 = g1(td.beta);
  pk.delta_g1 = g1(td.delta);
  pk.beta_g2 = g2(td.beta);
  pk.delta_g2 = g2(td.delta);
  pk.powers_g1 = t1.batch_mul(powers);
  pk.powers_g2 = t2.batch_mul(powers);
  pk.l_query = t1.batch_mul(lq);
  pk.h_query = t1.batch_mul(hq);
  pk.a_query = t1.batch_mul(ev.u);
  pk.b_g1_query = t1.batch_mul(ev.v);
  pk.b_g2_query = t2.batch_mul(ev.v);

  auto& vk = crs.vk;
  vk.layout_hash = pk.layout_hash;
  vk.alpha_g1 = pk.alpha_g1;
  vk.beta_g2 = pk.beta_g2;
  vk.gamma_g2 = g2(td.gamma);
  vk.delta_g2 = pk.delta_g2;
  vk.gamma_abc_g1 = t1.batch_mul(abc);

  if (opt.test_mode) crs.trapdoor = td;
  return crs;
}

/// Proving key plus its compiled QAP, reusable across proofs.
template <class P>
class Prover {
 public:
  using Fr = typename P::Fr;

  explicit Prover(const ProvingKey<P>& pk) : pk_(pk), qap_(Qap<Fr>::compile(pk.cs, pk.qap_options)) {
    if (pk_.powers_g1.size() != qap_.degree() || pk_.powers_g2.size() != qap_.degree() ||
        pk_.h_query.size() + 1 != qap_.degree() || pk_.l_query.size() != pk.cs.num_aux() ||
        pk_.a_query.size() != pk.cs.num_variables() || pk_.b_g1_query.size() != pk.cs.num_variables() ||
        pk_.b_g2_query.size() != pk.cs.num_variables()) {
      throw ShapeError("proving key does not match its constraint system");
    }
  }

  const ProvingKey<P>& key() const { return pk_; }
  const Qap<Fr>& qap() const { return qap_; }

  /// Refuses (NotSatisfiedError) unless t satisfies the circuit.
  Proof<P> prove(const Assignment<Fr>& t, RandomStream& rng) const {
    if (auto bad = pk_.cs.first_unsatisfied(t)) {
      throw NotSatisfiedError("assignment violates constraint " + std::to_string(*bad));
    }
    const Fr r = rng.next_nonzero<Fr>();
    const Fr s = rng.next_nonzero<Fr>();

    std::vector<Fr> h = qap_.witness_poly(t).coefficients();
    const std::size_t n = qap_.degree();
    if (h.size() > n - 1) throw StateError("h(x) exceeds its degree bound");
    h.resize(n - 1);

    const std::size_t l = pk_.cs.num_inputs();
    const std::span<const Fr> all(t.values);
    const std::span<const Fr> aux = all.subspan(l + 1);

    const G1<P> delta1(pk_.delta_g1);
    const G1<P> a = G1<P>(pk_.alpha_g1) + msm<G1Curve<P>>(pk_.a_query, all) + r * delta1;
    const G1<P> b1 = G1<P>(pk_.beta_g1) + msm<G1Curve<P>>(pk_.b_g1_query, all) + s * delta1;
    const G2<P> b2 = G2<P>(pk_.beta_g2) + msm<G2Curve<P>>(pk_.b_g2_query, all) + s * G2<P>(pk_.delta_g2);
    const G1<P> c = msm<G1Curve<P>>(pk_.l_query, aux) + msm<G1Curve<P>>(pk_.h_query, std::span<const Fr>(h)) +
                    s * a + r * b1 - (r * s) * delta1;
    return {a.to_affine(), b2.to_affine(), c.to_affine()};
  }

 private:
  const ProvingKey<P>& pk_;
  Qap<Fr> qap_;
};

template <class P>
Proof<P> prove(const ProvingKey<P>& pk, const Assignment<typename P::Fr>& t, RandomStream& rng) {
  return Prover<P>(pk).prove(t, rng);
}

/// Verifying key with e(alpha, beta) and prepared G2 points cached.
template <class P>
class PreparedVerifyingKey {
 public:
  explicit PreparedVerifyingKey(const VerifyingKey<P>& vk)
      : vk_(vk),
        alpha_beta_(pairing<P>(vk.alpha_g1, vk.beta_g2)),
        gamma_(vk.gamma_g2),
        delta_(vk.delta_g2) {}

  const VerifyingKey<P>& key() const { return vk_; }
  const GT<P>& alpha_beta() const { return alpha_beta_; }
  const G2Prepared<P>& gamma() const { return gamma_; }
  const G2Prepared<P>& delta() const { return delta_; }

 private:
  VerifyingKey<P> vk_;
  GT<P> alpha_beta_;
  G2Prepared<P> gamma_;
  G2Prepared<P> delta_;
};

namespace detail {

template <class P>
void check_inputs(const VerifyingKey<P>& vk, const PublicInputs<P>& in) {
  if (in.layout_hash != vk.layout_hash) throw CircuitMismatch("public inputs belong to a different circuit");
  if (in.values.size() != vk.num_inputs()) {
    throw ShapeError("expected " + std::to_string(vk.num_inputs()) + " public inputs, got " +
                     std::to_string(in.values.size()));
  }
}

template <class P>
void check_subgroups(const Proof<P>& proof) {
  if (!in_prime_subgroup(proof.a) || !in_prime_subgroup(proof.b) || !in_prime_subgroup(proof.c)) {
    throw SubgroupError("proof element outside its prime-order subgroup");
  }
}

template <class P>
G1<P> input_commitment(const VerifyingKey<P>& vk, const PublicInputs<P>& in) {
  G1<P> acc(vk.gamma_abc_g1[0]);
  return acc + msm<G1Curve<P>>(std::span(vk.gamma_abc_g1).subspan(1), std::span<const typename P::Fr>(in.values));
}

}  // namespace detail

/// Miller value of e(A, B), shareable between verifications of one proof.
template <class P>
Fq12<P> proof_miller_ab(const Proof<P>& proof) {
  const G2Prepared<P> b(proof.b);
  const std::pair<G1Affine<P>, const G2Prepared<P>*> pr{proof.a, &b};
  return miller_loop<P>(std::span(&pr, 1));
}

/// e(A, B) = e(alpha, beta) e(sum a_i gamma_abc_i, gamma) e(C, delta), given
/// the Miller value of e(A, B).
template <class P>
bool verify_with_ab(const PreparedVerifyingKey<P>& pvk, const PublicInputs<P>& in, const Proof<P>& proof,
                    const Fq12<P>& miller_ab) {
  detail::check_inputs(pvk.key(), in);
  const G1Affine<P> ic = (-detail::input_commitment(pvk.key(), in)).to_affine();
  const G1Affine<P> nc = -proof.c;
  const std::array<std::pair<G1Affine<P>, const G2Prepared<P>*>, 2> pairs{{{ic, &pvk.gamma()}, {nc, &pvk.delta()}}};
  const Fq12<P> f = miller_ab * miller_loop<P>(pairs);
  return final_exponentiation<P>(f) == pvk.alpha_beta();
}

template <class P>
bool verify(const PreparedVerifyingKey<P>& pvk, const PublicInputs<P>& in, const Proof<P>& proof) {
  detail::check_inputs(pvk.key(), in);
  detail::check_subgroups(proof);
  return verify_with_ab(pvk, in, proof, proof_miller_ab(proof));
}

template <class P>
bool verify(const VerifyingKey<P>& vk, const PublicInputs<P>& in, const Proof<P>& proof) {
  return verify(PreparedVerifyingKey<P>(vk), in, proof);
}

namespace detail {

template <class P>
const Trapdoor<P>& require_trapdoor(const Crs<P>& crs) {
  if (!crs.trapdoor) throw StateError("operation needs a test-mode CRS with its trapdoor");
  return *crs.trapdoor;
}

/// alpha beta + sum_{i <= l} a_i K_i, the scalar the verifier's right side encodes besides C.
template <class P>
typename P::Fr public_exponent(const Crs<P>& crs, const PublicInputs<P>& in) {
  using Fr = typename P::Fr;
  const auto& td = require_trapdoor(crs);
  check_inputs(crs.vk, in);
  const Qap<Fr> qap = Qap<Fr>::compile(crs.pk.cs, crs.pk.qap_options);
  const auto ev = qap.evaluate_at(td.x);
  Fr acc = td.alpha * td.beta;
  for (std::size_t i = 0; i <= in.values.size(); ++i) {
    const Fr ai = i == 0 ? Fr::one() : in.values[i - 1];
    acc += ai * (td.beta * ev.u[i] + td.alpha * ev.v[i] + ev.w[i]);
  }
  return acc;
}

/// Discrete log by table lookup; only for the toy profile.
template <class C>
typename C::Scalar small_dlog(const AffinePoint<C>& p) {
  using S = typename C::Scalar;
  static const auto table = [] {
    std::vector<AffinePoint<C>> t;
    const U256 order = S::kModulus;
    JacobianPoint<C> acc;
    for (std::uint64_t k = 0; k < order.limbs[0]; ++k) {
      t.push_back(acc.to_affine());
      acc += JacobianPoint<C>::generator();
    }
    return t;
  }();
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (table[k] == p) return S(k);
  }
  throw SubgroupError("point outside the generated group");
}

}  // namespace detail

/// Test oracle: checks the verification equation with the retained trapdoor.
/// Toy profile: as the scalar identity a b = alpha beta + sum a_i K_i + c delta
/// after taking discrete logs. Standard profile: as the folded two-pairing
/// check e(A, B) = e([alpha beta + sum a_i K_i]_1 + delta C, [1]_2).
template <class P>
bool verify_with_trapdoor(const Crs<P>& crs, const PublicInputs<P>& in, const Proof<P>& proof) {
  using Fr = typename P::Fr;
  const Fr rhs = detail::public_exponent(crs, in);
  const auto& td = *crs.trapdoor;
  detail::check_subgroups(proof);
  if constexpr (P::kSmallGroups) {
    const Fr a = detail::small_dlog(proof.a);
    const Fr b = detail::small_dlog(proof.b);
    const Fr c = detail::small_dlog(proof.c);
    return a * b == rhs + c * td.delta;
  } else {
    const G1<P> right = rhs * G1<P>::generator() + td.delta * G1<P>(proof.c);
    return pairing<P>(proof.a, proof.b) == pairing<P>(right.to_affine(), G2Affine<P>::generator());
  }
}

/// Witness-free proof from the trapdoor: pick A, B at random and solve the
/// verification equation for C.
template <class P>
Proof<P> simulate(const Crs<P>& crs, const PublicInputs<P>& in, RandomStream& rng) {
  using Fr = typename P::Fr;
  const Fr rhs = detail::public_exponent(crs, in);
  const Fr a = rng.next_nonzero<Fr>();
  const Fr b = rng.next_nonzero<Fr>();
  const Fr c = (a * b - rhs) * crs.trapdoor->delta.inverse();
  return {(a * G1<P>::generator()).to_affine(), (b * G2<P>::generator()).to_affine(),
          (c * G1<P>::generator()).to_affine()};
}

// Key and trapdoor files. Big-endian, points uncompressed.
//   vk: "PVK1" profile-name layout-hash alpha_g1 beta_g2 gamma_g2 delta_g2 count gamma_abc_g1[]
//   pk: "PPK1" profile-name layout-hash qap-flags cs-bytes alpha beta delta (g1) beta delta (g2)
//       powers_g1[] powers_g2[] l_query[] h_query[] a_query[] b_g1_query[] b_g2_query[]
//   trapdoor: "PTD1" profile-name layout-hash alpha beta gamma delta x

namespace detail {

inline void write_name(ByteWriter& w, std::string_view name) {
  w.u32(static_cast<std::uint32_t>(name.size()));
  w.tag(name);
}

inline void expect_name(ByteReader& r, std::string_view name) {
  const std::size_t at = r.offset();
  const std::uint32_t len = r.u32();
  auto got = r.bytes(len);
  if (std::string(got.begin(), got.end()) != name) {
    r.fail("curve profile mismatch (file is not for profile '" + std::string(name) + "')", at);
  }
}

inline Digest read_digest(ByteReader& r) {
  Digest d{};
  auto b = r.bytes(32);
  std::copy(b.begin(), b.end(), d.begin());
  return d;
}

template <class C>
void write_point(ByteWriter& w, const AffinePoint<C>& p) {
  PointCodec<C>::write_uncompressed(p, w.extend(PointCodec<C>::kUncompressedSize));
}

template <class C>
AffinePoint<C> read_point(ByteReader& r, bool check_subgroup) {
  const std::size_t at = r.offset();
  auto p = PointCodec<C>::read_uncompressed(r.bytes(PointCodec<C>::kUncompressedSize), check_subgroup);
  if (!p) r.fail("invalid curve point", at);
  return *p;
}

template <class C>
void write_points(ByteWriter& w, const std::vector<AffinePoint<C>>& v) {
  w.u64(v.size());
  for (const auto& p : v) write_point(w, p);
}

template <class C>
std::vector<AffinePoint<C>> read_points(ByteReader& r, bool check_subgroup) {
  const std::uint64_t n = r.count(PointCodec<C>::kUncompressedSize);
  std::vector<AffinePoint<C>> v;
  v.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) v.push_back(read_point<C>(r, check_subgroup));
  return v;
}

}  // namespace detail

template <class P>
void write_vk(ByteWriter& w, const VerifyingKey<P>& vk) {
  w.tag("PVK1");
  detail::write_name(w, P::kName);
  w.bytes(vk.layout_hash);
  detail::write_point(w, vk.alpha_g1);
  detail::write_point(w, vk.beta_g2);
  detail::write_point(w, vk.gamma_g2);
  detail::write_point(w, vk.delta_g2);
  detail::write_points(w, vk.gamma_abc_g1);
}

template <class P>
VerifyingKey<P> read_vk(ByteReader& r) {
  r.expect_tag("PVK1");
  detail::expect_name(r, P::kName);
  VerifyingKey<P> vk;
  vk.layout_hash = detail::read_digest(r);
  vk.alpha_g1 = detail::read_point<G1Curve<P>>(r, true);
  vk.beta_g2 = detail::read_point<G2Curve<P>>(r, true);
  vk.gamma_g2 = detail::read_point<G2Curve<P>>(r, true);
  vk.delta_g2 = detail::read_point<G2Curve<P>>(r, true);
  const std::size_t at = r.offset();
  vk.gamma_abc_g1 = detail::read_points<G1Curve<P>>(r, true);
  if (vk.gamma_abc_g1.empty()) r.fail("verifying key without input terms", at);
  return vk;
}

/// Proving-key points are checked against the curve equation only.
template <class P>
void write_pk(ByteWriter& w, const ProvingKey<P>& pk) {
  w.tag("PPK1");
  detail::write_name(w, P::kName);
  w.bytes(pk.layout_hash);
  w.u8(static_cast<std::uint8_t>((pk.qap_options.bind_public_inputs ? 1 : 0) | (pk.qap_options.use_fft ? 2 : 0)));
  const auto cs = pk.cs.serialize();
  w.u64(cs.size());
  w.bytes(cs);
  detail::write_point(w, pk.alpha_g1);
  detail::write_point(w, pk.beta_g1);
  detail::write_point(w, pk.delta_g1);
  detail::write_point(w, pk.beta_g2);
  detail::write_point(w, pk.delta_g2);
  detail::write_points(w, pk.powers_g1);
  detail::write_points(w, pk.powers_g2);
  detail::write_points(w, pk.l_query);
  detail::write_points(w, pk.h_query);
  detail::write_points(w, pk.a_query);
  detail::write_points(w, pk.b_g1_query);
  detail::write_points(w, pk.b_g2_query);
}

template <class P>
ProvingKey<P> read_pk(ByteReader& r) {
  r.expect_tag("PPK1");
  detail::expect_name(r, P::kName);
  ProvingKey<P> pk;
  const std::size_t at_hash = r.offset();
  pk.layout_hash = detail::read_digest(r);
  const std::size_t at_flags = r.offset();
  const std::uint8_t flags = r.u8();
  if (flags > 3) r.fail("unknown QAP flags", at_flags);
  pk.qap_options = {(flags & 1) != 0, (flags & 2) != 0};
  const std::uint64_t cs_len = r.count(1);
  const std::size_t cs_start = r.offset();
  ByteReader sub(r.bytes(cs_len));
  try {
    pk.cs = ConstraintSystem<typename P::Fr>::deserialize(sub);
    sub.expect_end();
  } catch (const ParseError& e) {
    r.fail(std::string("embedded constraint system: ") + e.what(), cs_start + e.offset());
  }
  if (pk.cs.layout_hash() != pk.layout_hash) r.fail("proving key layout hash mismatch", at_hash);
  pk.alpha_g1 = detail::read_point<G1Curve<P>>(r, false);
  pk.beta_g1 = detail::read_point<G1Curve<P>>(r, false);
  pk.delta_g1 = detail::read_point<G1Curve<P>>(r, false);
  pk.beta_g2 = detail::read_point<G2Curve<P>>(r, false);
  pk.delta_g2 = detail::read_point<G2Curve<P>>(r, false);
  pk.powers_g1 = detail::read_points<G1Curve<P>>(r, false);
  pk.powers_g2 = detail::read_points<G2Curve<P>>(r, false);
  pk.l_query = detail::read_points<G1Curve<P>>(r, false);
  pk.h_query = detail::read_points<G1Curve<P>>(r, false);
  pk.a_query = detail::read_points<G1Curve<P>>(r, false);
  pk.b_g1_query = detail::read_points<G1Curve<P>>(r, false);
  pk.b_g2_query = detail::read_points<G2Curve<P>>(r, false);
  return pk;
}

template <class P>
void write_trapdoor(ByteWriter& w, const Digest& layout_hash, const Trapdoor<P>& td) {
  w.tag("PTD1");
  detail::write_name(w, P::kName);
  w.bytes(layout_hash);
  for (const auto* v : {&td.alpha, &td.beta, &td.gamma, &td.delta, &td.x}) w.field(*v);
}

template <class P>
std::pair<Digest, Trapdoor<P>> read_trapdoor(ByteReader& r) {
  using Fr = typename P::Fr;
  r.expect_tag("PTD1");
  detail::expect_name(r, P::kName);
  const Digest h = detail::read_digest(r);
  Trapdoor<P> td;
  for (auto* v : {&td.alpha, &td.beta, &td.gamma, &td.delta, &td.x}) {
    const std::size_t at = r.offset();
    *v = r.field<Fr>();
    if (v->is_zero()) r.fail("trapdoor scalar is zero", at);
  }
  return {h, td};
}

}  // namespace poa
