#include "poa/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace poa {

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::uint32_t kFormatVersion = 1;
constexpr std::size_t kPointBytes = kInnerUncompressedSize<Fr>;

const InnerCurve<Curve>& inner() { return InnerCurve<Curve>::get(); }

void write_inner(ByteWriter& w, const Address& p) { write_inner_uncompressed(p, w.extend(kPointBytes)); }

Address read_inner(ByteReader& r) {
  const std::size_t at = r.offset();
  auto p = read_inner_uncompressed(inner().curve, r.bytes(kPointBytes));
  if (!p) r.fail("invalid inner-curve point", at);
  return *p;
}

Digest read_digest(ByteReader& r) { return detail::read_digest(r); }

void expect_version(ByteReader& r) {
  const std::size_t at = r.offset();
  if (r.u32() != kFormatVersion) r.fail("unsupported format version", at);
}

/// Runs fn(i) for i < n on up to `jobs` threads. The exception of the lowest
/// failing index is rethrown.
template <class Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t err_index = n;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

// Snapshot: "POAS" version count { y (64 bytes) v (u64) }*

void AnonymitySet::validate() const {
  std::set<std::vector<std::uint8_t>> seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.y.infinity || !inner().curve.is_on_curve(e.y)) {
      throw DomainError("snapshot entry " + std::to_string(i) + ": address is not an affine curve point");
    }
    if (e.v > kMaxBalance) throw DomainError("snapshot entry " + std::to_string(i) + ": balance exceeds 2^51 - 1");
    std::vector<std::uint8_t> key(kPointBytes);
    write_inner_uncompressed(e.y, key);
    if (!seen.insert(std::move(key)).second) {
      throw DomainError("snapshot entry " + std::to_string(i) + ": repeated address");
    }
  }
}

std::vector<std::uint8_t> AnonymitySet::serialize() const {
  ByteWriter w;
  w.tag("POAS");
  w.u32(kFormatVersion);
  w.u64(entries.size());
  for (const auto& e : entries) {
    write_inner(w, e.y);
    w.u64(e.v);
  }
  return w.take();
}

AnonymitySet AnonymitySet::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect_tag("POAS");
  expect_version(r);
  const std::uint64_t n = r.count(kPointBytes + 8);
  AnonymitySet s;
  s.entries.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::size_t at = r.offset();
    PoaInstance<Curve> e;
    e.y = read_inner(r);
    if (e.y.infinity) r.fail("address is the point at infinity", at);
    const std::size_t at_v = r.offset();
    e.v = r.u64();
    if (e.v > kMaxBalance) r.fail("balance exceeds 2^51 - 1", at_v);
    s.entries.push_back(e);
  }
  r.expect_end();
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
  return s;
}

Digest AnonymitySet::hash() const { return sha256(serialize()); }

std::string AnonymitySet::to_text() const {
  std::ostringstream out;
  std::vector<std::uint8_t> buf(kInnerCompressedSize<Fr>);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    write_inner_compressed(entries[i].y, buf);
    out << i << ' ' << hex_encode(buf) << ' ' << entries[i].v << '\n';
  }
  return out.str();
}

// Secrets: "POAX" version snapshot-hash count { owned (u8) x (32 bytes) }*

std::size_t ExchangeSecrets::owned_count() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const Entry& e) { return e.owned; }));
}

std::vector<std::uint8_t> ExchangeSecrets::serialize() const {
  ByteWriter w;
  w.tag("POAX");
  w.u32(kFormatVersion);
  w.bytes(snapshot_hash);
  w.u64(entries.size());
  for (const auto& e : entries) {
    w.u8(e.owned ? 1 : 0);
    w.field(e.x);
  }
  return w.take();
}

ExchangeSecrets ExchangeSecrets::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect_tag("POAX");
  expect_version(r);
  ExchangeSecrets s;
  s.snapshot_hash = read_digest(r);
  const std::uint64_t n = r.count(1 + Fq::kBytes);
  s.entries.resize(n);
  for (auto& e : s.entries) {
    const std::size_t at = r.offset();
    const std::uint8_t flag = r.u8();
    if (flag > 1) r.fail("ownership flag must be 0 or 1", at);
    e.owned = flag == 1;
    e.x = r.field<Fq>();
  }
  r.expect_end();
  return s;
}

SnapshotGenResult generate_snapshot(std::size_t n, double owned_fraction, const Prf& seed,
                                    std::uint64_t max_balance) {
  if (!(owned_fraction >= 0.0 && owned_fraction <= 1.0)) throw DomainError("owned fraction must lie in [0, 1]");
  if (max_balance > kMaxBalance) throw DomainError("balance cap exceeds 2^51 - 1");
  const Prf root = seed.derive("snapshot");
  SnapshotGenResult out;
  out.set.entries.resize(n);
  out.secrets.entries.resize(n);
  std::set<std::vector<std::uint8_t>> seen;
  for (std::size_t i = 0; i < n; ++i) {
    RandomStream rng = root.derive("key", i).stream();
    for (;;) {
      const Fq x = rng.next_nonzero<Fq>();
      const Address y = inner().mul(x, inner().G);
      std::vector<std::uint8_t> key(kPointBytes);
      write_inner_uncompressed(y, key);
      if (!seen.insert(std::move(key)).second) continue;
      out.secrets.entries[i].x = x;
      out.set.entries[i].y = y;
      break;
    }
    out.set.entries[i].v = rng.uniform(max_balance + 1);
  }
  // Partial Fisher-Yates picks the owned indices.
  const auto k = static_cast<std::size_t>(std::llround(static_cast<double>(n) * owned_fraction));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  RandomStream pick = root.derive("owned").stream();
  for (std::size_t j = 0; j < k; ++j) {
    std::swap(idx[j], idx[j + pick.uniform(n - j)]);
    out.secrets.entries[idx[j]].owned = true;
  }
  out.secrets.snapshot_hash = out.set.hash();
  return out;
}

KeyMaterial setup_keys(const CircuitPair& circuits, const Prf& seed, bool test_mode) {
  const SetupOptions opt{test_mode, {}};
  RandomStream r_full = seed.derive("setup", 0).stream();
  RandomStream r_commit = seed.derive("setup", 1).stream();
  KeyMaterial k{setup<Curve>(circuits.full.cs(), r_full, opt), setup<Curve>(circuits.commit.cs(), r_commit, opt)};
  return k;
}

// Key containers: tag version { length-prefixed key }x2 (full, then commitment-only)

namespace {

template <class Fn>
void write_pair(ByteWriter& w, std::string_view tag, Fn&& write_one) {
  w.tag(tag);
  w.u32(kFormatVersion);
  for (int which = 0; which < 2; ++which) {
    ByteWriter inner_w;
    write_one(inner_w, which);
    const auto body = inner_w.take();
    w.u64(body.size());
    w.bytes(body);
  }
}

template <class T, class Fn>
std::pair<T, T> read_pair(std::span<const std::uint8_t> bytes, std::string_view tag, Fn&& read_one) {
  ByteReader r(bytes);
  r.expect_tag(tag);
  expect_version(r);
  T out[2];
  for (int which = 0; which < 2; ++which) {
    const std::uint64_t len = r.count(1);
    const std::size_t start = r.offset();
    ByteReader sub(r.bytes(len));
    try {
      out[which] = read_one(sub);
      sub.expect_end();
    } catch (const ParseError& e) {
      throw ParseError(std::string(which == 0 ? "full-circuit key: " : "commitment-only key: ") + e.what(),
                       start + e.offset());
    }
  }
  r.expect_end();
  return {std::move(out[0]), std::move(out[1])};
}

}  // namespace

std::vector<std::uint8_t> serialize_prover_keys(const ProverKeys& k) {
  ByteWriter w;
  write_pair(w, "POAK", [&](ByteWriter& sub, int which) { write_pk(sub, which == 0 ? k.full : k.commit); });
  return w.take();
}

ProverKeys deserialize_prover_keys(std::span<const std::uint8_t> bytes) {
  auto [full, commit] = read_pair<ProvingKey<Curve>>(bytes, "POAK", [](ByteReader& r) { return read_pk<Curve>(r); });
  return {std::move(full), std::move(commit)};
}

std::vector<std::uint8_t> serialize_verifier_keys(const VerifierKeys& k) {
  ByteWriter w;
  write_pair(w, "POAV", [&](ByteWriter& sub, int which) { write_vk(sub, which == 0 ? k.full : k.commit); });
  return w.take();
}

VerifierKeys deserialize_verifier_keys(std::span<const std::uint8_t> bytes) {
  auto [full, commit] =
      read_pair<VerifyingKey<Curve>>(bytes, "POAV", [](ByteReader& r) { return read_vk<Curve>(r); });
  return {std::move(full), std::move(commit)};
}

std::vector<std::uint8_t> serialize_trapdoors(const KeyMaterial& k) {
  if (!k.full.trapdoor || !k.commit.trapdoor) throw StateError("key material has no trapdoor (not a test-mode setup)");
  ByteWriter w;
  write_pair(w, "POAT", [&](ByteWriter& sub, int which) {
    const auto& crs = which == 0 ? k.full : k.commit;
    write_trapdoor<Curve>(sub, crs.vk.layout_hash, *crs.trapdoor);
  });
  return w.take();
}

KeyMaterial assemble_key_material(ProverKeys pk, VerifierKeys vk, std::span<const std::uint8_t> trapdoor_bytes) {
  auto [full_td, commit_td] = read_pair<std::pair<Digest, Trapdoor<Curve>>>(
      trapdoor_bytes, "POAT", [](ByteReader& r) { return read_trapdoor<Curve>(r); });
  KeyMaterial k;
  k.full = {std::move(pk.full), std::move(vk.full), full_td.second};
  k.commit = {std::move(pk.commit), std::move(vk.commit), commit_td.second};
  for (const auto* crs : {&k.full, &k.commit}) {
    const auto& td = crs == &k.full ? full_td : commit_td;
    if (crs->pk.layout_hash != crs->vk.layout_hash || td.first != crs->vk.layout_hash) {
      throw CircuitMismatch("proving key, verifying key and trapdoor describe different circuits");
    }
    if ((td.second.alpha * G1<Curve>::generator()).to_affine() != crs->vk.alpha_g1 ||
        crs->pk.alpha_g1 != crs->vk.alpha_g1) {
      throw CircuitMismatch("proving key, verifying key and trapdoor come from different setups");
    }
  }
  return k;
}

// Bundle: "POAB" version n snapshot-hash full-layout commit-layout aggregate (64)
//         { proof (128, compressed) commitment (64, uncompressed) }*n

std::vector<std::uint8_t> AssetProofBundle::serialize() const {
  ByteWriter w;
  w.tag("POAB");
  w.u32(kFormatVersion);
  w.u64(entries.size());
  w.bytes(snapshot_hash);
  w.bytes(full_layout);
  w.bytes(commit_layout);
  write_inner(w, aggregate);
  for (const auto& e : entries) {
    e.proof.write_compressed(w.extend(Proof<Curve>::kCompressedSize));
    write_inner(w, e.commitment);
  }
  return w.take();
}

AssetProofBundle AssetProofBundle::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect_tag("POAB");
  expect_version(r);
  AssetProofBundle b;
  const std::uint64_t n = r.count(kEntrySize);
  b.snapshot_hash = read_digest(r);
  b.full_layout = read_digest(r);
  b.commit_layout = read_digest(r);
  b.aggregate = read_inner(r);
  b.entries.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto proof = Proof<Curve>::from_bytes(r.bytes(Proof<Curve>::kCompressedSize));
    auto c = read_inner_uncompressed(inner().curve, r.bytes(kPointBytes));
    if (proof && c) {
      b.entries[i] = {*proof, *c};
    } else {
      b.invalid_entries.push_back(i);
    }
  }
  r.expect_end();
  return b;
}

ProveResult exchange_prove(const CircuitPair& circuits, const ProverKeys& keys, const AnonymitySet& set,
                           const ExchangeSecrets& secrets, const Prf& seed, const ProveOptions& opt) {
  if (secrets.entries.size() != set.size()) throw ShapeError("secrets and snapshot differ in length");
  if (keys.full.layout_hash != circuits.full.cs().layout_hash() ||
      keys.commit.layout_hash != circuits.commit.cs().layout_hash()) {
    throw CircuitMismatch("proving keys were generated for a different circuit mode");
  }
  const Digest snapshot_hash = set.hash();
  if (secrets.snapshot_hash != snapshot_hash) throw CircuitMismatch("secrets belong to a different snapshot");

  const auto t0 = Clock::now();
  const Prover<Curve> full(keys.full);
  const Prover<Curve> commit(keys.commit);
  const std::size_t n = set.size();

  ProveResult res;
  res.bundle.snapshot_hash = snapshot_hash;
  res.bundle.full_layout = keys.full.layout_hash;
  res.bundle.commit_layout = keys.commit.layout_hash;
  res.bundle.entries.resize(n);
  res.per_address_seconds.resize(n);
  std::vector<Fq> blinds(n);

  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = secrets.entries[i];
    if (s.owned) {
      if (inner().mul(s.x, inner().G) != set.entries[i].y) {
        throw KeyMismatchError("address " + std::to_string(i) + ": x G does not equal the snapshot key");
      }
      res.total += set.entries[i].v;
      if (res.total < set.entries[i].v) throw DomainError("total balance overflows 64 bits");
    }
  }

  parallel_for(n, opt.jobs, [&](std::size_t i) {
    const auto start = Clock::now();
    RandomStream rng = seed.derive("address", i).stream();
    const auto& inst = set.entries[i];
    const auto& sec = secrets.entries[i];
    PoaWitness<Curve> w;
    w.s = sec.owned;
    w.r = rng.next_nonzero<Fq>();
    const Fq dummy = rng.next_nonzero<Fq>();
    const bool use_full = sec.owned || opt.uniform_circuit;
    w.x = sec.owned ? sec.x : dummy;
    const auto& circuit = use_full ? circuits.full : circuits.commit;
    const auto t = circuit.generate_witness(inst, w);
    const auto& prover = use_full ? full : commit;
    BundleEntry e;
    e.proof = prover.prove(t, rng);
    e.commitment = pedersen_commit<Curve>(Fq(sec.owned ? inst.v : 0), w.r);
    res.bundle.entries[i] = e;
    blinds[i] = w.r;
    res.per_address_seconds[i] = std::chrono::duration<double>(Clock::now() - start).count();
  });

  res.blind_sum = Fq::zero();
  for (const auto& r : blinds) res.blind_sum += r;
  res.bundle.aggregate = sum_commitments(res.bundle.entries);
  res.total_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return res;
}

CustomerVerifier::CustomerVerifier(const VerifierKeys& keys) : full_(keys.full), commit_(keys.commit) {}

bool CustomerVerifier::verify_entry(const PoaInstance<Curve>& inst, const BundleEntry& entry) const {
  if (inst.y.infinity || entry.commitment.infinity) return false;
  if (!inner().curve.is_on_curve(entry.commitment)) return false;
  if (!in_prime_subgroup(entry.proof.a) || !in_prime_subgroup(entry.proof.b) ||
      !in_prime_subgroup(entry.proof.c)) {
    return false;
  }
  std::vector<Fr> values{inst.y.x, inst.y.y, Fr(inst.v), entry.commitment.x, entry.commitment.y};
  // No circuit tag travels with an entry: try the full circuit, then the
  // commitment-only one, sharing the e(A, B) Miller loop.
  const auto ab = proof_miller_ab(entry.proof);
  PublicInputs<Curve> in{full_.key().layout_hash, values};
  if (verify_with_ab(full_, in, entry.proof, ab)) return true;
  in.layout_hash = commit_.key().layout_hash;
  return verify_with_ab(commit_, in, entry.proof, ab);
}

VerifyResult CustomerVerifier::verify(const AnonymitySet& set, const AssetProofBundle& bundle,
                                      std::size_t jobs) const {
  if (bundle.entries.size() != set.size()) {
    throw ShapeError("bundle has " + std::to_string(bundle.entries.size()) + " entries, snapshot has " +
                     std::to_string(set.size()));
  }
  if (bundle.full_layout != full_.key().layout_hash || bundle.commit_layout != commit_.key().layout_hash) {
    throw CircuitMismatch("bundle was produced for different circuits than the verifying keys");
  }
  VerifyResult res;
  if (bundle.snapshot_hash != set.hash()) {
    res.check = "snapshot";
    res.reason = "bundle references a different snapshot";
    return res;
  }
  const std::size_t n = set.size();
  std::vector<char> ok(n, 0);
  std::vector<char> invalid(n, 0);
  for (auto i : bundle.invalid_entries) {
    if (i < n) invalid[i] = 1;
  }
  parallel_for(n, jobs, [&](std::size_t i) { ok[i] = !invalid[i] && verify_entry(set.entries[i], bundle.entries[i]); });
  for (std::size_t i = 0; i < n; ++i) {
    if (!ok[i]) {
      res.index = i;
      res.check = "a";
      res.reason = invalid[i] ? "entry " + std::to_string(i) + " does not decode"
                              : "proof " + std::to_string(i) + " does not verify";
      return res;
    }
  }
  if (sum_commitments(bundle.entries) != bundle.aggregate) {
    res.check = "c";
    res.reason = "sum of commitments differs from C_Assets";
    return res;
  }
  res.accept = true;
  return res;
}

VerifyResult customer_verify(const VerifierKeys& keys, const AnonymitySet& set, const AssetProofBundle& bundle,
                             std::size_t jobs) {
  return CustomerVerifier(keys).verify(set, bundle, jobs);
}

Address sum_commitments(const std::vector<BundleEntry>& entries) {
  Address acc = Address::identity();
  for (const auto& e : entries) acc = inner().add(acc, e.commitment);
  return acc;
}

bool open_aggregate(const AssetProofBundle& bundle, std::uint64_t total, const Fq& blind_sum) {
  return pedersen_open<Curve>(bundle.aggregate, Fq(total), blind_sum);
}

AssetProofBundle simulate_bundle(const KeyMaterial& keys, const AnonymitySet& set, const Prf& seed) {
  if (!keys.full.trapdoor) throw StateError("simulation needs the test-mode trapdoor");
  AssetProofBundle b;
  b.snapshot_hash = set.hash();
  b.full_layout = keys.full.vk.layout_hash;
  b.commit_layout = keys.commit.vk.layout_hash;
  b.entries.resize(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    RandomStream rng = seed.derive("simulate", i).stream();
    const Address c = inner().mul(rng.next_nonzero<Fq>(), inner().H);
    const PublicInputs<Curve> in{keys.full.vk.layout_hash,
                                 {set.entries[i].y.x, set.entries[i].y.y, Fr(set.entries[i].v), c.x, c.y}};
    b.entries[i] = {simulate(keys.full, in, rng), c};
  }
  b.aggregate = sum_commitments(b.entries);
  return b;
}

namespace {
constexpr std::string_view kArmorHeader = "poa-proof-v1 ";
}

std::string armor_proof(const Proof<Curve>& proof) {
  return std::string(kArmorHeader) + base64_encode(proof.to_bytes(true));
}

Proof<Curve> dearmor_proof(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
  if (text.substr(0, kArmorHeader.size()) != kArmorHeader) throw ParseError("missing proof armor header", 0);
  const auto body = text.substr(kArmorHeader.size());
  auto bytes = base64_decode(body);
  if (!bytes) throw ParseError("invalid base64 in proof armor", kArmorHeader.size());
  if (bytes->size() != Proof<Curve>::kCompressedSize) throw ParseError("armored proof has the wrong length", kArmorHeader.size());
  auto p = Proof<Curve>::from_bytes(*bytes);
  if (!p) throw ParseError("armored proof holds an invalid point", kArmorHeader.size());
  return *p;
}

// Opening: "POAO" version snapshot-hash blind-sum

std::vector<std::uint8_t> serialize_opening(const Digest& snapshot_hash, const Fq& blind_sum) {
  ByteWriter w;
  w.tag("POAO");
  w.u32(kFormatVersion);
  w.bytes(snapshot_hash);
  w.field(blind_sum);
  return w.take();
}

std::pair<Digest, Fq> deserialize_opening(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect_tag("POAO");
  expect_version(r);
  const Digest h = read_digest(r);
  const Fq b = r.field<Fq>();
  r.expect_end();
  return {h, b};
}

}  // namespace poa
