#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poa/gadgets.hpp"
#include "poa/groth16.hpp"
#include "poa/prf.hpp"

namespace poa {

// The proof-of-assets protocol runs on the standard profile only; the toy
// field cannot hold 256-bit keys.
using Curve = Bn254;
using Fr = Curve::Fr;
using Fq = Curve::Fq;
using Address = InnerPoint<Fr>;

/// Public snapshot S_anon: (address, balance) records in a fixed order.
struct AnonymitySet {
  std::vector<PoaInstance<Curve>> entries;

  std::size_t size() const { return entries.size(); }
  /// Throws DomainError for off-curve or repeated addresses and out-of-range balances.
  void validate() const;

  std::vector<std::uint8_t> serialize() const;
  static AnonymitySet deserialize(std::span<const std::uint8_t> bytes);
  /// SHA-256 of the canonical serialization.
  Digest hash() const;
  /// One "index address balance" line per entry, address as compressed hex.
  std::string to_text() const;
};

/// Exchange-side secrets: a key per address and whether it belongs to S_own.
struct ExchangeSecrets {
  struct Entry {
    Fq x;
    bool owned = false;
  };
  Digest snapshot_hash{};
  std::vector<Entry> entries;

  std::size_t owned_count() const;
  std::vector<std::uint8_t> serialize() const;
  static ExchangeSecrets deserialize(std::span<const std::uint8_t> bytes);
};

/// Synthetic snapshot: n fresh key pairs, round(n * owned_fraction) of them
/// owned (chosen uniformly), balances uniform in [0, max_balance].
struct SnapshotGenResult {
  AnonymitySet set;
  ExchangeSecrets secrets;
};
SnapshotGenResult generate_snapshot(std::size_t n, double owned_fraction, const Prf& seed,
                                    std::uint64_t max_balance = 2'100'000'000'000'000ULL);

/// Both circuits of one compare mode. Owned addresses use the full circuit;
/// the others use the commitment-only circuit.
struct CircuitPair {
  explicit CircuitPair(CompareMode mode)
      : mode(mode), full(CircuitKind::kFull, mode), commit(CircuitKind::kCommitmentOnly, mode) {}
  CompareMode mode;
  PoaCircuit<Curve> full;
  PoaCircuit<Curve> commit;
};

struct ProverKeys {
  ProvingKey<Curve> full;
  ProvingKey<Curve> commit;
};

struct VerifierKeys {
  VerifyingKey<Curve> full;
  VerifyingKey<Curve> commit;
};

/// Setup output for both circuits. The trapdoors are set only in test mode.
struct KeyMaterial {
  Crs<Curve> full;
  Crs<Curve> commit;

  ProverKeys prover_keys() const { return {full.pk, commit.pk}; }
  VerifierKeys verifier_keys() const { return {full.vk, commit.vk}; }
};

/// Trusted setup for both circuits from one seed.
KeyMaterial setup_keys(const CircuitPair& circuits, const Prf& seed, bool test_mode);

std::vector<std::uint8_t> serialize_prover_keys(const ProverKeys& k);
ProverKeys deserialize_prover_keys(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize_verifier_keys(const VerifierKeys& k);
VerifierKeys deserialize_verifier_keys(std::span<const std::uint8_t> bytes);
/// StateError unless both trapdoors are present.
std::vector<std::uint8_t> serialize_trapdoors(const KeyMaterial& k);
/// Rebuilds test-mode key material from the three key files; CircuitMismatch
/// when they come from different setups.
KeyMaterial assemble_key_material(ProverKeys pk, VerifierKeys vk, std::span<const std::uint8_t> trapdoor_bytes);

struct BundleEntry {
  Proof<Curve> proof;
  Address commitment;
  friend bool operator==(const BundleEntry&, const BundleEntry&) = default;
};

/// Everything the customer receives: per-address proofs and commitments and
/// their aggregate C_Assets.
struct AssetProofBundle {
  static constexpr std::size_t kEntrySize = Proof<Curve>::kCompressedSize + kInnerUncompressedSize<Fr>;

  Digest snapshot_hash{};
  Digest full_layout{};
  Digest commit_layout{};
  Address aggregate;
  std::vector<BundleEntry> entries;

  std::vector<std::uint8_t> serialize() const;
  /// Structural decoding. Undecodable proofs or commitments are kept as
  /// invalid entries so verification can name the index.
  static AssetProofBundle deserialize(std::span<const std::uint8_t> bytes);
  std::vector<std::size_t> invalid_entries;
};

struct ProveOptions {
  std::size_t jobs = 1;
  /// Prove non-owned addresses with the full circuit and s = 0 instead of the
  /// commitment-only circuit.
  bool uniform_circuit = false;
};

struct ProveResult {
  AssetProofBundle bundle;
  Fq blind_sum;              // sum r_i, for opening C_Assets
  std::uint64_t total = 0;   // sum s_i v_i
  std::vector<double> per_address_seconds;
  double total_seconds = 0;
};

/// Proves every address of the snapshot. Randomness for address i comes from
/// seed.derive("address", i), so the bundle does not depend on the job count.
ProveResult exchange_prove(const CircuitPair& circuits, const ProverKeys& keys, const AnonymitySet& set,
                           const ExchangeSecrets& secrets, const Prf& seed, const ProveOptions& opt = {});

struct VerifyResult {
  bool accept = false;
  std::optional<std::size_t> index;  // first failing entry for check (a)
  std::string check;                 // "a", "c" or "snapshot"
  std::string reason;
};

/// Verifier state with prepared keys, reusable across bundles.
class CustomerVerifier {
 public:
  explicit CustomerVerifier(const VerifierKeys& keys);
  VerifyResult verify(const AnonymitySet& set, const AssetProofBundle& bundle, std::size_t jobs = 1) const;
  /// Check (a) for one entry against either circuit.
  bool verify_entry(const PoaInstance<Curve>& inst, const BundleEntry& entry) const;

 private:
  PreparedVerifyingKey<Curve> full_;
  PreparedVerifyingKey<Curve> commit_;
};

VerifyResult customer_verify(const VerifierKeys& keys, const AnonymitySet& set, const AssetProofBundle& bundle,
                             std::size_t jobs = 1);

/// total G + blind_sum H == C_Assets
bool open_aggregate(const AssetProofBundle& bundle, std::uint64_t total, const Fq& blind_sum);

/// Sum of the commitments (group law, identity for an empty list).
Address sum_commitments(const std::vector<BundleEntry>& entries);

/// Witness-free bundle from the trapdoors: entry i is a simulated full-circuit
/// proof for (y_i, v_i) and a uniformly random commitment. StateError without trapdoors.
AssetProofBundle simulate_bundle(const KeyMaterial& keys, const AnonymitySet& set, const Prf& seed);

/// One-line transport form: "poa-proof-v1 " followed by base64 of the compressed proof.
std::string armor_proof(const Proof<Curve>& proof);
/// ParseError (with offset into the text) on a bad header, bad base64 or an invalid point.
Proof<Curve> dearmor_proof(std::string_view text);

std::vector<std::uint8_t> serialize_opening(const Digest& snapshot_hash, const Fq& blind_sum);
std::pair<Digest, Fq> deserialize_opening(std::span<const std::uint8_t> bytes);

}  // namespace poa
