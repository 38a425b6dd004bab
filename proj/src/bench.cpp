#include "poa/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace poa {

namespace {

using Clock = std::chrono::steady_clock;

template <class Fn>
double time_of(Fn&& fn) {
  const auto t0 = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Mean time of fn over as many runs as fit in min_seconds (at least one).
template <class Fn>
std::pair<double, std::size_t> mean_time(double min_seconds, Fn&& fn) {
  double total = 0;
  std::size_t runs = 0;
  do {
    total += time_of(fn);
    ++runs;
  } while (total < min_seconds);
  return {total / static_cast<double>(runs), runs};
}

std::string format(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

}  // namespace

BenchReport run_bench(const CircuitPair& circuits, const ProverKeys& pk, const VerifierKeys& vk,
                      const BenchConfig& cfg) {
  const Prf root = Prf::from_seed(cfg.seed);
  const CustomerVerifier verifier(vk);
  BenchReport rep;

  {
    auto& s = rep.single;
    s.constraints = circuits.full.cs().num_constraints();
    s.proof_bytes = Proof<Curve>::kCompressedSize;
    s.proof_bytes_uncompressed = Proof<Curve>::kUncompressedSize;
    s.record_bytes = AssetProofBundle::kEntrySize;
    s.pk_bytes = serialize_prover_keys(pk).size();
    s.vk_bytes = serialize_verifier_keys(vk).size();

    const auto snap = generate_snapshot(1, 1.0, root.derive("single"));
    const Prover<Curve> prover(pk.full);
    PoaWitness<Curve> w{snap.secrets.entries[0].x, true, Fq::one()};
    s.prove_seconds = s.verify_seconds = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < cfg.single_repeats; ++k) {
      RandomStream rng = root.derive("single-prove", k).stream();
      w.r = rng.next_nonzero<Fq>();
      Proof<Curve> proof;
      BundleEntry entry;
      s.prove_seconds = std::min(s.prove_seconds, time_of([&] {
        const auto t = circuits.full.generate_witness(snap.set.entries[0], w);
        proof = prover.prove(t, rng);
      }));
      entry = {proof, pedersen_commit<Curve>(Fq(snap.set.entries[0].v), w.r)};
      bool ok = false;
      s.verify_seconds = std::min(s.verify_seconds, time_of([&] { ok = verifier.verify_entry(snap.set.entries[0], entry); }));
      if (!ok) throw StateError("bench: single-instance proof failed to verify");
    }
  }

  for (std::size_t n : cfg.ns) {
    for (double f : cfg.fractions) {
      const Prf seed = root.derive("scaling:" + std::to_string(n) + ":" + format("%.4f", f));
      const auto snap = generate_snapshot(n, f, seed);
      ScalingRecord r;
      r.n = n;
      r.fraction = f;
      r.owned = snap.secrets.owned_count();
      ProveResult res;
      std::tie(r.construct_seconds, r.construct_runs) = mean_time(cfg.min_seconds, [&] {
        res = exchange_prove(circuits, pk, snap.set, snap.secrets, seed.derive("prove"), {cfg.jobs, false});
      });
      r.bundle_bytes = res.bundle.serialize().size();
      bool ok = true;
      std::tie(r.verify_seconds, r.verify_runs) = mean_time(cfg.min_seconds, [&] {
        ok = ok && verifier.verify(snap.set, res.bundle, cfg.jobs).accept;
      });
      if (!ok) throw StateError("bench: honest bundle rejected");
      rep.rows.push_back(r);
    }
  }
  return rep;
}

std::string BenchReport::to_text() const {
  std::ostringstream out;
  const auto& s = single;
  out << "single C_PoA instance\n";
  out << format("  %-34s %zu\n", "constraints", s.constraints);
  out << format("  %-34s %.4f s\n", "proof construction time", s.prove_seconds);
  out << format("  %-34s %.4f s\n", "verification time", s.verify_seconds);
  out << format("  %-34s %zu bytes\n", "proof size (compressed)", s.proof_bytes);
  out << format("  %-34s %zu bytes\n", "proof + commitment", s.record_bytes);
  out << format("  %-34s %zu bytes\n", "proof size (uncompressed)", s.proof_bytes_uncompressed);
  out << format("  %-34s %zu bytes\n", "proving keys", s.pk_bytes);
  out << format("  %-34s %zu bytes\n", "verifying keys", s.vk_bytes);
  out << "\nprotocol\n";
  out << format("  %8s %8s %8s %14s %6s %14s %6s %14s\n", "n", "own %", "owned", "construct s", "runs", "verify s",
                "runs", "bundle bytes");
  for (const auto& r : rows) {
    out << format("  %8zu %8.0f %8zu %14.3f %6zu %14.4f %6zu %14zu\n", r.n, r.fraction * 100, r.owned,
                  r.construct_seconds, r.construct_runs, r.verify_seconds, r.verify_runs, r.bundle_bytes);
  }
  return out.str();
}

std::string BenchReport::to_jsonl() const {
  std::ostringstream out;
  const auto& s = single;
  out << nlohmann::json{{"kind", "single"},
                        {"constraints", s.constraints},
                        {"prove_s", s.prove_seconds},
                        {"verify_s", s.verify_seconds},
                        {"proof_bytes", s.proof_bytes},
                        {"record_bytes", s.record_bytes},
                        {"proof_bytes_uncompressed", s.proof_bytes_uncompressed},
                        {"pk_bytes", s.pk_bytes},
                        {"vk_bytes", s.vk_bytes}}
             .dump()
      << '\n';
  for (const auto& r : rows) {
    out << nlohmann::json{{"kind", "protocol"},
                          {"n", r.n},
                          {"owned_fraction", r.fraction},
                          {"owned", r.owned},
                          {"construct_s", r.construct_seconds},
                          {"construct_runs", r.construct_runs},
                          {"verify_s", r.verify_seconds},
                          {"verify_runs", r.verify_runs},
                          {"bundle_bytes", r.bundle_bytes}}
               .dump()
        << '\n';
  }
  return out.str();
}

}  // namespace poa
