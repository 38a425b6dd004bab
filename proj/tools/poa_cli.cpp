// poa: trusted setup, snapshot generation, proving, verification, opening and
// benchmarking for the proof-of-assets protocol.
//
// Exit codes: 0 success / Accept, 1 Reject, 2 usage error, 3 I/O or format error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "poa/bench.hpp"
#include "poa/protocol.hpp"
#include "poa/serialize.hpp"

namespace fs = std::filesystem;
using namespace poa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string mode;  // empty: infer from the keys
  std::string profile = "standard";
  std::string seed;
  bool test_mode = false;
  bool force = false;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string out = ".";
  std::string keys = ".";
  std::string snapshot;
  std::string secrets;
  std::string bundle;
  std::string opening;
  // snapshot-gen
  std::size_t n = 0;
  double fraction = 0;
  std::uint64_t max_balance = 2'100'000'000'000'000ULL;
  // prove
  bool uniform_circuit = false;
  // open
  std::optional<std::uint64_t> total;
  // bench
  std::vector<std::size_t> bench_ns{10, 100};
  std::vector<double> bench_fractions{0.25, 0.50, 0.75};
  double bench_min_time = 10.0;
};

std::string in_dir(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

std::string or_default(const std::string& v, const std::string& dir, const std::string& name) {
  return v.empty() ? in_dir(dir, name) : v;
}

CompareMode parse_mode(const std::string& m) {
  if (m == "paper") return CompareMode::kPaper;
  if (m == "hardened") return CompareMode::kHardened;
  throw UsageError("--mode must be 'paper' or 'hardened'");
}

const char* mode_name(CompareMode m) { return m == CompareMode::kPaper ? "paper" : "hardened"; }

void require_seed(const Config& c) {
  if (c.seed.empty()) throw UsageError("--seed is required");
}

/// Builds the circuit pair matching the proving or verifying keys. With --mode
/// given, a mismatch is a CircuitMismatch; otherwise both modes are tried.
CircuitPair circuits_for(const Config& c, const Digest& full_layout) {
  std::vector<CompareMode> modes;
  if (!c.mode.empty()) {
    modes.push_back(parse_mode(c.mode));
  } else {
    modes = {CompareMode::kPaper, CompareMode::kHardened};
  }
  for (auto m : modes) {
    CircuitPair p(m);
    if (p.full.cs().layout_hash() == full_layout) return p;
  }
  throw CircuitMismatch("keys do not match the " + (c.mode.empty() ? std::string("known") : c.mode) +
                        " circuit layout");
}

void print_hash(const char* label, const Digest& d) { std::printf("%-22s %s\n", label, hex_encode(d).c_str()); }

int cmd_setup(const Config& c) {
  require_seed(c);
  const CompareMode mode = parse_mode(c.mode.empty() ? "paper" : c.mode);
  fs::create_directories(c.out);
  const std::string pk_path = in_dir(c.out, "poa.pk"), vk_path = in_dir(c.out, "poa.vk"),
                    td_path = in_dir(c.out, "poa.trapdoor");
  if (!c.force) {
    for (const auto& p : {pk_path, vk_path}) {
      if (fs::exists(p)) throw FileExists(p + " exists (use --force to overwrite)");
    }
    if (c.test_mode && fs::exists(td_path)) throw FileExists(td_path + " exists (use --force to overwrite)");
  }
  const CircuitPair circuits(mode);
  const auto t0 = std::chrono::steady_clock::now();
  const KeyMaterial k = setup_keys(circuits, Prf::from_seed(c.seed), c.test_mode);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_file(pk_path, serialize_prover_keys(k.prover_keys()), c.force);
  write_file(vk_path, serialize_verifier_keys(k.verifier_keys()), c.force);
  if (c.test_mode) {
    write_file(td_path, serialize_trapdoors(k), c.force);
  } else if (c.force && fs::exists(td_path)) {
    fs::remove(td_path);  // a stale trapdoor would belong to the old keys
  }
  std::printf("mode                   %s\n", mode_name(mode));
  std::printf("constraints            %zu (full), %zu (commitment-only)\n", circuits.full.cs().num_constraints(),
              circuits.commit.cs().num_constraints());
  print_hash("full layout", k.full.vk.layout_hash);
  print_hash("commitment layout", k.commit.vk.layout_hash);
  std::printf("setup time             %.3f s\n", secs);
  std::printf("wrote %s, %s%s\n", pk_path.c_str(), vk_path.c_str(), c.test_mode ? (", " + td_path).c_str() : "");
  return kExitOk;
}

int cmd_snapshot_gen(const Config& c) {
  require_seed(c);
  if (!(c.fraction >= 0 && c.fraction <= 1)) throw UsageError("--fraction must lie in [0, 1]");
  if (c.max_balance > kMaxBalance) throw UsageError("--max-balance must not exceed 2^51 - 1");
  fs::create_directories(c.out);
  const auto g = generate_snapshot(c.n, c.fraction, Prf::from_seed(c.seed), c.max_balance);
  // Audit pass: every generated key pair satisfies y = x G.
  const auto& inner = InnerCurve<Curve>::get();
  for (std::size_t i = 0; i < c.n; ++i) {
    if (inner.mul(g.secrets.entries[i].x, inner.G) != g.set.entries[i].y) {
      throw StateError("generated key pair " + std::to_string(i) + " fails y = x G");
    }
  }
  const std::string snap = or_default(c.snapshot, c.out, "snapshot.bin");
  const std::string sec = or_default(c.secrets, c.out, "secrets.bin");
  const std::string txt = fs::path(snap).replace_extension(".txt").string();
  if (!c.force) {
    for (const auto& p : {snap, sec, txt}) {
      if (fs::exists(p)) throw FileExists(p + " exists (use --force to overwrite)");
    }
  }
  write_file(snap, g.set.serialize(), c.force);
  write_text_file(txt, g.set.to_text(), c.force);
  write_file(sec, g.secrets.serialize(), c.force);
  std::printf("addresses              %zu\n", c.n);
  std::printf("owned                  %zu\n", g.secrets.owned_count());
  print_hash("snapshot hash", g.set.hash());
  std::printf("wrote %s, %s, %s\n", snap.c_str(), txt.c_str(), sec.c_str());
  return kExitOk;
}

int cmd_prove(const Config& c) {
  require_seed(c);
  const auto pk = deserialize_prover_keys(read_file(in_dir(c.keys, "poa.pk")));
  const auto set = AnonymitySet::deserialize(read_file(or_default(c.snapshot, c.out, "snapshot.bin")));
  const auto secrets = ExchangeSecrets::deserialize(read_file(or_default(c.secrets, c.out, "secrets.bin")));
  const std::string bundle_path = or_default(c.bundle, c.out, "bundle.bin");
  const std::string opening_path = or_default(c.opening, c.out, "opening.bin");
  if (!c.force) {
    for (const auto& p : {bundle_path, opening_path}) {
      if (fs::exists(p)) throw FileExists(p + " exists (use --force to overwrite)");
    }
  }
  const CircuitPair circuits = circuits_for(c, pk.full.layout_hash);
  const auto res =
      exchange_prove(circuits, pk, set, secrets, Prf::from_seed(c.seed), {c.jobs, c.uniform_circuit});
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::printf("address %6zu  %-5s  %8.4f s\n", i, secrets.entries[i].owned ? "owned" : "-",
                res.per_address_seconds[i]);
  }
  fs::create_directories(c.out);
  write_file(bundle_path, res.bundle.serialize(), c.force);
  write_file(opening_path, serialize_opening(res.bundle.snapshot_hash, res.blind_sum), c.force);
  std::printf("total                  %.3f s for %zu addresses (%zu owned, %zu jobs)\n", res.total_seconds, set.size(),
              secrets.owned_count(), c.jobs);
  std::printf("committed total        %llu\n", static_cast<unsigned long long>(res.total));
  std::printf("bundle                 %s (%zu bytes)\n", bundle_path.c_str(), res.bundle.serialize().size());
  std::printf("opening                %s\n", opening_path.c_str());
  return kExitOk;
}

int cmd_verify(const Config& c) {
  const auto vk = deserialize_verifier_keys(read_file(in_dir(c.keys, "poa.vk")));
  const auto set = AnonymitySet::deserialize(read_file(or_default(c.snapshot, c.out, "snapshot.bin")));
  const auto bundle = AssetProofBundle::deserialize(read_file(or_default(c.bundle, c.out, "bundle.bin")));
  if (bundle.full_layout != vk.full.layout_hash || bundle.commit_layout != vk.commit.layout_hash) {
    throw CircuitMismatch("bundle layout hash does not match the verifying keys");
  }
  if (bundle.entries.size() != set.size()) {
    std::printf("REJECT check=shape: bundle has %zu entries, snapshot has %zu\n", bundle.entries.size(), set.size());
    return kExitReject;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = customer_verify(vk, set, bundle, c.jobs);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.accept) {
    std::printf("ACCEPT %zu proofs, sum check ok (%.3f s)\n", set.size(), secs);
    return kExitOk;
  }
  if (r.index) {
    std::printf("REJECT check=%s index=%zu: %s\n", r.check.c_str(), *r.index, r.reason.c_str());
  } else {
    std::printf("REJECT check=%s: %s\n", r.check.c_str(), r.reason.c_str());
  }
  return kExitReject;
}

int cmd_open(const Config& c) {
  if (!c.total) throw UsageError("--total is required");
  const auto bundle = AssetProofBundle::deserialize(read_file(or_default(c.bundle, c.out, "bundle.bin")));
  const auto [hash, blind] = deserialize_opening(read_file(or_default(c.opening, c.out, "opening.bin")));
  if (hash != bundle.snapshot_hash) throw CircuitMismatch("opening belongs to a different bundle");
  if (open_aggregate(bundle, *c.total, blind)) {
    std::printf("true: C_Assets opens to %llu\n", static_cast<unsigned long long>(*c.total));
    return kExitOk;
  }
  std::printf("false: C_Assets does not open to %llu\n", static_cast<unsigned long long>(*c.total));
  return kExitReject;
}

int cmd_simulate(const Config& c) {
  require_seed(c);
  const std::string td_path = in_dir(c.keys, "poa.trapdoor");
  if (!fs::exists(td_path)) throw UsageError("simulate needs " + td_path + " (run setup --test-mode)");
  auto pk = deserialize_prover_keys(read_file(in_dir(c.keys, "poa.pk")));
  auto vk = deserialize_verifier_keys(read_file(in_dir(c.keys, "poa.vk")));
  const KeyMaterial k = assemble_key_material(std::move(pk), std::move(vk), read_file(td_path));
  const auto set = AnonymitySet::deserialize(read_file(or_default(c.snapshot, c.out, "snapshot.bin")));
  const std::string bundle_path = or_default(c.bundle, c.out, "simulated.bin");
  const std::string armor_path = fs::path(bundle_path).replace_extension(".asc").string();
  if (!c.force) {
    for (const auto& p : {bundle_path, armor_path}) {
      if (fs::exists(p)) throw FileExists(p + " exists (use --force to overwrite)");
    }
  }
  const auto b = simulate_bundle(k, set, Prf::from_seed(c.seed));
  std::string armor;
  for (const auto& e : b.entries) armor += armor_proof(e.proof) + '\n';
  write_file(bundle_path, b.serialize(), c.force);
  write_text_file(armor_path, armor, c.force);
  const auto r = customer_verify(k.verifier_keys(), set, b, c.jobs);
  std::printf("simulated %zu proofs without witnesses\n", set.size());
  std::printf("wrote %s, %s\n", bundle_path.c_str(), armor_path.c_str());
  std::printf("verify: %s\n", r.accept ? "ACCEPT" : ("REJECT " + r.reason).c_str());
  return r.accept ? kExitOk : kExitReject;
}

int cmd_bench(const Config& c) {
  require_seed(c);
  const auto pk = deserialize_prover_keys(read_file(in_dir(c.keys, "poa.pk")));
  const auto vk = deserialize_verifier_keys(read_file(in_dir(c.keys, "poa.vk")));
  const CircuitPair circuits = circuits_for(c, pk.full.layout_hash);
  for (double f : c.bench_fractions) {
    if (!(f >= 0 && f <= 1)) throw UsageError("ownership fractions must lie in [0, 1]");
  }
  BenchConfig cfg;
  cfg.ns = c.bench_ns;
  cfg.fractions = c.bench_fractions;
  cfg.seed = c.seed;
  cfg.jobs = c.jobs;
  cfg.min_seconds = c.bench_min_time;
  const auto rep = run_bench(circuits, pk, vk, cfg);
  std::fputs(rep.to_text().c_str(), stdout);
  fs::create_directories(c.out);
  const std::string jsonl = in_dir(c.out, "bench.jsonl");
  write_text_file(jsonl, rep.to_jsonl(), true);
  std::printf("\nrecords written to %s\n", jsonl.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-knowledge proof of assets for a simulated exchange"};
  app.require_subcommand(1);
  Config c;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--seed", c.seed, "Seed for all randomness");
    s->add_option("--out", c.out, "Output directory (also the default location of inputs)");
    s->add_option("--curve-profile", c.profile, "Curve profile: standard or toy (POA_CURVE_PROFILE overrides)");
  };
  auto add_mode = [&](CLI::App* s) { s->add_option("--mode", c.mode, "Circuit mode: paper or hardened"); };
  auto add_keys = [&](CLI::App* s) { s->add_option("--keys", c.keys, "Directory holding poa.pk / poa.vk"); };
  auto add_jobs = [&](CLI::App* s) { s->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber); };
  auto add_force = [&](CLI::App* s) { s->add_flag("--force", c.force, "Overwrite existing output files"); };
  auto add_snapshot = [&](CLI::App* s) { s->add_option("--snapshot", c.snapshot, "Snapshot file"); };
  auto add_bundle = [&](CLI::App* s) { s->add_option("--bundle", c.bundle, "Bundle file"); };

  auto* setup = app.add_subcommand("setup", "Trusted setup for both circuits");
  add_common(setup);
  add_mode(setup);
  add_force(setup);
  setup->add_flag("--test-mode", c.test_mode, "Also write poa.trapdoor");

  auto* gen = app.add_subcommand("snapshot-gen", "Generate a synthetic anonymity set and exchange secrets");
  add_common(gen);
  add_force(gen);
  add_snapshot(gen);
  gen->add_option("--secrets", c.secrets, "Secrets file");
  gen->add_option("-n,--addresses", c.n, "Number of addresses")->required();
  gen->add_option("--fraction", c.fraction, "Fraction of addresses the exchange owns")->required();
  gen->add_option("--max-balance", c.max_balance, "Largest balance in satoshi");

  auto* prove = app.add_subcommand("prove", "Build the proof bundle (exchange side)");
  add_common(prove);
  add_mode(prove);
  add_keys(prove);
  add_jobs(prove);
  add_force(prove);
  add_snapshot(prove);
  add_bundle(prove);
  prove->add_option("--secrets", c.secrets, "Secrets file");
  prove->add_option("--opening", c.opening, "Where to write the aggregate blinding factor");
  prove->add_flag("--uniform-circuit", c.uniform_circuit, "Use the full circuit for non-owned addresses too");

  auto* verify = app.add_subcommand("verify", "Verify a proof bundle (customer side)");
  add_common(verify);
  add_keys(verify);
  add_jobs(verify);
  add_snapshot(verify);
  add_bundle(verify);

  auto* open = app.add_subcommand("open", "Check a claimed total against C_Assets");
  add_common(open);
  add_bundle(open);
  open->add_option("--opening", c.opening, "Opening file written by prove");
  open->add_option("--total", c.total, "Claimed total in satoshi")->required();

  auto* sim = app.add_subcommand("simulate", "Witness-free bundle from the test-mode trapdoor");
  add_common(sim);
  add_keys(sim);
  add_jobs(sim);
  add_force(sim);
  add_snapshot(sim);
  add_bundle(sim);

  auto* bench = app.add_subcommand("bench", "Single-instance and protocol benchmarks");
  add_common(bench);
  add_mode(bench);
  add_keys(bench);
  add_jobs(bench);
  bench->add_option("--n", c.bench_ns, "Anonymity-set sizes")->delimiter(',');
  bench->add_option("--fractions", c.bench_fractions, "Ownership fractions")->delimiter(',');
  bench->add_option("--min-time", c.bench_min_time, "Seconds to accumulate per scaling measurement")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (const char* env = std::getenv("POA_CURVE_PROFILE"); env && *env) c.profile = env;
    if (c.profile == "toy") {
      throw UsageError("the toy curve profile is for library tests only; its field cannot hold 256-bit keys");
    }
    if (c.profile != "standard") throw UsageError("unknown curve profile '" + c.profile + "'");

    if (setup->parsed()) return cmd_setup(c);
    if (gen->parsed()) return cmd_snapshot_gen(c);
    if (prove->parsed()) return cmd_prove(c);
    if (verify->parsed()) return cmd_verify(c);
    if (open->parsed()) return cmd_open(c);
    if (sim->parsed()) return cmd_simulate(c);
    if (bench->parsed()) return cmd_bench(c);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "format error: %s\n", e.what());
    return kExitIo;
  } catch (const FileExists& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const CircuitMismatch& e) {
    std::fprintf(stderr, "circuit mismatch: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return kExitUsage;
}
