#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "poa/protocol.hpp"

namespace poa {

struct BenchConfig {
  std::vector<std::size_t> ns{10, 100};
  std::vector<double> fractions{0.25, 0.50, 0.75};
  std::string seed = "bench";
  std::size_t jobs = 1;
  /// Scaling rows repeat construction and verification until this much time
  /// has accumulated and report the mean run, so short and long runs average
  /// over comparable stretches of machine speed.
  double min_seconds = 10.0;
  /// The single-instance figures are the fastest of this many runs.
  std::size_t single_repeats = 5;
};

/// One circuit instance, full circuit.
struct SingleInstanceReport {
  std::size_t constraints = 0;
  double prove_seconds = 0;
  double verify_seconds = 0;
  std::size_t proof_bytes = 0;         // compressed A, B, C
  std::size_t record_bytes = 0;        // proof plus uncompressed commitment
  std::size_t proof_bytes_uncompressed = 0;
  std::size_t pk_bytes = 0;
  std::size_t vk_bytes = 0;
};

struct ScalingRecord {
  std::size_t n = 0;
  double fraction = 0;
  std::size_t owned = 0;
  double construct_seconds = 0;  // mean over construct_runs
  double verify_seconds = 0;     // mean over verify_runs
  std::size_t construct_runs = 0;
  std::size_t verify_runs = 0;
  std::size_t bundle_bytes = 0;
};

struct BenchReport {
  SingleInstanceReport single;
  std::vector<ScalingRecord> rows;

  std::string to_text() const;
  /// One JSON object per line.
  std::string to_jsonl() const;
};

BenchReport run_bench(const CircuitPair& circuits, const ProverKeys& pk, const VerifierKeys& vk,
                      const BenchConfig& cfg);

}  // namespace poa
