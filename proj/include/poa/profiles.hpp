#pragma once

#include <cstdint>
#include <string_view>

#include "poa/bigint.hpp"
#include "poa/field.hpp"

namespace poa {

// A pairing profile bundles one BN-family curve with the embedded "inner"
// curve used for keys and commitments:
//   Fq  base field of the pairing curve
//   Fr  its prime group order; the SNARK circuit field and the inner base field
//   inner curve y^2 = x^3 + inner_b over Fr, whose prime order is |Fq|
// so inner-curve scalars live in Fq.
//
// Curve family: p(u) = 36u^4 + 36u^3 + 24u^2 + 6u + 1, r(u) = 36u^4 + 36u^3 + 18u^2 + 6u + 1,
// G1: y^2 = x^3 + b over Fq, G2: the D-type sextic twist y^2 = x^3 + b/xi over Fq2 = Fq[i]/(i^2 + 1),
// xi = xi_c0 + i.

/// alt_bn128 / BN254 (~100-128 bit security), paired with the Grumpkin-style
/// embedded curve y^2 = x^3 - 17.
struct Bn254 {
  static constexpr std::string_view kName = "standard";

  struct FqParams {
    static constexpr std::string_view name = "bn254.fq";
    static constexpr U256 modulus =
        U256::parse("21888242871839275222246405745257275088696311157297823662689037894645226208583");
  };
  struct FrParams {
    static constexpr std::string_view name = "bn254.fr";
    static constexpr U256 modulus =
        U256::parse("21888242871839275222246405745257275088548364400416034343698204186575808495617");
  };
  using Fq = Fp<FqParams>;
  using Fr = Fp<FrParams>;

  static constexpr std::uint64_t kU = 4965661367192848881ULL;
  static constexpr std::uint64_t kB = 3;
  static constexpr std::uint64_t kXiC0 = 9;

  static constexpr std::string_view kG1X = "1";
  static constexpr std::string_view kG1Y = "2";
  static constexpr std::string_view kG2X0 =
      "10857046999023057135944570762232829481370756359578518086990519993285655852781";
  static constexpr std::string_view kG2X1 =
      "11559732032986387107991004021392285783925812861821192530917403151452391805634";
  static constexpr std::string_view kG2Y0 =
      "8495653923123431417604973247489272438418190587263600148770280649306958101930";
  static constexpr std::string_view kG2Y1 =
      "4082367875863433681332203403145435568316851327593401208105741076214120093531";

  // Inner curve: a = 0, b = -17 over Fr.
  static constexpr std::uint64_t kInnerBNeg = 17;
  static constexpr std::string_view kInnerGX = "1";
  static constexpr std::string_view kInnerGY = "17631683881184975370165255887551781615748388533673675138860";

  // Discrete logs are infeasible; trapdoor oracles fall back to folded pairings.
  static constexpr bool kSmallGroups = false;
};

/// Tiny BN-family profile (u = 1): p = 103, r = 97, inner curve of order 103
/// over F_97. Every group is small enough to enumerate.
struct ToyBn {
  static constexpr std::string_view kName = "toy";

  struct FqParams {
    static constexpr std::string_view name = "toy.fq103";
    static constexpr U256 modulus = U256(103);
  };
  struct FrParams {
    static constexpr std::string_view name = "toy.fr97";
    static constexpr U256 modulus = U256(97);
  };
  using Fq = Fp<FqParams>;
  using Fr = Fp<FrParams>;

  static constexpr std::uint64_t kU = 1;
  static constexpr std::uint64_t kB = 5;
  static constexpr std::uint64_t kXiC0 = 2;

  static constexpr std::string_view kG1X = "2";
  static constexpr std::string_view kG1Y = "42";
  static constexpr std::string_view kG2X0 = "86";
  static constexpr std::string_view kG2X1 = "29";
  static constexpr std::string_view kG2Y0 = "88";
  static constexpr std::string_view kG2Y1 = "47";

  static constexpr std::uint64_t kInnerBNeg = 87;  // b = 10 = -87 mod 97
  static constexpr std::string_view kInnerGX = "1";
  static constexpr std::string_view kInnerGY = "37";

  static constexpr bool kSmallGroups = true;
};

}  // namespace poa
