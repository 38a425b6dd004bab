#include <cstdint>

#include "doctest.h"
#include "oracles.hpp"
#include "poa/field.hpp"
#include "poa/prf.hpp"
#include "poa/profiles.hpp"
#include "poa/tower.hpp"

using namespace poa;

namespace {

template <class F>
void exhaustive_small_field() {
  const auto p = static_cast<std::int64_t>(F::kModulus.limbs[0]);
  for (std::int64_t a = 0; a < p; ++a) {
    const F fa(static_cast<std::uint64_t>(a));
    REQUIRE(fa.to_u256() == U256(static_cast<std::uint64_t>(a)));
    for (std::int64_t b = 0; b < p; ++b) {
      const F fb(static_cast<std::uint64_t>(b));
      CHECK((fa + fb).to_u256().limbs[0] == static_cast<std::uint64_t>((a + b) % p));
      CHECK((fa - fb).to_u256().limbs[0] == static_cast<std::uint64_t>(oracle::mod(a - b, p)));
      CHECK((fa * fb).to_u256().limbs[0] == static_cast<std::uint64_t>(a * b % p));
    }
    if (a != 0) {
      CHECK(fa.inverse().to_u256().limbs[0] == static_cast<std::uint64_t>(*oracle::inverse_small(a, p)));
    }
  }
}

template <class F>
F random_element(RandomStream& rng) {
  return rng.next_field<F>();
}

template <class F>
void random_large_field(const char* seed) {
  RandomStream rng = Prf::from_seed(seed).stream();
  const U256 m = F::kModulus;
  for (int i = 0; i < 300; ++i) {
    const F a = random_element<F>(rng);
    const F b = random_element<F>(rng);
    const U256 ia = a.to_u256(), ib = b.to_u256();
    REQUIRE(ia < m);
    CHECK((a * b).to_u256() == oracle::mul_mod(ia, ib, m));
    CHECK((a + b).to_u256() == oracle::add_mod(ia, ib, m));
    CHECK((a - b).to_u256() == oracle::sub_mod(ia, ib, m));
    if (!a.is_zero()) {
      CHECK(a.inverse().to_u256() == oracle::pow_mod(ia, m - U256(2), m));
      CHECK((a * a.inverse()).is_one());
    }
    // Euler's criterion.
    const U256 euler = oracle::pow_mod(ia, m >> 1, m);
    CHECK((a.legendre() == 1) == (euler == U256(1)));
  }
}

}  // namespace

TEST_CASE("toy fields agree with integer arithmetic on every pair") {
  exhaustive_small_field<ToyBn::Fq>();
  exhaustive_small_field<ToyBn::Fr>();
}

TEST_CASE("bn254 fields agree with double-and-add modular arithmetic") {
  random_large_field<Bn254::Fq>("field-fq");
  random_large_field<Bn254::Fr>("field-fr");
}

TEST_CASE("wide reduction matches the integer definition") {
  RandomStream rng = Prf::from_seed("wide").stream();
  using F = Bn254::Fr;
  const U256 m = F::kModulus;
  for (int i = 0; i < 50; ++i) {
    std::array<std::uint8_t, 64> bytes{};
    rng.fill(bytes);
    U256 hi, lo;
    for (int k = 0; k < 32; ++k) {
      hi = (hi << 8) + U256(bytes[k]);
      lo = (lo << 8) + U256(bytes[32 + k]);
    }
    const U256 two256 = oracle::mul_mod(oracle::pow_mod(U256(2), U256(128), m), oracle::pow_mod(U256(2), U256(128), m), m);
    U256 hi_r = hi;
    while (hi_r >= m) hi_r = hi_r - m;
    U256 lo_r = lo;
    while (lo_r >= m) lo_r = lo_r - m;
    const U256 expect = oracle::add_mod(oracle::mul_mod(hi_r, two256, m), lo_r, m);
    CHECK(F::from_wide_bytes(bytes).to_u256() == expect);
  }
}

TEST_CASE("square roots") {
  RandomStream rng = Prf::from_seed("sqrt").stream();
  for (int i = 0; i < 50; ++i) {
    const auto a = rng.next_field<Bn254::Fr>();
    const auto s = a.square().sqrt();
    REQUIRE(s.has_value());
    CHECK(s->square() == a.square());
  }
  const auto nr = Bn254::Fr::nonresidue();
  CHECK(nr.legendre() == -1);
  CHECK_FALSE(nr.sqrt().has_value());
  // Toy field: every residue has a root.
  for (std::uint64_t v = 0; v < 97; ++v) {
    const ToyBn::Fr a(v);
    auto s = a.sqrt();
    CHECK(s.has_value() == (a.legendre() >= 0));
    if (s) CHECK(s->square() == a);
  }
}

TEST_CASE("roots of unity") {
  using F = Bn254::Fr;
  CHECK(F::two_adicity() == 28);
  for (std::size_t k : {1u, 5u, 11u, 28u}) {
    const F w = F::root_of_unity(k);
    U256 n = U256(1) << static_cast<unsigned>(k);
    CHECK(w.pow(n).is_one());
    CHECK_FALSE(w.pow(n >> 1).is_one());
  }
  CHECK_THROWS_AS(F::root_of_unity(29), DomainError);
  CHECK(ToyBn::Fr::two_adicity() == 5);
}

TEST_CASE("errors and encodings") {
  using F = Bn254::Fq;
  CHECK_THROWS_AS(F::zero().inverse(), DivisionByZero);
  CHECK_THROWS_AS(F::from_canonical(F::kModulus), DomainError);
  const F a = F::from_u256(U256::parse("123456789012345678901234567890"));
  CHECK(F::from_bytes(a.to_bytes()) == a);
  std::array<std::uint8_t, 32> all_ones{};
  all_ones.fill(0xff);
  CHECK_FALSE(F::from_bytes(all_ones).has_value());
  CHECK(F::from_u256(F::kModulus + U256(5)) == F(5));
}

TEST_CASE("quadratic extension against its definition") {
  using F2 = Fq2<Bn254>;
  using F = Bn254::Fq;
  RandomStream rng = Prf::from_seed("fq2").stream();
  for (int i = 0; i < 30; ++i) {
    const F2 a{rng.next_field<F>(), rng.next_field<F>()};
    const F2 b{rng.next_field<F>(), rng.next_field<F>()};
    // (a0 + a1 i)(b0 + b1 i) with i^2 = -1
    const F2 prod{a.c0 * b.c0 - a.c1 * b.c1, a.c0 * b.c1 + a.c1 * b.c0};
    CHECK(a * b == prod);
    CHECK(a.square() == a * a);
    CHECK((a * a.inverse()).is_one());
    CHECK(a.mul_by_xi() == a * F2{F(9), F::one()});
    const auto r = a.square().sqrt();
    REQUIRE(r.has_value());
    CHECK(r->square() == a.square());
  }
}

TEST_CASE("degree-12 tower: inverse and Frobenius") {
  using F12 = Fq12<Bn254>;
  using F = Bn254::Fq;
  RandomStream rng = Prf::from_seed("fq12").stream();
  F12 a = F12::one();
  // Build a generic element through products of sparse lines.
  for (int k = 0; k < 3; ++k) {
    a = a.mul_by_line(rng.next_field<F>(), Fq2<Bn254>{rng.next_field<F>(), rng.next_field<F>()},
                      Fq2<Bn254>{rng.next_field<F>(), rng.next_field<F>()});
  }
  CHECK((a * a.inverse()) == F12::one());
  CHECK(a.square() == a * a);
  // Frobenius is the p-th power map.
  CHECK(a.frobenius() == a.pow(F::kModulus));
}
