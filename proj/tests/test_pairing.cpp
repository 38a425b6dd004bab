#include "doctest.h"
#include "poa/pairing.hpp"
#include "poa/prf.hpp"
#include "poa/profiles.hpp"

using namespace poa;

TEST_CASE_TEMPLATE("bilinearity and non-degeneracy", P, Bn254, ToyBn) {
  using Fr = typename P::Fr;
  RandomStream rng = Prf::from_seed("pairing").stream();
  const auto g1 = G1<P>::generator();
  const auto g2 = G2<P>::generator();
  const GT<P> e = pairing<P>(g1.to_affine(), g2.to_affine());
  CHECK_FALSE(e == GT<P>::one());
  CHECK(e.pow(Fr::kModulus) == GT<P>::one());

  for (int i = 0; i < 3; ++i) {
    const Fr a = rng.template next_nonzero<Fr>();
    const Fr b = rng.template next_nonzero<Fr>();
    const auto lhs = pairing<P>((a * g1).to_affine(), (b * g2).to_affine());
    CHECK(lhs == e.pow((a * b).to_u256()));
    CHECK(lhs == pairing<P>((b * g1).to_affine(), (a * g2).to_affine()));
    // Additivity in each argument.
    CHECK(pairing<P>((a * g1 + b * g1).to_affine(), g2.to_affine()) ==
          pairing<P>((a * g1).to_affine(), g2.to_affine()) * pairing<P>((b * g1).to_affine(), g2.to_affine()));
  }
  CHECK(pairing<P>(G1Affine<P>::identity(), g2.to_affine()) == GT<P>::one());
  CHECK(pairing<P>(g1.to_affine(), G2Affine<P>::identity()) == GT<P>::one());
}

TEST_CASE("multi-Miller loop equals the product of pairings") {
  using P = Bn254;
  using Fr = P::Fr;
  RandomStream rng = Prf::from_seed("multi").stream();
  const auto g1 = G1<P>::generator();
  const auto g2 = G2<P>::generator();
  const Fr a = rng.next_field<Fr>(), b = rng.next_field<Fr>(), c = rng.next_field<Fr>();
  const G2Prepared<P> q1((b * g2).to_affine()), q2(g2.to_affine());
  // e(aG, bH) e(-(ab)G, H) = 1
  const std::array<std::pair<G1Affine<P>, const G2Prepared<P>*>, 2> pairs{
      {{(a * g1).to_affine(), &q1}, {(-((a * b) * g1)).to_affine(), &q2}}};
  CHECK(final_exponentiation<P>(miller_loop<P>(pairs)) == GT<P>::one());
  const std::array<std::pair<G1Affine<P>, const G2Prepared<P>*>, 2> off{
      {{(a * g1).to_affine(), &q1}, {(-(c * g1)).to_affine(), &q2}}};
  CHECK_FALSE(final_exponentiation<P>(miller_loop<P>(off)) == GT<P>::one());
}
