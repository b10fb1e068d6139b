#include <cmath>

#include "doctest.h"
#include "gptcone/appendix.hpp"
#include "gptcone/random.hpp"
#include "gptcone/symmetry.hpp"
#include "oracles.hpp"

using namespace gptcone;

namespace {

const BipartiteDims d22(2, 2);

HermMatrix bell() { return HermMatrix::projector(canonical_max_entangled(2)); }

}  // namespace

TEST_CASE("transform specs") {
  Rng rng(1);
  CHECK_THROWS_AS(TransformSpec::global(2.0 * CMatrix::Identity(4, 4), d22), ValidationError);
  const HermMatrix a = random_density(2, rng);
  const HermMatrix b = random_density(3, rng);
  const BipartiteDims d23(2, 3);
  const TransformSpec t = TransformSpec::local(haar_unitary(2, rng), haar_unitary(3, rng), d23, true, false, true);
  CHECK(t.kind == TransformKind::kLocalWithTranspose);
  CHECK(t.output_dims() == BipartiteDims(3, 2));
  const ProductTerm img = t.apply(ProductTerm(a, b));
  CHECK((tensor(img.first, img.second) - t.apply(tensor(a, b))).matrix().cwiseAbs().maxCoeff() < 1e-13);
  const HermMatrix x = random_hermitian(6, rng);
  const HermMatrix sx = swap_factors(x, d23);
  CHECK((swap_factors(sx, BipartiteDims(3, 2)) - x).matrix().cwiseAbs().maxCoeff() == 0.0);
  CHECK(oracle::max_diff(oracle::kron(oracle::from(b), oracle::from(a)), swap_factors(tensor(a, b), d23)) < 1e-15);
}

TEST_CASE("orbit invariance") {
  CHECK(orbit_invariance_check(ConeRep::named(ConeTag::kPsd, d22), SymmetryGroup::kGU, 30, 1).passed());
  CHECK(orbit_invariance_check(ConeRep::named(ConeTag::kPsd, d22), SymmetryGroup::kLU, 30, 2).passed());
  CHECK(orbit_invariance_check(ConeRep::named(ConeTag::kSep, d22), SymmetryGroup::kLU, 30, 3).passed());
  const Report aug = orbit_invariance_check(ConeRep::augmented(ConeTag::kSep, d22, {bell()}), SymmetryGroup::kGU, 10, 4);
  CHECK_FALSE(aug.passed());
  REQUIRE(aug.data().contains("falsification"));
}

TEST_CASE("GU falsifier") {
  const GuWitness w = gu_falsifier(partial_transpose(bell(), d22), d22);
  CHECK(w.value == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(w.product_min < 0.0);
  CHECK((w.g.adjoint() * w.g - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(std::abs((w.g * w.negative_vector)(0)) - 1.0) < 1e-12);
  CHECK(oracle::product_min_grid(w.gx) < -0.4);
  const GuWitness n = gu_falsifier(npm_element(0.1, generalized_bell(2)), d22);
  CHECK(n.value == doctest::Approx(-0.1).epsilon(1e-9));
  CHECK_THROWS_AS(gu_falsifier(bell(), d22), DomainError);
}

TEST_CASE("two-symmetry counterexample") {
  const Report r = two_symmetry_counterexample();
  for (const Check& c : r.checks()) CHECK_MESSAGE(c.pass, c.name);
  CHECK(r.data()["rho_overlap"].get<double>() == doctest::Approx(0.25));
  CHECK(r.data()["sigma_overlap"].get<double>() == doctest::Approx(0.0));
}
