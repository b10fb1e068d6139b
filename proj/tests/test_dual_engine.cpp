#include <cmath>

#include "doctest.h"
#include "gptcone/cones.hpp"
#include "gptcone/dual_engine.hpp"
#include "gptcone/meop.hpp"
#include "gptcone/random.hpp"

using namespace gptcone;

namespace {

HermMatrix diag(std::initializer_list<double> v) {
  std::vector<double> e(v);
  return HermMatrix::diagonal(e);
}

}  // namespace

TEST_CASE("dual_membership") {
  Rng rng(1);
  std::vector<HermMatrix> g;
  for (int k = 0; k < 4; ++k) g.push_back(random_density(3, rng));
  HermMatrix sum = HermMatrix::zero(3);
  for (const HermMatrix& x : g) sum += x;
  CHECK(dual_membership(g, sum).status == Status::kIn);
  const MembershipVerdict v = dual_membership(g, -g[0]);
  CHECK(v.status == Status::kOut);
  REQUIRE(v.witness.has_value());
  CHECK(trace_inner(*v.witness, -g[0]) < 0.0);

  std::vector<HermMatrix> products;
  for (int k = 0; k < 2000; ++k) products.push_back(random_product_pure_state(BipartiteDims(2, 2), rng));
  for (double r : {0.1, 0.5}) {
    const MembershipVerdict n = dual_membership(products, npm_element(r, generalized_bell(2)));
    CHECK(n.status == Status::kIn);
  }
}

TEST_CASE("Gram pre-duality check") {
  Rng rng(2);
  std::vector<HermMatrix> rank1;
  for (int k = 0; k < 10; ++k) rank1.push_back(random_pure_state(4, rng));
  CHECK(gram_predual_check(rank1).verdict);

  const auto fam = p0_families(generalized_bell(2));
  const PsesParams ok = make_pses_params(fam, 0.1);
  std::vector<HermMatrix> gens = npm_endpoints(ok);
  for (int k = 0; k < 10; ++k) gens.push_back(random_product_pure_state(BipartiteDims(2, 2), rng));
  CHECK(gram_predual_check(gens).verdict);

  const GramCheck bad = gram_predual_check(npm_endpoints(make_pses_params(fam, 1.0)));
  CHECK_FALSE(bad.verdict);
  CHECK(bad.value == doctest::Approx(-2.0 * 1.5 * 1.5 + 1.0));
  CHECK(bad.i != bad.j);
}

TEST_CASE("conic feasibility") {
  Rng rng(3);
  const HermMatrix rho = random_density(4, rng);
  const ConicResult psd = conic_feasibility(rho, {}, true);
  CHECK(psd.feasible);
  CHECK(psd.certificate.residual <= 1e-10);

  const ConicResult neg = conic_feasibility(-HermMatrix::identity(4), {}, true);
  CHECK_FALSE(neg.feasible);
  CHECK(neg.bound >= 2.0 - 1e-9);
  REQUIRE(neg.witness.has_value());

  // planted: x = sigma + mu N(0.05) with sigma supported away from the first two family vectors
  const MeopFamily fam = generalized_bell(2);
  const HermMatrix n = npm_element(0.05, fam);
  const double mu = 0.7;
  const HermMatrix sigma = 0.3 * fam.projectors[2] + 0.5 * fam.projectors[3];
  const ConicResult planted = conic_feasibility(sigma + mu * n, {n}, true);
  REQUIRE(planted.feasible);
  CHECK(std::abs(planted.certificate.coefficients[0] - mu) <= 1e-6);

  const ConicResult gen = conic_feasibility(diag({1, 2}), {diag({1, 0}), diag({0, 1})}, false);
  CHECK(gen.feasible);
  const ConicResult out = conic_feasibility(diag({1, -2}), {diag({1, 0}), diag({0, 1})}, false);
  CHECK_FALSE(out.feasible);
  REQUIRE(out.witness.has_value());
  CHECK(trace_inner(*out.witness, diag({1, -2})) < 0.0);
}

TEST_CASE("min over spectrahedron") {
  CHECK(min_over_spectrahedron(diag({2, 1}), {}).value == doctest::Approx(1.0));
  CHECK(min_over_spectrahedron(diag({1, -1}), {}).value == doctest::Approx(-1.0));
  // y = diag(p, 1 - p) with 3p - (1 - p) >= 0: minimum 2p - 1 at p = 1/4.
  const SpectrahedronMin h = min_over_spectrahedron(diag({1, -1}), {diag({3, -1})});
  CHECK(h.feasible);
  CHECK(h.value == doctest::Approx(-0.5).epsilon(1e-3));
  CHECK(h.value >= -0.5 - 1e-9);
}

TEST_CASE("duality identity (C1 + C2)* = C1* n C2*") {
  const std::vector<HermMatrix> g1{diag({1, 0, 0, 0}), diag({0, 1, 0, 0})};
  const std::vector<HermMatrix> g2{diag({0, 0, 1, 0}), diag({0, 0, 0, 1})};
  Rng rng(4);
  std::vector<HermMatrix> xs;
  for (int k = 0; k < 200; ++k) xs.push_back(random_hermitian(4, rng));
  CHECK(dual_identity_check(g1, g2, xs).disagreements == 0);
  CHECK(dual_identity_check(g1, g1, xs).disagreements == 0);
  std::vector<HermMatrix> r1;
  std::vector<HermMatrix> r2;
  for (int k = 0; k < 3; ++k) {
    r1.push_back(random_pure_state(4, rng));
    r2.push_back(random_pure_state(4, rng));
  }
  std::vector<HermMatrix> many;
  for (int k = 0; k < 1000; ++k) many.push_back(random_hermitian(4, rng) + 0.8 * HermMatrix::identity(4));
  const DualIdentityResult d = dual_identity_check(r1, r2, many);
  CHECK(d.samples == 1000);
  CHECK(d.disagreements == 0);
}
