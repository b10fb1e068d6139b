#include <cmath>

#include "doctest.h"
#include "gptcone/appendix.hpp"
#include "gptcone/random.hpp"
#include "gptcone/simulability.hpp"

using namespace gptcone;

namespace {

const BipartiteDims d22(2, 2);

Dovm fixture() { return make_dovm(appendix::e1(), appendix::e2(), d22); }

HermMatrix diag(std::initializer_list<double> v) {
  std::vector<double> e(v);
  return HermMatrix::diagonal(e);
}

}  // namespace

TEST_CASE("domains contain SEP") {
  Rng rng(1);
  const Dovm d = fixture();
  for (int k = 0; k < 50; ++k) CHECK(domain_contains(d, random_separable_state(d22, rng)));
  const BqWitness w = bq_witness_states(d);
  CHECK(domain_contains(d, w.rho1));
  const Spectrum s = eig_ascending(appendix::e1());
  const HermMatrix psi1 = HermMatrix::projector(s.vectors.col(0));
  CHECK(trace_inner(psi1, appendix::e1()) == doctest::Approx(-0.5));
  CHECK_FALSE(domain_contains(d, psi1));
  CHECK_THROWS_AS(domain_contains(d, appendix::e1()), ValidationError);
}

TEST_CASE("n-copy overlaps") {
  const HermMatrix a = appendix::rho1();
  const HermMatrix b = appendix::rho2();
  CHECK(n_copy_overlap(a, b, 3) == doctest::Approx(1.0 / 64.0).epsilon(1e-12));
  CHECK(n_copy_overlap(a, b, 1) == doctest::Approx(trace_inner(a, b)));
  CHECK(n_copy_overlap(appendix::product00(), appendix::product11(), 4) == 0.0);
  for (int n = 1; n <= 3; ++n) CHECK(n_copy_overlap_explicit(a, b, n) == doctest::Approx(n_copy_overlap(a, b, n)).epsilon(1e-12));
  for (int n = 1; n < 5; ++n) CHECK(n_copy_overlap(a, b, n + 1) < n_copy_overlap(a, b, n));
  CHECK_THROWS_AS(n_copy_overlap(a, b, 0), DomainError);
}

TEST_CASE("non-simulability certificates") {
  const SimulabilityCertificate c = non_simulability_certificate(fixture());
  CHECK(c.non_simulable);
  CHECK(c.overlap == doctest::Approx(0.75).epsilon(1e-9));
  REQUIRE(c.witness.has_value());
  CHECK(c.table_deviation <= 1e-9);
  const HermMatrix povm = diag({0.3, 0.7, 0.2, 1.0});
  const SimulabilityCertificate p = non_simulability_certificate(make_dovm(povm, HermMatrix::identity(4) - povm, d22));
  CHECK_FALSE(p.non_simulable);
  CHECK_FALSE(p.witness.has_value());
  const HermMatrix g = partial_transpose(HermMatrix::projector(canonical_max_entangled(2)), d22);
  const HermMatrix aq = 1.2 * g + 0.05 * HermMatrix::identity(4);
  CHECK_FALSE(non_simulability_certificate(make_dovm(aq, HermMatrix::identity(4) - aq, d22)).non_simulable);
}

TEST_CASE("shrunk Bloch example") {
  const Report r = shrunk_bloch_example(0.5);
  for (const Check& c : r.checks()) CHECK_MESSAGE(c.pass, c.name);
  CHECK(r.data()["overlap"].get<double>() == doctest::Approx(0.375).epsilon(1e-12));
  const Report near_q = shrunk_bloch_example(0.999, 100);
  CHECK(near_q.passed());
  CHECK(near_q.data()["overlap"].get<double>() < 1e-3);
  CHECK_THROWS_AS(shrunk_bloch_example(1.0), DomainError);
  CHECK_THROWS_AS(shrunk_bloch_example(0.0), DomainError);
}
