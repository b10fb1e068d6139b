#include <cmath>

#include "doctest.h"
#include "gptcone/cones.hpp"
#include "gptcone/discrimination.hpp"
#include "gptcone/dovm.hpp"
#include "gptcone/random.hpp"
#include "oracles.hpp"

using namespace gptcone;

namespace {

constexpr int kCases = 200;

BipartiteDims random_dims(Rng& rng) {
  const int a = 2 + static_cast<int>(rng() % 2);
  const int b = 2 + static_cast<int>(rng() % 2);
  return BipartiteDims(a, b);
}

}  // namespace

TEST_CASE("positive part is the PSD projection") {
  Rng rng(101);
  for (int k = 0; k < kCases; ++k) {
    const int n = 2 + k % 5;
    const HermMatrix x = random_hermitian(n, rng);
    const HermMatrix p = project_psd(x);
    CHECK(min_eigenvalue(p) >= -1e-12);
    CHECK((project_psd(p) - p).matrix().cwiseAbs().maxCoeff() < 1e-12);
    CHECK((positive_part(x) + negative_part(x) - x).matrix().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(trace_inner(positive_part(x), negative_part(x))) < 1e-10);
    const HermMatrix y = random_density(n, rng);
    CHECK(norm(x - p, NormKind::kHilbertSchmidt) <= norm(x - y, NormKind::kHilbertSchmidt) + 1e-12);
  }
}

TEST_CASE("partial transpose identities") {
  Rng rng(102);
  for (int k = 0; k < kCases; ++k) {
    const BipartiteDims dims = random_dims(rng);
    const HermMatrix x = random_hermitian(dims.total(), rng);
    const HermMatrix y = random_hermitian(dims.total(), rng);
    CHECK((partial_transpose(partial_transpose(x, dims), dims) - x).matrix().cwiseAbs().maxCoeff() < 1e-14);
    CHECK(trace_inner(partial_transpose(x, dims), y) == doctest::Approx(trace_inner(x, partial_transpose(y, dims))).epsilon(1e-10));
    CHECK(partial_transpose(x, dims).trace() == doctest::Approx(x.trace()).epsilon(1e-12));
  }
}

TEST_CASE("Helstrom value is symmetric, bounded and unitarily invariant") {
  Rng rng(103);
  for (int k = 0; k < kCases; ++k) {
    const int n = 2 + k % 4;
    const HermMatrix a = random_density(n, rng, 1 + k % n);
    const HermMatrix b = random_density(n, rng);
    const double h = helstrom(a, b).value;
    CHECK(h >= -1e-12);
    CHECK(h <= 1.0 + 1e-12);
    CHECK(helstrom(b, a).value == doctest::Approx(h).epsilon(1e-10));
    const CMatrix u = haar_unitary(n, rng);
    CHECK(helstrom(conjugate(a, u), conjugate(b, u)).value == doctest::Approx(h).epsilon(1e-9));
  }
}

TEST_CASE("separable samples are never rejected by SEP and block-positive samples never by SEP*") {
  Rng rng(104);
  for (int k = 0; k < 60; ++k) {
    const BipartiteDims dims = random_dims(rng);
    CHECK(sep_membership(random_separable_state(dims, rng), dims).status != Status::kOut);
    const HermMatrix w = random_density(dims.total(), rng) + partial_transpose(random_density(dims.total(), rng), dims);
    CHECK(sep_dual_membership(w, dims).status != Status::kOut);
  }
}

TEST_CASE("Out verdicts carry verified witnesses") {
  Rng rng(105);
  int outs = 0;
  for (int k = 0; k < 60; ++k) {
    const BipartiteDims dims(2, 2);
    const HermMatrix x = random_density(4, rng, 1);
    const MembershipVerdict v = sep_membership(x, dims);
    if (v.status != Status::kOut) continue;
    ++outs;
    REQUIRE(v.witness.has_value());
    CHECK(trace_inner(*v.witness, x) < 0.0);
    CHECK(oracle::product_min_grid(*v.witness, 24) >= -1e-9);
  }
  CHECK(outs > 30);
}

TEST_CASE("sampled DOVM spectra are mirror images") {
  Rng rng(106);
  for (DovmTag tag : {DovmTag::kBQ, DovmTag::kAQ, DovmTag::kNAQ, DovmTag::kPOVM})
    for (int k = 0; k < 10; ++k) {
      const DovmSample s = sample_dovm(tag, BipartiteDims(2, 2), rng);
      REQUIRE(s.dovm.has_value());
      const DovmClass c = classify(*s.dovm);
      CHECK(c.spectra[0].lambda1 == doctest::Approx(1.0 - c.spectra[1].lambda_d).epsilon(1e-10));
      CHECK(c.spectra[1].lambda1 == doctest::Approx(1.0 - c.spectra[0].lambda_d).epsilon(1e-10));
    }
}
