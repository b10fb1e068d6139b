#include <cmath>

#include "doctest.h"
#include "gptcone/appendix.hpp"
#include "gptcone/cones.hpp"
#include "gptcone/dovm.hpp"
#include "gptcone/random.hpp"
#include "oracles.hpp"

using namespace gptcone;

namespace {

const BipartiteDims d22(2, 2);

HermMatrix bell() { return HermMatrix::projector(canonical_max_entangled(2)); }

HermMatrix diag(std::initializer_list<double> v) {
  std::vector<double> e(v);
  return HermMatrix::diagonal(e);
}

}  // namespace

TEST_CASE("named cones on the Bell projector") {
  CHECK(membership(ConeRep::named(ConeTag::kPsd, d22), bell()).status == Status::kIn);
  const MembershipVerdict v = membership(ConeRep::named(ConeTag::kSep, d22), bell());
  REQUIRE(v.status == Status::kOut);
  REQUIRE(v.witness.has_value());
  CHECK(trace_inner(*v.witness, bell()) < 0.0);
  CHECK(oracle::product_min_grid(*v.witness) >= -1e-9);
}

TEST_CASE("PSD oracle witness") {
  const MembershipVerdict v = psd_membership(diag({1, -1e-3}));
  REQUIRE(v.status == Status::kOut);
  CHECK((*v.witness - diag({0, 1})).matrix().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("SEP tiers") {
  Rng rng(1);
  for (int k = 0; k < 10; ++k) {
    std::vector<ProductTerm> terms;
    HermMatrix x = HermMatrix::zero(6);
    for (int t = 0; t < 8; ++t) {
      terms.emplace_back(random_pure_state(2, rng), random_pure_state(3, rng));
      x += tensor(terms.back().first, terms.back().second);
    }
    const MembershipVerdict v = sep_membership(x, BipartiteDims(2, 3), kDefaultTol, {}, &terms);
    CHECK(v.status == Status::kIn);
    CHECK(v.tier == "product-decomposition");
  }
  const MembershipVerdict g = sep_membership(HermMatrix::identity(4) / 4.0 + 0.05 * partial_transpose(bell(), d22), d22);
  CHECK(g.status == Status::kIn);
  CHECK(gurvits_ball(HermMatrix::identity(4)));
  CHECK_FALSE(gurvits_ball(3.0 * HermMatrix::identity(4)));
  CHECK(gurvits_distance(3.0 * HermMatrix::identity(4)) == doctest::Approx(4.0));
  CHECK(sep_membership(-HermMatrix::identity(4), d22).status == Status::kOut);
  SepOptions exact;
  exact.low_dim_exact = true;
  const HermMatrix werner = 0.3 * bell() + 0.7 * HermMatrix::identity(4) / 4.0;
  CHECK(sep_membership(werner, d22, kDefaultTol, exact).status == Status::kIn);
}

TEST_CASE("SEP dual oracle against the product grid") {
  CHECK(sep_dual_membership(appendix::e1(), d22).status == Status::kIn);
  CHECK(sep_dual_membership(appendix::e2(), d22).status == Status::kIn);
  CHECK(oracle::product_min_grid(appendix::e1()) >= -1e-9);
  Rng rng(2);
  int decided = 0;
  for (int k = 0; k < 30; ++k) {
    const HermMatrix x = random_hermitian(4, rng) + 1.2 * HermMatrix::identity(4);
    const MembershipVerdict s = sep_dual_membership(x, d22);
    const double gm = oracle::product_min_grid(x, 32);
    if (s.status == Status::kUnknown) continue;
    ++decided;
    if (s.status == Status::kIn) CHECK(gm >= -1e-9);
    if (s.status == Status::kOut) {
      CHECK(trace_inner(*s.witness, x) < 0.0);
      CHECK(gm <= s.margin + 0.05);
    }
  }
  CHECK(decided >= 25);
}

TEST_CASE("shrunk Bloch and CS_NEG cones") {
  const ConeRep cp = ConeRep::named(ConeTag::kShrunkBloch, BipartiteDims(1, 2), 0.5);
  CHECK(membership(cp, 0.5 * diag({1, 0}) + 0.25 * HermMatrix::identity(2)).status == Status::kIn);
  CHECK(membership(cp, diag({1, 0})).status == Status::kOut);
  CHECK_THROWS_AS(ConeRep::named(ConeTag::kShrunkBloch, BipartiteDims(1, 2), 1.0), DomainError);
  Rng rng(3);
  const ConeRep cs0 = ConeRep::named(ConeTag::kCsNeg, d22, 0.0);
  for (int k = 0; k < 10; ++k) CHECK(membership(cs0, random_density(4, rng)).status == Status::kIn);
}

TEST_CASE("validate_measurement") {
  const GptModel sep(ConeRep::named(ConeTag::kSep, d22), HermMatrix::identity(4));
  CHECK(validate_measurement(sep, {HermMatrix::identity(4)}).sum_defect == 0.0);
  const Measurement m = validate_measurement(sep, {appendix::e1(), appendix::e2()});
  CHECK(m.verdicts[0].status == Status::kIn);
  try {
    validate_measurement(sep, {2.0 * HermMatrix::identity(4), -HermMatrix::identity(4)});
    FAIL("expected InvalidMeasurement");
  } catch (const InvalidMeasurement& e) {
    CHECK(e.index == 1);
    CHECK(e.status == Status::kOut);
  }
  CHECK_THROWS_AS(validate_measurement(sep, {appendix::e1()}), InvalidMeasurement);
  const GptModel psd(ConeRep::named(ConeTag::kPsd, d22), HermMatrix::identity(4));
  CHECK_THROWS_AS(validate_measurement(psd, {appendix::e1(), appendix::e2()}), InvalidMeasurement);
}

TEST_CASE("capacity demonstrations") {
  for (const BipartiteDims dims : {BipartiteDims(2, 2), BipartiteDims(2, 3)}) {
    const GptModel model(ConeRep::named(ConeTag::kSep, dims), HermMatrix::identity(dims.total()));
    const CapacityDemo c = capacity_demo(model);
    CHECK(c.states.size() == static_cast<std::size_t>(dims.total()));
    CHECK(c.deviation <= 1e-12);
  }
}

TEST_CASE("cone JSON round trip") {
  const ConeRep c = ConeRep::augmented(ConeTag::kSep, d22, {bell()});
  const ConeRep back = cone_from_json(cone_to_json(c));
  CHECK(back.tag == ConeTag::kSep);
  CHECK(back.generators.size() == 1);
  CHECK((back.generators[0] - bell()).matrix().cwiseAbs().maxCoeff() < 1e-15);
  CHECK(cone_tag_from_string("SEP_DUAL") == ConeTag::kSepDual);
  CHECK_THROWS(cone_tag_from_string("nope"));
}

TEST_CASE("augmented cone: Hul(SEP u {Bell})") {
  const ConeRep c = ConeRep::augmented(ConeTag::kSep, d22, {bell()});
  CHECK(membership(c, bell() + HermMatrix::identity(4)).status == Status::kIn);
  CMatrix z = CMatrix::Identity(4, 4);
  z(1, 1) = -1.0;
  z(3, 3) = -1.0;
  const MembershipVerdict v = membership(c, conjugate(bell(), z));
  REQUIRE(v.status == Status::kOut);
  CHECK(trace_inner(*v.witness, bell()) >= -1e-12);
}
