// One line per acceptance criterion: "[PASS] n name: detail" or "[FAIL] ...".

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gptcone/appendix.hpp"
#include "gptcone/cones.hpp"
#include "gptcone/discrimination.hpp"
#include "gptcone/dovm.hpp"
#include "gptcone/pses.hpp"
#include "gptcone/random.hpp"
#include "gptcone/simulability.hpp"
#include "gptcone/symmetry.hpp"
#include "oracles.hpp"

using namespace gptcone;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED(" << what << ")";
    }
  }
  void near(double value, double target, double tol, const std::string& what) {
    detail << " " << what << "=" << value;
    expect(std::abs(value - target) <= tol, what);
  }
};

const BipartiteDims d22(2, 2);

double table_dev(const Eigen::Matrix2d& t) { return (t - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(); }

Dovm fixture() { return make_dovm(appendix::e1(), appendix::e2(), d22); }

void c1(Outcome& o) {
  const std::vector<double> ev = oracle::eigenvalues(oracle::from(appendix::e1()));
  const double expected[4] = {-0.5, 0.5, 0.5, 1.5};
  double dev = 0.0;
  for (int i = 0; i < 4; ++i) dev = std::max(dev, std::abs(ev[static_cast<std::size_t>(i)] - expected[i]));
  o.near(dev, 0.0, 1e-9, "spectrum_dev");
  o.expect(classify(fixture()).tag == DovmTag::kBQ, "class BQ");
  o.near((appendix::e1() + appendix::e2() - HermMatrix::identity(4)).matrix().cwiseAbs().maxCoeff(), 0.0, 1e-12,
         "sum_dev");
}

void c2(Outcome& o) {
  const double dev = distinguishability_deviation({appendix::rho1(), appendix::rho2()}, {appendix::e1(), appendix::e2()});
  o.near(dev, 0.0, 1e-12, "table_dev");
  o.near(trace_inner(appendix::rho1(), appendix::rho2()), 0.25, 0.0, "overlap");
}

void c3(Outcome& o) {
  const BqWitness w = bq_witness_states(fixture());
  o.near(table_dev(w.table), 0.0, 1e-9, "table_dev");
  o.near(w.overlap, 0.75, 1e-9, "overlap");
}

void c4(Outcome& o) {
  Rng rng(2024);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const HermMatrix a = random_density(4, rng, 1 + k % 4);
    const HermMatrix b = random_density(4, rng, 1 + (k / 4) % 4);
    const double value = min_error_over_cone(a, b, EffectCone{}, HermMatrix::identity(4)).value;
    worst = std::max(worst, std::abs(value - oracle::helstrom(a, b)));
  }
  o.near(worst, 0.0, 1e-6, "max_dev");
}

void c5(Outcome& o) {
  const AqAdvantage a = aq_advantage_states(fixture());
  o.near(a.err, 0.6464466, 1e-6, "err");
  o.near(a.helstrom, 0.8232233, 1e-6, "helstrom");
  o.near(a.margin, 1.0 / (std::sqrt(2.0) * 4.0), 1e-6, "margin");
  o.expect(a.sep2.status == Status::kIn, "rho2 separable");
  o.near(norm(4.0 * a.rho2 - HermMatrix::identity(4), NormKind::kHilbertSchmidt), 1.0, 1e-9, "gurvits");
}

void c6(Outcome& o) {
  Rng rng(606);
  int violations = 0;
  int sampled = 0;
  for (int k = 0; k < 500; ++k) {
    const DovmSample s = sample_dovm(k % 2 == 0 ? DovmTag::kNAQ : DovmTag::kPOVM, d22, rng);
    if (!s.dovm) continue;
    ++sampled;
    const HermMatrix a = random_density(4, rng, 1 + k % 4);
    const HermMatrix b = random_density(4, rng, 1 + (k / 3) % 4);
    if (err_of_measurement(a, b, {s.dovm->m1, s.dovm->m2}) < oracle::helstrom(a, b) - 1e-9) ++violations;
  }
  o.near(sampled, 500, 0, "sampled");
  o.near(violations, 0, 0, "violations");
}

void c7(Outcome& o) {
  const PsesParams p = make_pses_params(p0_families(generalized_bell(2)), 0.1);
  Rng rng(707);
  double con1 = 1e300;
  const std::vector<HermMatrix> ends = npm_endpoints(p);
  for (int k = 0; k < 10000; ++k) {
    const HermMatrix s = random_product_pure_state(d22, rng);
    for (const HermMatrix& n : ends) con1 = std::min(con1, trace_inner(s, n));
  }
  o.detail << " con1_min=" << con1;
  o.expect(con1 >= -1e-9, "con1");
  const GramCheck g = gram_predual_check(ends);
  o.detail << " gram_min=" << g.value;
  o.expect(g.value >= -1e-9, "con2");
  o.near(r0(d22), 0.2071068, 1e-7, "r0");
  AuditOptions ao;
  ao.product_samples = 2000;
  const Report bad = predual_audit(make_pses_params(p0_families(generalized_bell(2)), 0.3), ao);
  o.expect(!bad.passed() && bad.data().contains("con2_negative_pair") &&
               bad.data()["con2_negative_pair"]["value"].get<double>() < 0.0,
           "r=0.3 negative pair");
}

void c8(Outcome& o) {
  const double r = 0.1;
  const DistExample ex = dist_example(r, generalized_bell(2));
  const double printed = 2.0 * r * (r + 1.0) / ((2.0 * r + 1.0) * (2.0 * r + 1.0));
  o.near(ex.overlap, printed, 1e-12, "overlap_vs_2r(r+1)/(2r+1)^2");
  o.near(table_dev(ex.table), 0.0, 1e-10, "table_dev");
  const double eps = eps_of_r(r);
  o.near(eps, 0.8164966, 1e-7, "eps_r");
  const OverlapEps rel = overlap_eps_relation(eps);
  o.near(rel.printed_bound, ex.overlap, 1e-12, "eps^2(eps^2+8)/32_vs_overlap");
  o.detail << " [context: true_overlap=4r(r+1)/(2r+1)^2=" << 4.0 * r * (r + 1.0) / ((2.0 * r + 1.0) * (2.0 * r + 1.0))
           << " eps^2(8-eps^2)/32=" << rel.rederived_bound
           << " printed_bound_is_lower_bound=" << (rel.printed_bound <= ex.overlap ? "yes" : "no") << "]";
}

void c9(Outcome& o) {
  const PsesParams p = make_pses_params(p0_families(generalized_bell(2)), 0.1);
  Rng rng(909);
  const CVector phi = canonical_max_entangled(2);
  double max_dist_dev = 0.0;
  double min_dual = 1e300;
  double max_gap = -1e300;
  double max_fmax = -1e300;
  for (int k = 0; k < 100; ++k) {
    const CMatrix u = haar_unitary(2, rng);
    CMatrix iu = CMatrix::Zero(4, 4);
    iu.block(0, 0, 2, 2) = u;
    iu.block(2, 2, 2, 2) = u;
    const HermMatrix sigma = HermMatrix::projector(iu * phi);
    const DistanceBound b = distance_upper_bound(p, sigma, 4, 900 + k);
    const double tn = oracle::trace_norm(oracle::sub(oracle::from(b.rho0), oracle::from(sigma)));
    max_dist_dev = std::max(max_dist_dev, std::abs(tn - 1.0 / 3.0));
    min_dual = std::min({min_dual, b.min_dual_value, b.rho0_min_eigenvalue});
    max_gap = std::max(max_gap, tn - b.bound);
    max_fmax = std::max(max_fmax, b.fmax_sampled - b.alpha);
  }
  o.near(max_dist_dev, 0.0, 1e-9, "distance_dev_from_1/3");
  o.detail << " dual_min=" << min_dual;
  o.expect(min_dual >= -1e-12, "dual checks");
  o.expect(max_gap <= 0.0, "distance <= eps_r");
  o.expect(max_fmax <= 1e-9, "F_max(rho0) <= 1/(2r+1)");
}

void c10(Outcome& o) {
  const SimulabilityCertificate c = non_simulability_certificate(fixture());
  o.expect(c.non_simulable, "certificate");
  double dev = 0.0;
  for (int n = 1; n <= 5; ++n)
    dev = std::max(dev, std::abs(n_copy_overlap(appendix::rho1(), appendix::rho2(), n) - std::pow(4.0, -n)));
  o.near(dev, 0.0, 1e-12, "n_copy_dev");
}

void c11(Outcome& o) {
  const Report r = shrunk_bloch_example(0.5, 1000, 11);
  for (const Check& c : r.checks())
    if (!c.pass) o.expect(false, c.name);
  for (const Check& c : r.checks()) {
    if (c.name == "boundary_table_deviation") o.near(c.value, 0.0, 1e-12, "table_dev");
    if (c.name == "overlap") o.near(c.value, 0.375, 1e-12, "overlap");
  }
}

void c12(Outcome& o) {
  const Report r = entropy_example_audit();
  for (const Check& c : r.checks()) {
    if (!c.pass) o.expect(false, c.name);
    if (c.name == "decomposition_residual") o.near(c.value, 0.0, 1e-12, "residual");
    if (c.name.find("entropy") != std::string::npos) o.detail << " " << c.name << "=" << c.value;
  }
  const double h1 = shannon_entropy_bits({1.0 / 3.0, 2.0 / 3.0});
  const double w = (3.0 + std::sqrt(3.0)) / 6.0;
  const double h2 = shannon_entropy_bits({w, 1.0 - w});
  o.expect(std::abs(h1 - 0.9182958) <= 1e-7, "H1");
  o.expect(std::abs(h2 - 0.7440) <= 5e-4, "H2");
  o.expect(h1 - h2 > 0.17, "difference");
}

void c13(Outcome& o) {
  Rng rng(1313);
  int disagreements = 0;
  int points = 0;
  for (int k = 0; k < 20; ++k) {
    std::vector<HermMatrix> g1;
    std::vector<HermMatrix> g2;
    for (int i = 0; i < 3; ++i) {
      g1.push_back(random_pure_state(4, rng));
      g2.push_back(random_hermitian(4, rng) + 2.5 * HermMatrix::identity(4));
    }
    std::vector<HermMatrix> xs;
    for (int i = 0; i < 50; ++i) xs.push_back(random_hermitian(4, rng) + 1.5 * HermMatrix::identity(4));
    const DualIdentityResult r = dual_identity_check(g1, g2, xs);
    disagreements += r.disagreements;
    points += r.samples;
  }
  o.near(points, 1000, 0, "points");
  o.near(disagreements, 0, 0, "disagreements");
}

void c14(Outcome& o) {
  for (const BipartiteDims dims : {BipartiteDims(2, 2), BipartiteDims(2, 3)}) {
    const GptModel model(ConeRep::named(ConeTag::kSep, dims), HermMatrix::identity(dims.total()));
    const CapacityDemo c = capacity_demo(model);
    o.near(static_cast<double>(c.table.rows()), dims.total(), 0, "size");
    o.near(c.deviation, 0.0, 0.0, "table_dev");
  }
}

void c15(Outcome& o) {
  const Report r = two_symmetry_counterexample(200, 15);
  for (const Check& c : r.checks()) {
    if (!c.pass) o.expect(false, c.name);
    if (c.name == "rho_overlap") o.near(c.value, 0.25, 1e-12, "rho_overlap");
    if (c.name == "sigma_overlap") o.near(c.value, 0.0, 1e-12, "sigma_overlap");
    if (c.name == "form_iii_rho_overlap_deviation") o.near(c.value, 0.0, 1e-10, "invariance_dev");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"appendix fixture classification", c1},
      {"non-orthogonal perfect discrimination", c2},
      {"BQ witness states", c3},
      {"Helstrom equivalence", c4},
      {"AQ margin", c5},
      {"NAQ/POVM no advantage", c6},
      {"PSES pre-duality audit", c7},
      {"distinguishable non-orthogonal pair overlap", c8},
      {"distance bound for maximally entangled states", c9},
      {"non-simulability certificate", c10},
      {"shrunk Bloch sphere", c11},
      {"entropy example", c12},
      {"duality identities", c13},
      {"capacity", c14},
      {"two-symmetry counterexample", c15},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %zu %s:%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
