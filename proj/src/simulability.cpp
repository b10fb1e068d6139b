#include "gptcone/simulability.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <vector>

#include "gptcone/cones.hpp"
#include "gptcone/discrimination.hpp"
#include "gptcone/random.hpp"

namespace gptcone {

bool domain_contains(const Dovm& dovm, const HermMatrix& rho, double tol) {
  require_dims(rho, dovm.dims, "domain_contains");
  if (!is_psd(rho, tol)) throw ValidationError("domain_contains: rho is not positive semidefinite");
  return trace_inner(rho, dovm.m1) >= -tol && trace_inner(rho, dovm.m2) >= -tol;
}

double n_copy_overlap(const HermMatrix& rho1, const HermMatrix& rho2, int n) {
  if (n < 1) throw DomainError("n_copy_overlap: n must be at least 1");
  require_same_dim(rho1, rho2, "n_copy_overlap");
  require_state(rho1, "rho1");
  require_state(rho2, "rho2");
  return std::pow(trace_inner(rho1, rho2), n);
}

double n_copy_overlap_explicit(const HermMatrix& rho1, const HermMatrix& rho2, int n) {
  if (n < 1) throw DomainError("n_copy_overlap_explicit: n must be at least 1");
  require_same_dim(rho1, rho2, "n_copy_overlap_explicit");
  HermMatrix a = rho1;
  HermMatrix b = rho2;
  for (int k = 1; k < n; ++k) {
    a = tensor(a, rho1);
    b = tensor(b, rho2);
  }
  return trace_inner(a, b);
}

SimulabilityCertificate non_simulability_certificate(const Dovm& dovm, double tol) {
  SimulabilityCertificate c;
  c.cls = classify(dovm, tol);
  if (c.cls.tag != DovmTag::kBQ) {
    c.reason = c.cls.tag == DovmTag::kAQ ? "inconclusive: AQ simulability is open"
                                         : "inconclusive: measurement is not BQ";
    return c;
  }
  BqWitness w = bq_witness_states(dovm, tol);
  c.table_deviation = (w.table - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
  c.overlap = w.overlap;
  const bool in_domain = domain_contains(dovm, w.rho1, tol) && domain_contains(dovm, w.rho2, tol);
  if (c.table_deviation <= 1e-9 && w.overlap > tol && in_domain) {
    c.non_simulable = true;
    c.reason = "perfectly discriminated non-orthogonal pair in the domain; every n-copy overlap stays positive";
    c.witness = std::move(w);
  } else {
    c.reason = "inconclusive: witness pair failed verification";
  }
  return c;
}

Json certificate_to_json(const SimulabilityCertificate& c, int max_copies) {
  Json j;
  j["verdict"] = c.non_simulable ? "NonSimulable" : "Inconclusive";
  j["class"] = to_string(c.cls.tag);
  j["reason"] = c.reason;
  if (c.witness) {
    j["overlap"] = c.overlap;
    j["table_deviation"] = c.table_deviation;
    j["rho1"] = matrix_to_json(c.witness->rho1);
    j["rho2"] = matrix_to_json(c.witness->rho2);
    Json powers = Json::array();
    for (int n = 1; n <= max_copies; ++n) powers.push_back(n_copy_overlap(c.witness->rho1, c.witness->rho2, n));
    j["n_copy_overlaps"] = powers;
  }
  return j;
}

Report shrunk_bloch_example(double p, int samples, std::uint64_t seed, double tol) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("shrunk_bloch_example: p must lie in (0, 1)");
  Report rep("shrunk_bloch_example");
  const BipartiteDims dims(1, 2);
  const HermMatrix id = HermMatrix::identity(2);
  const std::vector<double> d1{1.0, 0.0};
  const std::vector<double> d2{0.0, 1.0};
  const HermMatrix p1 = HermMatrix::diagonal(d1);
  const HermMatrix p2 = HermMatrix::diagonal(d2);
  const HermMatrix m = (-(1.0 - p) / (2.0 * p)) * p1 + ((1.0 + p) / (2.0 * p)) * p2;
  const HermMatrix mc = id - m;
  const HermMatrix rho1 = p * p1 + ((1.0 - p) / 2.0) * id;
  const HermMatrix rho2 = p * p2 + ((1.0 - p) / 2.0) * id;

  const GptModel model(ConeRep::named(ConeTag::kShrunkBloch, dims, p), id);
  const Measurement meas = validate_measurement(model, {m, mc}, tol, true);
  rep.le("measurement_sum_defect", meas.sum_defect, 0.0, 1e-12);
  rep.require("effects_in_dual_cone",
              meas.verdicts[0].status == Status::kIn && meas.verdicts[1].status == Status::kIn);

  Rng rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  double worst_member = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const HermMatrix rho = s % 2 == 0 ? random_pure_state(2, rng) : random_density(2, rng);
    const HermMatrix sigma = p * rho + ((1.0 - p) / 2.0) * id;
    worst = std::min({worst, trace_inner(sigma, m), trace_inner(sigma, mc)});
    const MembershipVerdict v = membership(model.cone, sigma, tol);
    worst_member = std::min(worst_member, v.status == Status::kIn ? v.margin : -1.0);
  }
  rep.data()["samples"] = samples;
  rep.ge("sampled_states_in_cone", worst_member, 0.0, tol);
  rep.ge("sampled_probability_min", worst, 0.0, tol);

  Eigen::Matrix2d table;
  table << trace_inner(rho1, mc), trace_inner(rho1, m), trace_inner(rho2, mc), trace_inner(rho2, m);
  rep.le("boundary_table_deviation", (table - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 0.0, 1e-12,
         "rows rho1, rho2; columns I - M, M");
  const double overlap = trace_inner(rho1, rho2);
  const double closed = p * (1.0 - p) + (1.0 - p) * (1.0 - p) / 2.0;
  rep.near("overlap", overlap, closed, 1e-12, "p(1-p) + (1-p)^2/2");
  rep.ge("overlap_positive", overlap, 0.0, 0.0);
  rep.require("boundary_states_in_cone", membership(model.cone, rho1, tol).status == Status::kIn &&
                                             membership(model.cone, rho2, tol).status == Status::kIn);
  Json powers = Json::array();
  for (int n = 1; n <= 5; ++n) powers.push_back(n_copy_overlap(rho1, rho2, n));
  rep.data()["p"] = p;
  rep.data()["M"] = matrix_to_json(m);
  rep.data()["overlap"] = overlap;
  rep.data()["n_copy_overlaps"] = powers;
  rep.data()["conclusion"] =
      "the pair is perfectly discriminated with positive overlap at every copy count, so no POVM on n copies reproduces M";
  return rep;
}

}  // namespace gptcone
