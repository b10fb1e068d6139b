#include "gptcone/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>

#include "CLI11.hpp"
#include "gptcone/appendix.hpp"
#include "gptcone/cones.hpp"
#include "gptcone/dovm.hpp"
#include "gptcone/pses.hpp"
#include "gptcone/random.hpp"
#include "gptcone/simulability.hpp"
#include "gptcone/symmetry.hpp"

namespace gptcone {

MeasurementFile measurement_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("schema error at '$': measurement must be an object");
  MeasurementFile m;
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 2 || !j["dims"][0].is_number_integer() ||
      !j["dims"][1].is_number_integer())
    throw ValidationError("schema error at 'dims': expected [dA, dB]");
  m.dims = BipartiteDims(j["dims"][0].get<int>(), j["dims"][1].get<int>());
  if (!j.contains("effects") || !j["effects"].is_array() || j["effects"].empty())
    throw ValidationError("schema error at 'effects': expected a non-empty array of matrices");
  for (std::size_t i = 0; i < j["effects"].size(); ++i) {
    const std::string field = "effects[" + std::to_string(i) + "]";
    HermMatrix e = matrix_from_json(j["effects"][i], field);
    if (e.dim() != m.dims.total())
      throw ValidationError("schema error at '" + field + ".dim': does not match dims");
    m.effects.push_back(std::move(e));
  }
  return m;
}

Json measurement_to_json(const MeasurementFile& m) {
  Json j;
  j["dims"] = {m.dims.a, m.dims.b};
  j["effects"] = Json::array();
  for (const HermMatrix& e : m.effects) j["effects"].push_back(matrix_to_json(e));
  return j;
}

namespace {

Dovm dovm_from_file(const MeasurementFile& m, double tol) {
  if (m.effects.size() != 2) throw ValidationError("schema error at 'effects': a DOVM has exactly two effects");
  return make_dovm(m.effects[0], m.effects[1], m.dims, tol);
}

Json table_to_json(const Eigen::Matrix2d& t) {
  return Json::array({Json::array({t(0, 0), t(0, 1)}), Json::array({t(1, 0), t(1, 1)})});
}

Report aq_fixture_report() {
  Report rep("aq_fixture");
  const Dovm dv = make_dovm(appendix::e1(), appendix::e2(), appendix::dims());
  const AqAdvantage a = aq_advantage_states(dv);
  rep.near("err", a.err, 0.6464466, 1e-6);
  rep.near("helstrom", a.helstrom, 0.8232233, 1e-6);
  rep.near("margin", a.margin, 1.0 / (4.0 * std::sqrt(2.0)), 1e-6);
  rep.near("margin_vs_prediction", a.margin, a.predicted_margin, 1e-9);
  rep.near("gurvits_distance", a.gurvits_distance, 1.0, 1e-9);
  rep.require("rho1_separable", a.sep1.status == Status::kIn, a.sep1.tier);
  rep.require("rho2_separable", a.sep2.status == Status::kIn, a.sep2.tier);
  return rep;
}

Report helstrom_equivalence_report(int pairs, std::uint64_t seed) {
  Report rep("helstrom_equivalence");
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    const HermMatrix r1 = random_density(4, rng, 1 + k % 4);
    const HermMatrix r2 = random_density(4, rng, 1 + (k / 4) % 4);
    const double h = helstrom(r1, r2).value;
    const double c = min_error_over_cone(r1, r2, EffectCone{}, HermMatrix::identity(4)).value;
    worst = std::max(worst, std::abs(c - h));
  }
  rep.data()["pairs"] = pairs;
  rep.le("max_deviation", worst, 0.0, 1e-6);
  return rep;
}

Report no_advantage_report(int count, std::uint64_t seed) {
  Report rep("naq_povm_no_advantage");
  Rng rng(seed);
  const BipartiteDims dims(2, 2);
  int violations = 0;
  int sampled = 0;
  int rejected = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < count; ++k) {
    const DovmTag tag = k % 2 == 0 ? DovmTag::kNAQ : DovmTag::kPOVM;
    const DovmSample s = sample_dovm(tag, dims, rng);
    rejected += s.rejected;
    if (!s.dovm) continue;
    ++sampled;
    const HermMatrix r1 = random_density(4, rng, 1 + k % 4);
    const HermMatrix r2 = random_density(4, rng, 1 + (k / 2) % 4);
    const double gap = err_of_measurement(r1, r2, {s.dovm->m1, s.dovm->m2}) - helstrom(r1, r2).value;
    worst = std::min(worst, gap);
    if (gap < -1e-9) ++violations;
  }
  rep.data()["requested"] = count;
  rep.data()["rejected_draws"] = rejected;
  rep.near("sampled", sampled, count, 0.0);
  rep.le("violations", violations, 0.0, 0.0);
  rep.ge("min_err_minus_helstrom", worst, 0.0, 1e-9);
  return rep;
}

Report duality_report(int pairs, int per_pair, std::uint64_t seed) {
  Report rep("duality_identities");
  Rng rng(seed);
  int disagreements = 0;
  int inside = 0;
  for (int k = 0; k < pairs; ++k) {
    std::vector<HermMatrix> g1;
    std::vector<HermMatrix> g2;
    for (int i = 0; i < 3; ++i) {
      g1.push_back(random_density(4, rng, 1));
      g2.push_back(random_hermitian(4, rng) + 2.5 * HermMatrix::identity(4));
    }
    std::vector<HermMatrix> xs;
    for (int i = 0; i < per_pair; ++i) xs.push_back(random_hermitian(4, rng) + 1.5 * HermMatrix::identity(4));
    const DualIdentityResult r = dual_identity_check(g1, g2, xs);
    disagreements += r.disagreements;
    inside += r.in_count;
  }
  rep.data()["points"] = pairs * per_pair;
  rep.data()["points_in_dual"] = inside;
  rep.le("disagreements", disagreements, 0.0, 0.0);
  return rep;
}

Report capacity_report() {
  Report rep("capacity");
  for (const BipartiteDims dims : {BipartiteDims(2, 2), BipartiteDims(2, 3)}) {
    const GptModel model(ConeRep::named(ConeTag::kSep, dims), HermMatrix::identity(dims.total()));
    const CapacityDemo c = capacity_demo(model);
    const std::string tag = std::to_string(dims.a) + "x" + std::to_string(dims.b);
    rep.near(tag + ".size", static_cast<double>(c.table.rows()), dims.total(), 0.0);
    rep.le(tag + ".table_deviation", c.deviation, 0.0, 1e-12);
  }
  return rep;
}

Report symmetry_suite_report(int samples, std::uint64_t seed) {
  Report rep("symmetry");
  const BipartiteDims dims(2, 2);
  rep.absorb(orbit_invariance_check(ConeRep::named(ConeTag::kPsd, dims), SymmetryGroup::kGU, samples, seed));
  rep.absorb(orbit_invariance_check(ConeRep::named(ConeTag::kPsd, dims), SymmetryGroup::kLU, samples, seed + 1));
  rep.absorb(orbit_invariance_check(ConeRep::named(ConeTag::kSep, dims), SymmetryGroup::kLU, samples, seed + 2));
  const MeopFamily bell = generalized_bell(2);
  const Report aug = orbit_invariance_check(ConeRep::augmented(ConeTag::kSep, dims, {bell.projectors[0]}),
                                            SymmetryGroup::kGU, samples, seed + 3);
  rep.require("sep_plus_bell_gu_falsified", !aug.passed(), "an image of the cone leaves it");
  if (aug.data().contains("falsification")) rep.data()["sep_plus_bell_falsification"] = aug.data()["falsification"];
  const GuWitness w1 = gu_falsifier(partial_transpose(bell.projectors[0], dims), dims);
  rep.near("gu_falsifier_gamma_bell_value", w1.value, -0.5, 1e-9);
  rep.le("gu_falsifier_gamma_bell_product_min", w1.product_min, 0.0, 0.0);
  const GuWitness w2 = gu_falsifier(npm_element(0.1, bell), dims);
  rep.near("gu_falsifier_npm_value", w2.value, -0.1, 1e-9);
  rep.le("gu_falsifier_npm_product_min", w2.product_min, 0.0, 0.0);
  return rep;
}

Report pses_overlap_report() {
  Report rep("pses_overlap");
  const double r = 0.1;
  const DistExample ex = dist_example(r, generalized_bell(2));
  rep.le("table_deviation", (ex.table - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 0.0, 1e-10);
  rep.near("eps_r", eps_of_r(r), 0.8164966, 1e-7);
  rep.near("overlap_closed_form_4r(r+1)/(2r+1)^2", ex.overlap, ex.closed_form, 1e-12);
  const OverlapEps o = overlap_eps_relation(eps_of_r(r));
  rep.data()["overlap"] = ex.overlap;
  rep.data()["printed_overlap"] = ex.printed_closed_form;
  rep.data()["printed_bound"] = o.printed_bound;
  rep.data()["rederived_bound"] = o.rederived_bound;
  rep.data()["discrepancy"] = {{"printed_overlap_matches", std::abs(ex.overlap - ex.printed_closed_form) <= 1e-12},
                               {"rederived_matches_printed_overlap", o.rederived_matches_printed_closed_form},
                               {"printed_bound_matches_overlap", o.printed_bound_matches_overlap}};
  rep.near("true_overlap_vs_eps", ex.overlap, o.overlap, 1e-12, "eps^2(8 - eps^2)/16");
  return rep;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GPTCONE_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
    throw ValidationError("GPTCONE_SEED must be a non-negative integer");
  }
  return fallback;
}

}  // namespace

Report classify_dovm_report(const MeasurementFile& m, double tol) {
  Report rep("classify_dovm");
  const Dovm dv = dovm_from_file(m, tol);
  const DovmClass c = classify(dv, tol);
  const HermMatrix sum = dv.m1 + dv.m2 - HermMatrix::identity(m.dims.total());
  rep.le("sum_defect", sum.matrix().cwiseAbs().maxCoeff(), 0.0, 1e-10);
  rep.require("effects_not_outside_sep_dual",
              dv.evidence[0].status != Status::kOut && dv.evidence[1].status != Status::kOut);
  const Json cj = dovm_class_to_json(c);
  for (auto it = cj.begin(); it != cj.end(); ++it) rep.data()[it.key()] = it.value();
  rep.data()["evidence"] = {verdict_to_json(dv.evidence[0]), verdict_to_json(dv.evidence[1])};
  Json witnesses = Json::object();
  if (c.tag == DovmTag::kBQ) {
    const BqWitness w = bq_witness_states(dv, tol);
    rep.le("bq_witness_table_deviation", (w.table - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 0.0, 1e-9);
    rep.ge("bq_witness_overlap_positive", w.overlap, 0.0, 0.0);
    witnesses["bq"] = {{"rho1", matrix_to_json(w.rho1)}, {"rho2", matrix_to_json(w.rho2)},
                       {"overlap", w.overlap}, {"table", table_to_json(w.table)}};
  }
  if (c.tag == DovmTag::kBQ || c.tag == DovmTag::kAQ) {
    const auto& sp = c.spectra[static_cast<std::size_t>(c.deciding_effect)];
    if (sp.lambda_d - sp.lambda1 > 1.0) {
      const AqAdvantage a = aq_advantage_states(dv, tol);
      rep.ge("aq_margin_positive", a.margin, 0.0, 0.0);
      rep.near("aq_margin_vs_prediction", a.margin, a.predicted_margin, 1e-9);
      witnesses["aq"] = {{"rho1", matrix_to_json(a.rho1)}, {"rho2", matrix_to_json(a.rho2)}, {"err", a.err},
                         {"helstrom", a.helstrom}, {"margin", a.margin},
                         {"sep", {verdict_to_json(a.sep1), verdict_to_json(a.sep2)}}};
    }
  }
  rep.data()["witnesses"] = witnesses;
  return rep;
}

Report discriminate_report(const HermMatrix& rho1, const HermMatrix& rho2, const EffectCone& cone,
                           const std::optional<MeasurementFile>& measurement) {
  Report rep("discriminate");
  require_state(rho1, "rho1");
  require_state(rho2, "rho2");
  require_same_dim(rho1, rho2, "discriminate");
  const int d = rho1.dim();
  const HelstromResult h = helstrom(rho1, rho2);
  std::vector<std::vector<HermMatrix>> candidates;
  if (measurement) {
    if (measurement->effects.size() != 2) throw ValidationError("schema error at 'effects': expected two effects");
    if (measurement->dims.total() != d) throw DimensionError("discriminate: measurement dimension mismatch");
    candidates.push_back(measurement->effects);
  }
  const ConeDiscrimination c = min_error_over_cone(rho1, rho2, cone, HermMatrix::identity(d), candidates);
  rep.data()["helstrom"] = h.value;
  rep.data()["value"] = c.value;
  rep.data()["advantage"] = h.value - c.value;
  rep.data()["iterations"] = c.iterations;
  rep.data()["converged"] = c.converged;
  rep.data()["effects"] = {matrix_to_json(c.effects[0]), matrix_to_json(c.effects[1])};
  rep.data()["cone"] = {{"generators", cone.generators.size()}, {"include_psd", cone.include_psd}};
  if (cone.include_psd) rep.le("value_le_helstrom", c.value, h.value, 1e-9);
  rep.le("feasibility_residual", c.feasibility_residual, 0.0, 1e-7);
  rep.ge("value_nonnegative", c.value, 0.0, 1e-9);
  if (measurement) rep.data()["measurement_err"] = err_of_measurement(rho1, rho2, measurement->effects);
  return rep;
}

Report simulability_report(const MeasurementFile& m, double tol) {
  Report rep("simulability");
  const Dovm dv = dovm_from_file(m, tol);
  const SimulabilityCertificate c = non_simulability_certificate(dv, tol);
  rep.data()["certificate"] = certificate_to_json(c);
  if (c.non_simulable) {
    rep.le("table_deviation", c.table_deviation, 0.0, 1e-9);
    rep.ge("overlap_positive", c.overlap, 0.0, 0.0);
    if (dv.dims.total() <= 4) {
      double dev = 0.0;
      for (int n = 1; n <= 3; ++n)
        dev = std::max(dev, std::abs(n_copy_overlap(c.witness->rho1, c.witness->rho2, n) -
                                     n_copy_overlap_explicit(c.witness->rho1, c.witness->rho2, n)));
      rep.le("n_copy_explicit_deviation", dev, 0.0, 1e-12);
    }
  } else {
    rep.require("inconclusive_reported", !c.reason.empty(), c.reason);
  }
  return rep;
}

Report verify_appendix_report(std::uint64_t seed) {
  Report rep("verify_appendix");
  Report fx("appendix_measurement");
  const Dovm dv = make_dovm(appendix::e1(), appendix::e2(), appendix::dims());
  const Spectrum s = eig_ascending(dv.m1);
  const double expected[4] = {-0.5, 0.5, 0.5, 1.5};
  for (int i = 0; i < 4; ++i) fx.near("e1_eigenvalue_" + std::to_string(i), s.values(i), expected[i], 1e-9);
  fx.require("class_BQ", classify(dv).tag == DovmTag::kBQ);
  fx.le("sum_defect", (dv.m1 + dv.m2 - HermMatrix::identity(4)).matrix().cwiseAbs().maxCoeff(), 0.0, 1e-12);
  const std::vector<HermMatrix> states{appendix::rho1(), appendix::rho2()};
  fx.le("rho_table_deviation", distinguishability_deviation(states, {dv.m1, dv.m2}), 0.0, 1e-12);
  fx.near("rho_overlap", trace_inner(states[0], states[1]), 0.25, 1e-12);
  const BqWitness w = bq_witness_states(dv);
  fx.le("bq_witness_table_deviation", (w.table - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 0.0, 1e-9);
  fx.near("bq_witness_overlap", w.overlap, 0.75, 1e-9);
  const SimulabilityCertificate c = non_simulability_certificate(dv);
  fx.require("non_simulable", c.non_simulable, c.reason);
  for (int n = 1; n <= 5; ++n)
    fx.near("n_copy_overlap_" + std::to_string(n), n_copy_overlap(states[0], states[1], n), std::pow(0.25, n), 1e-12);
  rep.absorb(fx);
  rep.absorb(entropy_example_audit());
  rep.absorb(two_symmetry_counterexample(200, seed));
  rep.absorb(shrunk_bloch_example(0.5, 1000, seed));
  rep.data()["seed"] = seed;
  return rep;
}

Report verify_all_report(bool fast, std::uint64_t seed) {
  Report rep("verify_all");
  rep.absorb(verify_appendix_report(seed));
  rep.absorb(aq_fixture_report());
  rep.absorb(helstrom_equivalence_report(fast ? 10 : 100, seed + 1));
  rep.absorb(no_advantage_report(fast ? 50 : 500, seed + 2));
  AuditOptions ao;
  ao.product_samples = fast ? 2000 : 10000;
  rep.absorb(build_pses_report(2, 0.1, 2, seed + 3, ao));
  rep.absorb(pses_overlap_report());
  rep.absorb(hierarchy_audit({0.2, 0.1, 0.05}, p0_families(generalized_bell(2))));
  rep.absorb(duality_report(fast ? 5 : 20, fast ? 20 : 50, seed + 4));
  rep.absorb(capacity_report());
  rep.absorb(symmetry_suite_report(fast ? 20 : 100, seed + 5));
  rep.data()["fast"] = fast;
  rep.data()["seed"] = seed;
  return rep;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"gptcone: GPT cone models, DOVM classification and PSES audits", "gptcone"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--out", out_path, "write the JSON report to this file instead of stdout");
  app.add_option("--seed", seed_flag, "seed for sampled checks (fallback: GPTCONE_SEED)");

  std::string meas_path;
  auto* classify_cmd = app.add_subcommand("classify-dovm", "classify a two-outcome measurement");
  classify_cmd->add_option("measurement", meas_path, "measurement JSON")->required();

  std::string rho1_path;
  std::string rho2_path;
  std::string cone_spec = "psd";
  std::string disc_meas_path;
  auto* disc_cmd = app.add_subcommand("discriminate", "minimum error over an effect cone vs the Helstrom bound");
  disc_cmd->add_option("rho1", rho1_path)->required();
  disc_cmd->add_option("rho2", rho2_path)->required();
  disc_cmd->add_option("--cone", cone_spec, "'psd' or a JSON file {generators, include_psd}");
  disc_cmd->add_option("--measurement", disc_meas_path, "also evaluate this measurement");

  int local_dim = 2;
  std::optional<double> r_flag;
  std::optional<double> eps_flag;
  int families = 2;
  int product_samples = 10000;
  auto* pses_cmd = app.add_subcommand("build-pses", "build and audit a PSES cone C_r");
  pses_cmd->add_option("--local-dim", local_dim)->check(CLI::Range(2, 3));
  auto* r_opt = pses_cmd->add_option("--r", r_flag);
  auto* eps_opt = pses_cmd->add_option("--eps", eps_flag);
  r_opt->excludes(eps_opt);
  pses_cmd->add_option("--families", families)->check(CLI::Range(1, 8));
  pses_cmd->add_option("--product-samples", product_samples)->check(CLI::Range(1, 1000000));

  std::string sim_path;
  std::optional<double> shrunk_p;
  auto* sim_cmd = app.add_subcommand("simulability", "non-simulability certificate or the shrunk Bloch example");
  auto* sim_file = sim_cmd->add_option("measurement", sim_path);
  auto* sim_p = sim_cmd->add_option("--shrunk-bloch", shrunk_p);
  sim_file->excludes(sim_p);

  std::string check = "two-symmetry";
  std::string sym_cone = "sep";
  std::string group = "lu";
  std::string sym_matrix;
  int samples = 100;
  auto* sym_cmd = app.add_subcommand("symmetry", "orbit invariance, GU falsifier, 2-symmetry counterexample");
  sym_cmd->add_option("--check", check)->check(CLI::IsMember({"two-symmetry", "orbit", "gu-falsifier"}));
  sym_cmd->add_option("--cone", sym_cone)->check(CLI::IsMember({"psd", "sep", "sep+bell"}));
  sym_cmd->add_option("--group", group)->check(CLI::IsMember({"gu", "lu"}));
  sym_cmd->add_option("--matrix", sym_matrix, "matrix JSON for gu-falsifier (default: partial transpose of a Bell state)");
  sym_cmd->add_option("--samples", samples)->check(CLI::Range(1, 100000));

  auto* app_cmd = app.add_subcommand("verify-appendix", "check the appendix fixtures");
  bool fast = false;
  auto* all_cmd = app.add_subcommand("verify-all", "run every module check");
  all_cmd->add_flag("--fast", fast, "reduced sample counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    std::optional<Report> rep;
    if (*classify_cmd) {
      rep = classify_dovm_report(measurement_from_json(read_json_file(meas_path)));
    } else if (*disc_cmd) {
      const HermMatrix r1 = matrix_from_json(read_json_file(rho1_path), "rho1");
      const HermMatrix r2 = matrix_from_json(read_json_file(rho2_path), "rho2");
      EffectCone cone;
      if (cone_spec != "psd") {
        const Json cj = read_json_file(cone_spec);
        if (!cj.is_object() || !cj.contains("generators") || !cj["generators"].is_array())
          throw ValidationError("schema error at 'generators': expected an array of matrices");
        for (std::size_t i = 0; i < cj["generators"].size(); ++i)
          cone.generators.push_back(matrix_from_json(cj["generators"][i], "generators[" + std::to_string(i) + "]"));
        if (cj.contains("include_psd")) {
          if (!cj["include_psd"].is_boolean()) throw ValidationError("schema error at 'include_psd': expected a boolean");
          cone.include_psd = cj["include_psd"].get<bool>();
        }
      }
      std::optional<MeasurementFile> mf;
      if (!disc_meas_path.empty()) mf = measurement_from_json(read_json_file(disc_meas_path));
      rep = discriminate_report(r1, r2, cone, mf);
    } else if (*pses_cmd) {
      if (!r_flag && !eps_flag) throw ValidationError("build-pses: one of --r or --eps is required");
      const double r = r_flag ? *r_flag : r_of_eps(*eps_flag);
      AuditOptions ao;
      ao.product_samples = product_samples;
      rep = build_pses_report(local_dim, r, families, resolve_seed(seed_flag, 5), ao);
    } else if (*sim_cmd) {
      if (shrunk_p) {
        rep = shrunk_bloch_example(*shrunk_p, 1000, resolve_seed(seed_flag, 13));
      } else if (!sim_path.empty()) {
        rep = simulability_report(measurement_from_json(read_json_file(sim_path)));
      } else {
        throw ValidationError("simulability: give a measurement file or --shrunk-bloch p");
      }
    } else if (*sym_cmd) {
      const std::uint64_t seed = resolve_seed(seed_flag, 21);
      const BipartiteDims dims(2, 2);
      if (check == "two-symmetry") {
        rep = two_symmetry_counterexample(samples, seed);
      } else if (check == "orbit") {
        ConeRep cone = sym_cone == "psd"   ? ConeRep::named(ConeTag::kPsd, dims)
                       : sym_cone == "sep" ? ConeRep::named(ConeTag::kSep, dims)
                                           : ConeRep::augmented(ConeTag::kSep, dims, {generalized_bell(2).projectors[0]});
        rep = orbit_invariance_check(cone, group == "gu" ? SymmetryGroup::kGU : SymmetryGroup::kLU, samples, seed);
      } else {
        const HermMatrix x = sym_matrix.empty() ? partial_transpose(generalized_bell(2).projectors[0], dims)
                                                : matrix_from_json(read_json_file(sym_matrix), "matrix");
        if (x.dim() != 4) throw DimensionError("gu-falsifier: expected a 4x4 matrix on 2x2");
        const GuWitness w = gu_falsifier(x, dims);
        Report r("gu_falsifier");
        r.le("value_negative", w.value, 0.0, 0.0, "Tr g(rho) g(x)");
        r.le("product_min_negative", w.product_min, 0.0, 0.0, "g(x) is not block-positive");
        r.data()["value"] = w.value;
        r.data()["g_x"] = matrix_to_json(w.gx);
        rep = std::move(r);
      }
    } else if (*app_cmd) {
      rep = verify_appendix_report(resolve_seed(seed_flag, 21));
    } else if (*all_cmd) {
      rep = verify_all_report(fast, resolve_seed(seed_flag, 21));
    }
    const std::string text = rep->to_json().dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(out_path);
      if (!f) throw ValidationError("cannot open output file '" + out_path + "'");
      f << text;
    }
    return rep->passed() ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gptcone
