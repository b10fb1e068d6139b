#include "gptcone/pses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gptcone/cones.hpp"
#include "gptcone/random.hpp"

namespace gptcone {

namespace {

MembershipVerdict make_verdict(Status s, double margin, std::string tier,
                               std::optional<HermMatrix> witness = std::nullopt) {
  MembershipVerdict v;
  v.status = s;
  v.margin = margin;
  v.tier = std::move(tier);
  v.witness = std::move(witness);
  return v;
}

// Moves y toward I/D just enough to satisfy <y, h> >= 0 for every h (all Tr h > 0).
HermMatrix pull_inside(const HermMatrix& y, const std::vector<HermMatrix>& halfspaces) {
  const int d = y.dim();
  double t = 0.0;
  for (const HermMatrix& h : halfspaces) {
    const double a = trace_inner(y, h);
    const double c = h.trace() / d;
    if (a < 0.0) t = std::max(t, -a / (c - a));
  }
  if (t <= 0.0) return y;
  return (1.0 - t) * y + (t / d) * HermMatrix::identity(d);
}

}  // namespace

std::vector<std::string> npm_endpoint_labels(const PsesParams& params) {
  std::vector<std::string> out;
  for (std::size_t f = 0; f < params.families.size(); ++f) {
    out.push_back("N(0;F" + std::to_string(f) + ")");
    if (params.r > 0.0) out.push_back("N(r;F" + std::to_string(f) + ")");
  }
  return out;
}

MembershipVerdict cr_membership(const HermMatrix& x, const PsesParams& params, double tol) {
  if (x.dim() != params.dims.total()) throw DimensionError("cr_membership: dimension mismatch");
  const std::vector<HermMatrix> ends = npm_endpoints(params);
  const MembershipVerdict scan = dual_membership(ends, x, tol);
  if (scan.status == Status::kOut) {
    MembershipVerdict v = scan;
    v.tier = "npm-endpoint-scan";
    return v;
  }
  const SpectrahedronMin sm = min_over_spectrahedron(x, ends, 1200, 3);
  if (sm.value < -tol && sm.feasible) return make_verdict(Status::kOut, sm.value, "cr0-dual-search", sm.argmin);
  if (!sm.feasible) return make_verdict(Status::kUnknown, sm.value, "cr0-dual-search");
  return make_verdict(Status::kIn, std::min(scan.margin, sm.value), "npm-scan+cr0-dual-search");
}

MembershipVerdict cr_dual_membership(const HermMatrix& x, const PsesParams& params, double tol) {
  if (x.dim() != params.dims.total()) throw DimensionError("cr_dual_membership: dimension mismatch");
  const std::vector<HermMatrix> ends = npm_endpoints(params);
  ConicOptions co;
  co.tol = tol;
  const ConicResult r = conic_feasibility(x, ends, true, co);
  if (r.feasible) {
    const HermMatrix& p = *r.certificate.psd_part;
    double worst = std::numeric_limits<double>::infinity();
    for (const HermMatrix& n : ends) worst = std::min(worst, trace_inner(p, n));
    if (worst >= -tol) return make_verdict(Status::kIn, worst, "npm+cr0-dual-decomposition", p);
  }
  if (r.witness) return make_verdict(Status::kOut, -r.bound, "npm+psd-separation", r.witness);
  return make_verdict(Status::kUnknown, -r.bound, "npm+psd");
}

std::vector<HermMatrix> sample_cr0_dual(const PsesParams& params, int count, std::uint64_t seed) {
  const std::vector<HermMatrix> ends = npm_endpoints(params);
  Rng rng(seed);
  std::vector<HermMatrix> out;
  const int d = params.dims.total();
  for (int i = 0; i < count; ++i) {
    const HermMatrix y = i % 2 == 0 ? random_pure_state(d, rng) : random_density(d, rng, 2);
    out.push_back(pull_inside(y, ends));
  }
  return out;
}

Report predual_audit(const PsesParams& params, const AuditOptions& opts) {
  Report rep("predual_audit");
  const std::vector<HermMatrix> ends = npm_endpoints(params);
  const std::vector<std::string> labels = npm_endpoint_labels(params);
  const int d = params.dims.total();
  const double tol = opts.tol;
  rep.data()["r"] = params.r;
  rep.data()["D"] = d;
  rep.data()["families"] = params.families.size();
  rep.data()["r0"] = r0(params.dims);

  Rng rng(opts.seed);
  double con1_min = std::numeric_limits<double>::infinity();
  for (int s = 0; s < opts.product_samples; ++s) {
    const HermMatrix p = random_product_pure_state(params.dims, rng);
    for (const HermMatrix& n : ends) con1_min = std::min(con1_min, trace_inner(p, n));
  }
  double con1_search = std::numeric_limits<double>::infinity();
  for (const HermMatrix& n : ends)
    con1_search = std::min(con1_search, product_minimum(n, params.dims, 16, opts.seed + 1).value);
  rep.ge("con1_sampled_product_min", con1_min, 0.0, tol,
         std::to_string(opts.product_samples) + " random product states against every NPM endpoint");
  rep.ge("con1_product_search_min", con1_search, 0.0, tol, "alternating product-vector minimization");
  rep.data()["con1_analytic_bound"] = (std::sqrt(static_cast<double>(d)) - 1.0) / 2.0;
  rep.le("con1_analytic_r_bound", params.r, (std::sqrt(static_cast<double>(d)) - 1.0) / 2.0, 1e-12);

  const GramCheck gram = gram_predual_check(ends, tol);
  rep.ge("con2_gram_min", gram.value, 0.0, tol, "Gram matrix of all NPM endpoints");
  Json pair;
  pair["i"] = labels[static_cast<std::size_t>(gram.i)];
  pair["j"] = labels[static_cast<std::size_t>(gram.j)];
  pair["value"] = gram.value;
  rep.data()[gram.verdict ? "con2_min_pair" : "con2_negative_pair"] = pair;
  rep.data()["con2_analytic_worst"] = -2.0 * (params.r + 0.5) * (params.r + 0.5) + d / 4.0;
  rep.le("con2_analytic_r_le_r0", params.r, r0(params.dims), 1e-12);

  const std::vector<HermMatrix> ys = sample_cr0_dual(params, opts.cross_samples, opts.seed + 2);
  double cross = std::numeric_limits<double>::infinity();
  double cross_psd = std::numeric_limits<double>::infinity();
  for (const HermMatrix& y : ys) {
    cross_psd = std::min(cross_psd, min_eigenvalue(y));
    for (const HermMatrix& n : ends) cross = std::min(cross, trace_inner(y, n));
  }
  rep.ge("cross_cr0_dual_vs_npm_min", cross, 0.0, tol, "sampled elements of C_r^(0)* against NPM endpoints");
  rep.ge("cross_cr0_dual_psd_min", cross_psd, 0.0, tol);
  return rep;
}

Report hierarchy_audit(const std::vector<double>& rs, const std::vector<MeopFamily>& families, double tol) {
  if (rs.empty()) throw DomainError("hierarchy_audit: empty r list");
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (!(rs[i] > 0.0)) throw DomainError("hierarchy_audit: r values must be positive");
    if (i > 0 && !(rs[i] < rs[i - 1])) throw DomainError("hierarchy_audit: r values must be strictly decreasing");
  }
  Report rep("hierarchy_audit");
  const double rmax = r0(families.front().dims);
  rep.le("r1_le_r0", rs.front(), rmax, 1e-12);
  Json levels = Json::array();
  ConicOptions co;
  co.tol = tol;
  for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
    const PsesParams outer = make_pses_params(families, rs[i]);
    const PsesParams inner = make_pses_params(families, rs[i + 1]);
    const std::vector<HermMatrix> inner_ends = npm_endpoints(inner);
    const std::vector<HermMatrix> outer_ends = npm_endpoints(outer);
    const std::string tag = "level" + std::to_string(i);
    double contained = 0.0;
    for (const HermMatrix& n : inner_ends)
      contained = std::max(contained, conic_feasibility(n, outer_ends, false, co).bound);
    rep.le(tag + ".inner_in_outer_hull", contained, 0.0, std::max(tol, 1e-7), "conic residual of the inner endpoints");
    const double t = rs[i + 1] / rs[i];
    const HermMatrix interp = (1.0 - t) * npm_element(0.0, families.front()) + t * npm_element(rs[i], families.front());
    rep.le(tag + ".interpolation_defect",
           (interp - npm_element(rs[i + 1], families.front())).matrix().cwiseAbs().maxCoeff(), 0.0, 1e-12,
           "N(r') = (1 - r'/r) N(0) + (r'/r) N(r)");
    const HermMatrix witness = npm_element(rs[i], families.front());
    const ConicResult r = conic_feasibility(witness, inner_ends, false, co);
    rep.ge(tag + ".witness_outside_inner_hull", r.bound, 0.0, 0.0, "conic infeasibility bound (heuristic)");
    rep.require(tag + ".witness_infeasible", !r.feasible && r.witness.has_value(),
                "separating functional verified on the inner endpoints");
    levels.push_back({{"r_outer", rs[i]}, {"r_inner", rs[i + 1]}, {"bound", r.bound},
                      {"witness_min_eigenvalue", min_eigenvalue(witness)}});
  }
  rep.data()["levels"] = levels;
  rep.data()["conclusion"] = rs.size() > 1
                                 ? "strict inclusions evidenced; an n-independent family of self-dual modifications exists"
                                 : "single level";
  return rep;
}

DistanceBound distance_upper_bound(const PsesParams& params, const HermMatrix& sigma, int restarts,
                                   std::uint64_t seed) {
  if (!is_maximally_entangled(sigma, params.dims, 1e-8))
    throw DomainError("distance_upper_bound: sigma is not a maximally entangled pure state");
  const int d = params.dims.total();
  DistanceBound out;
  out.alpha = 1.0 / (2.0 * params.r + 1.0);
  out.bound = eps_of_r(params.r);
  const HermMatrix id = HermMatrix::identity(d);
  out.rho0 = out.alpha * sigma + ((1.0 - out.alpha) / (d - 1)) * (id - sigma);
  out.fidelity = fidelity(out.rho0, sigma);
  out.fmax_sampled = max_entangled_fidelity(out.rho0, params.dims, restarts, seed).value;
  out.distance = norm(out.rho0 - sigma, NormKind::kTrace);
  out.rho0_min_eigenvalue = min_eigenvalue(out.rho0);
  out.min_dual_value = std::numeric_limits<double>::infinity();
  for (const HermMatrix& n : npm_endpoints(params)) out.min_dual_value = std::min(out.min_dual_value, trace_inner(out.rho0, n));
  return out;
}

Report distance_report(const PsesParams& params, const std::vector<HermMatrix>& sigmas, double tol) {
  Report rep("distance_upper_bound");
  const int d = params.dims.total();
  const double alpha = 1.0 / (2.0 * params.r + 1.0);
  double worst_gap = -std::numeric_limits<double>::infinity();
  double worst_dual = std::numeric_limits<double>::infinity();
  double worst_psd = std::numeric_limits<double>::infinity();
  double worst_fmax = -std::numeric_limits<double>::infinity();
  double max_dist_dev = 0.0;
  double max_fid_dev = 0.0;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    const DistanceBound b = distance_upper_bound(params, sigmas[i], 8, 7 + i);
    worst_gap = std::max(worst_gap, b.distance - b.bound);
    worst_dual = std::min(worst_dual, b.min_dual_value);
    worst_psd = std::min(worst_psd, b.rho0_min_eigenvalue);
    worst_fmax = std::max(worst_fmax, b.fmax_sampled - alpha);
    max_dist_dev = std::max(max_dist_dev, std::abs(b.distance - 2.0 * (1.0 - alpha)));
    max_fid_dev = std::max(max_fid_dev, std::abs(b.fidelity - alpha));
  }
  rep.data()["sigmas"] = sigmas.size();
  rep.data()["alpha"] = alpha;
  rep.data()["eps_r"] = eps_of_r(params.r);
  rep.data()["expected_distance"] = 2.0 * (1.0 - alpha);
  rep.ge("alpha_ge_one_over_D", alpha, 1.0 / d, 0.0, "F_max(rho0) = alpha holds analytically when alpha >= 1/D");
  rep.le("fidelity_deviation", max_fid_dev, 0.0, 1e-12);
  rep.le("sampled_fmax_minus_alpha", worst_fmax, 0.0, 1e-9);
  rep.ge("rho0_min_eigenvalue", worst_psd, 0.0, tol);
  rep.ge("rho0_npm_min", worst_dual, 0.0, tol, "rho0 against every NPM endpoint");
  rep.le("distance_minus_eps_r", worst_gap, 0.0, tol);
  rep.le("distance_deviation_from_2(1-alpha)", max_dist_dev, 0.0, 1e-9);
  return rep;
}

DistExample dist_example(double r, const MeopFamily& family) {
  const double rmax = r0(family.dims);
  if (!(r > 0.0 && r <= rmax + 1e-12)) {
    std::ostringstream os;
    os << "dist_example: r must lie in (0, " << rmax << "]";
    throw DomainError(os.str());
  }
  DistExample ex;
  ex.r = r;
  const MeopFamily swapped = swap_family(family);
  const HermMatrix m1 = npm_element(r, family);
  const HermMatrix m2 = npm_element(r, swapped);
  ex.measurement = {m1, m2};
  ex.sum_defect = (m1 + m2 - HermMatrix::identity(family.dims.total())).matrix().cwiseAbs().maxCoeff();
  const double a = std::sqrt(r / (2.0 * r + 1.0));
  const double b = std::sqrt((r + 1.0) / (2.0 * r + 1.0));
  const CVector& psi1 = family.vectors[0];
  const CVector& psi2 = family.vectors[1];
  ex.rho1 = HermMatrix::projector(a * psi1 + b * psi2);
  ex.rho2 = HermMatrix::projector(b * psi1 + a * psi2);
  ex.overlap = trace_inner(ex.rho1, ex.rho2);
  const double den = (2.0 * r + 1.0) * (2.0 * r + 1.0);
  ex.printed_closed_form = 2.0 * r * (r + 1.0) / den;
  ex.closed_form = 4.0 * r * (r + 1.0) / den;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      ex.table(i, j) = trace_inner(i == 0 ? ex.rho1 : ex.rho2, ex.measurement[static_cast<std::size_t>(j)]);
  ex.min_npm_value = std::numeric_limits<double>::infinity();
  for (const MeopFamily* f : {&family, &swapped})
    for (double lambda : {0.0, r})
      for (const HermMatrix* rho : {&ex.rho1, &ex.rho2})
        ex.min_npm_value = std::min(ex.min_npm_value, trace_inner(*rho, npm_element(lambda, *f)));
  return ex;
}

OverlapEps overlap_eps_relation(double eps) {
  if (!(eps > 0.0 && eps < 2.0)) throw DomainError("overlap_eps_relation: eps must lie in (0, 2)");
  OverlapEps o;
  o.eps = eps;
  o.r = r_of_eps(eps);
  const double den = (2.0 * o.r + 1.0) * (2.0 * o.r + 1.0);
  o.overlap = 4.0 * o.r * (o.r + 1.0) / den;
  o.printed_closed_form = 2.0 * o.r * (o.r + 1.0) / den;
  const double e2 = eps * eps;
  o.printed_bound = e2 * (e2 + 8.0) / 32.0;
  o.rederived_bound = e2 * (8.0 - e2) / 32.0;
  o.rederived_matches_printed_closed_form = std::abs(o.rederived_bound - o.printed_closed_form) <= 1e-12;
  o.rederived_matches_overlap = std::abs(o.rederived_bound - o.overlap) <= 1e-12;
  o.printed_bound_matches_overlap = std::abs(o.printed_bound - o.overlap) <= 1e-12;
  o.printed_bound_is_lower_bound = o.printed_bound <= o.overlap + 1e-12;
  return o;
}

Report self_duality_verifier(const CandidateCone& candidates, const PsesParams& outer, int samples,
                             std::uint64_t seed, double tol) {
  if (candidates.generators.empty() && !candidates.include_psd)
    throw DomainError("self_duality_verifier: empty candidate set");
  Report rep("self_duality_verifier");
  const int d = outer.dims.total();
  const auto& gens = candidates.generators;

  // (a) candidate cone inside its dual.
  double gram_min = std::numeric_limits<double>::infinity();
  if (!gens.empty()) gram_min = gram_predual_check(gens, tol).value;
  double psd_pair_min = std::numeric_limits<double>::infinity();
  if (candidates.include_psd)
    for (const HermMatrix& g : gens) psd_pair_min = std::min(psd_pair_min, min_eigenvalue(g));
  if (!gens.empty()) rep.ge("a.gram_min", gram_min, 0.0, tol);
  if (candidates.include_psd && !gens.empty())
    rep.ge("a.generators_vs_psd_min", psd_pair_min, 0.0, tol, "generators must be PSD to pair with the PSD part");

  // (b) sampled dual elements are conic-feasible over the candidates.
  Rng rng(seed);
  ConicOptions co;
  co.tol = tol;
  double worst_b = 0.0;
  int tested = 0;
  for (int s = 0; s < samples && tested < samples; ++s) {
    HermMatrix y = candidates.include_psd ? random_density(d, rng, 1 + s % d) : random_hermitian(d, rng);
    if (candidates.include_psd && !gens.empty()) y = pull_inside(y, gens);
    if (!candidates.include_psd) {
      bool in_dual = true;
      for (const HermMatrix& g : gens) in_dual = in_dual && trace_inner(y, g) >= 0.0;
      if (!in_dual) continue;
    }
    ++tested;
    worst_b = std::max(worst_b, conic_feasibility(y, gens, candidates.include_psd, co).bound);
  }
  rep.data()["b_samples_tested"] = tested;
  rep.le("b.dual_samples_residual_max", worst_b, 0.0, tol, "evidence only");

  // (c) sandwich C_r* subset candidates subset C_r.
  double worst_member = std::numeric_limits<double>::infinity();
  std::string worst_member_label;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const MembershipVerdict v = cr_membership(gens[i], outer, tol);
    const double m = v.status == Status::kOut ? v.margin : std::max(v.margin, 0.0);
    if (m < worst_member) {
      worst_member = m;
      worst_member_label = "generator[" + std::to_string(i) + "]";
    }
  }
  if (candidates.include_psd) {
    Rng prng(seed + 1);
    for (int s = 0; s < 20; ++s) {
      const HermMatrix p = random_pure_state(d, prng);
      const MembershipVerdict v = cr_membership(p, outer, tol);
      const double m = v.status == Status::kOut ? v.margin : std::max(v.margin, 0.0);
      if (m < worst_member) {
        worst_member = m;
        worst_member_label = "psd_sample[" + std::to_string(s) + "]";
      }
    }
  }
  rep.ge("c.candidates_in_outer_min", worst_member, 0.0, tol);
  if (worst_member < -tol) rep.data()["c_failing_candidate"] = worst_member_label;

  const std::vector<HermMatrix> ends = npm_endpoints(outer);
  const std::vector<std::string> labels = npm_endpoint_labels(outer);
  double worst_c = 0.0;
  std::string missing;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const double bnd = conic_feasibility(ends[i], gens, candidates.include_psd, co).bound;
    if (bnd > worst_c) {
      worst_c = bnd;
      missing = labels[i];
    }
  }
  rep.le("c.outer_dual_generators_residual_max", worst_c, 0.0, tol);
  if (worst_c > tol) rep.data()["c_missing_dual_generator"] = missing;
  return rep;
}

std::vector<MeopFamily> pses_families(int m, int k, std::uint64_t seed) {
  if (k < 1) throw DomainError("pses_families: need at least one family");
  const MeopFamily base = generalized_bell(m);
  if (k == 1) return {base};
  std::vector<MeopFamily> out = p0_families(base);
  Rng rng(seed);
  for (int i = 2; i < k; ++i) out.push_back(local_rotate_family(base, haar_unitary(m, rng), haar_unitary(m, rng)));
  return out;
}

Report build_pses_report(int m, double r, int families, std::uint64_t seed, const AuditOptions& opts) {
  Report rep("build_pses");
  const PsesParams params = make_pses_params(pses_families(m, families, seed), r);
  rep.data()["local_dim"] = m;
  rep.data()["r"] = r;
  rep.data()["eps_r"] = eps_of_r(r);
  rep.data()["r0"] = r0(params.dims);
  rep.data()["families"] = families;
  rep.data()["seed"] = seed;
  AuditOptions ao = opts;
  ao.seed = seed;
  rep.absorb(predual_audit(params, ao));

  Rng rng(seed + 17);
  std::vector<HermMatrix> sigmas;
  const CVector phi = canonical_max_entangled(m);
  for (int i = 0; i < 20; ++i) {
    CMatrix u = CMatrix::Zero(m * m, m * m);
    const CMatrix ub = haar_unitary(m, rng);
    for (int a = 0; a < m; ++a) u.block(a * m, a * m, m, m) = ub;
    sigmas.push_back(HermMatrix::projector(u * phi));
  }
  rep.absorb(distance_report(params, sigmas, opts.tol));

  if (r > 0.0 && r <= r0(params.dims) + 1e-12) {
    const DistExample ex = dist_example(r, params.families.front());
    Report dr("dist_example");
    dr.le("table_deviation", (ex.table - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 0.0, 1e-10);
    dr.le("sum_defect", ex.sum_defect, 0.0, 1e-12);
    dr.ge("overlap_positive", ex.overlap, 0.0, 0.0);
    dr.near("overlap_vs_4r(r+1)/(2r+1)^2", ex.overlap, ex.closed_form, 1e-12);
    dr.ge("npm_min", ex.min_npm_value, 0.0, 1e-12);
    dr.data()["overlap"] = ex.overlap;
    dr.data()["printed_closed_form_2r(r+1)/(2r+1)^2"] = ex.printed_closed_form;
    dr.data()["printed_closed_form_matches"] = std::abs(ex.overlap - ex.printed_closed_form) <= 1e-12;
    rep.absorb(dr);
  }
  return rep;
}

}  // namespace gptcone
