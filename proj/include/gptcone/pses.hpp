#pragma once

// Pseudo-standard entanglement structures: the cones C_r(P) built from NPM_r(P),
// their pre-duality audits, distance bounds and the non-orthogonal
// discrimination example.

#include <cstdint>
#include <string>
#include <vector>

#include "gptcone/dual_engine.hpp"
#include "gptcone/meop.hpp"
#include "gptcone/report.hpp"

namespace gptcone {

// x in C_r = (C_r^(0)* + NPM_r)*: NPM endpoint scan, then a search for y in
// C_r^(0)* = PSD n {y : <y, N> >= 0} with <x, y> < 0.
MembershipVerdict cr_membership(const HermMatrix& x, const PsesParams& params, double tol = kDefaultTol);
// x in C_r* = C_r^(0)* + cone(NPM endpoints).
MembershipVerdict cr_dual_membership(const HermMatrix& x, const PsesParams& params, double tol = kDefaultTol);

std::vector<std::string> npm_endpoint_labels(const PsesParams& params);

// Samples of C_r^(0)*: random states pulled toward I/D until every NPM
// endpoint pairs non-negatively with them.
std::vector<HermMatrix> sample_cr0_dual(const PsesParams& params, int count, std::uint64_t seed);

struct AuditOptions {
  int product_samples = 10000;
  int cross_samples = 200;
  std::uint64_t seed = 5;
  double tol = kDefaultTol;
};

Report predual_audit(const PsesParams& params, const AuditOptions& opts = {});
Report hierarchy_audit(const std::vector<double>& rs, const std::vector<MeopFamily>& families,
                       double tol = kDefaultTol);

struct DistanceBound {
  double alpha = 0.0;      // 1/(2r + 1)
  double bound = 0.0;      // eps_r
  double distance = 0.0;   // ||rho0 - sigma||_1
  double fidelity = 0.0;   // Tr rho0 sigma
  double fmax_sampled = 0.0;
  double min_dual_value = 0.0;  // min over NPM endpoints of <rho0, N>
  double rho0_min_eigenvalue = 0.0;
  HermMatrix rho0;
};

// rho0 = alpha sigma + (1 - alpha)(I - sigma)/(D - 1) for maximally entangled sigma.
DistanceBound distance_upper_bound(const PsesParams& params, const HermMatrix& sigma, int restarts = 32,
                                   std::uint64_t seed = 7);
Report distance_report(const PsesParams& params, const std::vector<HermMatrix>& sigmas, double tol = kDefaultTol);

struct DistExample {
  double r = 0.0;
  std::vector<HermMatrix> measurement;  // {N(r; P), N(r; swap P)}
  HermMatrix rho1;
  HermMatrix rho2;
  double overlap = 0.0;              // Tr rho1 rho2 of the constructed states
  double printed_closed_form = 0.0;  // 2r(r+1)/(2r+1)^2
  double closed_form = 0.0;          // 4r(r+1)/(2r+1)^2
  Eigen::Matrix2d table;             // <rho_i, M_j>
  double sum_defect = 0.0;           // max |M1 + M2 - I|
  double min_npm_value = 0.0;        // min over states, endpoints, families
};

DistExample dist_example(double r, const MeopFamily& family);

struct OverlapEps {
  double eps = 0.0;
  double r = 0.0;
  double overlap = 0.0;              // 4r(r+1)/(2r+1)^2, the constructed states
  double printed_closed_form = 0.0;  // 2r(r+1)/(2r+1)^2
  double printed_bound = 0.0;        // eps^2 (eps^2 + 8)/32
  double rederived_bound = 0.0;      // eps^2 (8 - eps^2)/32
  bool rederived_matches_printed_closed_form = false;
  bool rederived_matches_overlap = false;
  bool printed_bound_matches_overlap = false;
  bool printed_bound_is_lower_bound = false;
};

OverlapEps overlap_eps_relation(double eps);

struct CandidateCone {
  std::vector<HermMatrix> generators;
  bool include_psd = false;
};

Report self_duality_verifier(const CandidateCone& candidates, const PsesParams& outer, int samples = 100,
                             std::uint64_t seed = 9, double tol = 1e-7);

// Families for build-pses: P0(generalized Bell) plus k - 2 locally rotated copies.
std::vector<MeopFamily> pses_families(int m, int k, std::uint64_t seed);
Report build_pses_report(int m, double r, int families, std::uint64_t seed, const AuditOptions& opts = {});

}  // namespace gptcone
