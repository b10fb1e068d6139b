#pragma once

// Dual cones, pre-duality Gram tests, and conic feasibility for cones of the
// form cone(generators) + PSD.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gptcone/herm.hpp"

namespace gptcone {

enum class Status { kIn, kOut, kUnknown };
const char* to_string(Status s);

struct MembershipVerdict {
  Status status = Status::kUnknown;
  std::optional<HermMatrix> witness;  // separating functional (Out) or certificate (In)
  double margin = 0.0;
  std::string tier;
};

// In iff min_g <x, g> >= -tol. Out carries the violating generator.
MembershipVerdict dual_membership(const std::vector<HermMatrix>& generators, const HermMatrix& x,
                                  double tol = kDefaultTol);

struct GramCheck {
  bool verdict = true;
  int i = -1;
  int j = -1;
  double value = 0.0;  // most negative (or smallest) Gram entry
  Eigen::MatrixXd gram;
};

// True iff every pairwise <g_i, g_j> >= -tol.
GramCheck gram_predual_check(const std::vector<HermMatrix>& generators, double tol = kDefaultTol);

struct ConicOptions {
  int iters = 10000;
  double tol = kDefaultTol;
};

struct ConicCertificate {
  std::vector<double> coefficients;
  std::optional<HermMatrix> psd_part;
  double residual = 0.0;
};

struct ConicResult {
  bool feasible = false;
  ConicCertificate certificate;
  // sqrt of the final objective; for infeasible results a heuristic, not a proof.
  double bound = 0.0;
  int iterations = 0;
  // Functional w with <w, g> >= -tol on generators (and w PSD when include_psd)
  // and <w, x> < -tol, normalized to unit HS norm; set only when verified.
  std::optional<HermMatrix> witness;
};

// Decides x in cone(generators) (+ PSD when include_psd) by projected gradient on
// f(mu) = ||x - G mu||^2 (resp. dist(x - G mu, PSD)^2) over mu >= 0.
ConicResult conic_feasibility(const HermMatrix& x, const std::vector<HermMatrix>& generators,
                              bool include_psd, const ConicOptions& opts = {});

struct SpectrahedronMin {
  double value = 0.0;
  HermMatrix argmin;
  double max_violation = 0.0;  // max_h max(0, -<argmin, h>)
  bool feasible = false;
};

// Heuristic min { <x, y> : y PSD, Tr y = 1, <y, h> >= 0 for all h } by penalized
// Frank-Wolfe. When every halfspace has Tr h > 0 the argmin is pulled toward
// I/d until it is exactly feasible, so a negative value is a valid Out-witness.
SpectrahedronMin min_over_spectrahedron(const HermMatrix& x, const std::vector<HermMatrix>& halfspaces,
                                        int iters = 2000, int restarts = 4, std::uint64_t seed = 3);

struct DualIdentityResult {
  int samples = 0;
  int disagreements = 0;
  int in_count = 0;  // points in (C1 + C2)*
  std::vector<int> disagreeing;
};

// Compares membership in dual(g1 u g2) with dual(g1) and dual(g2) on each sample.
DualIdentityResult dual_identity_check(const std::vector<HermMatrix>& g1, const std::vector<HermMatrix>& g2,
                                       const std::vector<HermMatrix>& samples, double tol = kDefaultTol);

}  // namespace gptcone
