#pragma once

// Two-state discrimination: error functionals, the Helstrom baseline, minimum
// error over a restricted effect cone, and the preceding-work criteria.

#include <vector>

#include "gptcone/dovm.hpp"
#include "gptcone/report.hpp"

namespace gptcone {

// Tr rho1 M2 + Tr rho2 M1
double err_of_measurement(const HermMatrix& rho1, const HermMatrix& rho2, const std::vector<HermMatrix>& effects);

void require_state(const HermMatrix& rho, const char* what, double tol = 1e-9);

struct HelstromResult {
  double value = 0.0;
  std::vector<HermMatrix> effects;  // M1 = projector onto the positive eigenspace of rho1 - rho2, M2 = I - M1
};
HelstromResult helstrom(const HermMatrix& rho1, const HermMatrix& rho2);

struct EffectCone {
  std::vector<HermMatrix> generators;
  bool include_psd = true;
};

struct AdmmOptions {
  int iters = 50000;
  double tol = 1e-11;
  double rho = 1.0;
};

struct ConeDiscrimination {
  double value = 0.0;
  std::vector<HermMatrix> effects;
  double feasibility_residual = 0.0;  // ||(M1 + M2) - u|| of the optimizer's split
  int iterations = 0;
  bool converged = false;
  int candidate = -1;  // index of the supplied candidate that won, -1 for the optimizer
};

// min Tr rho1 (u - M) + Tr rho2 M over M, u - M in cone(generators) (+ PSD).
ConeDiscrimination min_error_over_cone(const HermMatrix& rho1, const HermMatrix& rho2, const EffectCone& cone,
                                       const HermMatrix& unit,
                                       const std::vector<std::vector<HermMatrix>>& candidates = {},
                                       const AdmmOptions& opts = {});

// max |<rho_k, M_l> - delta_kl|
double distinguishability_deviation(const std::vector<HermMatrix>& states, const std::vector<HermMatrix>& effects);
bool perfectly_distinguishable(const std::vector<HermMatrix>& states, const std::vector<HermMatrix>& effects,
                               double tol = kDefaultTol);

struct AraiResult {
  bool distinguishable = false;
  double lhs = 0.0;
};
AraiResult arai_criterion(const HermMatrix& rho_a1, const HermMatrix& rho_b1, const HermMatrix& rho_a2,
                          const HermMatrix& rho_b2);

enum class YahFamily { kNeg, kSco };
bool yah_region(double x, double y, YahFamily family, double param);
double sco_to_neg_parameter(double t);  // s = sqrt(t)/(1 + t)

double shannon_entropy_bits(const std::vector<double>& p);
Report entropy_example_audit();

}  // namespace gptcone
