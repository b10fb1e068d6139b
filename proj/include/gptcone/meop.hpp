#pragma once

// Orthonormal families of maximally entangled projectors and the non-positive
// matrices N(lambda; {E_k}) built from them.

#include <vector>

#include "gptcone/herm.hpp"

namespace gptcone {

struct MeopFamily {
  BipartiteDims dims;
  std::vector<CVector> vectors;        // |psi_k>, unit norm
  std::vector<HermMatrix> projectors;  // |psi_k><psi_k|

  int size() const { return static_cast<int>(projectors.size()); }
};

// Checks orthonormality, completeness and maximal entanglement to `tol`.
MeopFamily make_meop_family(std::vector<CVector> vectors, BipartiteDims dims, double tol = 1e-10);
// (I (x) X^j Z^k)|Phi>, index j*m + k; m = 2 gives the Bell basis.
MeopFamily generalized_bell(int m);
// Exchanges the first two projectors.
MeopFamily swap_family(const MeopFamily& family);
// (Ua (x) Ub)|psi_k> for every member.
MeopFamily local_rotate_family(const MeopFamily& family, const CMatrix& ua, const CMatrix& ub);

// -lambda E_1 + (1 + lambda) E_2 + (1/2) sum_{k>=3} E_k
HermMatrix npm_element(double lambda, const MeopFamily& family);

// (sqrt(2D) - 2)/4 with D = dA*dB.
double r0(BipartiteDims dims);
double eps_of_r(double r);
double r_of_eps(double eps);

struct PsesParams {
  std::vector<MeopFamily> families;
  double r = 0.0;
  BipartiteDims dims;
};

PsesParams make_pses_params(std::vector<MeopFamily> families, double r);
// {P, swap(P)}
std::vector<MeopFamily> p0_families(const MeopFamily& family);
// N(0; F) and N(r; F) for every family F (N(0) only when r = 0).
std::vector<HermMatrix> npm_endpoints(const PsesParams& params);

}  // namespace gptcone
