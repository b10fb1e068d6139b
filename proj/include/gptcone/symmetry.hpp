#pragma once

// Unitary-orbit symmetry tests on cones, the global-unitary falsifier and the
// 2-symmetry counterexample for SEP.

#include <cstdint>
#include <optional>

#include "gptcone/cones.hpp"
#include "gptcone/report.hpp"

namespace gptcone {

enum class TransformKind { kGlobalUnitary, kLocalUnitary, kLocalWithTranspose, kSwapFactors };
const char* to_string(TransformKind k);

// x -> U x U^dagger (global), or the local form f(X (x) Y) = f_A(X) (x) f_B(Y)
// with f_A, f_B unitary conjugations optionally preceded by a transpose and
// optionally followed by exchanging the factors.
struct TransformSpec {
  TransformKind kind = TransformKind::kGlobalUnitary;
  BipartiteDims dims;
  CMatrix u;
  CMatrix ua;
  CMatrix ub;
  bool transpose_a = false;
  bool transpose_b = false;
  bool swap = false;

  static TransformSpec global(const CMatrix& u, BipartiteDims dims);
  static TransformSpec local(const CMatrix& ua, const CMatrix& ub, BipartiteDims dims, bool transpose_a = false,
                             bool transpose_b = false, bool swap = false);
  static TransformSpec swap_factors(BipartiteDims dims);

  HermMatrix apply(const HermMatrix& x) const;
  ProductTerm apply(const ProductTerm& t) const;
  BipartiteDims output_dims() const;
};

// Exchanges the tensor factors of x on dims (a, b), giving an operator on (b, a).
HermMatrix swap_factors(const HermMatrix& x, BipartiteDims dims);

enum class SymmetryGroup { kGU, kLU };

// Applies Haar-sampled group elements to sampled cone elements; an Out verdict
// on an image is a falsification recorded with (g, x).
Report orbit_invariance_check(const ConeRep& cone, SymmetryGroup group, int samples, std::uint64_t seed,
                              double tol = kDefaultTol);

struct GuWitness {
  CVector negative_vector;  // rho = |v><v| with Tr rho x < 0
  CMatrix g;                // unitary with g|v> = phase |0...0>
  double value = 0.0;       // Tr g(rho) g(x)
  double product_min = 0.0; // sampled product-vector minimum of g(x)
  HermMatrix gx;
};

// Throws DomainError for PSD x.
GuWitness gu_falsifier(const HermMatrix& x, BipartiteDims dims, double tol = kDefaultTol);

Report two_symmetry_counterexample(int samples = 200, std::uint64_t seed = 21);

}  // namespace gptcone
