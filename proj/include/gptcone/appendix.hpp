#pragma once

// Exact 2x2-qubit fixtures: the measurement {e1, e2}, the separable pair
// rho1 = |00><00|, rho2 = |++><++|, and the entangled pure pair sigma1, sigma2.

#include "gptcone/herm.hpp"

namespace gptcone::appendix {

HermMatrix e1();
HermMatrix e2();
HermMatrix rho1();
HermMatrix rho2();
HermMatrix sigma1();
HermMatrix sigma2();
// |00><00| and |11><11|, the orthogonal product pair of the 2-symmetry example.
HermMatrix product00();
HermMatrix product11();
BipartiteDims dims();

}  // namespace gptcone::appendix
