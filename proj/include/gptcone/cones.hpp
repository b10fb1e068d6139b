#pragma once

// Positive cones, GPT models and measurements, with tiered membership oracles
// for the named cones PSD, SEP, SEP* (block-positive), the classical orthant,
// the shrunk Bloch cone C_p, C_s^nege and the PSES cones C_r.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gptcone/dual_engine.hpp"
#include "gptcone/json_io.hpp"
#include "gptcone/meop.hpp"

namespace gptcone {

enum class ConeTag { kNone, kPsd, kSep, kSepDual, kClassicalOrthant, kShrunkBloch, kCsNeg, kCr };
const char* to_string(ConeTag tag);
ConeTag cone_tag_from_string(const std::string& s);

struct SepOptions {
  int restarts = 64;          // product-vector minimization restarts (SEP*)
  std::uint64_t seed = 11;
  bool low_dim_exact = false;  // accept PPT as exact when D <= 6
  bool try_decomposition = true;  // SEP*: search X = P + Gamma(Q)
  int decomposition_iters = 4000;
};

// Semantics: the cone is the Minkowski sum of the oracle cone (when tagged)
// and cone(generators); an H-description alone is {x : <x, h> >= 0}; when both
// V- and H-descriptions are given they describe the same cone.
struct ConeRep {
  ConeTag tag = ConeTag::kNone;
  double param = 0.0;  // p for SHRUNK_BLOCH, s for CS_NEG
  std::optional<PsesParams> cr;
  BipartiteDims dims;
  std::vector<HermMatrix> generators;
  std::vector<HermMatrix> dual_generators;

  int dim() const { return dims.total(); }
  int space_dim() const { return dims.total() * dims.total(); }

  static ConeRep named(ConeTag tag, BipartiteDims dims, double param = 0.0);
  static ConeRep cr_cone(const PsesParams& params);
  static ConeRep generated(std::vector<HermMatrix> generators, BipartiteDims dims);
  static ConeRep halfspaces(std::vector<HermMatrix> dual_generators, BipartiteDims dims);
  static ConeRep described(std::vector<HermMatrix> generators, std::vector<HermMatrix> dual_generators,
                           BipartiteDims dims);
  // Oracle cone plus extra rays, e.g. Hul(SEP u {sigma_1, sigma_2}).
  static ConeRep augmented(ConeTag tag, BipartiteDims dims, std::vector<HermMatrix> extra,
                           double param = 0.0);
};

// Throws ValidationError when the invariants of ConeRep do not hold.
void validate_cone(const ConeRep& cone);

MembershipVerdict membership(const ConeRep& cone, const HermMatrix& x, double tol = kDefaultTol,
                             const SepOptions& opts = {});
// Membership in the dual cone (effect cone) of `cone`.
MembershipVerdict dual_cone_membership(const ConeRep& cone, const HermMatrix& x, double tol = kDefaultTol,
                                       const SepOptions& opts = {});

using ProductTerm = std::pair<HermMatrix, HermMatrix>;

MembershipVerdict psd_membership(const HermMatrix& x, double tol = kDefaultTol);
// `decomposition`, when given, is a claimed sum of a_i (x) b_i with a_i, b_i PSD.
MembershipVerdict sep_membership(const HermMatrix& x, BipartiteDims dims, double tol = kDefaultTol,
                                 const SepOptions& opts = {},
                                 const std::vector<ProductTerm>* decomposition = nullptr);
MembershipVerdict sep_dual_membership(const HermMatrix& x, BipartiteDims dims, double tol = kDefaultTol,
                                      const SepOptions& opts = {});

// ||I - X||_2 <= 1 (+tol): sufficient for X in SEP.
bool gurvits_ball(const HermMatrix& x, double tol = kDefaultTol);
double gurvits_distance(const HermMatrix& x);

struct ProductMinimum {
  double value = 0.0;  // min <a (x) b| X |a (x) b> found
  CVector a;
  CVector b;
  int restarts = 0;
  std::uint64_t seed = 0;
};
ProductMinimum product_minimum(const HermMatrix& x, BipartiteDims dims, int restarts, std::uint64_t seed);

struct Decomposition {
  bool found = false;
  HermMatrix p;  // PSD
  HermMatrix q;  // PSD, x ~ p + Gamma(q)
  double residual = 0.0;
  int iterations = 0;
};
// Projected-gradient search for x = P + Gamma(Q) with P, Q PSD (sufficient for SEP*).
Decomposition decomposable_certificate(const HermMatrix& x, BipartiteDims dims, int iters = 4000,
                                       double tol = kDefaultTol);

struct GptModel {
  ConeRep cone;
  HermMatrix unit;

  GptModel(ConeRep cone, HermMatrix unit);
  BipartiteDims dims() const { return cone.dims; }
};

struct Measurement {
  std::vector<HermMatrix> effects;
  std::vector<MembershipVerdict> verdicts;
  double sum_defect = 0.0;  // max |sum_i M_i - u|
};

class InvalidMeasurement : public ValidationError {
 public:
  InvalidMeasurement(const std::string& what, int index, Status status)
      : ValidationError(what), index(index), status(status) {}
  int index;  // -1 when the sum condition failed
  Status status;
};

// Requires sum = u to 1e-10 and no effect with an Out verdict from the
// dual-cone oracle (strict also rejects Unknown).
Measurement validate_measurement(const GptModel& model, const std::vector<HermMatrix>& effects,
                                 double tol = kDefaultTol, bool strict = false,
                                 const SepOptions& opts = {});

struct CapacityDemo {
  std::vector<HermMatrix> states;
  Measurement measurement;
  Eigen::MatrixXd table;  // <rho_k, M_l>
  double deviation = 0.0;  // max |table - identity|
};
CapacityDemo capacity_demo(const GptModel& model);

Json verdict_to_json(const MembershipVerdict& v);
Json cone_to_json(const ConeRep& cone);
ConeRep cone_from_json(const Json& j);

}  // namespace gptcone
