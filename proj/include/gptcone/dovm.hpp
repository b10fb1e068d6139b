#pragma once

// Two-outcome dual-operator-valued measures {M1, M2} with M1 + M2 = I and
// block-positive effects, their BQ/AQ/NAQ/POVM classification, and the
// constructive witnesses attached to each class.

#include <array>
#include <optional>
#include <string>

#include "gptcone/cones.hpp"
#include "gptcone/random.hpp"

namespace gptcone {

struct Dovm {
  HermMatrix m1;
  HermMatrix m2;
  BipartiteDims dims;
  std::array<MembershipVerdict, 2> evidence;  // SEP* verdicts of m1 and m2

  const HermMatrix& effect(int i) const { return i == 0 ? m1 : m2; }
};

// Checks m1 + m2 = I to 1e-10 and that neither effect is Out of SEP*.
Dovm make_dovm(HermMatrix m1, HermMatrix m2, BipartiteDims dims, double tol = kDefaultTol,
               const SepOptions& opts = {});

enum class DovmTag { kBQ, kAQ, kNAQ, kPOVM };
const char* to_string(DovmTag tag);

struct EffectSpectrum {
  double lambda1 = 0.0;
  double lambda_d = 0.0;
};

struct DovmClass {
  DovmTag tag = DovmTag::kPOVM;
  int deciding_effect = -1;  // -1 for POVM
  std::array<EffectSpectrum, 2> spectra;
};

DovmClass classify(const Dovm& dovm, double tol = kDefaultTol);

struct BqWitness {
  HermMatrix rho1;
  HermMatrix rho2;
  CVector phi1;
  CVector phi2;
  double overlap = 0.0;
  Eigen::Matrix2d table;  // <rho_i, M_j>
};

// Pure states perfectly discriminated by a BQ measurement yet non-orthogonal.
BqWitness bq_witness_states(const Dovm& dovm, double tol = kDefaultTol);

struct AqAdvantage {
  HermMatrix rho1;
  HermMatrix rho2;
  double err = 0.0;
  double helstrom = 0.0;
  double margin = 0.0;            // helstrom - err
  double predicted_margin = 0.0;  // (lambda_d - lambda_1 - 1)/(sqrt(2) d)
  double gurvits_distance = 0.0;  // ||d rho_{2} - I||_2 for the non-maximally-mixed state
  MembershipVerdict sep1;
  MembershipVerdict sep2;
};

// Separable states on which the measurement beats the Helstrom bound.
AqAdvantage aq_advantage_states(const Dovm& dovm, double tol = kDefaultTol);

// {T/lambda_d(T), I - T/lambda_d(T)} for T with a negative and a positive eigenvalue.
Dovm aq_from_subcone_witness(const HermMatrix& t, BipartiteDims dims, double tol = kDefaultTol,
                             const SepOptions& opts = {});

// {alpha_1, alpha_2, beta_1, beta_2} two-qubit measurement M_i = T_i + Gamma(T_i).
Dovm preceding_measurement(double alpha1, double alpha2, double beta1, double beta2);

struct DovmSample {
  std::optional<Dovm> dovm;
  int rejected = 0;
};

// Random frame plus a spectrum drawn for the requested class, screened by the
// SEP* oracle; BQ/AQ/NAQ frames are locally rotated generalized Bell bases.
DovmSample sample_dovm(DovmTag target, BipartiteDims dims, Rng& rng, int max_attempts = 50,
                       const SepOptions& opts = {});

Json dovm_class_to_json(const DovmClass& c);

}  // namespace gptcone
