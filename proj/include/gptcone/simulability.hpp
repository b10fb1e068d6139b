#pragma once

// Domains of DOVMs, n-copy overlaps and constructive non-simulability
// certificates, including the shrunk-Bloch-sphere example.

#include <optional>
#include <string>

#include "gptcone/dovm.hpp"
#include "gptcone/report.hpp"

namespace gptcone {

// Tr rho M_i >= -tol for both effects. Throws ValidationError for non-PSD rho.
bool domain_contains(const Dovm& dovm, const HermMatrix& rho, double tol = kDefaultTol);

// (Tr rho1 rho2)^n for states rho1, rho2; n >= 1.
double n_copy_overlap(const HermMatrix& rho1, const HermMatrix& rho2, int n);
// Tr rho1^{(x)n} rho2^{(x)n} by forming the tensor powers.
double n_copy_overlap_explicit(const HermMatrix& rho1, const HermMatrix& rho2, int n);

struct SimulabilityCertificate {
  bool non_simulable = false;
  DovmClass cls;
  std::optional<BqWitness> witness;
  double overlap = 0.0;
  double table_deviation = 0.0;
  std::string reason;
};

// NonSimulable (with the witness pair) iff the measurement is BQ; otherwise Inconclusive.
SimulabilityCertificate non_simulability_certificate(const Dovm& dovm, double tol = kDefaultTol);
Json certificate_to_json(const SimulabilityCertificate& c, int max_copies = 5);

// M = -((1-p)/(2p)) P1 + ((1+p)/(2p)) P2 on a qubit with the cone C_p.
Report shrunk_bloch_example(double p, int samples = 1000, std::uint64_t seed = 13, double tol = kDefaultTol);

}  // namespace gptcone
