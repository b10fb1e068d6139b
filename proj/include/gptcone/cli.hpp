#pragma once

// Report builders behind the gptcone subcommands, and the argv entry point.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gptcone/discrimination.hpp"
#include "gptcone/report.hpp"

namespace gptcone {

// {"dims": [a, b], "effects": [matrix, ...]}
struct MeasurementFile {
  BipartiteDims dims;
  std::vector<HermMatrix> effects;
};
MeasurementFile measurement_from_json(const Json& j);
Json measurement_to_json(const MeasurementFile& m);

Report classify_dovm_report(const MeasurementFile& m, double tol = kDefaultTol);
Report discriminate_report(const HermMatrix& rho1, const HermMatrix& rho2, const EffectCone& cone,
                           const std::optional<MeasurementFile>& measurement = std::nullopt);
Report simulability_report(const MeasurementFile& m, double tol = kDefaultTol);
Report verify_appendix_report(std::uint64_t seed);
Report verify_all_report(bool fast, std::uint64_t seed);

// Exit codes: 0 all checks pass, 2 a check failed, 1 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gptcone
