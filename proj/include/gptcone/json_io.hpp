#pragma once

// Matrix and report serialization. Matrices use {"dim": d, "re": [[...]], "im": [[...]]}.

#include <string>

#include "json.hpp"

#include "gptcone/herm.hpp"

namespace gptcone {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const HermMatrix& x);
// `field` names the location of `j` in error messages, e.g. "effects[1]".
HermMatrix matrix_from_json(const Json& j, const std::string& field = "matrix",
                            HermMatrix::Repair repair = HermMatrix::Repair::kNo);
Json vector_to_json(const RVector& v);
Json read_json_file(const std::string& path);

}  // namespace gptcone
