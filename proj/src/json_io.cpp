#include "gptcone/json_io.hpp"

#include <fstream>
#include <sstream>

namespace gptcone {

Json matrix_to_json(const HermMatrix& x) {
  const int d = x.dim();
  Json re = Json::array();
  Json im = Json::array();
  for (int i = 0; i < d; ++i) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (int j = 0; j < d; ++j) {
      rr.push_back(x(i, j).real());
      ri.push_back(x(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  Json out;
  out["dim"] = d;
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
  throw ValidationError("schema error at '" + field + "': " + what);
}

void read_part(const Json& j, const std::string& field, int d, CMatrix& m, bool imag) {
  if (!j.is_array() || static_cast<int>(j.size()) != d)
    schema_error(field, "expected an array of " + std::to_string(d) + " rows");
  for (int i = 0; i < d; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      schema_error(row_field, "expected " + std::to_string(d) + " entries");
    for (int k = 0; k < d; ++k) {
      const Json& e = row[static_cast<std::size_t>(k)];
      if (!e.is_number())
        schema_error(row_field + "[" + std::to_string(k) + "]", "expected a number");
      const double v = e.get<double>();
      if (imag)
        m(i, k) = cplx(m(i, k).real(), v);
      else
        m(i, k) = cplx(v, m(i, k).imag());
    }
  }
}

}  // namespace

HermMatrix matrix_from_json(const Json& j, const std::string& field, HermMatrix::Repair repair) {
  if (!j.is_object()) schema_error(field, "expected an object");
  if (!j.contains("dim")) schema_error(field + ".dim", "missing");
  if (!j["dim"].is_number_integer()) schema_error(field + ".dim", "expected an integer");
  const int d = j["dim"].get<int>();
  if (d <= 0 || d > 64) schema_error(field + ".dim", "must be in [1, 64]");
  if (!j.contains("re")) schema_error(field + ".re", "missing");
  CMatrix m = CMatrix::Zero(d, d);
  read_part(j["re"], field + ".re", d, m, false);
  if (j.contains("im")) read_part(j["im"], field + ".im", d, m, true);
  try {
    return HermMatrix(std::move(m), repair);
  } catch (const ValidationError& e) {
    schema_error(field, e.what());
  }
}

Json vector_to_json(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace gptcone
