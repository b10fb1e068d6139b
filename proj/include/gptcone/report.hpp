#pragma once

// Named numeric checks collected into a JSON report ("schema": "gptcone/1").

#include <string>
#include <vector>

#include "gptcone/json_io.hpp"

namespace gptcone {

struct Check {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string relation;  // "near", "le", "ge", "true"
  std::string note;
};

class Report {
 public:
  explicit Report(std::string name);

  const std::string& name() const { return name_; }

  // |value - expected| <= tol
  bool near(const std::string& check, double value, double expected, double tol,
            const std::string& note = "");
  // value <= bound + tol
  bool le(const std::string& check, double value, double bound, double tol,
          const std::string& note = "");
  // value >= bound - tol
  bool ge(const std::string& check, double value, double bound, double tol,
          const std::string& note = "");
  bool require(const std::string& check, bool ok, const std::string& note = "");

  // Appends the checks of `sub` with names prefixed by "<sub.name>.".
  void absorb(const Report& sub);

  Json& data() { return data_; }
  const Json& data() const { return data_; }
  const std::vector<Check>& checks() const { return checks_; }
  bool passed() const;
  std::vector<std::string> failures() const;
  Json to_json() const;

 private:
  bool add(Check c);
  std::string name_;
  std::vector<Check> checks_;
  Json data_ = Json::object();
};

}  // namespace gptcone
