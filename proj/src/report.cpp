#include "gptcone/report.hpp"

#include <cmath>

namespace gptcone {

Report::Report(std::string name) : name_(std::move(name)) {}

bool Report::add(Check c) {
  const bool ok = c.pass;
  checks_.push_back(std::move(c));
  return ok;
}

bool Report::near(const std::string& check, double value, double expected, double tol,
                  const std::string& note) {
  const bool ok = std::isfinite(value) && std::abs(value - expected) <= tol;
  return add({check, value, expected, tol, ok, "near", note});
}

bool Report::le(const std::string& check, double value, double bound, double tol,
                const std::string& note) {
  const bool ok = std::isfinite(value) && value <= bound + tol;
  return add({check, value, bound, tol, ok, "le", note});
}

bool Report::ge(const std::string& check, double value, double bound, double tol,
                const std::string& note) {
  const bool ok = std::isfinite(value) && value >= bound - tol;
  return add({check, value, bound, tol, ok, "ge", note});
}

bool Report::require(const std::string& check, bool ok, const std::string& note) {
  return add({check, ok ? 1.0 : 0.0, 1.0, 0.0, ok, "true", note});
}

void Report::absorb(const Report& sub) {
  for (Check c : sub.checks_) {
    c.name = sub.name_ + "." + c.name;
    checks_.push_back(std::move(c));
  }
  data_[sub.name_] = sub.data_;
}

bool Report::passed() const {
  for (const Check& c : checks_)
    if (!c.pass) return false;
  return true;
}

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  for (const Check& c : checks_)
    if (!c.pass) out.push_back(c.name);
  return out;
}

Json Report::to_json() const {
  Json checks = Json::array();
  for (const Check& c : checks_) {
    Json j;
    j["name"] = c.name;
    j["relation"] = c.relation;
    j["value"] = std::isfinite(c.value) ? Json(c.value) : Json(nullptr);
    j["expected"] = c.expected;
    j["tol"] = c.tol;
    j["pass"] = c.pass;
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  Json out;
  out["schema"] = "gptcone/1";
  out["report"] = name_;
  out["passed"] = passed();
  out["checks"] = std::move(checks);
  out["data"] = data_;
  return out;
}

}  // namespace gptcone
