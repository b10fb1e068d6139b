#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gptcone/cli.hpp"

using namespace gptcone;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gptcone");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(GPTCONE_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"build-pses", "--local-dim", "2"}).code == 1);
  CHECK(run({"build-pses", "--local-dim", "2", "--r", "0.1", "--eps", "0.3"}).code == 1);
}

TEST_CASE("classify-dovm on the appendix fixture") {
  const Run r = run({"classify-dovm", fixture("appendix_measurement.json")});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["schema"] == "gptcone/1");
  CHECK(j["data"]["class"] == "BQ");
  CHECK(j["data"]["lambda1"].get<double>() == doctest::Approx(-0.5));
  CHECK(j["data"]["lambda_d"].get<double>() == doctest::Approx(1.5));
}

TEST_CASE("malformed matrix files name the field") {
  const Run r = run({"discriminate", fixture("rho1.json"), fixture("appendix_measurement.json")});
  CHECK(r.code == 1);
  CHECK(r.err.find("rho2") != std::string::npos);
}

TEST_CASE("discriminate") {
  const Run r = run({"discriminate", fixture("rho1.json"), fixture("rho2.json"), "--measurement",
                     fixture("appendix_measurement.json")});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["data"]["measurement_err"].get<double>() == doctest::Approx(0.0));
  CHECK(j["data"]["helstrom"].get<double>() == doctest::Approx(1.0 - std::sqrt(0.75)));
}

TEST_CASE("build-pses exit codes") {
  CHECK(run({"build-pses", "--local-dim", "2", "--r", "0.1", "--product-samples", "500"}).code == 0);
  const Run bad = run({"build-pses", "--local-dim", "2", "--r", "0.3", "--product-samples", "500"});
  CHECK(bad.code == 2);
  const Json j = Json::parse(bad.out);
  CHECK(j["data"]["predual_audit"].contains("con2_negative_pair"));
}

TEST_CASE("simulability and symmetry") {
  CHECK(run({"simulability", "--shrunk-bloch", "0.5"}).code == 0);
  const Run s = run({"simulability", fixture("appendix_measurement.json")});
  REQUIRE(s.code == 0);
  CHECK(Json::parse(s.out)["data"]["certificate"]["verdict"] == "NonSimulable");
  CHECK(run({"symmetry", "--check", "two-symmetry"}).code == 0);
  CHECK(run({"symmetry", "--check", "orbit", "--cone", "sep+bell", "--group", "gu", "--samples", "5"}).code == 2);
  CHECK(run({"symmetry", "--check", "gu-falsifier"}).code == 0);
}

TEST_CASE("verify-appendix is deterministic") {
  const Run a = run({"verify-appendix", "--seed", "3"});
  const Run b = run({"verify-appendix", "--seed", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("tol"));
    CHECK(c.contains("name"));
  }
}

TEST_CASE("verify-all --fast") {
  const Run r = run({"verify-all", "--fast"});
  CHECK(r.code == 0);
}
