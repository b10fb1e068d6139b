#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gptcone/appendix.hpp"
#include "gptcone/cli.hpp"
#include "gptcone/cones.hpp"
#include "gptcone/discrimination.hpp"
#include "gptcone/dovm.hpp"
#include "gptcone/pses.hpp"
#include "gptcone/simulability.hpp"
#include "gptcone/symmetry.hpp"

namespace py = pybind11;
using namespace gptcone;

namespace {

using Dims = std::pair<int, int>;

HermMatrix herm(const CMatrix& m) { return HermMatrix(m); }
BipartiteDims bdims(const Dims& d) { return BipartiteDims(d.first, d.second); }

py::dict verdict_dict(const MembershipVerdict& v) {
  py::dict d;
  d["status"] = to_string(v.status);
  d["tier"] = v.tier;
  d["margin"] = v.margin;
  d["witness"] = v.witness ? py::cast(v.witness->matrix()) : py::none();
  return d;
}

std::string report_json(const Report& r) { return r.to_json().dump(); }

Dovm dovm_of(const CMatrix& m1, const CMatrix& m2, const Dims& dims) { return make_dovm(herm(m1), herm(m2), bdims(dims)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "GPT cone toolkit core";
  py::register_exception<Error>(m, "GptconeError", PyExc_ValueError);

  m.def("partial_transpose", [](const CMatrix& x, const Dims& dims) {
    return partial_transpose(herm(x), bdims(dims)).matrix();
  }, py::arg("x"), py::arg("dims"));

  m.def("helstrom", [](const CMatrix& rho1, const CMatrix& rho2) {
    const HelstromResult h = helstrom(herm(rho1), herm(rho2));
    py::dict d;
    d["value"] = h.value;
    d["effects"] = py::make_tuple(h.effects[0].matrix(), h.effects[1].matrix());
    return d;
  }, py::arg("rho1"), py::arg("rho2"));

  m.def("err_of_measurement", [](const CMatrix& rho1, const CMatrix& rho2, const CMatrix& e1, const CMatrix& e2) {
    return err_of_measurement(herm(rho1), herm(rho2), {herm(e1), herm(e2)});
  }, py::arg("rho1"), py::arg("rho2"), py::arg("e1"), py::arg("e2"));

  m.def("sep_membership", [](const CMatrix& x, const Dims& dims, double tol) {
    return verdict_dict(sep_membership(herm(x), bdims(dims), tol));
  }, py::arg("x"), py::arg("dims"), py::arg("tol") = kDefaultTol);

  m.def("sep_dual_membership", [](const CMatrix& x, const Dims& dims, double tol) {
    return verdict_dict(sep_dual_membership(herm(x), bdims(dims), tol));
  }, py::arg("x"), py::arg("dims"), py::arg("tol") = kDefaultTol);

  m.def("classify_dovm", [](const CMatrix& m1, const CMatrix& m2, const Dims& dims) {
    const DovmClass c = classify(dovm_of(m1, m2, dims));
    py::dict d;
    d["class"] = to_string(c.tag);
    d["deciding_effect"] = c.deciding_effect;
    py::list spectra;
    for (const EffectSpectrum& s : c.spectra) spectra.append(py::make_tuple(s.lambda1, s.lambda_d));
    d["spectra"] = spectra;
    return d;
  }, py::arg("m1"), py::arg("m2"), py::arg("dims"));

  m.def("bq_witness", [](const CMatrix& m1, const CMatrix& m2, const Dims& dims) {
    const BqWitness w = bq_witness_states(dovm_of(m1, m2, dims));
    py::dict d;
    d["rho1"] = w.rho1.matrix();
    d["rho2"] = w.rho2.matrix();
    d["overlap"] = w.overlap;
    d["table"] = Eigen::MatrixXd(w.table);
    return d;
  }, py::arg("m1"), py::arg("m2"), py::arg("dims"));

  m.def("aq_advantage", [](const CMatrix& m1, const CMatrix& m2, const Dims& dims) {
    const AqAdvantage a = aq_advantage_states(dovm_of(m1, m2, dims));
    py::dict d;
    d["rho1"] = a.rho1.matrix();
    d["rho2"] = a.rho2.matrix();
    d["err"] = a.err;
    d["helstrom"] = a.helstrom;
    d["margin"] = a.margin;
    d["gurvits_distance"] = a.gurvits_distance;
    return d;
  }, py::arg("m1"), py::arg("m2"), py::arg("dims"));

  m.def("n_copy_overlap", [](const CMatrix& rho1, const CMatrix& rho2, int n) {
    return n_copy_overlap(herm(rho1), herm(rho2), n);
  }, py::arg("rho1"), py::arg("rho2"), py::arg("n"));

  m.def("appendix_fixture", []() {
    py::dict d;
    d["e1"] = appendix::e1().matrix();
    d["e2"] = appendix::e2().matrix();
    d["rho1"] = appendix::rho1().matrix();
    d["rho2"] = appendix::rho2().matrix();
    return d;
  });

  m.def("discriminate_report", [](const CMatrix& rho1, const CMatrix& rho2) {
    return report_json(discriminate_report(herm(rho1), herm(rho2), EffectCone{}));
  }, py::arg("rho1"), py::arg("rho2"));
  m.def("build_pses_report", [](int local_dim, double r, int families, std::uint64_t seed) {
    return report_json(build_pses_report(local_dim, r, families, seed));
  }, py::arg("local_dim"), py::arg("r"), py::arg("families") = 2, py::arg("seed") = 5);
  m.def("shrunk_bloch_report", [](double p, int samples, std::uint64_t seed) {
    return report_json(shrunk_bloch_example(p, samples, seed));
  }, py::arg("p"), py::arg("samples") = 1000, py::arg("seed") = 13);
  m.def("two_symmetry_report", [](int samples, std::uint64_t seed) {
    return report_json(two_symmetry_counterexample(samples, seed));
  }, py::arg("samples") = 200, py::arg("seed") = 21);
  m.def("verify_appendix_report", [](std::uint64_t seed) { return report_json(verify_appendix_report(seed)); },
        py::arg("seed") = 21);
  m.def("verify_all_report", [](bool fast, std::uint64_t seed) { return report_json(verify_all_report(fast, seed)); },
        py::arg("fast") = true, py::arg("seed") = 21);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"gptcone"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
