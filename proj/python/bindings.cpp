// Python bindings for the core operations: algebra, energies, flows, and
// the verification harnesses. Long-running entry points release the GIL.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nctorus/algebra.hpp"
#include "nctorus/energy.hpp"
#include "nctorus/flow.hpp"
#include "nctorus/io.hpp"
#include "nctorus/matrix_oracle.hpp"
#include "nctorus/verify.hpp"

namespace py = pybind11;
using namespace nctorus;

PYBIND11_MODULE(_nctorus, m) {
  m.doc() =
      "Twisted Fourier algebra on the noncommutative torus: energies, "
      "minimizing flows, and bound verification";
  m.attr("__version__") = "0.1.0";

  py::enum_<ClipMode>(m, "ClipMode")
      .value("hard_clip", ClipMode::hard_clip)
      .value("track_spill", ClipMode::track_spill);

  py::class_<TruncationPolicy>(m, "TruncationPolicy")
      .def(py::init([](int bandwidth, ClipMode clip_mode, double spill_mass) {
             return TruncationPolicy{bandwidth, clip_mode, spill_mass};
           }),
           py::arg("bandwidth") = 16,
           py::arg("clip_mode") = ClipMode::track_spill,
           py::arg("spill_mass") = 0.0)
      .def_readwrite("bandwidth", &TruncationPolicy::bandwidth)
      .def_readwrite("clip_mode", &TruncationPolicy::clip_mode)
      .def_readwrite("spill_mass", &TruncationPolicy::spill_mass);

  py::class_<FourierElement>(m, "FourierElement")
      .def(py::init<double, TruncationPolicy>(), py::arg("theta"),
           py::arg("policy") = TruncationPolicy{})
      .def_property_readonly("theta", &FourierElement::theta)
      .def_property_readonly("bandwidth", &FourierElement::bandwidth)
      .def_property_readonly("window", &FourierElement::window)
      .def_property_readonly("spill_mass", &FourierElement::spill_mass)
      .def("coeff",
           py::overload_cast<int, int>(&FourierElement::coeff, py::const_),
           py::arg("m"), py::arg("n"))
      .def("set_coeff", &FourierElement::set_coeff, py::arg("m"), py::arg("n"),
           py::arg("value"))
      .def("all_finite", &FourierElement::all_finite)
      .def("__mul__",
           [](const FourierElement& a, const FourierElement& b) {
             return multiply(a, b);
           })
      .def("__mul__",
           [](const FourierElement& a, cplx c) { return scale(a, c); })
      .def("__rmul__",
           [](const FourierElement& a, cplx c) { return scale(a, c); })
      .def("__add__",
           [](const FourierElement& a, const FourierElement& b) {
             return add(a, b);
           })
      .def("__sub__",
           [](const FourierElement& a, const FourierElement& b) {
             return sub(a, b);
           })
      .def("__repr__", [](const FourierElement& a) {
        return "<FourierElement theta=" + format_g17(a.theta()) +
               " bandwidth=" + std::to_string(a.bandwidth()) + ">";
      });

  m.def("monomial", &monomial, py::arg("theta"), py::arg("m"), py::arg("n"),
        py::arg("scale") = cplx(1.0, 0.0),
        py::arg("policy") = TruncationPolicy{});
  m.def("identity", &identity, py::arg("theta"),
        py::arg("policy") = TruncationPolicy{});
  m.def("multiply", &multiply, py::arg("a"), py::arg("b"));
  m.def("adjoint", &adjoint, py::arg("a"));
  m.def("trace", &trace, py::arg("a"));
  m.def("trace_of_product", &trace_of_product, py::arg("a"), py::arg("b"));
  m.def("inner", &inner, py::arg("a"), py::arg("b"));
  m.def("hs_norm", &hs_norm, py::arg("a"));
  m.def("derivation", &derivation, py::arg("a"), py::arg("j"));
  m.def("laplacian", &laplacian, py::arg("a"));
  m.def("add", &add, py::arg("a"), py::arg("b"));
  m.def("sub", &sub, py::arg("a"), py::arg("b"));
  m.def("scale", &scale, py::arg("a"), py::arg("c"));
  m.def("random_selfadjoint", &random_selfadjoint, py::arg("theta"),
        py::arg("bandwidth"), py::arg("decay"), py::arg("seed"));
  m.def("random_element", &random_element, py::arg("theta"),
        py::arg("bandwidth"), py::arg("decay"), py::arg("seed"),
        py::arg("support") = -1);
  m.def("exp_skew", &exp_skew, py::arg("s"), py::arg("terms") = 16,
        py::arg("tail_tol") = 1e-15);
  m.def("unitarity_defect", &unitarity_defect, py::arg("u"));
  m.def("max_abs_diff", &max_abs_diff, py::arg("a"), py::arg("b"));

  m.def("energy", &energy, py::arg("u"));
  m.def("energy_trace_form", &energy_trace_form, py::arg("u"));
  m.def("winding", &winding, py::arg("u"), py::arg("j"));
  m.def("poincare_gap", &poincare_gap, py::arg("u"));

  py::enum_<Generator>(m, "Generator")
      .value("U", Generator::U)
      .value("V", Generator::V);

  py::class_<Endomorphism>(m, "Endomorphism")
      .def(py::init([](int a, int b, int c, int d, cplx mu, cplx nu,
                       double theta) {
             Endomorphism phi;
             phi.exponents = {{{a, b}, {c, d}}};
             phi.mu = mu;
             phi.nu = nu;
             phi.theta = theta;
             return phi;
           }),
           py::arg("a") = 1, py::arg("b") = 0, py::arg("c") = 0,
           py::arg("d") = 1, py::arg("mu") = cplx(1.0, 0.0),
           py::arg("nu") = cplx(1.0, 0.0), py::arg("theta") = 0.0)
      .def_readwrite("exponents", &Endomorphism::exponents)
      .def_readwrite("mu", &Endomorphism::mu)
      .def_readwrite("nu", &Endomorphism::nu)
      .def_readwrite("theta", &Endomorphism::theta)
      .def("a", &Endomorphism::a)
      .def("b", &Endomorphism::b)
      .def("c", &Endomorphism::c)
      .def("d", &Endomorphism::d)
      .def("det", &Endomorphism::det);

  m.def("endo_valid", &endo_valid, py::arg("phi"));
  m.def("apply_endo", &apply_endo, py::arg("phi"), py::arg("on"),
        py::arg("policy") = TruncationPolicy{});
  m.def("endo_energy", &endo_energy, py::arg("phi"),
        py::arg("policy") = TruncationPolicy{});

  py::class_<SlackEntry>(m, "SlackEntry")
      .def_readonly("name", &SlackEntry::name)
      .def_readonly("lhs", &SlackEntry::lhs)
      .def_readonly("rhs", &SlackEntry::rhs)
      .def("diff", &SlackEntry::diff)
      .def("violated", &SlackEntry::violated, py::arg("tol"));

  py::class_<LemmaReport>(m, "LemmaReport")
      .def_readonly("t", &LemmaReport::t)
      .def_readonly("s", &LemmaReport::s)
      .def_readonly("w", &LemmaReport::w)
      .def_readonly("lambda_", &LemmaReport::lambda)
      .def_readonly("tr_uv_abs", &LemmaReport::tr_uv_abs)
      .def_readonly("tr_u_abs2", &LemmaReport::tr_u_abs2)
      .def_readonly("tr_v_abs2", &LemmaReport::tr_v_abs2)
      .def_readonly("swapped", &LemmaReport::swapped)
      .def_readonly("region", &LemmaReport::region)
      .def_readonly("slacks", &LemmaReport::slacks)
      .def("pass_", &LemmaReport::pass, py::arg("tol") = 1e-6)
      .def("find", &LemmaReport::find, py::arg("name"),
           py::return_value_policy::reference_internal);

  m.def("lemma_chain", &lemma_chain, py::arg("u"), py::arg("v"),
        py::call_guard<py::gil_scoped_release>());
  m.def("pair_floor_w", &pair_floor_w);
  m.def("pair_floor_energy", &pair_floor_energy);
  m.def("endo_floor_energy", &endo_floor_energy);

  py::enum_<FlowStatus>(m, "FlowStatus")
      .value("converged", FlowStatus::converged)
      .value("max_iters", FlowStatus::max_iters)
      .value("aborted_spill", FlowStatus::aborted_spill)
      .value("aborted_defect", FlowStatus::aborted_defect);

  py::class_<FlowConfig>(m, "FlowConfig")
      .def(py::init<>())
      .def_readwrite("step_size", &FlowConfig::step_size)
      .def_readwrite("max_iters", &FlowConfig::max_iters)
      .def_readwrite("grad_tol", &FlowConfig::grad_tol)
      .def_readwrite("reunitarize_every", &FlowConfig::reunitarize_every)
      .def_readwrite("exp_terms", &FlowConfig::exp_terms)
      .def_readwrite("seed", &FlowConfig::seed);

  py::class_<FlowRecord>(m, "FlowRecord")
      .def_readonly("iter", &FlowRecord::iter)
      .def_readonly("energy", &FlowRecord::energy)
      .def_readonly("grad_norm", &FlowRecord::grad_norm)
      .def_readonly("winding1", &FlowRecord::winding1)
      .def_readonly("winding2", &FlowRecord::winding2)
      .def_readonly("unitarity_defect", &FlowRecord::unitarity_defect)
      .def_readonly("spill_mass", &FlowRecord::spill_mass);

  py::class_<FlowTrace>(m, "FlowTrace")
      .def_readonly("records", &FlowTrace::records)
      .def_readonly("status", &FlowTrace::status)
      .def_readonly("iters", &FlowTrace::iters)
      .def_readonly("final_state", &FlowTrace::final_state)
      .def("last", &FlowTrace::last);

  m.def("riemannian_grad", &riemannian_grad, py::arg("u"));
  m.def("unitarize", &unitarize, py::arg("u"), py::arg("sweeps"));
  m.def("flow", &flow, py::arg("u0"), py::arg("config") = FlowConfig{},
        py::call_guard<py::gil_scoped_release>());

  py::class_<ScalarRegionResult>(m, "ScalarRegionResult")
      .def_readonly("w_min", &ScalarRegionResult::w_min)
      .def_readonly("t_at_min", &ScalarRegionResult::t_at_min)
      .def_readonly("s_at_min", &ScalarRegionResult::s_at_min);

  m.def("scalar_region_min", &scalar_region_min, py::arg("grid_step"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<CheckLine>(m, "CheckLine")
      .def_readonly("name", &CheckLine::name)
      .def_readonly("value", &CheckLine::value)
      .def_readonly("bound", &CheckLine::bound)
      .def_readonly("pass_", &CheckLine::pass)
      .def_readonly("note", &CheckLine::note);

  py::class_<SummaryReport>(m, "SummaryReport")
      .def_readonly("harness", &SummaryReport::harness)
      .def_readonly("config", &SummaryReport::config)
      .def_readonly("checks", &SummaryReport::checks)
      .def_readonly("table_header", &SummaryReport::table_header)
      .def_readonly("table", &SummaryReport::table)
      .def_readonly("pass_", &SummaryReport::pass);

  py::class_<LemmaBatch>(m, "LemmaBatch")
      .def_readonly("reports", &LemmaBatch::reports)
      .def_readonly("summary", &LemmaBatch::summary);

  m.def("verify_theorem", &verify_theorem, py::arg("theta"), py::arg("m"),
        py::arg("n"), py::arg("trials"), py::arg("flow_config"),
        py::arg("bandwidth") = 16, py::arg("seed") = 20260819,
        py::arg("max_h") = 0.2, py::call_guard<py::gil_scoped_release>());
  m.def("verify_lemma", &verify_lemma, py::arg("theta"), py::arg("trials"),
        py::arg("seed"), py::arg("bandwidth") = 16,
        py::call_guard<py::gil_scoped_release>());
  m.def("verify_endo_bound", &verify_endo_bound, py::arg("theta"),
        py::arg("exponent_bound"), py::call_guard<py::gil_scoped_release>());
  m.def("verify_oracle", &verify_oracle, py::arg("qs"), py::arg("trials"),
        py::arg("seed"), py::arg("tol") = 1e-10,
        py::call_guard<py::gil_scoped_release>());
  m.def("format_g17", &format_g17, py::arg("v"));

  py::class_<CertReport>(m, "CertReport")
      .def_readonly("q", &CertReport::q)
      .def_readonly("p", &CertReport::p)
      .def_readonly("trials", &CertReport::trials)
      .def_readonly("max_product_dev", &CertReport::max_product_dev)
      .def_readonly("max_adjoint_dev", &CertReport::max_adjoint_dev)
      .def_readonly("max_trace_dev", &CertReport::max_trace_dev)
      .def_readonly("pass_", &CertReport::pass);

  m.def("certify_at", &certify_at, py::arg("q"), py::arg("trials"),
        py::arg("seed"), py::arg("tol") = 1e-9,
        py::call_guard<py::gil_scoped_release>());
  m.def("oracle_certify", &oracle_certify, py::arg("qs"), py::arg("trials"),
        py::arg("seed"), py::arg("tol") = 1e-9,
        py::call_guard<py::gil_scoped_release>());
  m.def("default_oracle_p", &default_oracle_p, py::arg("q"));

  m.def("element_to_json", &element_to_json, py::arg("a"));
  m.def("element_from_json", &element_from_json, py::arg("text"));
  m.def("load_element", &load_element, py::arg("path"));
  m.def("save_element", &save_element, py::arg("path"), py::arg("a"));
  m.def("flow_trace_to_jsonl", &flow_trace_to_jsonl, py::arg("trace"));
  m.def("summary_to_json", &summary_to_json, py::arg("report"));
  m.def("summary_to_csv", &summary_to_csv, py::arg("report"));
  m.def("lemma_report_to_json", &lemma_report_to_json, py::arg("report"));
  m.def("lemma_batch_to_json", &lemma_batch_to_json, py::arg("batch"));
}
