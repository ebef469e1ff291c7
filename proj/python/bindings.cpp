#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "nilnf/document.hpp"
#include "nilnf/errors.hpp"
#include "nilnf/gevrey.hpp"
#include "nilnf/homology.hpp"
#include "nilnf/nilframe.hpp"
#include "nilnf/normalform.hpp"
#include "nilnf/reports.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using nlohmann::json;

namespace {

// Reports cross the boundary as plain dicts via the JSON module.
py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_python(const py::handle& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

nilnf::NilpotentFrame frame_of(const std::vector<int>& blocks) {
  return nilnf::build_normalized_nilpotent(nilnf::BlockStructure(blocks));
}

py::object spectral_dict(const nilnf::SpectralData& data) {
  json j = nilnf::spectrum_report(data);
  return to_python(j);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Normal forms of vector fields with nilpotent linear part";

  py::register_exception<nilnf::StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<nilnf::ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<nilnf::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<nilnf::NotNilpotent>(m, "NotNilpotent", PyExc_ArithmeticError);

  m.def("build_frame", [](const std::vector<int>& blocks) { return to_python(nilnf::frame_to_json(frame_of(blocks))); },
        "blocks"_a, "Normalized nilpotent frame for the given Jordan block parameters.");

  m.def("verify_sl2", [](const std::vector<int>& blocks) {
    const nilnf::Sl2Residuals r = nilnf::verify_sl2(frame_of(blocks));
    return py::dict("h_n"_a = r.h_n, "h_m"_a = r.h_m, "n_m"_a = r.n_m);
  }, "blocks"_a);

  m.def("solve_alpha_system", [](int n) {
    std::vector<std::string> out;
    for (const auto& a : nilnf::solve_alpha_system(n)) out.push_back(nilnf::to_string(a));
    return out;
  }, "n"_a, "Exact solution of the alpha-squared system, as rational strings.");

  m.def("jordan_normalize", [](const py::list& matrix) {
    const json doc = {{"dimension", py::len(matrix)}, {"linear_part", from_python(matrix)}};
    return to_python(nilnf::frame_to_json(nilnf::jordan_normalize(nilnf::parse_document(doc).linear_part)));
  }, "matrix"_a, "Entries may be numbers or rational strings \"p/q\".");

  m.def("spectrum_oracle", [](const std::vector<int>& blocks, int grade) {
    return spectral_dict(nilnf::spectrum_oracle(frame_of(blocks), grade));
  }, "blocks"_a, "grade"_a);

  m.def("spectrum", [](const std::vector<int>& blocks, int grade) {
    return spectral_dict(nilnf::analyze_grade(frame_of(blocks), grade));
  }, "blocks"_a, "grade"_a, "Predicted and numeric spectrum of the box operator at one grade.");

  m.def("normal_form", [](const py::dict& document, int order, double tolerance, bool original_coordinates) {
    const nilnf::VectorFieldDocument doc = nilnf::parse_document(from_python(document));
    const nilnf::NilpotentFrame frame = nilnf::jordan_normalize(doc.linear_part);
    nilnf::GradedVectorField x = nilnf::to_canonical_coordinates(frame, nilnf::to_field(doc, order));
    x.set_grade(frame.n_field());
    const nilnf::NormalFormResult result = nilnf::normal_form(frame, x, order, {tolerance});
    const nilnf::ConjugacyReport conjugacy = nilnf::verify_conjugacy(frame, x, result, order);
    nilnf::EquivarianceSummary eq;
    eq.t_samples = {0.5, 1.0, 2.0};
    eq.max_deviation = nilnf::equivariance_check(frame, result, eq.t_samples);
    return to_python(nilnf::normal_form_report(result, conjugacy, eq, nilnf::check_resonance(result),
                                               original_coordinates));
  }, "document"_a, "order"_a = 4, "tolerance"_a = nilnf::kDefaultResidualTolerance,
     "original_coordinates"_a = false);

  m.def("small_denominators", [](const std::vector<int>& blocks, int max_grade) {
    std::vector<double> a = nilnf::small_denominators(frame_of(blocks), max_grade).a_delta;
    return a;
  }, "blocks"_a, "max_grade"_a, "a_delta for delta = 0..max_grade (inf when there is no nonzero eigenvalue).");

  m.def("eta_sequence", [](const std::vector<double>& a) { return nilnf::eta_sequence(a); }, "a"_a);

  m.def("gevrey_fit", [](const std::vector<double>& s) { return to_python(nilnf::gevrey_to_json(nilnf::gevrey_fit(s))); },
        "norms"_a);

  m.def("nu_constant", [] { return nilnf::nu_constant(); });

  m.def("opt_order", [](double c, double rho, int dim, double q_norm, double q_inverse_norm, double tau, double gamma,
                        const std::vector<double>& epsilons) {
    const nilnf::OptOrderResult r = nilnf::opt_order({c, rho, dim, q_norm, q_inverse_norm}, tau, gamma);
    return to_python(nilnf::opt_order_report(r, epsilons));
  }, "c"_a, "rho"_a, "m"_a, "q_norm"_a = 1.0, "q_inverse_norm"_a = 1.0, "tau"_a = 0.0, "gamma"_a = 1.0,
     "epsilons"_a = std::vector<double>{1e-1, 1e-2, 1e-3});

  m.def("remainder_bound", [](double c, double rho, int dim, double q_norm, double q_inverse_norm, double tau,
                              double gamma, double epsilon) {
    return nilnf::remainder_bound(nilnf::opt_order({c, rho, dim, q_norm, q_inverse_norm}, tau, gamma), epsilon);
  }, "c"_a, "rho"_a, "m"_a, "q_norm"_a, "q_inverse_norm"_a, "tau"_a, "gamma"_a, "epsilon"_a);
}
