#include "nilnf/reports.hpp"

#include <cmath>

#include "nilnf/document.hpp"

namespace nilnf {

using nlohmann::json;

json finite_or_null(double value) { return std::isfinite(value) ? json(value) : json(nullptr); }

namespace {

json int_map(const std::map<int, int>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& a) {
  json out = json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

json spectrum_report(const SpectralData& data, double tolerance) {
  json out = {
      {"delta", data.grade},
      {"dim", data.dimension},
      {"weights", int_map(data.weight_multiset)},
      {"irreps", int_map(data.irrep_multiplicity)},
      {"spectrum", data.predicted_spectrum},
      {"a_delta", finite_or_null(data.a_delta)},
      {"a_delta_infinite", std::isinf(data.a_delta)},
      {"kernel_dim", data.kernel_dim},
  };
  if (data.numeric_spectrum) {
    const SpectrumComparison cmp = compare_spectra(data.predicted_spectrum, *data.numeric_spectrum, tolerance);
    out["numeric_spectrum"] = *data.numeric_spectrum;
    out["max_snap_error"] = cmp.max_snap_error;
    out["agreement"] = cmp.agrees();
  } else {
    out["numeric_spectrum"] = nullptr;
    out["max_snap_error"] = nullptr;
    out["agreement"] = nullptr;
  }
  return out;
}

json frame_to_json(const NilpotentFrame& frame) {
  json alpha_sq = json::array();
  for (const auto& block : frame.alpha_squared) {
    json row = json::array();
    for (const auto& a : block) row.push_back(to_string(a));
    alpha_sq.push_back(std::move(row));
  }
  return {
      {"blocks", frame.blocks.params()},
      {"dimension", frame.dimension()},
      {"alpha_squared", std::move(alpha_sq)},
      {"weights", frame.weights},
      {"q", matrix_to_json(frame.q.real())},
      {"q_inverse", matrix_to_json(frame.q_inverse.real())},
      {"q_norm", frame.q_norm},
      {"q_inverse_norm", frame.q_inverse_norm},
  };
}

ResonanceSummary check_resonance(const NormalFormResult& result) {
  ResonanceSummary summary;
  const HomogeneousField m = result.frame.m_field();
  for (const auto& [g, field] : result.normal_form.grades()) {
    const double r = fischer_norm(lie_bracket(field, m)) / std::max(1.0, fischer_norm(field));
    summary.max_residual = std::max(summary.max_residual, r);
  }
  return summary;
}

json normal_form_report(const NormalFormResult& result, const ConjugacyReport& conjugacy,
                        const EquivarianceSummary& equivariance, const ResonanceSummary& resonance,
                        bool original_coordinates) {
  const GradedVectorField u =
      original_coordinates ? to_original_coordinates(result.frame, result.transformation) : result.transformation;
  const GradedVectorField r =
      original_coordinates ? to_original_coordinates(result.frame, result.normal_form) : result.normal_form;

  json norms = json::array();
  for (const DegreeNorms& n : result.norms)
    norms.push_back({{"degree", n.degree},
                     {"u_fischer", n.u_fischer},
                     {"u_coefficient", n.u_coefficient},
                     {"r_fischer", n.r_fischer},
                     {"r_coefficient", n.r_coefficient}});

  const bool passed = conjugacy.passed && equivariance.passed() && resonance.passed();
  return {
      {"frame", frame_to_json(result.frame)},
      {"order", result.order},
      {"coordinates", original_coordinates ? "original" : "canonical"},
      {"transformation", terms_to_json(field_terms(u))},
      {"normal_form", terms_to_json(field_terms(r))},
      {"norms", std::move(norms)},
      {"linearizable", result.linearizable},
      {"conjugacy",
       {{"residuals", conjugacy.residuals},
        {"threshold", conjugacy.threshold},
        {"max_residual", conjugacy.max_residual},
        {"passed", conjugacy.passed}}},
      {"equivariance",
       {{"t_samples", equivariance.t_samples},
        {"max_deviation", equivariance.max_deviation},
        {"tolerance", equivariance.tolerance},
        {"passed", equivariance.passed()}}},
      {"resonance",
       {{"max_residual", resonance.max_residual},
        {"tolerance", resonance.tolerance},
        {"passed", resonance.passed()}}},
      {"passed", passed},
  };
}

json opt_order_report(const OptOrderResult& result, std::span<const double> epsilons) {
  json samples = json::array();
  for (double eps : epsilons) samples.push_back({{"epsilon", eps}, {"bound", remainder_bound(result, eps)}});
  return {
      {"tau", result.tau},
      {"gamma", result.gamma},
      {"a", result.a},
      {"b", result.b},
      {"nu", result.nu},
      {"nu_argmax", result.nu_argmax},
      {"C", result.c_constant},
      {"w", result.w},
      {"p_opt", result.p_opt},
      {"M_tau", result.m_tau},
      {"bound_samples", std::move(samples)},
      {"warnings", result.warnings},
  };
}

json denominators_to_json(const DenominatorSeq& seq) {
  json a = json::array();
  for (double v : seq.a_delta) a.push_back(finite_or_null(v));
  return {{"a_delta", std::move(a)}, {"a_delta_infinite", seq.has_infinite}, {"siegel_unit", satisfies_siegel_unit(seq)}};
}

json gevrey_to_json(const GevreyReport& report) {
  return {
      {"norms", report.norms},
      {"linearizable", report.linearizable},
      {"gevrey_beta", report.beta},
      {"gevrey_r", report.r},
      {"gevrey_log_constant", report.log_constant},
      {"fit_residual", report.residual},
      {"points_used", report.points_used},
  };
}

}  // namespace nilnf
