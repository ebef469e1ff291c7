#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilnf/gevrey.hpp"
#include "nilnf/homology.hpp"
#include "nilnf/nilframe.hpp"
#include "nilnf/normalform.hpp"

namespace nilnf {

// {delta, dim, weights, irreps, spectrum, a_delta, kernel_dim, ...}; an
// infinite a_delta is written as null with a_delta_infinite = true.
nlohmann::json spectrum_report(const SpectralData& data, double tolerance = kDefaultResidualTolerance);

nlohmann::json frame_to_json(const NilpotentFrame& frame);

struct EquivarianceSummary {
  std::vector<double> t_samples;
  double max_deviation = 0.0;
  double tolerance = 1e-7;
  bool passed() const { return max_deviation <= tolerance; }
};

struct ResonanceSummary {
  double max_residual = 0.0;  // max over grades of ||bracket(R'_delta, M)||
  double tolerance = 1e-8;
  bool passed() const { return max_residual <= tolerance; }
};

ResonanceSummary check_resonance(const NormalFormResult& result);

nlohmann::json normal_form_report(const NormalFormResult& result, const ConjugacyReport& conjugacy,
                                  const EquivarianceSummary& equivariance, const ResonanceSummary& resonance,
                                  bool original_coordinates);

nlohmann::json opt_order_report(const OptOrderResult& result, std::span<const double> epsilons);

nlohmann::json denominators_to_json(const DenominatorSeq& seq);
nlohmann::json gevrey_to_json(const GevreyReport& report);

// JSON number, or null for non-finite values.
nlohmann::json finite_or_null(double value);

}  // namespace nilnf
