#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nilnf/homology.hpp"

namespace nilnf::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kNotNilpotent = 2,
  kGateFailure = 3,
};

enum class Format { kJson, kText };

struct SpectrumArgs {
  std::vector<int> blocks;
  std::string matrix_file;  // document or {"linear_part": ...}; used when blocks is empty
  int max_degree = 3;       // highest grade reported
  double tolerance = kDefaultResidualTolerance;
  Format format = Format::kJson;
  std::string output;  // stdout when empty
};

struct NormalFormArgs {
  std::string input;
  int order = 4;
  double tolerance = kDefaultResidualTolerance;
  bool original_coordinates = false;
  std::vector<double> t_samples{0.5, 1.0, 2.0};
  Format format = Format::kJson;
  std::string output;
};

struct DiagnosticsArgs {
  std::string input;  // normal-form result, vector-field document or {"norms": [...]}
  std::vector<int> blocks;
  int max_grade = 6;
  Format format = Format::kJson;
  std::string output;
};

struct OptOrderArgs {
  double c = 1.0;
  double rho = 1.0;
  int m = 1;
  double q_norm = 1.0;
  double q_inverse_norm = 1.0;
  double tau = 0.0;
  double gamma = 1.0;
  std::vector<double> epsilons;  // appended to 1e-1, 1e-2, 1e-3
  Format format = Format::kJson;
  std::string output;
};

int cmd_spectrum(const SpectrumArgs& args, std::ostream& out, std::ostream& err);
int cmd_normal_form(const NormalFormArgs& args, std::ostream& out, std::ostream& err);
int cmd_diagnostics(const DiagnosticsArgs& args, std::ostream& out, std::ostream& err);
int cmd_opt_order(const OptOrderArgs& args, std::ostream& out, std::ostream& err);

}  // namespace nilnf::cli
