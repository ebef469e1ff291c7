#include "nilnf/normalform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nilnf/errors.hpp"

namespace nilnf {

namespace {

double max_imaginary(const HomogeneousField& f) {
  double s = 0.0;
  for (const auto& p : f.components())
    for (const auto& [k, c] : p.terms()) s = std::max(s, std::abs(c.imag()));
  return s;
}

bool is_real(const GradedVectorField& f) {
  for (const auto& [g, field] : f.grades())
    if (max_imaginary(field) > 0.0) return false;
  return true;
}

HomogeneousField real_part(const HomogeneousField& f) {
  HomogeneousField out(f.dimension(), f.grade());
  for (int i = 0; i < f.dimension(); ++i)
    for (const auto& [k, c] : f[i].terms()) out[i].add_term(k, c.real());
  return out;
}

// Keeps real inputs real; any imaginary drift beyond round-off is a bug.
HomogeneousField enforce_real(const HomogeneousField& f, const char* what) {
  const double drift = max_imaginary(f);
  if (drift > 1e-12 * (1.0 + max_coefficient(f)))
    throw InvariantViolation(std::string(what) + " acquired an imaginary part of size " + std::to_string(drift));
  return real_part(f);
}

double total_fischer_norm(const GradedVectorField& f) {
  double s = 0.0;
  for (const auto& [g, field] : f.grades()) s += std::pow(fischer_norm(field), 2);
  return std::sqrt(s);
}

}  // namespace

HomogeneousField normal_form_rhs(const GradedVectorField& nonlinear_part, const GradedVectorField& u,
                                 const GradedVectorField& r_prime, int degree) {
  if (nonlinear_part.has_grade(0)) throw ContractViolation("normal_form_rhs: R must have no linear part");
  if (u.highest_degree() >= degree || r_prime.highest_degree() >= degree)
    throw InvariantViolation("right-hand side of degree " + std::to_string(degree) +
                             " may only depend on lower-degree U and R'");
  HomogeneousField rhs = substitute(nonlinear_part, u, degree).grade(degree - 1);
  rhs -= jacobian_apply(u, r_prime, degree).grade(degree - 1);
  return rhs;
}

NormalFormResult normal_form(const NilpotentFrame& frame, const GradedVectorField& x, int order,
                             const NormalFormOptions& options) {
  const int dim = frame.dimension();
  if (order < 2) throw ContractViolation("normal_form: order must be at least 2");
  if (x.dimension() != dim)
    throw FrameMismatch("field dimension " + std::to_string(x.dimension()) + " does not match frame dimension " +
                        std::to_string(dim));
  const Eigen::MatrixXcd linear = x.grade(0).linear_matrix();
  const double mismatch = (linear - frame.n.cast<Complex>()).cwiseAbs().maxCoeff();
  if (mismatch > 1e-12)
    throw FrameMismatch("linear part differs from the canonical N by " + std::to_string(mismatch) +
                        "; conjugate by the frame's Q first");

  const GradedVectorField r = x.nonlinear_part().truncated(order);
  const bool real_input = is_real(r);

  NormalFormResult result{
      .frame = frame,
      .transformation = GradedVectorField(dim, order),
      .normal_form = GradedVectorField(dim, order),
      .order = order,
      .norms = {},
      .linearizable = false,
  };

  for (int degree = 2; degree <= order; ++degree) {
    const HomogeneousField rhs = normal_form_rhs(r, result.transformation, result.normal_form, degree);
    const HomologicalSystem system(frame, degree - 1);
    ResonantSplit split = system.split_resonant(rhs);
    HomogeneousField u = system.solve_homological(split.image, options.tolerance, fischer_norm(rhs));
    if (real_input) {
      split.resonant = enforce_real(split.resonant, "R'");
      u = enforce_real(u, "U");
    }
    result.norms.push_back({degree, fischer_norm(u), coefficient_norm(u), fischer_norm(split.resonant),
                            coefficient_norm(split.resonant)});
    result.normal_form.set_grade(std::move(split.resonant));
    result.transformation.set_grade(std::move(u));
  }
  result.linearizable = result.normal_form.is_zero();
  return result;
}

ConjugacyReport verify_conjugacy(const NilpotentFrame& frame, const GradedVectorField& x,
                                 const NormalFormResult& result, int order) {
  const int dim = frame.dimension();
  GradedVectorField linear(dim, order);
  linear.set_grade(frame.n_field());

  GradedVectorField full = linear + x.nonlinear_part().truncated(order);
  GradedVectorField lhs = substitute(full, result.transformation.truncated(order), order);

  GradedVectorField target = linear + result.normal_form.truncated(order);
  GradedVectorField rhs = target + jacobian_apply(result.transformation.truncated(order), target, order);

  ConjugacyReport report;
  report.threshold = 1e-7 * (1.0 + total_fischer_norm(full));
  for (int degree = 1; degree <= order; ++degree) {
    const double r = fischer_norm(lhs.grade(degree - 1) - rhs.grade(degree - 1));
    report.residuals.push_back(r);
    report.max_residual = std::max(report.max_residual, r);
  }
  report.passed = report.max_residual <= report.threshold;
  return report;
}

Eigen::MatrixXcd nilpotent_exponential(const Eigen::MatrixXcd& a, double t) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    term = term * a * (t / static_cast<double>(k));
    if (term.isZero(0.0)) break;
    result += term;
  }
  return result;
}

double equivariance_check(const NilpotentFrame& frame, const NormalFormResult& result,
                          std::span<const double> t_samples) {
  const int dim = frame.dimension();
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::MatrixXcd m = frame.m.cast<Complex>();
  double worst = 0.0;
  for (double t : t_samples) {
    const Eigen::MatrixXcd flow = nilpotent_exponential(m, t);
    for (const auto& [g, field] : result.normal_form.grades()) {
      const HomogeneousField composed = transform_linear(field, identity, flow);
      const HomogeneousField pushed = transform_linear(field, flow, identity);
      worst = std::max(worst, max_coefficient(composed - pushed));
    }
  }
  return worst;
}

GradedVectorField to_canonical_coordinates(const NilpotentFrame& frame, const GradedVectorField& f) {
  return transform_linear(f, frame.q, frame.q_inverse);
}

GradedVectorField to_original_coordinates(const NilpotentFrame& frame, const GradedVectorField& f) {
  return transform_linear(f, frame.q_inverse, frame.q);
}

}  // namespace nilnf
