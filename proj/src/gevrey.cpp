#include "nilnf/gevrey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "nilnf/errors.hpp"
#include "nilnf/homology.hpp"

namespace nilnf {

DenominatorSeq small_denominators(const NilpotentFrame& frame, int max_grade) {
  if (max_grade < 1) throw DomainError("small_denominators needs max_grade >= 1");
  DenominatorSeq seq;
  for (int delta = 0; delta <= max_grade; ++delta) {
    const double a = spectrum_oracle(frame, delta).a_delta;
    if (std::isinf(a)) seq.has_infinite = true;
    seq.a_delta.push_back(a);
  }
  return seq;
}

std::vector<double> eta_sequence(std::span<const double> a) {
  const std::size_t n = a.size();
  std::vector<double> eta(n, 1.0);
  // best[d]: max product over compositions of d into >= 1 positive parts.
  std::vector<double> best(n, 1.0);
  for (std::size_t delta = 2; delta < n; ++delta) {
    if (!(a[delta] > 0.0)) throw DomainError("eta_sequence: a_" + std::to_string(delta) + " must be positive");
    double split = 0.0;
    for (std::size_t s = 1; s < delta; ++s) split = std::max(split, best[s] * best[delta - s]);
    eta[delta] = split / a[delta];
    best[delta] = std::max(eta[delta], split);
  }
  return eta;
}

bool satisfies_siegel_unit(const DenominatorSeq& seq) {
  for (std::size_t delta = 1; delta < seq.a_delta.size(); ++delta) {
    const double a = seq.a_delta[delta];
    if (std::isinf(a)) continue;
    if (a < 1.0 - 1e-8) return false;
  }
  return true;
}

GevreyReport gevrey_fit(std::span<const double> s) {
  GevreyReport report;
  report.norms.assign(s.begin(), s.end());
  if (std::all_of(s.begin(), s.end(), [](double v) { return v == 0.0; })) {
    report.linearizable = true;
    return report;
  }
  std::vector<int> used;
  for (std::size_t delta = 3; delta < s.size(); ++delta)
    if (s[delta] > 0.0) used.push_back(static_cast<int>(delta));
  if (used.size() < 4)
    throw DomainError("gevrey_fit needs at least four nonzero norms at delta >= 3, got " +
                      std::to_string(used.size()));

  const Eigen::Index n = static_cast<Eigen::Index>(used.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const int delta = used[k];
    design(k, 0) = 1.0;
    design(k, 1) = delta;
    design(k, 2) = std::lgamma(delta + 1.0);
    rhs(k) = std::log(s[delta]);
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(rhs);
  report.log_constant = coef(0);
  report.r = std::exp(coef(1));
  report.beta = coef(2);
  report.residual = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(n));
  report.points_used = static_cast<int>(n);
  return report;
}

std::pair<double, int> nu_constant(int max_p) {
  double best = -std::numeric_limits<double>::infinity();
  int argmax = 0;
  for (int p = 1; p <= max_p; ++p) {
    // log of e^2 p! / (p^{p+1/2} e^{-p})
    const double log_value = 2.0 + std::lgamma(p + 1.0) - (p + 0.5) * std::log(static_cast<double>(p)) + p;
    if (log_value > best) {
      best = log_value;
      argmax = p;
    }
  }
  return {std::exp(best), argmax};
}

OptOrderResult opt_order(const AnalyticBounds& bounds, double tau, double gamma) {
  if (!(bounds.c > 0.0) || !(bounds.rho > 0.0) || bounds.m < 1 || !(bounds.q_norm > 0.0) ||
      !(bounds.q_inverse_norm > 0.0))
    throw DomainError("opt_order: c, rho, m, ||Q|| and ||Q^-1|| must be positive");
  if (bounds.q_norm * bounds.q_inverse_norm < 1.0 - 1e-12)
    throw DomainError("opt_order: ||Q|| ||Q^-1|| must be at least 1");
  if (!(tau >= 0.0)) throw DomainError("opt_order: tau must be nonnegative");
  if (!(gamma > 0.0)) throw DomainError("opt_order: gamma must be positive");

  constexpr double e = std::numbers::e;
  OptOrderResult r;
  r.tau = tau;
  r.gamma = gamma;
  r.a = 1.0 / gamma;
  r.b = 1.0 / (1.0 + tau);
  std::tie(r.nu, r.nu_argmax) = nu_constant();

  const double m = bounds.m;
  const double qq = bounds.q_norm * bounds.q_inverse_norm;
  r.c_constant = std::sqrt(m) / (bounds.rho * bounds.rho) *
                 ((2.5 * m + 2.0) * r.a * bounds.c * qq * qq + 3.0 * bounds.rho * qq);
  r.w = 1.0 / (e * std::pow(r.c_constant, r.b));
  r.p_opt = static_cast<long>(std::floor(r.w));
  r.m_tau = 10.0 / 9.0 *
            (std::pow(r.nu * std::sqrt(27.0 / (8.0 * e)), 1.0 + tau) + std::pow(2.0 * e, 2.0 + 2.0 * tau));
  if (r.p_opt < 2)
    r.warnings.push_back("optimal order " + std::to_string(r.p_opt) +
                         " is a truncation below the first nonlinear grade");
  return r;
}

double OptOrderResult::bound(double epsilon) const { return remainder_bound(*this, epsilon); }

double remainder_bound(const OptOrderResult& result, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("remainder_bound: epsilon must be positive");
  if (result.w == 0.0) return result.m_tau * epsilon * epsilon;
  return result.m_tau * epsilon * epsilon * std::exp(-result.w / std::pow(epsilon, result.b));
}

}  // namespace nilnf
