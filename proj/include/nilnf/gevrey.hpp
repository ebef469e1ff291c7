#pragma once

#include <span>
#include <string>
#include <vector>

#include "nilnf/nilframe.hpp"

namespace nilnf {

struct DenominatorSeq {
  // a[delta] for delta = 0..max_grade. Grade 0 is reported for completeness
  // and excluded from every diophantine check. +infinity when box has no
  // nonzero eigenvalue at that grade.
  std::vector<double> a_delta;
  bool has_infinite = false;
};

DenominatorSeq small_denominators(const NilpotentFrame& frame, int max_grade);

// eta_0 = eta_1 = 1 and a_delta eta_delta = max over compositions of delta
// into at least two positive parts of the product of etas. `a` is indexed by
// delta; a[0] and a[1] are not used. Throws DomainError on a nonpositive
// entry at delta >= 2.
std::vector<double> eta_sequence(std::span<const double> a);

// min over delta >= 1 of a_delta >= 1 - 1e-8, ignoring infinite entries.
bool satisfies_siegel_unit(const DenominatorSeq& seq);

struct GevreyReport {
  std::vector<double> norms;
  bool linearizable = false;  // every norm is zero
  double beta = 0.0;          // fitted Gevrey order
  double log_constant = 0.0;
  double r = 0.0;             // fitted geometric rate
  double residual = 0.0;      // RMS residual of the log fit
  int points_used = 0;
};

// Least-squares fit of log s_delta ~ log C + delta log r + beta log(delta!)
// over delta >= 3 with s_delta > 0. `s` is indexed by delta from 0. Needs at
// least four such points unless the sequence is identically zero.
GevreyReport gevrey_fit(std::span<const double> s);

struct AnalyticBounds {
  double c = 1.0;
  double rho = 1.0;
  int m = 1;
  double q_norm = 1.0;
  double q_inverse_norm = 1.0;
};

struct OptOrderResult {
  double tau = 0.0;
  double gamma = 1.0;
  double a = 1.0;  // 1 / gamma
  double b = 1.0;  // 1 / (1 + tau)
  double nu = 0.0;
  int nu_argmax = 0;
  double c_constant = 0.0;
  double w = 0.0;
  long p_opt = 0;
  double m_tau = 0.0;
  std::vector<std::string> warnings;

  double bound(double epsilon) const;
};

// sup over p = 1..max_p of e^2 p! / (p^{p+1/2} e^{-p}); also returns the argmax.
std::pair<double, int> nu_constant(int max_p = 200);

OptOrderResult opt_order(const AnalyticBounds& bounds, double tau = 0.0, double gamma = 1.0);

// M_tau eps^2 exp(-w / eps^b). Throws DomainError for eps <= 0.
double remainder_bound(const OptOrderResult& result, double epsilon);

}  // namespace nilnf
