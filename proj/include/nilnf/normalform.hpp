#pragma once

#include <span>
#include <vector>

#include "nilnf/homology.hpp"
#include "nilnf/nilframe.hpp"
#include "nilnf/polyalg.hpp"

namespace nilnf {

struct NormalFormOptions {
  double tolerance = kDefaultResidualTolerance;
};

struct DegreeNorms {
  int degree = 0;  // polynomial degree, grade + 1
  double u_fischer = 0.0;
  double u_coefficient = 0.0;
  double r_fischer = 0.0;
  double r_coefficient = 0.0;
};

struct NormalFormResult {
  NilpotentFrame frame;
  GradedVectorField transformation;  // U, degrees 2..order
  GradedVectorField normal_form;     // R', degrees 2..order, each grade in Ker(d0*)
  int order = 0;
  std::vector<DegreeNorms> norms;
  bool linearizable = false;
};

// Degree-by-degree solution of R' + bracket(U, N) = R(I+U) - DU.R' up to
// polynomial degree `order`. X must be expressed in the frame's canonical
// coordinates with linear part exactly N (FrameMismatch otherwise).
NormalFormResult normal_form(const NilpotentFrame& frame, const GradedVectorField& x, int order,
                             const NormalFormOptions& options = {});

// Grade-delta right-hand side computed from U and R' of lower degrees only.
HomogeneousField normal_form_rhs(const GradedVectorField& nonlinear_part, const GradedVectorField& u,
                                 const GradedVectorField& r_prime, int degree);

struct ConjugacyReport {
  std::vector<double> residuals;  // Fischer norm per polynomial degree 1..order
  double threshold = 0.0;
  double max_residual = 0.0;
  bool passed = false;
};

// Compares (N+R) o (I+U) with D(I+U).(N+R') degree by degree; passes iff every
// residual is at most 1e-7 (1 + ||X||).
ConjugacyReport verify_conjugacy(const NilpotentFrame& frame, const GradedVectorField& x,
                                 const NormalFormResult& result, int order);

// max over t of the largest coefficient of R'(e^{tM} x) - e^{tM} R'(x).
double equivariance_check(const NilpotentFrame& frame, const NormalFormResult& result,
                          std::span<const double> t_samples);

// e^{tA} for nilpotent A (finite series).
Eigen::MatrixXcd nilpotent_exponential(const Eigen::MatrixXcd& a, double t);

// Push-forward of a field given in original coordinates to the frame's
// canonical coordinates, y = Q x: y -> Q f(Q^{-1} y).
GradedVectorField to_canonical_coordinates(const NilpotentFrame& frame, const GradedVectorField& f);
// Inverse of to_canonical_coordinates.
GradedVectorField to_original_coordinates(const NilpotentFrame& frame, const GradedVectorField& f);

}  // namespace nilnf
