#pragma once

#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nilnf/nilframe.hpp"
#include "nilnf/polyalg.hpp"

namespace nilnf {

inline constexpr double kSnapThreshold = 0.5;
inline constexpr double kDefaultResidualTolerance = 1e-8;
// Above this dimension the dense eigensolve is skipped and only the
// combinatorial spectrum is reported.
inline constexpr int kDenseEigenLimit = 2000;

struct BasisElement {
  int component;
  MultiIndex monomial;
};

// Monomial basis x^beta d/dx_i of V_grade, component-major and GradedLex
// within a component. Matrices use the Fischer-orthonormalized version,
// where each element is scaled by sqrt(|beta|!/beta!).
class GradeBasis {
 public:
  GradeBasis(int dimension, int grade);

  int dimension() const noexcept { return dimension_; }
  int grade() const noexcept { return grade_; }
  int size() const noexcept { return static_cast<int>(elements_.size()); }
  const std::vector<BasisElement>& elements() const noexcept { return elements_; }
  const BasisElement& operator[](int k) const { return elements_[k]; }

  int index_of(int component, const MultiIndex& monomial) const;
  double scale(int k) const { return scales_[k]; }

  // Coordinates in the orthonormalized basis; Euclidean norm = Fischer norm.
  Eigen::VectorXcd coordinates(const HomogeneousField& field) const;
  HomogeneousField field(const Eigen::VectorXcd& coordinates) const;

 private:
  int dimension_;
  int grade_;
  int monomials_per_component_;
  std::vector<BasisElement> elements_;
  std::vector<double> scales_;
  std::map<MultiIndex, int, GradedLex> monomial_index_;
};

struct OperatorMatrices {
  int grade;
  GradeBasis basis;
  Eigen::MatrixXcd d0;      // U -> bracket(U, N)
  Eigen::MatrixXcd d0star;  // adjoint formula, built independently of d0
  Eigen::MatrixXcd box;     // d0 * d0star

  // ||d0star - d0^H||_max
  double adjoint_mismatch() const;
  // D = d0 d0* - d0* d0
  Eigen::MatrixXcd commutator_d() const;
};

OperatorMatrices build_operators(const NilpotentFrame& frame, int grade);

// Applies the adjoint formula d0*(V)_k = M(V_k) - sum_j conj(dN_j/dx_k) V_j.
HomogeneousField apply_d0_adjoint(const NilpotentFrame& frame, const HomogeneousField& v);

// sum_j beta_j h_j - h_i for the basis vector x^beta d/dx_i.
int weight_of(const NilpotentFrame& frame, const BasisElement& element);

struct SpectralData {
  int grade = 0;
  int dimension = 0;
  std::map<int, int> weight_multiset;
  std::map<int, int> irrep_multiplicity;  // highest weight -> count
  std::vector<long> predicted_spectrum;   // sorted ascending
  std::optional<std::vector<double>> numeric_spectrum;
  double a_delta = 0.0;                   // +infinity when there is no nonzero eigenvalue
  int kernel_dim = 0;

  bool nonzero_spectrum_empty() const;
};

// Weights, irreducible decomposition and the integer spectrum of box, from
// sl(2) representation theory alone.
SpectralData spectrum_oracle(const NilpotentFrame& frame, int grade);

// Eigenvalues of the Hermitian box matrix, ascending. Throws NumericError
// (with the path of a matrix dump) when the eigensolver fails.
std::vector<double> numeric_spectrum(const OperatorMatrices& ops);

struct SpectrumComparison {
  bool all_near_integer = false;
  bool matches_oracle = false;
  bool nonzero_at_least_one = false;
  double max_snap_error = 0.0;
  std::vector<long> snapped;
  bool agrees() const { return all_near_integer && matches_oracle && nonzero_at_least_one; }
};

SpectrumComparison compare_spectra(const std::vector<long>& predicted, const std::vector<double>& numeric,
                                   double tolerance = kDefaultResidualTolerance);

// Oracle spectrum plus, for dimensions up to kDenseEigenLimit, the numeric
// spectrum.
SpectralData analyze_grade(const NilpotentFrame& frame, int grade);

struct Eigenspace {
  long snapped;                // integer eigenvalue
  std::vector<double> values;  // numeric eigenvalue of each column
  Eigen::MatrixXcd vectors;    // orthonormal columns
};

struct SpectralDecomposition {
  int grade = 0;
  std::vector<Eigenspace> eigenspaces;  // ascending by snapped value

  // Orthonormal basis of Ker(box) = Ker(d0*), possibly with zero columns.
  Eigen::MatrixXcd kernel_basis(int dimension) const;
};

// Eigendecomposition of box, solved block by block on the weight spaces of D
// (box preserves weight). Eigenvalues are grouped by integer snapping.
SpectralDecomposition decompose(const NilpotentFrame& frame, const OperatorMatrices& ops);

struct ResonantSplit {
  HomogeneousField resonant;  // orthogonal projection onto Ker(d0*)
  HomogeneousField image;     // remainder, in Im(d0)
};

// Operators and spectral data of one grade, built once and reused.
class HomologicalSystem {
 public:
  HomologicalSystem(const NilpotentFrame& frame, int grade);

  const OperatorMatrices& operators() const noexcept { return ops_; }
  const SpectralDecomposition& spectral() const noexcept { return spectral_; }
  int grade() const noexcept { return ops_.grade; }

  ResonantSplit split_resonant(const HomogeneousField& rhs) const;

  // Minimum-norm W in Im(d0*) with d0(W) = t. Requires t orthogonal to
  // Ker(d0*) within tolerance * max(||t||, scale); throws ContractViolation
  // otherwise and ResidualTooLarge if ||d0 W - t|| exceeds the same bound.
  HomogeneousField solve_homological(const HomogeneousField& t,
                                     double tolerance = kDefaultResidualTolerance,
                                     double scale = 0.0) const;

  HomogeneousField apply_d0(const HomogeneousField& u) const;
  HomogeneousField apply_d0star(const HomogeneousField& v) const;

 private:
  OperatorMatrices ops_;
  SpectralDecomposition spectral_;
  Eigen::MatrixXcd kernel_;
};

ResonantSplit split_resonant(const HomologicalSystem& system, const HomogeneousField& rhs);
HomogeneousField solve_homological(const HomologicalSystem& system, const HomogeneousField& t,
                                   double tolerance = kDefaultResidualTolerance);

}  // namespace nilnf
