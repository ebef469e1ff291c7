#include "nilnf/homology.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "nilnf/errors.hpp"

namespace nilnf {

namespace {

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

std::string dump_matrix(const Eigen::MatrixXcd& a, const char* tag) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::path dir = fs::temp_directory_path(ec);
  if (ec) dir = ".";
  const fs::path path = dir / (std::string("nilnf_") + tag + "_" + std::to_string(a.rows()) + ".txt");
  std::ofstream out(path);
  out.precision(17);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out << a(r, c).real() << ' ' << a(r, c).imag() << (c + 1 < a.cols() ? ' ' : '\n');
  }
  return path.string();
}

template <typename FieldMap>
Eigen::MatrixXcd matrix_of(const GradeBasis& basis, FieldMap&& apply) {
  const int n = basis.size();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int col = 0; col < n; ++col) {
    const BasisElement& e = basis[col];
    const HomogeneousField image =
        apply(HomogeneousField::monomial(basis.dimension(), e.component, e.monomial));
    for (int i = 0; i < image.dimension(); ++i)
      for (const auto& [gamma, c] : image[i].terms()) {
        const int row = basis.index_of(i, gamma);
        a(row, col) += basis.scale(col) * c / basis.scale(row);
      }
  }
  return a;
}

}  // namespace

GradeBasis::GradeBasis(int dimension, int grade) : dimension_(dimension), grade_(grade) {
  if (dimension < 1 || grade < 0) throw StructuralError("invalid grade basis shape");
  const std::vector<MultiIndex> monomials = monomials_of_degree(dimension, grade + 1);
  monomials_per_component_ = static_cast<int>(monomials.size());
  for (int k = 0; k < monomials_per_component_; ++k) monomial_index_.emplace(monomials[k], k);
  const double total = factorial(grade + 1);
  for (int i = 0; i < dimension; ++i)
    for (const MultiIndex& beta : monomials) {
      elements_.push_back({i, beta});
      scales_.push_back(std::sqrt(total / beta.factorial()));
    }
}

int GradeBasis::index_of(int component, const MultiIndex& monomial) const {
  auto it = monomial_index_.find(monomial);
  if (it == monomial_index_.end() || component < 0 || component >= dimension_)
    throw StructuralError("basis vector not in V_" + std::to_string(grade_));
  return component * monomials_per_component_ + it->second;
}

Eigen::VectorXcd GradeBasis::coordinates(const HomogeneousField& field) const {
  if (field.dimension() != dimension_ || field.grade() != grade_)
    throw StructuralError("field does not belong to V_" + std::to_string(grade_));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(size());
  for (int i = 0; i < dimension_; ++i)
    for (const auto& [beta, c] : field[i].terms()) {
      const int k = index_of(i, beta);
      v(k) = c / scales_[k];
    }
  return v;
}

HomogeneousField GradeBasis::field(const Eigen::VectorXcd& coordinates) const {
  if (coordinates.size() != size()) throw StructuralError("coordinate vector has wrong length");
  HomogeneousField f(dimension_, grade_);
  for (int k = 0; k < size(); ++k)
    if (coordinates(k) != Complex(0.0))
      f[elements_[k].component].add_term(elements_[k].monomial, coordinates(k) * scales_[k]);
  return f;
}

double OperatorMatrices::adjoint_mismatch() const {
  if (d0.size() == 0) return 0.0;
  return (d0star - d0.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd OperatorMatrices::commutator_d() const { return d0 * d0star - d0star * d0; }

HomogeneousField apply_d0_adjoint(const NilpotentFrame& frame, const HomogeneousField& v) {
  const int dim = frame.dimension();
  if (v.dimension() != dim) throw StructuralError("apply_d0_adjoint: dimension mismatch");
  // The Jacobian of the linear field N is its matrix; N^* acts on
  // polynomials as the derivation of the conjugate-transposed matrix.
  const Eigen::MatrixXcd jacobian = frame.n.cast<Complex>();
  const HomogeneousField adjoint_derivation = HomogeneousField::linear(jacobian.adjoint());
  HomogeneousField out(dim, v.grade());
  for (int k = 0; k < dim; ++k) {
    out[k] += adjoint_derivation.apply(v[k]);
    for (int j = 0; j < dim; ++j) {
      const Complex a = jacobian(j, k);
      if (a != Complex(0.0)) out[k] -= v[j] * std::conj(a);
    }
  }
  return out;
}

OperatorMatrices build_operators(const NilpotentFrame& frame, int grade) {
  if (grade < 0) throw DomainError("grade must be nonnegative");
  GradeBasis basis(frame.dimension(), grade);
  const HomogeneousField n = frame.n_field();
  Eigen::MatrixXcd d0 = matrix_of(basis, [&](const HomogeneousField& u) { return lie_bracket(u, n); });
  Eigen::MatrixXcd d0star = matrix_of(basis, [&](const HomogeneousField& v) { return apply_d0_adjoint(frame, v); });
  Eigen::MatrixXcd box = d0 * d0star;
  return OperatorMatrices{grade, std::move(basis), std::move(d0), std::move(d0star), std::move(box)};
}

int weight_of(const NilpotentFrame& frame, const BasisElement& element) {
  const auto& h = frame.weights;
  if (element.monomial.dimension() != static_cast<int>(h.size()))
    throw StructuralError("weight_of: basis vector dimension mismatch");
  int w = -h.at(element.component);
  for (int j = 0; j < element.monomial.dimension(); ++j) w += element.monomial[j] * h[j];
  return w;
}

bool SpectralData::nonzero_spectrum_empty() const {
  return std::all_of(predicted_spectrum.begin(), predicted_spectrum.end(), [](long v) { return v == 0; });
}

SpectralData spectrum_oracle(const NilpotentFrame& frame, int grade) {
  if (grade < 0) throw DomainError("grade must be nonnegative");
  const GradeBasis basis(frame.dimension(), grade);
  SpectralData data;
  data.grade = grade;
  data.dimension = basis.size();
  for (const BasisElement& e : basis.elements()) ++data.weight_multiset[weight_of(frame, e)];

  auto count = [&](int w) {
    auto it = data.weight_multiset.find(w);
    return it == data.weight_multiset.end() ? 0 : it->second;
  };
  for (const auto& [w, c] : data.weight_multiset) {
    if (w < 0) continue;
    const int mult = c - count(w + 2);
    if (mult < 0)
      throw InvariantViolation("negative multiplicity for highest weight " + std::to_string(w));
    if (mult > 0) data.irrep_multiplicity[w] = mult;
  }

  // On the irreducible of highest weight w, box acts diagonally with
  // entries j(w + 1 - j), j = 0..w.
  for (const auto& [w, mult] : data.irrep_multiplicity) {
    data.kernel_dim += mult;
    for (int r = 0; r < mult; ++r)
      for (int j = 0; j <= w; ++j) data.predicted_spectrum.push_back(static_cast<long>(j) * (w + 1 - j));
  }
  std::sort(data.predicted_spectrum.begin(), data.predicted_spectrum.end());
  if (static_cast<int>(data.predicted_spectrum.size()) != data.dimension)
    throw InvariantViolation("irreducible decomposition does not exhaust V_" + std::to_string(grade));

  data.a_delta = std::numeric_limits<double>::infinity();
  for (long v : data.predicted_spectrum)
    if (v > 0) data.a_delta = std::min(data.a_delta, std::sqrt(static_cast<double>(v)));
  return data;
}

std::vector<double> numeric_spectrum(const OperatorMatrices& ops) {
  if (ops.box.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(ops.box, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("eigensolver did not converge on box of grade " + std::to_string(ops.grade) +
                       "; matrix written to " + dump_matrix(ops.box, "box"));
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

SpectrumComparison compare_spectra(const std::vector<long>& predicted, const std::vector<double>& numeric,
                                   double tolerance) {
  SpectrumComparison cmp;
  cmp.all_near_integer = true;
  cmp.nonzero_at_least_one = true;
  for (double v : numeric) {
    const double r = std::round(v);
    cmp.max_snap_error = std::max(cmp.max_snap_error, std::abs(v - r));
    if (std::abs(v - r) > tolerance || r < 0) cmp.all_near_integer = false;
    cmp.snapped.push_back(static_cast<long>(r));
    if (r != 0 && r < 1) cmp.nonzero_at_least_one = false;
  }
  std::sort(cmp.snapped.begin(), cmp.snapped.end());
  std::vector<long> sorted_prediction(predicted);
  std::sort(sorted_prediction.begin(), sorted_prediction.end());
  cmp.matches_oracle = cmp.snapped == sorted_prediction;
  return cmp;
}

SpectralData analyze_grade(const NilpotentFrame& frame, int grade) {
  SpectralData data = spectrum_oracle(frame, grade);
  if (data.dimension <= kDenseEigenLimit) data.numeric_spectrum = numeric_spectrum(build_operators(frame, grade));
  return data;
}

Eigen::MatrixXcd SpectralDecomposition::kernel_basis(int dimension) const {
  for (const Eigenspace& e : eigenspaces)
    if (e.snapped == 0) return e.vectors;
  return Eigen::MatrixXcd::Zero(dimension, 0);
}

SpectralDecomposition decompose(const NilpotentFrame& frame, const OperatorMatrices& ops) {
  const GradeBasis& basis = ops.basis;
  const int n = basis.size();
  std::map<int, std::vector<int>> by_weight;
  for (int k = 0; k < n; ++k) by_weight[weight_of(frame, basis[k])].push_back(k);

  const double box_scale = std::max(1.0, ops.box.norm());
  std::vector<int> weight(n);
  for (const auto& [w, idx] : by_weight)
    for (int k : idx) weight[k] = w;
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      if (weight[r] != weight[c] && std::abs(ops.box(r, c)) > 1e-12 * box_scale)
        throw InvariantViolation("box does not preserve weight spaces");

  std::map<long, Eigenspace> grouped;
  for (const auto& [w, idx] : by_weight) {
    const int k = static_cast<int>(idx.size());
    Eigen::MatrixXcd block(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) block(r, c) = ops.box(idx[r], idx[c]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block);
    if (solver.info() != Eigen::Success)
      throw NumericError("eigensolver did not converge on weight " + std::to_string(w) + " block of grade " +
                         std::to_string(ops.grade) + "; matrix written to " + dump_matrix(block, "box_block"));
    for (int j = 0; j < k; ++j) {
      const double lambda = std::max(solver.eigenvalues()(j), 0.0);
      const long snapped = lambda <= kSnapThreshold ? 0 : std::lround(lambda);
      Eigenspace& space = grouped[snapped];
      if (space.vectors.rows() == 0) {
        space.snapped = snapped;
        space.vectors.resize(n, 0);
      }
      Eigen::VectorXcd full = Eigen::VectorXcd::Zero(n);
      for (int r = 0; r < k; ++r) full(idx[r]) = solver.eigenvectors()(r, j);
      space.vectors.conservativeResize(Eigen::NoChange, space.vectors.cols() + 1);
      space.vectors.col(space.vectors.cols() - 1) = full;
      space.values.push_back(solver.eigenvalues()(j));
    }
  }
  SpectralDecomposition out;
  out.grade = ops.grade;
  for (auto& [s, space] : grouped) out.eigenspaces.push_back(std::move(space));
  return out;
}

HomologicalSystem::HomologicalSystem(const NilpotentFrame& frame, int grade)
    : ops_(build_operators(frame, grade)),
      spectral_(decompose(frame, ops_)),
      kernel_(spectral_.kernel_basis(ops_.basis.size())) {}

HomogeneousField HomologicalSystem::apply_d0(const HomogeneousField& u) const {
  return ops_.basis.field(ops_.d0 * ops_.basis.coordinates(u));
}

HomogeneousField HomologicalSystem::apply_d0star(const HomogeneousField& v) const {
  return ops_.basis.field(ops_.d0star * ops_.basis.coordinates(v));
}

ResonantSplit HomologicalSystem::split_resonant(const HomogeneousField& rhs) const {
  const Eigen::VectorXcd v = ops_.basis.coordinates(rhs);
  const Eigen::VectorXcd resonant = kernel_ * (kernel_.adjoint() * v);
  return {ops_.basis.field(resonant), ops_.basis.field(v - resonant)};
}

HomogeneousField HomologicalSystem::solve_homological(const HomogeneousField& t, double tolerance,
                                                      double scale) const {
  const Eigen::VectorXcd target = ops_.basis.coordinates(t);
  const double norm = target.norm();
  if (norm == 0.0) return HomogeneousField(t.dimension(), t.grade());
  const double bound = tolerance * std::max(norm, scale);
  const double kernel_part = (kernel_.adjoint() * target).norm();
  if (kernel_part > bound)
    throw ContractViolation("solve_homological: right-hand side has a Ker(d0*) component of norm " +
                            std::to_string(kernel_part));

  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(target.size());
  for (const Eigenspace& space : spectral_.eigenspaces) {
    if (space.snapped == 0) continue;
    Eigen::VectorXcd c = space.vectors.adjoint() * target;
    for (Eigen::Index j = 0; j < c.size(); ++j) c(j) /= space.values[j];
    y += space.vectors * c;
  }
  const Eigen::VectorXcd w = ops_.d0star * y;
  const double residual = (ops_.d0 * w - target).norm();
  if (residual > bound) throw ResidualTooLarge(residual, bound);
  return ops_.basis.field(w);
}

ResonantSplit split_resonant(const HomologicalSystem& system, const HomogeneousField& rhs) {
  return system.split_resonant(rhs);
}

HomogeneousField solve_homological(const HomologicalSystem& system, const HomogeneousField& t, double tolerance) {
  return system.solve_homological(t, tolerance);
}

}  // namespace nilnf
