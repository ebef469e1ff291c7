#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nilnf/polyalg.hpp"
#include "nilnf/rational.hpp"

namespace nilnf {

// Jordan block parameters k_1 >= k_2 >= ... >= 0; block j spans k_j + 1
// coordinates and k_j = 0 is a 1x1 zero block.
class BlockStructure {
 public:
  // Sorts descending. Throws StructuralError on an empty list or negative entry.
  explicit BlockStructure(std::vector<int> params);

  const std::vector<int>& params() const noexcept { return params_; }
  int block_count() const noexcept { return static_cast<int>(params_.size()); }
  int total_dimension() const noexcept { return total_; }
  // First coordinate of block j.
  int offset(int block) const;

  bool operator==(const BlockStructure&) const = default;

 private:
  std::vector<int> params_;
  int total_ = 0;
};

// Every block structure with the given total dimension, each in canonical
// (descending) order.
std::vector<BlockStructure> all_block_structures(int total_dimension);

struct NilpotentFrame {
  BlockStructure blocks;
  // Exact alpha_i^2 = i(k+1-i) per block, and their positive square roots.
  std::vector<RationalVector> alpha_squared;
  std::vector<std::vector<double>> alphas;
  // Diagonal of H, coordinate by coordinate: k, k-2, ..., -k within a block.
  std::vector<int> weights;

  Eigen::MatrixXd n;  // N, superdiagonal alpha_i within each block
  Eigen::MatrixXd m;  // M = N^*
  Eigen::MatrixXd h;  // H = bracket(N, M), computed on vector fields

  // Q L Q^{-1} = N. Identity for frames built directly from blocks.
  Eigen::MatrixXcd q;
  Eigen::MatrixXcd q_inverse;
  double q_norm = 1.0;
  double q_inverse_norm = 1.0;

  int dimension() const noexcept { return blocks.total_dimension(); }
  HomogeneousField n_field() const { return HomogeneousField::linear(n.cast<Complex>()); }
  HomogeneousField m_field() const { return HomogeneousField::linear(m.cast<Complex>()); }
  HomogeneousField h_field() const { return HomogeneousField::linear(h.cast<Complex>()); }
  bool is_zero() const { return n.isZero(0.0); }
};

NilpotentFrame build_normalized_nilpotent(const BlockStructure& blocks);

struct Sl2Residuals {
  double h_n = 0.0;  // ||[H,N] - 2N||_F
  double h_m = 0.0;  // ||[H,M] + 2M||_F
  double n_m = 0.0;  // ||[N,M] - H||_F
  double max() const { return std::max({h_n, h_m, n_m}); }
};

Sl2Residuals verify_sl2(const NilpotentFrame& frame);

// Exact solution of the tridiagonal system 2a_i - a_{i-1} - a_{i+1} = 2,
// a_0 = a_{n+1} = 0, for a_i = alpha_i^2.
RationalVector solve_alpha_system(int n);

// Jordan chains of a nilpotent rational matrix, then the alpha rescaling, so
// that Q L Q^{-1} is the canonical N of the detected block structure.
// Throws NotNilpotent, StructuralError for non-square input.
NilpotentFrame jordan_normalize(const RationalMatrix& l);

// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& a);

}  // namespace nilnf
