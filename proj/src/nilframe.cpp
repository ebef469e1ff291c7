#include "nilnf/nilframe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "nilnf/errors.hpp"

namespace nilnf {

namespace {

RationalVector alpha_squared_formula(int k) {
  RationalVector out;
  for (int i = 1; i <= k; ++i) out.emplace_back(i * (k + 1 - i));
  return out;
}

int to_int(const Rational& r) {
  if (boost::multiprecision::denominator(r) != 1)
    throw InvariantViolation("expected an integral weight, got " + to_string(r));
  return static_cast<int>(boost::multiprecision::numerator(r));
}

struct Chain {
  RationalVector top;
  int length;
};

}  // namespace

BlockStructure::BlockStructure(std::vector<int> params) : params_(std::move(params)) {
  if (params_.empty()) throw StructuralError("block structure needs at least one block");
  for (int k : params_) {
    if (k < 0) throw StructuralError("block parameters must be nonnegative");
    total_ += k + 1;
  }
  std::sort(params_.begin(), params_.end(), std::greater<>());
}

int BlockStructure::offset(int block) const {
  int off = 0;
  for (int j = 0; j < block; ++j) off += params_.at(j) + 1;
  return off;
}

std::vector<BlockStructure> all_block_structures(int total_dimension) {
  // Partitions of total_dimension into block sizes k + 1, non-increasing.
  std::vector<BlockStructure> out;
  std::vector<int> current;
  std::function<void(int, int)> recurse = [&](int remaining, int max_size) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int size = std::min(remaining, max_size); size >= 1; --size) {
      current.push_back(size - 1);
      recurse(remaining - size, size);
      current.pop_back();
    }
  };
  if (total_dimension < 1) throw StructuralError("total dimension must be positive");
  recurse(total_dimension, total_dimension);
  return out;
}

NilpotentFrame build_normalized_nilpotent(const BlockStructure& blocks) {
  const int dim = blocks.total_dimension();
  NilpotentFrame frame{
      .blocks = blocks,
      .alpha_squared = {},
      .alphas = {},
      .weights = {},
      .n = Eigen::MatrixXd::Zero(dim, dim),
      .m = Eigen::MatrixXd::Zero(dim, dim),
      .h = Eigen::MatrixXd::Zero(dim, dim),
      .q = Eigen::MatrixXcd::Identity(dim, dim),
      .q_inverse = Eigen::MatrixXcd::Identity(dim, dim),
  };

  for (int b = 0; b < blocks.block_count(); ++b) {
    const int k = blocks.params()[b];
    const int off = blocks.offset(b);
    RationalVector sq = alpha_squared_formula(k);
    std::vector<double> roots;
    for (int i = 0; i < k; ++i) {
      roots.push_back(std::sqrt(static_cast<double>(sq[i])));
      frame.n(off + i, off + i + 1) = roots.back();
    }
    // h_i = alpha_i^2 - alpha_{i-1}^2 with alpha_0 = alpha_{k+1} = 0.
    for (int i = 0; i <= k; ++i) {
      const Rational upper = i < k ? sq[i] : Rational(0);
      const Rational lower = i > 0 ? sq[i - 1] : Rational(0);
      frame.weights.push_back(to_int(upper - lower));
    }
    frame.alpha_squared.push_back(std::move(sq));
    frame.alphas.push_back(std::move(roots));
  }
  frame.m = frame.n.transpose();
  frame.h = lie_bracket(frame.n_field(), frame.m_field()).linear_matrix().real();
  return frame;
}

Sl2Residuals verify_sl2(const NilpotentFrame& frame) {
  const auto& n = frame.n;
  const auto& m = frame.m;
  const auto& h = frame.h;
  Sl2Residuals r;
  r.h_n = ((h * n - n * h) - 2.0 * n).norm();
  r.h_m = ((h * m - m * h) + 2.0 * m).norm();
  r.n_m = ((n * m - m * n) - h).norm();
  return r;
}

RationalVector solve_alpha_system(int n) {
  if (n < 1) throw DomainError("solve_alpha_system needs n >= 1");
  // Thomas algorithm on the (2, -1) tridiagonal matrix, exact.
  RationalVector c_prime(n), d_prime(n);
  c_prime[0] = Rational(-1) / 2;
  d_prime[0] = Rational(2) / 2;
  for (int i = 1; i < n; ++i) {
    const Rational denom = Rational(2) - Rational(-1) * c_prime[i - 1];
    c_prime[i] = Rational(-1) / denom;
    d_prime[i] = (Rational(2) - Rational(-1) * d_prime[i - 1]) / denom;
  }
  RationalVector x(n);
  x[n - 1] = d_prime[n - 1];
  for (int i = n - 2; i >= 0; --i) x[i] = d_prime[i] - c_prime[i] * x[i + 1];
  return x;
}

NilpotentFrame jordan_normalize(const RationalMatrix& l) {
  const int dim = l.rows();
  if (dim < 1 || l.cols() != dim) throw StructuralError("jordan_normalize needs a nonempty square matrix");

  std::vector<RationalMatrix> powers{RationalMatrix::identity(dim)};
  std::vector<int> ranks{dim};
  for (int p = 1; p <= dim; ++p) {
    powers.push_back(powers.back() * l);
    ranks.push_back(powers.back().rank());
  }
  if (ranks[dim] > 0) {
    for (int p = 0; p < dim; ++p)
      if (ranks[p] == ranks[p + 1]) throw NotNilpotent(p, ranks[p]);
    throw NotNilpotent(dim, ranks[dim]);
  }
  int index = 0;
  while (ranks[index] > 0) ++index;

  // Chain tops, longest first. At level p, the vectors already forced by
  // longer chains are L^{q-p} w; new tops extend ker L^{p-1} plus those.
  std::vector<Chain> chains;
  for (int p = index; p >= 1; --p) {
    std::vector<RationalVector> spanning = powers[p - 1].nullspace();
    for (const Chain& c : chains) spanning.push_back(powers[c.length - p] * c.top);
    int current_rank = rank_of(spanning);
    for (RationalVector& candidate : powers[p].nullspace()) {
      spanning.push_back(candidate);
      const int r = rank_of(spanning);
      if (r > current_rank) {
        current_rank = r;
        chains.push_back({std::move(candidate), p});
      } else {
        spanning.pop_back();
      }
    }
  }

  std::vector<int> params;
  for (const Chain& c : chains) params.push_back(c.length - 1);
  NilpotentFrame frame = build_normalized_nilpotent(BlockStructure(params));

  // Columns of C: chain vectors bottom (kernel) to top, block by block.
  RationalMatrix chain_basis(dim, dim);
  std::vector<double> scale(dim, 1.0);
  int column = 0;
  for (std::size_t b = 0; b < chains.size(); ++b) {
    const int len = chains[b].length;
    std::vector<RationalVector> vectors(len);
    vectors[len - 1] = chains[b].top;
    for (int i = len - 2; i >= 0; --i) vectors[i] = l * vectors[i + 1];
    // Normalize so the bottom vector's first nonzero entry is 1.
    const auto lead = std::find_if(vectors[0].begin(), vectors[0].end(), [](const Rational& x) { return x != 0; });
    const Rational pivot = *lead;
    double s = 1.0;
    for (int i = 0; i < len; ++i) {
      for (int r = 0; r < dim; ++r) chain_basis(r, column + i) = vectors[i][r] / pivot;
      scale[column + i] = s;
      if (i < len - 1) s *= frame.alphas[b][i];
    }
    column += len;
  }

  // P = C diag(s) satisfies L P = P N, hence Q = P^{-1} = diag(1/s) C^{-1}.
  const Eigen::MatrixXd c = chain_basis.to_double();
  const Eigen::MatrixXd c_inv = chain_basis.inverse().to_double();
  const Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(scale.data(), dim);
  frame.q_inverse = (c * s.asDiagonal()).cast<Complex>();
  frame.q = (s.cwiseInverse().asDiagonal() * c_inv).cast<Complex>();
  frame.q_norm = operator_norm(frame.q);
  frame.q_inverse_norm = operator_norm(frame.q_inverse);
  return frame;
}

double operator_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

}  // namespace nilnf
