#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace nilnf {

using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

// Accepts "p", "p/q", decimals ("-0.125", "1e-3", "2.5E2"). Decimal input is
// converted exactly, never through a double.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

// Dense row-major matrix over exact rationals. Only meant for the small
// linear-part matrices whose Jordan structure must be decided exactly.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols);

  static RationalMatrix identity(int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Rational& operator()(int r, int c) { return data_[index(r, c)]; }
  const Rational& operator()(int r, int c) const { return data_[index(r, c)]; }

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalVector operator*(const RationalVector& v) const;
  bool operator==(const RationalMatrix& rhs) const = default;

  bool is_zero() const;
  int rank() const;
  // Basis of the right null space, one vector per free column of the RREF.
  std::vector<RationalVector> nullspace() const;
  // Throws DomainError when singular.
  RationalMatrix inverse() const;

  Eigen::MatrixXd to_double() const;

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

// Rank of the matrix whose columns are the given vectors.
int rank_of(const std::vector<RationalVector>& vectors);

}  // namespace nilnf
