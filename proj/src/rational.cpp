#include "nilnf/rational.hpp"

#include <cctype>
#include <utility>

#include "nilnf/errors.hpp"

namespace nilnf {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(std::string_view digits, std::string_view original) {
  if (digits.empty()) throw DomainError("malformed rational '" + std::string(original) + "'");
  cpp_int value = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw DomainError("malformed rational '" + std::string(original) + "'");
    value = value * 10 + (ch - '0');
  }
  return value;
}

cpp_int power_of_ten(long exponent) {
  cpp_int result = 1;
  for (long i = 0; i < exponent; ++i) result *= 10;
  return result;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Rational parse_decimal(std::string_view s, std::string_view original) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (exp_text.empty() || exp_text.size() > 6)
      throw DomainError("malformed rational '" + std::string(original) + "'");
    exponent = static_cast<long>(parse_integer(exp_text, original));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty())
      throw DomainError("malformed rational '" + std::string(original) + "'");
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    digits = std::string(s);
  }
  Rational value(parse_integer(digits, original));
  if (exponent > 0) value *= power_of_ten(exponent);
  if (exponent < 0) value /= power_of_ten(-exponent);
  return negative ? Rational(-value) : value;
}

// Row-reduces in place, pivoting only in the first `cols` columns (row
// operations act on the full row, so augmented columns follow); returns
// pivot columns.
std::vector<int> row_reduce(std::vector<std::vector<Rational>>& a, int cols) {
  std::vector<int> pivots;
  int row = 0;
  const int rows = static_cast<int>(a.size());
  for (int col = 0; col < cols && row < rows; ++col) {
    int pivot = -1;
    for (int r = row; r < rows; ++r) {
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(a[row], a[pivot]);
    const Rational lead = a[row][col];
    const int width = static_cast<int>(a[row].size());
    for (int c = col; c < width; ++c) a[row][c] /= lead;
    for (int r = 0; r < rows; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (int c = col; c < width; ++c) a[r][c] -= factor * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw DomainError("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(trim(s.substr(0, slash)), text);
    Rational den = parse_decimal(trim(s.substr(slash + 1)), text);
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  return parse_decimal(s, text);
}

std::string to_string(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Rational(0)) {
  if (rows < 0 || cols < 0) throw StructuralError("negative matrix dimension");
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix id(n, n);
  for (int i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw StructuralError("matrix product shape mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
  if (static_cast<int>(v.size()) != cols_) throw StructuralError("matrix-vector shape mismatch");
  RationalVector out(rows_, Rational(0));
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
  return out;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

int RationalMatrix::rank() const {
  std::vector<std::vector<Rational>> a(rows_, std::vector<Rational>(cols_));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) a[r][c] = (*this)(r, c);
  return static_cast<int>(row_reduce(a, cols_).size());
}

std::vector<RationalVector> RationalMatrix::nullspace() const {
  std::vector<std::vector<Rational>> a(rows_, std::vector<Rational>(cols_));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) a[r][c] = (*this)(r, c);
  const std::vector<int> pivots = row_reduce(a, cols_);
  std::vector<bool> is_pivot(cols_, false);
  for (int p : pivots) is_pivot[p] = true;

  std::vector<RationalVector> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols_, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalMatrix RationalMatrix::inverse() const {
  if (rows_ != cols_) throw StructuralError("inverse of a non-square matrix");
  const int n = rows_;
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a[r][c] = (*this)(r, c);
    a[r][n + r] = 1;
  }
  const std::vector<int> pivots = row_reduce(a, n);
  if (static_cast<int>(pivots.size()) != n) throw DomainError("matrix is singular");
  RationalMatrix inv(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv(r, c) = a[r][n + c];
  return inv;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd out(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(r, c) = static_cast<double>((*this)(r, c));
  return out;
}

int rank_of(const std::vector<RationalVector>& vectors) {
  if (vectors.empty()) return 0;
  const int n = static_cast<int>(vectors.front().size());
  // Vectors as rows; row rank equals column rank.
  std::vector<std::vector<Rational>> a(vectors.begin(), vectors.end());
  for (const auto& v : a)
    if (static_cast<int>(v.size()) != n) throw StructuralError("vectors of unequal length");
  return static_cast<int>(row_reduce(a, n).size());
}

}  // namespace nilnf
