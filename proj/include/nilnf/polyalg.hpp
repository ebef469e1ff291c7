#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nilnf {

using Complex = std::complex<double>;

// Coefficients with modulus at or below this are dropped after every
// arithmetic operation.
inline constexpr double kPruneThreshold = 1e-14;

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  static MultiIndex zero(int dimension);
  static MultiIndex unit(int dimension, int variable);

  int dimension() const noexcept { return static_cast<int>(exponents_.size()); }
  int degree() const noexcept { return degree_; }
  int operator[](int variable) const { return exponents_[variable]; }
  const std::vector<int>& exponents() const noexcept { return exponents_; }

  MultiIndex operator+(const MultiIndex& other) const;
  // Lowers one exponent by one; the exponent must be positive.
  MultiIndex lowered(int variable) const;

  // alpha! = prod alpha_j!
  double factorial() const;

  bool operator==(const MultiIndex& other) const = default;

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

// Graded lexicographic order: lower total degree first; within a degree the
// lexicographically larger exponent vector comes first (x^2, xy, y^2).
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// All exponent vectors of the given degree, in GradedLex order.
std::vector<MultiIndex> monomials_of_degree(int dimension, int degree);

class HomogeneousPolynomial {
 public:
  using Terms = std::map<MultiIndex, Complex, GradedLex>;

  HomogeneousPolynomial(int dimension, int degree);

  static HomogeneousPolynomial monomial(const MultiIndex& exponents, Complex coefficient = 1.0);
  // sum_j coefficients[j] * x_j
  static HomogeneousPolynomial linear(std::span<const Complex> coefficients);

  int dimension() const noexcept { return dimension_; }
  int degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Complex coefficient(const MultiIndex& exponents) const;
  void add_term(const MultiIndex& exponents, Complex coefficient);

  HomogeneousPolynomial& operator+=(const HomogeneousPolynomial& rhs);
  HomogeneousPolynomial& operator-=(const HomogeneousPolynomial& rhs);
  HomogeneousPolynomial& operator*=(Complex scale);
  friend HomogeneousPolynomial operator+(HomogeneousPolynomial a, const HomogeneousPolynomial& b) {
    return a += b;
  }
  friend HomogeneousPolynomial operator-(HomogeneousPolynomial a, const HomogeneousPolynomial& b) {
    return a -= b;
  }
  friend HomogeneousPolynomial operator*(HomogeneousPolynomial a, Complex s) { return a *= s; }
  friend HomogeneousPolynomial operator*(Complex s, HomogeneousPolynomial a) { return a *= s; }

  HomogeneousPolynomial operator*(const HomogeneousPolynomial& rhs) const;

  // d/dx_variable. The derivative of a degree-0 polynomial is the zero
  // polynomial of degree 0.
  HomogeneousPolynomial derivative(int variable) const;

  Complex evaluate(std::span<const Complex> point) const;

  bool operator==(const HomogeneousPolynomial& rhs) const = default;

 private:
  void prune();

  int dimension_;
  int degree_;
  Terms terms_;
};

Complex fischer_inner_product(const HomogeneousPolynomial& p, const HomogeneousPolynomial& q);
double fischer_norm(const HomogeneousPolynomial& p);
// Sum of coefficient moduli.
double coefficient_norm(const HomogeneousPolynomial& p);
double max_coefficient(const HomogeneousPolynomial& p);

// An element of V_grade: `dimension` components, each homogeneous of degree
// grade + 1. Grade 0 holds linear fields.
class HomogeneousField {
 public:
  HomogeneousField(int dimension, int grade);
  HomogeneousField(int grade, std::vector<HomogeneousPolynomial> components);

  // Linear field x -> A x.
  static HomogeneousField linear(const Eigen::MatrixXcd& matrix);
  static HomogeneousField monomial(int dimension, int component, const MultiIndex& exponents,
                                   Complex coefficient = 1.0);

  int dimension() const noexcept { return static_cast<int>(components_.size()); }
  int grade() const noexcept { return grade_; }
  const HomogeneousPolynomial& operator[](int i) const { return components_[i]; }
  HomogeneousPolynomial& operator[](int i) { return components_[i]; }
  const std::vector<HomogeneousPolynomial>& components() const noexcept { return components_; }
  bool is_zero() const;

  // Matrix of a grade-0 field.
  Eigen::MatrixXcd linear_matrix() const;

  // Derivation of this field applied to a polynomial: sum_j F_j dp/dx_j.
  HomogeneousPolynomial apply(const HomogeneousPolynomial& p) const;

  HomogeneousField& operator+=(const HomogeneousField& rhs);
  HomogeneousField& operator-=(const HomogeneousField& rhs);
  HomogeneousField& operator*=(Complex scale);
  friend HomogeneousField operator+(HomogeneousField a, const HomogeneousField& b) { return a += b; }
  friend HomogeneousField operator-(HomogeneousField a, const HomogeneousField& b) { return a -= b; }
  friend HomogeneousField operator*(HomogeneousField a, Complex s) { return a *= s; }
  friend HomogeneousField operator*(Complex s, HomogeneousField a) { return a *= s; }

  bool operator==(const HomogeneousField& rhs) const = default;

 private:
  int grade_;
  std::vector<HomogeneousPolynomial> components_;
};

Complex field_inner_product(const HomogeneousField& v, const HomogeneousField& w);
double fischer_norm(const HomogeneousField& v);
double coefficient_norm(const HomogeneousField& v);
double max_coefficient(const HomogeneousField& v);

// bracket(v, w)_i = w(v_i) - v(w_i). With this orientation bracket(U, N) on
// U in V_delta is the homological operator d0, and for linear fields the
// bracket of matrices A, B is AB - BA.
HomogeneousField lie_bracket(const HomogeneousField& v, const HomogeneousField& w);

// (Du . r)_i = sum_j du_i/dx_j r_j, a field of grade u.grade + r.grade.
HomogeneousField jacobian_apply(const HomogeneousField& u, const HomogeneousField& r);

// Truncated formal vector field: grade delta -> element of V_delta, holding
// polynomial degrees 1..max_degree (grades 0..max_degree-1).
class GradedVectorField {
 public:
  GradedVectorField(int dimension, int max_degree);

  int dimension() const noexcept { return dimension_; }
  int max_degree() const noexcept { return max_degree_; }
  const std::map<int, HomogeneousField>& grades() const noexcept { return grades_; }

  // Zero field of the right shape when the grade is absent.
  HomogeneousField grade(int delta) const;
  bool has_grade(int delta) const { return grades_.count(delta) != 0; }
  // Replaces the grade; zero fields are not stored. Grades above
  // max_degree - 1 are rejected.
  void set_grade(HomogeneousField field);
  void add_to_grade(const HomogeneousField& field);
  // Smallest and largest polynomial degree with a nonzero grade, or 0 if empty.
  int lowest_degree() const;
  int highest_degree() const;
  bool is_zero() const { return grades_.empty(); }

  GradedVectorField truncated(int max_degree) const;
  // Copy with the grade-0 (linear) part removed.
  GradedVectorField nonlinear_part() const;

  GradedVectorField& operator+=(const GradedVectorField& rhs);
  GradedVectorField& operator-=(const GradedVectorField& rhs);
  friend GradedVectorField operator+(GradedVectorField a, const GradedVectorField& b) { return a += b; }
  friend GradedVectorField operator-(GradedVectorField a, const GradedVectorField& b) { return a -= b; }

  std::vector<Complex> evaluate(std::span<const Complex> point) const;

  bool operator==(const GradedVectorField& rhs) const = default;

 private:
  int dimension_;
  int max_degree_;
  std::map<int, HomogeneousField> grades_;
};

// f o (I + u), expanded and truncated at polynomial degree max_degree.
// u must have no linear part. Throws ContractViolation otherwise.
GradedVectorField substitute(const GradedVectorField& f, const GradedVectorField& u, int max_degree);

// Du . r truncated at polynomial degree max_degree.
GradedVectorField jacobian_apply(const GradedVectorField& u, const GradedVectorField& r, int max_degree);

// Coefficient-sum norm of the grade-delta part (degree delta + 1 monomials).
double gevrey_norm(const GradedVectorField& f, int delta);

// p(B y), a polynomial in y of the same degree.
HomogeneousPolynomial substitute_linear(const HomogeneousPolynomial& p, const Eigen::MatrixXcd& b);
// y -> A f(B y). For A = Q, B = Q^{-1} this is the push-forward of f under x -> Q x.
HomogeneousField transform_linear(const HomogeneousField& f, const Eigen::MatrixXcd& a,
                                  const Eigen::MatrixXcd& b);
GradedVectorField transform_linear(const GradedVectorField& f, const Eigen::MatrixXcd& a,
                                   const Eigen::MatrixXcd& b);

}  // namespace nilnf
