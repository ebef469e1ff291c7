#include "nilnf/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nilnf/errors.hpp"

namespace nilnf {

namespace {

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

void enumerate(int dimension, int remaining, int variable, std::vector<int>& current,
               std::vector<MultiIndex>& out) {
  if (variable == dimension - 1) {
    current[variable] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[variable] = e;
    enumerate(dimension, remaining - e, variable + 1, current, out);
  }
  current[variable] = 0;
}

void require_same_shape(const HomogeneousPolynomial& p, const HomogeneousPolynomial& q,
                        const char* what) {
  if (p.dimension() != q.dimension() || p.degree() != q.degree())
    throw StructuralError(std::string(what) + ": polynomials of dimension/degree (" +
                          std::to_string(p.dimension()) + ", " + std::to_string(p.degree()) +
                          ") and (" + std::to_string(q.dimension()) + ", " +
                          std::to_string(q.degree()) + ")");
}

void require_same_shape(const HomogeneousField& v, const HomogeneousField& w, const char* what) {
  if (v.dimension() != w.dimension() || v.grade() != w.grade())
    throw StructuralError(std::string(what) + ": fields of dimension/grade (" +
                          std::to_string(v.dimension()) + ", " + std::to_string(v.grade()) +
                          ") and (" + std::to_string(w.dimension()) + ", " +
                          std::to_string(w.grade()) + ")");
}

// Non-homogeneous polynomial truncated at a fixed degree, stored by degree.
class Series {
 public:
  Series(int dimension, int max_degree) : max_degree_(max_degree) {
    parts_.reserve(max_degree + 1);
    for (int d = 0; d <= max_degree; ++d) parts_.emplace_back(dimension, d);
  }

  static Series one(int dimension, int max_degree) {
    Series s(dimension, max_degree);
    s.parts_[0].add_term(MultiIndex::zero(dimension), 1.0);
    return s;
  }

  HomogeneousPolynomial& part(int degree) { return parts_[degree]; }
  const HomogeneousPolynomial& part(int degree) const { return parts_[degree]; }

  Series operator*(const Series& rhs) const {
    Series out(parts_.front().dimension(), max_degree_);
    for (int a = 0; a <= max_degree_; ++a) {
      if (parts_[a].is_zero()) continue;
      for (int b = 0; a + b <= max_degree_; ++b) {
        if (rhs.parts_[b].is_zero()) continue;
        out.parts_[a + b] += parts_[a] * rhs.parts_[b];
      }
    }
    return out;
  }

 private:
  int max_degree_;
  std::vector<HomogeneousPolynomial> parts_;
};

}  // namespace

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_)
    if (e < 0) throw StructuralError("negative exponent in multi-index");
  degree_ = std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

MultiIndex MultiIndex::zero(int dimension) { return MultiIndex(std::vector<int>(dimension, 0)); }

MultiIndex MultiIndex::unit(int dimension, int variable) {
  std::vector<int> e(dimension, 0);
  e.at(variable) = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (dimension() != other.dimension()) throw StructuralError("multi-index dimension mismatch");
  std::vector<int> e(exponents_);
  for (int j = 0; j < dimension(); ++j) e[j] += other.exponents_[j];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::lowered(int variable) const {
  std::vector<int> e(exponents_);
  if (e.at(variable) == 0) throw StructuralError("cannot lower a zero exponent");
  --e[variable];
  return MultiIndex(std::move(e));
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : exponents_) f *= nilnf::factorial(e);
  return f;
}

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.exponents() > b.exponents();
}

std::vector<MultiIndex> monomials_of_degree(int dimension, int degree) {
  if (dimension < 1 || degree < 0) throw StructuralError("invalid monomial enumeration request");
  std::vector<MultiIndex> out;
  std::vector<int> current(dimension, 0);
  enumerate(dimension, degree, 0, current, out);
  return out;
}

// ---------------------------------------------------------------------------

HomogeneousPolynomial::HomogeneousPolynomial(int dimension, int degree)
    : dimension_(dimension), degree_(degree) {
  if (dimension < 1 || degree < 0) throw StructuralError("invalid polynomial shape");
}

HomogeneousPolynomial HomogeneousPolynomial::monomial(const MultiIndex& exponents, Complex coefficient) {
  HomogeneousPolynomial p(exponents.dimension(), exponents.degree());
  p.add_term(exponents, coefficient);
  return p;
}

HomogeneousPolynomial HomogeneousPolynomial::linear(std::span<const Complex> coefficients) {
  const int m = static_cast<int>(coefficients.size());
  HomogeneousPolynomial p(m, 1);
  for (int j = 0; j < m; ++j) p.add_term(MultiIndex::unit(m, j), coefficients[j]);
  return p;
}

Complex HomogeneousPolynomial::coefficient(const MultiIndex& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void HomogeneousPolynomial::add_term(const MultiIndex& exponents, Complex coefficient) {
  if (exponents.dimension() != dimension_ || exponents.degree() != degree_)
    throw StructuralError("monomial does not match polynomial dimension/degree");
  auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
  if (!inserted) it->second += coefficient;
  if (std::abs(it->second) <= kPruneThreshold) terms_.erase(it);
}

HomogeneousPolynomial& HomogeneousPolynomial::operator+=(const HomogeneousPolynomial& rhs) {
  require_same_shape(*this, rhs, "polynomial addition");
  for (const auto& [k, c] : rhs.terms_) add_term(k, c);
  return *this;
}

HomogeneousPolynomial& HomogeneousPolynomial::operator-=(const HomogeneousPolynomial& rhs) {
  require_same_shape(*this, rhs, "polynomial subtraction");
  for (const auto& [k, c] : rhs.terms_) add_term(k, -c);
  return *this;
}

HomogeneousPolynomial& HomogeneousPolynomial::operator*=(Complex scale) {
  for (auto& [k, c] : terms_) c *= scale;
  prune();
  return *this;
}

HomogeneousPolynomial HomogeneousPolynomial::operator*(const HomogeneousPolynomial& rhs) const {
  if (dimension_ != rhs.dimension_) throw StructuralError("polynomial product dimension mismatch");
  HomogeneousPolynomial out(dimension_, degree_ + rhs.degree_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : rhs.terms_) {
      auto [it, inserted] = out.terms_.try_emplace(a + b, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  out.prune();
  return out;
}

HomogeneousPolynomial HomogeneousPolynomial::derivative(int variable) const {
  if (variable < 0 || variable >= dimension_) throw StructuralError("derivative variable out of range");
  HomogeneousPolynomial out(dimension_, std::max(degree_ - 1, 0));
  if (degree_ == 0) return out;
  for (const auto& [k, c] : terms_) {
    const int e = k[variable];
    if (e == 0) continue;
    out.terms_.emplace(k.lowered(variable), c * static_cast<double>(e));
  }
  return out;
}

Complex HomogeneousPolynomial::evaluate(std::span<const Complex> point) const {
  if (static_cast<int>(point.size()) != dimension_) throw StructuralError("evaluation point dimension mismatch");
  Complex sum = 0.0;
  for (const auto& [k, c] : terms_) {
    Complex term = c;
    for (int j = 0; j < dimension_; ++j)
      for (int e = 0; e < k[j]; ++e) term *= point[j];
    sum += term;
  }
  return sum;
}

void HomogeneousPolynomial::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) <= kPruneThreshold; });
}

Complex fischer_inner_product(const HomogeneousPolynomial& p, const HomogeneousPolynomial& q) {
  require_same_shape(p, q, "fischer_inner_product");
  const double total = factorial(p.degree());
  Complex sum = 0.0;
  for (const auto& [k, a] : p.terms()) {
    auto it = q.terms().find(k);
    if (it == q.terms().end()) continue;
    sum += a * std::conj(it->second) * (k.factorial() / total);
  }
  return sum;
}

double fischer_norm(const HomogeneousPolynomial& p) { return std::sqrt(fischer_inner_product(p, p).real()); }

double coefficient_norm(const HomogeneousPolynomial& p) {
  double s = 0.0;
  for (const auto& [k, c] : p.terms()) s += std::abs(c);
  return s;
}

double max_coefficient(const HomogeneousPolynomial& p) {
  double s = 0.0;
  for (const auto& [k, c] : p.terms()) s = std::max(s, std::abs(c));
  return s;
}

// ---------------------------------------------------------------------------

HomogeneousField::HomogeneousField(int dimension, int grade) : grade_(grade) {
  if (dimension < 1 || grade < 0) throw StructuralError("invalid field shape");
  components_.assign(dimension, HomogeneousPolynomial(dimension, grade + 1));
}

HomogeneousField::HomogeneousField(int grade, std::vector<HomogeneousPolynomial> components)
    : grade_(grade), components_(std::move(components)) {
  const int m = dimension();
  if (m < 1 || grade < 0) throw StructuralError("invalid field shape");
  for (const auto& c : components_)
    if (c.dimension() != m || c.degree() != grade + 1)
      throw StructuralError("field component has wrong dimension or degree");
}

HomogeneousField HomogeneousField::linear(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1)
    throw StructuralError("linear field needs a nonempty square matrix");
  const int m = static_cast<int>(matrix.rows());
  HomogeneousField f(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (matrix(i, j) != Complex(0.0)) f.components_[i].add_term(MultiIndex::unit(m, j), matrix(i, j));
  return f;
}

HomogeneousField HomogeneousField::monomial(int dimension, int component, const MultiIndex& exponents,
                                            Complex coefficient) {
  if (exponents.dimension() != dimension || exponents.degree() < 1)
    throw StructuralError("field monomial has wrong shape");
  HomogeneousField f(dimension, exponents.degree() - 1);
  f.components_.at(component).add_term(exponents, coefficient);
  return f;
}

bool HomogeneousField::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& p) { return p.is_zero(); });
}

Eigen::MatrixXcd HomogeneousField::linear_matrix() const {
  if (grade_ != 0) throw StructuralError("linear_matrix requires a grade-0 field");
  const int m = dimension();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (const auto& [k, c] : components_[i].terms())
      for (int j = 0; j < m; ++j)
        if (k[j] == 1) a(i, j) = c;
  return a;
}

HomogeneousPolynomial HomogeneousField::apply(const HomogeneousPolynomial& p) const {
  const int m = dimension();
  if (p.dimension() != m) throw StructuralError("derivation dimension mismatch");
  HomogeneousPolynomial out(m, std::max(p.degree() - 1, 0) + grade_ + 1);
  if (p.degree() == 0) return out;
  for (int j = 0; j < m; ++j) {
    if (components_[j].is_zero()) continue;
    HomogeneousPolynomial dp = p.derivative(j);
    if (dp.is_zero()) continue;
    out += components_[j] * dp;
  }
  return out;
}

HomogeneousField& HomogeneousField::operator+=(const HomogeneousField& rhs) {
  require_same_shape(*this, rhs, "field addition");
  for (int i = 0; i < dimension(); ++i) components_[i] += rhs.components_[i];
  return *this;
}

HomogeneousField& HomogeneousField::operator-=(const HomogeneousField& rhs) {
  require_same_shape(*this, rhs, "field subtraction");
  for (int i = 0; i < dimension(); ++i) components_[i] -= rhs.components_[i];
  return *this;
}

HomogeneousField& HomogeneousField::operator*=(Complex scale) {
  for (auto& c : components_) c *= scale;
  return *this;
}

Complex field_inner_product(const HomogeneousField& v, const HomogeneousField& w) {
  require_same_shape(v, w, "field_inner_product");
  Complex sum = 0.0;
  for (int k = 0; k < v.dimension(); ++k) sum += fischer_inner_product(v[k], w[k]);
  return sum;
}

double fischer_norm(const HomogeneousField& v) { return std::sqrt(field_inner_product(v, v).real()); }

double coefficient_norm(const HomogeneousField& v) {
  double s = 0.0;
  for (const auto& c : v.components()) s += coefficient_norm(c);
  return s;
}

double max_coefficient(const HomogeneousField& v) {
  double s = 0.0;
  for (const auto& c : v.components()) s = std::max(s, max_coefficient(c));
  return s;
}

HomogeneousField jacobian_apply(const HomogeneousField& u, const HomogeneousField& r) {
  if (u.dimension() != r.dimension()) throw StructuralError("jacobian_apply dimension mismatch");
  std::vector<HomogeneousPolynomial> out;
  out.reserve(u.dimension());
  for (int i = 0; i < u.dimension(); ++i) out.push_back(r.apply(u[i]));
  return HomogeneousField(u.grade() + r.grade(), std::move(out));
}

HomogeneousField lie_bracket(const HomogeneousField& v, const HomogeneousField& w) {
  if (v.dimension() != w.dimension()) throw StructuralError("lie_bracket dimension mismatch");
  return jacobian_apply(v, w) - jacobian_apply(w, v);
}

// ---------------------------------------------------------------------------

GradedVectorField::GradedVectorField(int dimension, int max_degree)
    : dimension_(dimension), max_degree_(max_degree) {
  if (dimension < 1) throw StructuralError("field dimension must be positive");
  if (max_degree < 1) throw StructuralError("max_degree must be at least 1");
}

HomogeneousField GradedVectorField::grade(int delta) const {
  auto it = grades_.find(delta);
  return it == grades_.end() ? HomogeneousField(dimension_, delta) : it->second;
}

void GradedVectorField::set_grade(HomogeneousField field) {
  if (field.dimension() != dimension_) throw StructuralError("grade dimension mismatch");
  if (field.grade() > max_degree_ - 1)
    throw StructuralError("grade " + std::to_string(field.grade()) + " exceeds truncation degree " +
                          std::to_string(max_degree_));
  const int g = field.grade();
  if (field.is_zero())
    grades_.erase(g);
  else
    grades_.insert_or_assign(g, std::move(field));
}

void GradedVectorField::add_to_grade(const HomogeneousField& field) {
  HomogeneousField sum = grade(field.grade());
  sum += field;
  set_grade(std::move(sum));
}

int GradedVectorField::lowest_degree() const { return grades_.empty() ? 0 : grades_.begin()->first + 1; }

int GradedVectorField::highest_degree() const { return grades_.empty() ? 0 : grades_.rbegin()->first + 1; }

GradedVectorField GradedVectorField::truncated(int max_degree) const {
  GradedVectorField out(dimension_, max_degree);
  for (const auto& [g, f] : grades_)
    if (g + 1 <= max_degree) out.grades_.emplace(g, f);
  return out;
}

GradedVectorField GradedVectorField::nonlinear_part() const {
  GradedVectorField out(*this);
  out.grades_.erase(0);
  return out;
}

GradedVectorField& GradedVectorField::operator+=(const GradedVectorField& rhs) {
  if (rhs.dimension_ != dimension_) throw StructuralError("graded field dimension mismatch");
  max_degree_ = std::max(max_degree_, rhs.max_degree_);
  for (const auto& [g, f] : rhs.grades_) add_to_grade(f);
  return *this;
}

GradedVectorField& GradedVectorField::operator-=(const GradedVectorField& rhs) {
  if (rhs.dimension_ != dimension_) throw StructuralError("graded field dimension mismatch");
  max_degree_ = std::max(max_degree_, rhs.max_degree_);
  for (const auto& [g, f] : rhs.grades_) add_to_grade(f * Complex(-1.0));
  return *this;
}

std::vector<Complex> GradedVectorField::evaluate(std::span<const Complex> point) const {
  std::vector<Complex> out(dimension_, 0.0);
  for (const auto& [g, f] : grades_)
    for (int i = 0; i < dimension_; ++i) out[i] += f[i].evaluate(point);
  return out;
}

GradedVectorField substitute(const GradedVectorField& f, const GradedVectorField& u, int max_degree) {
  if (max_degree < 1) throw ContractViolation("substitute: max_degree must be at least 1");
  if (f.dimension() != u.dimension()) throw StructuralError("substitute: dimension mismatch");
  if (u.has_grade(0)) throw ContractViolation("substitute: u must have zero linear part");
  const int m = f.dimension();

  // shifted[j] = x_j + u_j, truncated.
  std::vector<Series> shifted;
  shifted.reserve(m);
  for (int j = 0; j < m; ++j) {
    Series s(m, max_degree);
    s.part(1).add_term(MultiIndex::unit(m, j), 1.0);
    for (const auto& [g, field] : u.grades())
      if (g + 1 <= max_degree) s.part(g + 1) += field[j];
    shifted.push_back(std::move(s));
  }
  std::vector<std::vector<Series>> powers(m);
  auto power = [&](int j, int e) -> const Series& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(Series::one(m, max_degree));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * shifted[j]);
    return cache[e];
  };

  GradedVectorField out(m, max_degree);
  for (const auto& [g, field] : f.grades()) {
    if (g + 1 > max_degree) continue;
    for (int i = 0; i < m; ++i) {
      for (const auto& [k, c] : field[i].terms()) {
        Series product = Series::one(m, max_degree);
        for (int j = 0; j < m; ++j)
          if (k[j] > 0) product = product * power(j, k[j]);
        for (int d = 1; d <= max_degree; ++d) {
          if (product.part(d).is_zero()) continue;
          HomogeneousField piece(m, d - 1);
          piece[i] = product.part(d) * c;
          out.add_to_grade(piece);
        }
      }
    }
  }
  return out;
}

GradedVectorField jacobian_apply(const GradedVectorField& u, const GradedVectorField& r, int max_degree) {
  if (u.dimension() != r.dimension()) throw StructuralError("jacobian_apply: dimension mismatch");
  GradedVectorField out(u.dimension(), max_degree);
  for (const auto& [a, ua] : u.grades())
    for (const auto& [b, rb] : r.grades())
      if (a + b + 1 <= max_degree) out.add_to_grade(jacobian_apply(ua, rb));
  return out;
}

double gevrey_norm(const GradedVectorField& f, int delta) {
  if (!f.has_grade(delta)) return 0.0;
  return coefficient_norm(f.grade(delta));
}

HomogeneousPolynomial substitute_linear(const HomogeneousPolynomial& p, const Eigen::MatrixXcd& b) {
  const int m = p.dimension();
  if (b.rows() != m || b.cols() != m) throw StructuralError("substitute_linear: matrix shape mismatch");
  std::vector<std::vector<HomogeneousPolynomial>> powers(m);
  auto power = [&](int j, int e) -> const HomogeneousPolynomial& {
    auto& cache = powers[j];
    if (cache.empty()) {
      cache.push_back(HomogeneousPolynomial::monomial(MultiIndex::zero(m), 1.0));
      std::vector<Complex> row(m);
      for (int k = 0; k < m; ++k) row[k] = b(j, k);
      cache.push_back(HomogeneousPolynomial::linear(row));
    }
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * cache[1]);
    return cache[e];
  };
  HomogeneousPolynomial out(m, p.degree());
  for (const auto& [k, c] : p.terms()) {
    HomogeneousPolynomial term = HomogeneousPolynomial::monomial(MultiIndex::zero(m), c);
    for (int j = 0; j < m; ++j)
      if (k[j] > 0) term = term * power(j, k[j]);
    out += term;
  }
  return out;
}

HomogeneousField transform_linear(const HomogeneousField& f, const Eigen::MatrixXcd& a,
                                  const Eigen::MatrixXcd& b) {
  const int m = f.dimension();
  if (a.rows() != m || a.cols() != m) throw StructuralError("transform_linear: matrix shape mismatch");
  std::vector<HomogeneousPolynomial> pulled;
  pulled.reserve(m);
  for (int j = 0; j < m; ++j) pulled.push_back(substitute_linear(f[j], b));
  HomogeneousField out(m, f.grade());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (a(i, j) != Complex(0.0)) out[i] += pulled[j] * a(i, j);
  return out;
}

GradedVectorField transform_linear(const GradedVectorField& f, const Eigen::MatrixXcd& a,
                                   const Eigen::MatrixXcd& b) {
  GradedVectorField out(f.dimension(), f.max_degree());
  for (const auto& [g, field] : f.grades()) out.set_grade(transform_linear(field, a, b));
  return out;
}

}  // namespace nilnf
