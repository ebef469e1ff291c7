#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilnf/polyalg.hpp"
#include "nilnf/rational.hpp"

namespace nilnf {

// Malformed input document; `field()` names the offending JSON path.
class DocumentError : public std::runtime_error {
 public:
  DocumentError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct FieldTerm {
  int component = 1;  // 1-based
  std::vector<int> exponents;
  Complex coeff;

  bool operator==(const FieldTerm&) const = default;
};

// Polynomial vector field as read from disk: an exact linear part plus
// higher-order terms with decimal coefficients.
struct VectorFieldDocument {
  int dimension = 0;
  RationalMatrix linear_part;
  std::vector<FieldTerm> terms;
  std::map<std::string, std::string> metadata;

  bool operator==(const VectorFieldDocument&) const = default;
};

VectorFieldDocument parse_document(const nlohmann::json& j);
VectorFieldDocument read_document(const std::string& path);
nlohmann::json to_json(const VectorFieldDocument& doc);

// Linear part (grade 0) plus every term of degree <= max_degree.
GradedVectorField to_field(const VectorFieldDocument& doc, int max_degree);

// Terms of a field in document form, grade by grade in GradedLex order.
std::vector<FieldTerm> field_terms(const GradedVectorField& field);
nlohmann::json terms_to_json(const std::vector<FieldTerm>& terms);
std::vector<FieldTerm> terms_from_json(const nlohmann::json& j, int dimension, const std::string& where);

nlohmann::json read_json_file(const std::string& path);

}  // namespace nilnf
