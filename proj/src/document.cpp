#include "nilnf/document.hpp"

#include <fstream>
#include <sstream>

#include "nilnf/errors.hpp"

namespace nilnf {

using nlohmann::json;

namespace {

Rational rational_entry(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number()) return parse_rational(v.dump());
  } catch (const DomainError& e) {
    throw DocumentError(where, e.what());
  }
  throw DocumentError(where, "expected a rational string \"p/q\" or a number");
}

Complex coefficient_entry(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw DocumentError(where, "expected [real, imag] or a real number");
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw DocumentError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw DocumentError(where.empty() ? key : where + "." + key, "missing field");
  return *it;
}

}  // namespace

std::vector<FieldTerm> terms_from_json(const json& j, int dimension, const std::string& where) {
  if (!j.is_array()) throw DocumentError(where, "expected an array of terms");
  std::vector<FieldTerm> terms;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string at = where + "[" + std::to_string(t) + "]";
    const json& term = j[t];
    FieldTerm out;
    const json& comp = require(term, "component", at);
    if (!comp.is_number_integer()) throw DocumentError(at + ".component", "expected an integer");
    out.component = comp.get<int>();
    if (out.component < 1 || out.component > dimension)
      throw DocumentError(at + ".component", "must lie in 1.." + std::to_string(dimension));
    const json& exps = require(term, "exponents", at);
    if (!exps.is_array() || static_cast<int>(exps.size()) != dimension)
      throw DocumentError(at + ".exponents", "expected " + std::to_string(dimension) + " integers");
    int degree = 0;
    for (const json& e : exps) {
      if (!e.is_number_integer() || e.get<int>() < 0)
        throw DocumentError(at + ".exponents", "exponents must be nonnegative integers");
      out.exponents.push_back(e.get<int>());
      degree += out.exponents.back();
    }
    if (degree < 1) throw DocumentError(at + ".exponents", "constant terms are not allowed");
    out.coeff = coefficient_entry(require(term, "coeff", at), at + ".coeff");
    terms.push_back(std::move(out));
  }
  return terms;
}

VectorFieldDocument parse_document(const json& j) {
  VectorFieldDocument doc;
  const json& dim = require(j, "dimension", "");
  if (!dim.is_number_integer() || dim.get<int>() < 1) throw DocumentError("dimension", "expected a positive integer");
  doc.dimension = dim.get<int>();
  const int m = doc.dimension;

  const json& lin = require(j, "linear_part", "");
  if (!lin.is_array() || static_cast<int>(lin.size()) != m)
    throw DocumentError("linear_part", "expected " + std::to_string(m) + " rows");
  doc.linear_part = RationalMatrix(m, m);
  for (int r = 0; r < m; ++r) {
    const std::string row_at = "linear_part[" + std::to_string(r) + "]";
    if (!lin[r].is_array() || static_cast<int>(lin[r].size()) != m)
      throw DocumentError(row_at, "expected " + std::to_string(m) + " entries");
    for (int c = 0; c < m; ++c)
      doc.linear_part(r, c) = rational_entry(lin[r][c], row_at + "[" + std::to_string(c) + "]");
  }

  if (auto it = j.find("terms"); it != j.end()) doc.terms = terms_from_json(*it, m, "terms");
  for (const FieldTerm& t : doc.terms) {
    int degree = 0;
    for (int e : t.exponents) degree += e;
    if (degree < 2) throw DocumentError("terms", "higher-order terms must have degree >= 2; use linear_part");
  }

  if (auto it = j.find("metadata"); it != j.end()) {
    if (!it->is_object()) throw DocumentError("metadata", "expected an object of strings");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) throw DocumentError("metadata." + k, "expected a string");
      doc.metadata.emplace(k, v.get<std::string>());
    }
  }
  return doc;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DocumentError(path, std::string("malformed JSON: ") + e.what());
  }
}

VectorFieldDocument read_document(const std::string& path) { return parse_document(read_json_file(path)); }

json terms_to_json(const std::vector<FieldTerm>& terms) {
  json out = json::array();
  for (const FieldTerm& t : terms)
    out.push_back({{"component", t.component}, {"exponents", t.exponents}, {"coeff", {t.coeff.real(), t.coeff.imag()}}});
  return out;
}

json to_json(const VectorFieldDocument& doc) {
  json lin = json::array();
  for (int r = 0; r < doc.dimension; ++r) {
    json row = json::array();
    for (int c = 0; c < doc.dimension; ++c) row.push_back(to_string(doc.linear_part(r, c)));
    lin.push_back(std::move(row));
  }
  json meta = json::object();
  for (const auto& [k, v] : doc.metadata) meta[k] = v;
  return {{"dimension", doc.dimension}, {"linear_part", std::move(lin)}, {"terms", terms_to_json(doc.terms)},
          {"metadata", std::move(meta)}};
}

GradedVectorField to_field(const VectorFieldDocument& doc, int max_degree) {
  const int m = doc.dimension;
  GradedVectorField field(m, max_degree);
  field.set_grade(HomogeneousField::linear(doc.linear_part.to_double().cast<Complex>()));
  for (const FieldTerm& t : doc.terms) {
    MultiIndex k(t.exponents);
    if (k.degree() > max_degree) continue;
    field.add_to_grade(HomogeneousField::monomial(m, t.component - 1, k, t.coeff));
  }
  return field;
}

std::vector<FieldTerm> field_terms(const GradedVectorField& field) {
  std::vector<FieldTerm> out;
  for (const auto& [g, f] : field.grades())
    for (int i = 0; i < f.dimension(); ++i)
      for (const auto& [k, c] : f[i].terms()) out.push_back({i + 1, k.exponents(), c});
  return out;
}

}  // namespace nilnf
