#pragma once

// JSON code specifications and decode-result serialization.
//
// Explicit form (1-based i, j):
//   { "r": [2,2], "t": [1,2],
//     "constraints": [ { "terms": [[1,1,1],[1,2,1]], "rel": "eq", "rhs": 0 } ],
//     "name": "optional label" }
// Built-in families:
//   { "builtin": "shieh", "r": 2, "m": 6, "d": 3 }
//   { "builtin": "derangement", "r": [2,2,2], "t": [1,2,3] }   ("t" optional)

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "multiperm/codes.hpp"
#include "multiperm/decode.hpp"

namespace multiperm {

class SpecFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw SpecFormatError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw SpecFormatError("unknown field \"" + key + "\" in " + where);
  }
}

inline const nlohmann::json& require(const nlohmann::json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw SpecFormatError("missing field \"" + key + "\" in " + where);
  return obj.at(key);
}

inline std::int64_t as_integer(const nlohmann::json& v, const std::string& what) {
  if (!v.is_number_integer()) throw SpecFormatError(what + " must be an integer");
  return v.get<std::int64_t>();
}

inline std::vector<int> int_list(const nlohmann::json& v, const std::string& what) {
  if (!v.is_array()) throw SpecFormatError(what + " must be an array of integers");
  std::vector<int> out;
  for (const auto& e : v) out.push_back(static_cast<int>(as_integer(e, what + " entry")));
  return out;
}

inline std::vector<double> real_list(const nlohmann::json& v, const std::string& what) {
  if (!v.is_array()) throw SpecFormatError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw SpecFormatError(what + " entries must be numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

inline LinearConstraint parse_constraint(const nlohmann::json& c, std::size_t index) {
  const std::string where = "constraint " + std::to_string(index + 1);
  reject_unknown_keys(c, {"terms", "rel", "rhs"}, where);
  const auto& terms_json = require(c, "terms", where);
  if (!terms_json.is_array()) throw SpecFormatError(where + ": terms must be an array");
  std::vector<ConstraintTerm> terms;
  for (const auto& t : terms_json) {
    if (!t.is_array() || t.size() != 3) throw SpecFormatError(where + ": each term must be [i, j, coef]");
    const auto i = as_integer(t[0], where + " row");
    const auto j = as_integer(t[1], where + " column");
    if (i < 1 || j < 1) throw SpecFormatError(where + ": indices are 1-based");
    terms.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), as_integer(t[2], where + " coefficient")});
  }
  const auto& rel = require(c, "rel", where);
  if (!rel.is_string() || (rel != "le" && rel != "eq")) throw SpecFormatError(where + ": rel must be \"le\" or \"eq\"");
  return LinearConstraint(std::move(terms), rel == "eq" ? Relation::Equal : Relation::LessEqual,
                          as_integer(require(c, "rhs", where), where + " rhs"));
}

}  // namespace detail

inline CodeSpec code_spec_from_json(const nlohmann::json& doc) {
  try {
    if (doc.is_object() && doc.contains("builtin")) {
      const auto& kind = doc.at("builtin");
      if (kind == "shieh") {
        detail::reject_unknown_keys(doc, {"builtin", "r", "m", "d"}, "shieh spec");
        return shieh_spec(static_cast<int>(detail::as_integer(detail::require(doc, "r", "shieh spec"), "r")),
                          static_cast<int>(detail::as_integer(detail::require(doc, "m", "shieh spec"), "m")),
                          static_cast<int>(detail::as_integer(detail::require(doc, "d", "shieh spec"), "d")));
      }
      if (kind == "derangement") {
        detail::reject_unknown_keys(doc, {"builtin", "r", "t"}, "derangement spec");
        MultiplicityVector r(detail::int_list(detail::require(doc, "r", "derangement spec"), "r"));
        InitialVector t = doc.contains("t") ? InitialVector(detail::real_list(doc.at("t"), "t")) : InitialVector::natural(r.m());
        return derangement_spec(r, t);
      }
      throw SpecFormatError("unknown builtin \"" + kind.dump() + "\"");
    }
    detail::reject_unknown_keys(doc, {"r", "t", "constraints", "name"}, "code spec");
    MultiplicityVector r(detail::int_list(detail::require(doc, "r", "code spec"), "r"));
    InitialVector t(detail::real_list(detail::require(doc, "t", "code spec"), "t"));
    std::vector<LinearConstraint> constraints;
    if (doc.contains("constraints")) {
      const auto& list = doc.at("constraints");
      if (!list.is_array()) throw SpecFormatError("constraints must be an array");
      for (std::size_t k = 0; k < list.size(); ++k) constraints.push_back(detail::parse_constraint(list[k], k));
    }
    std::string name;
    if (doc.contains("name")) {
      if (!doc.at("name").is_string()) throw SpecFormatError("name must be a string");
      name = doc.at("name").get<std::string>();
    }
    return CodeSpec(std::move(r), std::move(t), std::move(constraints), std::move(name));
  } catch (const SpecFormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SpecFormatError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw SpecFormatError(e.what());
  }
}

inline CodeSpec code_spec_from_string(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecFormatError(std::string("invalid JSON: ") + e.what());
  }
  return code_spec_from_json(doc);
}

inline CodeSpec load_code_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecFormatError("cannot open spec file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return code_spec_from_string(buf.str());
}

/// Explicit form; built-ins are written out as their constraint rows.
inline nlohmann::json code_spec_to_json(const CodeSpec& spec) {
  nlohmann::json doc;
  doc["r"] = spec.r.counts();
  doc["t"] = spec.t.values();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : spec.constraints) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : c.terms()) terms.push_back({t.row + 1, t.col + 1, t.coef});
    rows.push_back({{"terms", terms}, {"rel", to_string(c.relation())}, {"rhs", c.rhs()}});
  }
  doc["constraints"] = rows;
  if (!spec.name.empty()) doc["name"] = spec.name;
  return doc;
}

inline nlohmann::json decode_result_to_json(const DecodeResult& res) {
  nlohmann::json doc;
  doc["objective"] = res.objective;
  if (res.delta) doc["delta"] = *res.delta;
  doc["certified"] = res.certificate;
  doc["decoded"] = res.decoded.symbols;
  doc["valid"] = res.decoded.valid;
  return doc;
}

}  // namespace multiperm
