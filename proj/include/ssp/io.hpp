// File formats: presentation documents (JSON with sorted keys, byte-stable
// round trips), enumeration reports (CSV and JSON), structure reports.
#pragma once

#include <cstdio>
#include <ctime>
#include <string>
#include <vector>

#include "json.hpp"

#include "ssp/chain.hpp"
#include "ssp/enumerate.hpp"
#include "ssp/invariants.hpp"

namespace ssp {

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                       std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

// Parse a presentation document: fields `p`, `n`, `chain` where chain[j-3]
// is the coefficient vector of [g_1, g_j] (length j-2).  Unknown keys are
// ignored.  Errors carry line/field diagnostics.
inline EssentialChain parse_presentation(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw parse_error("line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) throw parse_error("document root must be an object");
  if (!doc.contains("p")) throw parse_error("missing field 'p'");
  if (!doc["p"].is_number_integer())
    throw parse_error(
        "field 'p': must be a finite prime integer (the infinite case is not "
        "supported)");
  const int p = doc["p"].get<int>();
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw parse_error("field 'n': missing or not an integer");
  const int n = doc["n"].get<int>();
  if (!doc.contains("chain") || !doc["chain"].is_array())
    throw parse_error("field 'chain': missing or not an array");
  std::vector<std::vector<std::uint8_t>> rows;
  for (const auto& row : doc["chain"]) {
    if (!row.is_array())
      throw parse_error("field 'chain': entries must be arrays");
    std::vector<std::uint8_t> r;
    for (const auto& v : row) {
      if (!v.is_number_integer())
        throw parse_error("field 'chain': entries must be integers");
      const long long val = v.get<long long>();
      if (val < 0 || val >= p)
        throw parse_error("field 'chain': entry " + std::to_string(val) +
                          " out of range mod " + std::to_string(p));
      r.push_back(static_cast<std::uint8_t>(val));
    }
    rows.push_back(std::move(r));
  }
  try {
    return EssentialChain(PrimeModulus(p), n, std::move(rows));
  } catch (const validation_error& e) {
    throw parse_error(std::string("invalid presentation: ") + e.what());
  }
}

inline std::string serialize_presentation(const EssentialChain& chain) {
  nlohmann::json doc;
  doc["p"] = chain.p();
  doc["n"] = chain.n();
  auto rows = nlohmann::json::array();
  for (int j = 3; j <= chain.n(); ++j) {
    auto row = nlohmann::json::array();
    for (auto v : chain.row(j)) row.push_back(static_cast<int>(v));
    rows.push_back(row);
  }
  doc["chain"] = rows;
  return doc.dump(2) + "\n";
}

// Companion section: subgroup dumps as arrays of exponent vectors.
inline nlohmann::json subgroup_json(const std::vector<ExponentVector>& elems) {
  auto arr = nlohmann::json::array();
  for (const auto& e : elems) {
    auto v = nlohmann::json::array();
    for (std::size_t i = 0; i < e.size(); ++i) v.push_back(static_cast<int>(e[i]));
    arr.push_back(v);
  }
  return arr;
}

// CSV report: fixed column order n,class1,class2,class3,class4plus,seconds.
// `timing` false zeroes the seconds column and drops the timestamp header so
// identical runs produce identical bytes.
inline std::string report_csv(const EnumerationReport& report,
                              bool timing = true) {
  std::string out;
  if (timing) {
    char stamp[64];
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    out += "# generated ";
    out += stamp;
    out += "\n";
  }
  out += "n,class1,class2,class3,class4plus,seconds\n";
  char line[160];
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%d,%llu,%llu,%llu,%llu,%.3f\n", row.n,
                  static_cast<unsigned long long>(row.class1),
                  static_cast<unsigned long long>(row.class2),
                  static_cast<unsigned long long>(row.class3),
                  static_cast<unsigned long long>(row.class4plus),
                  timing ? row.seconds : 0.0);
    out += line;
  }
  if (report.truncated) out += "# truncated\n";
  return out;
}

inline std::string report_json(const EnumerationReport& report,
                               bool timing = true) {
  nlohmann::json doc;
  doc["p"] = report.p;
  doc["max_n"] = report.n_max;
  doc["total_tested"] = report.total_tested;
  doc["truncated"] = report.truncated;
  doc["alpha_order_failures"] = report.alpha_order_failures;
  auto rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json r;
    r["n"] = row.n;
    r["class1"] = row.class1;
    r["class2"] = row.class2;
    r["class3"] = row.class3;
    r["class4plus"] = row.class4plus;
    r["seconds"] = timing ? row.seconds : 0.0;
    r["tested"] = row.tested;
    rows.push_back(r);
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

inline nlohmann::json structure_report_json(const StructureReport& rep) {
  nlohmann::json doc;
  doc["p"] = rep.p;
  doc["n"] = rep.n;
  doc["consistent"] = rep.consistent;
  doc["cutoff"] = rep.cutoff;
  doc["abelian"] = rep.abelian;
  if (rep.params) {
    doc["params"] = {{"q", rep.params->q},
                     {"r", rep.params->r},
                     {"j", rep.params->j},
                     {"c", rep.params->c}};
  } else {
    doc["params"] = nullptr;
  }
  if (rep.consistent) {
    doc["class"] = rep.nilpotency_class;
    doc["metabelian"] = rep.metabelian;
    if (rep.center_matches) {
      doc["center"] = subgroup_json(rep.center_sequence);
      doc["center_matches_structure"] = *rep.center_matches;
    }
    if (!rep.decomposition.empty()) {
      auto factors = nlohmann::json::array();
      for (const auto& f : rep.decomposition) factors.push_back(subgroup_json(f));
      doc["triple_decomposition"] = factors;
    }
    doc["triple_decomposition_ok"] = rep.triple_decomposition_ok;
    doc["commutator_membership_ok"] = rep.commutator_membership_ok;
    doc["independence_ok"] = rep.independence_ok;
    if (rep.simple_triple) doc["simple_triple"] = *rep.simple_triple;
    if (rep.class2_shape_ok) doc["class2_shape_ok"] = *rep.class2_shape_ok;
    if (rep.lift_shape_ok) doc["lift_shape_ok"] = *rep.lift_shape_ok;
  }
  doc["violations"] = rep.violations;
  return doc;
}

inline std::string structure_report_text(const StructureReport& rep) {
  std::string out;
  out += "p = " + std::to_string(rep.p) + ", n = " + std::to_string(rep.n) + "\n";
  out += "consistent: " + std::string(rep.consistent ? "yes" : "no") + "\n";
  out += "cut-off c = " + std::to_string(rep.cutoff) +
         (rep.abelian ? " (abelian)" : "") + "\n";
  if (rep.params)
    out += "params: q=" + std::to_string(rep.params->q) +
           " r=" + std::to_string(rep.params->r) +
           " j=" + std::to_string(rep.params->j) + "\n";
  if (rep.consistent) {
    out += "class: " + std::to_string(rep.nilpotency_class) + "\n";
    out += "metabelian: " + std::string(rep.metabelian ? "yes" : "no") + "\n";
    if (rep.center_matches) {
      out += "center rank: " + std::to_string(rep.center_sequence.size()) +
             ", matches <g_{q+1-j}..g_c>: " +
             (*rep.center_matches ? "yes" : "no") + "\n";
    }
    out += "triple decomposition: " +
           std::string(rep.triple_decomposition_ok ? "ok" : "FAIL") + "\n";
    out += "commutator membership: " +
           std::string(rep.commutator_membership_ok ? "ok" : "FAIL") + "\n";
    out += "independence: " + std::string(rep.independence_ok ? "ok" : "FAIL") +
           "\n";
    if (rep.simple_triple)
      out += "simple triple: " + std::string(*rep.simple_triple ? "yes" : "NO") +
             "\n";
    if (rep.class2_shape_ok)
      out += "class-2 shape: " +
             std::string(*rep.class2_shape_ok ? "ok" : "FAIL") + "\n";
    if (rep.lift_shape_ok)
      out += "lift shape: " + std::string(*rep.lift_shape_ok ? "ok" : "FAIL") +
             "\n";
  }
  if (!rep.violations.empty()) {
    out += "violations:\n";
    for (const auto& v : rep.violations) out += "  - " + v + "\n";
  }
  return out;
}

}  // namespace ssp
