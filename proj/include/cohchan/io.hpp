#pragma once

// JSON documents exchanged by the command-line tool.
//
// ChannelDocument:
//   {"type": "kraus", "dim_in": 2, "dim_out": 2, "operators": [M, ...]}
//   {"type": "choi",  "dim_in": 2, "dim_out": 2, "matrix": M}
// where M is a row-major nested array of [re, im] pairs.
//
// ResultDocument: measure, r, s, value, t, upper_bound, optimal_diag, flags,
// seed, tool_version (plus decomposition for roof estimates). Infinite values
// are written as the string "inf".

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohchan/channels.hpp"
#include "cohchan/errors.hpp"
#include "cohchan/linalg.hpp"
#include "cohchan/monotones.hpp"
#include "cohchan/properties.hpp"

namespace cohchan {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "cohchan 1.0.0";

inline json to_json(complex z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json extended_to_json(double x) {
  if (std::isinf(x) && x > 0) return "inf";
  return x;
}

inline double extended_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw InvalidInputError("expected a number or \"inf\"");
  return j.get<double>();
}

namespace detail {

inline complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidInputError("complex entries must be [re, im] number pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline ComplexMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols,
                                      const char* what) {
  if (!j.is_array() || j.size() != rows)
    throw InvalidInputError(std::string(what) + ": expected " + std::to_string(rows) + " rows");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw InvalidInputError(std::string(what) + ": row " + std::to_string(i) + " must have " +
                              std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

inline std::size_t positive_dim(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() <= 0)
    throw InvalidInputError(std::string("channel document needs a positive integer \"") + key + "\"");
  return static_cast<std::size_t>(doc[key].get<long long>());
}

}  // namespace detail

inline json channel_to_json(const QuantumChannel& channel) {
  json doc;
  doc["dim_in"] = channel.dim_in();
  doc["dim_out"] = channel.dim_out();
  if (channel.kraus()) {
    doc["type"] = "kraus";
    json ops = json::array();
    for (const auto& k : *channel.kraus()) ops.push_back(to_json(k));
    doc["operators"] = std::move(ops);
  } else {
    doc["type"] = "choi";
    doc["matrix"] = to_json(channel.choi());
  }
  return doc;
}

/// Parses a ChannelDocument; structural problems raise InvalidInputError.
/// CPTP validation is left to the caller.
inline QuantumChannel channel_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidInputError("channel document must be a JSON object");
  if (!doc.contains("type") || !doc["type"].is_string())
    throw InvalidInputError("channel document needs a string \"type\"");
  const std::string type = doc["type"].get<std::string>();
  const std::size_t dim_in = detail::positive_dim(doc, "dim_in");
  const std::size_t dim_out = detail::positive_dim(doc, "dim_out");
  if (type == "kraus") {
    if (!doc.contains("operators") || !doc["operators"].is_array() || doc["operators"].empty())
      throw InvalidInputError("kraus document needs a non-empty \"operators\" array");
    std::vector<ComplexMatrix> ops;
    for (const auto& op : doc["operators"])
      ops.push_back(detail::matrix_from_json(op, dim_out, dim_in, "Kraus operator"));
    return QuantumChannel::from_kraus(dim_in, dim_out, std::move(ops));
  }
  if (type == "choi") {
    if (!doc.contains("matrix")) throw InvalidInputError("choi document needs a \"matrix\"");
    const std::size_t n = dim_in * dim_out;
    return QuantumChannel::from_choi(dim_in, dim_out,
                                     detail::matrix_from_json(doc["matrix"], n, n, "Choi matrix"));
  }
  throw InvalidInputError("unknown channel type \"" + type + "\" (expected kraus or choi)");
}

inline QuantumChannel channel_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInputError(std::string("malformed JSON: ") + e.what());
  }
  return channel_from_json(doc);
}

struct ResultDocument {
  std::string measure;
  double r = 0.0;
  std::optional<double> s;
  double value = 0.0;
  std::optional<double> t;
  std::optional<double> upper_bound;
  std::vector<double> optimal_diag;
  bool heuristic_upper_bound = false;
  bool limit_branch_used = false;
  bool converged = true;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::vector<RoofComponent> decomposition;

  friend bool operator==(const ResultDocument& a, const ResultDocument& b) {
    auto same_components = [&] {
      if (a.decomposition.size() != b.decomposition.size()) return false;
      for (std::size_t k = 0; k < a.decomposition.size(); ++k) {
        const auto& x = a.decomposition[k];
        const auto& y = b.decomposition[k];
        if (x.weight != y.weight || x.coherence != y.coherence ||
            max_abs_diff(x.unitary, y.unitary) != 0.0)
          return false;
      }
      return true;
    };
    return a.measure == b.measure && a.r == b.r && a.s == b.s && a.value == b.value &&
           a.t == b.t && a.upper_bound == b.upper_bound && a.optimal_diag == b.optimal_diag &&
           a.heuristic_upper_bound == b.heuristic_upper_bound &&
           a.limit_branch_used == b.limit_branch_used && a.converged == b.converged &&
           a.seed == b.seed && a.tool_version == b.tool_version && same_components();
  }
};

inline ResultDocument make_result_document(const CoherenceReport& report, std::uint64_t seed) {
  ResultDocument doc;
  doc.measure = std::string(measure_name(report.measure));
  doc.r = report.params.r();
  doc.s = report.params.s();
  doc.value = report.value;
  doc.t = report.t;
  doc.upper_bound = report.upper_bound;
  doc.optimal_diag = report.optimal_diag;
  doc.heuristic_upper_bound = report.heuristic_upper_bound;
  doc.limit_branch_used = report.limit_branch_used;
  doc.converged = report.converged;
  doc.seed = seed;
  doc.decomposition = report.decomposition;
  return doc;
}

inline json to_json(const ResultDocument& doc) {
  auto optional_value = [](const std::optional<double>& x) -> json {
    return x ? extended_to_json(*x) : json(nullptr);
  };
  json j;
  j["measure"] = doc.measure;
  j["r"] = doc.r;
  j["s"] = optional_value(doc.s);
  j["value"] = extended_to_json(doc.value);
  j["t"] = optional_value(doc.t);
  j["upper_bound"] = optional_value(doc.upper_bound);
  j["optimal_diag"] = doc.optimal_diag;
  j["flags"] = {{"heuristic_upper_bound", doc.heuristic_upper_bound},
                {"limit_branch_used", doc.limit_branch_used},
                {"converged", doc.converged}};
  j["seed"] = doc.seed;
  j["tool_version"] = doc.tool_version;
  if (!doc.decomposition.empty()) {
    json comps = json::array();
    for (const auto& c : doc.decomposition)
      comps.push_back({{"weight", c.weight}, {"coherence", c.coherence}, {"unitary", to_json(c.unitary)}});
    j["decomposition"] = std::move(comps);
  }
  return j;
}

inline ResultDocument result_from_json(const json& j) {
  auto optional_value = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return extended_from_json(j[key]);
  };
  try {
    ResultDocument doc;
    doc.measure = j.at("measure").get<std::string>();
    doc.r = j.at("r").get<double>();
    doc.s = optional_value("s");
    doc.value = extended_from_json(j.at("value"));
    doc.t = optional_value("t");
    doc.upper_bound = optional_value("upper_bound");
    doc.optimal_diag = j.at("optimal_diag").get<std::vector<double>>();
    const json& flags = j.at("flags");
    doc.heuristic_upper_bound = flags.at("heuristic_upper_bound").get<bool>();
    doc.limit_branch_used = flags.at("limit_branch_used").get<bool>();
    doc.converged = flags.at("converged").get<bool>();
    doc.seed = j.at("seed").get<std::uint64_t>();
    doc.tool_version = j.at("tool_version").get<std::string>();
    if (j.contains("decomposition")) {
      for (const auto& c : j["decomposition"])
        doc.decomposition.push_back({c.at("weight").get<double>(),
                                     detail::matrix_from_json(c.at("unitary"), 2, 2, "unitary"),
                                     c.at("coherence").get<double>()});
    }
    return doc;
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("malformed result document: ") + e.what());
  }
}

inline json to_json(const PropertyReport& report) {
  json j;
  j["name"] = report.name;
  j["samples"] = report.samples;
  j["max_violation"] = report.max_violation;
  j["tolerance"] = report.tolerance;
  j["pass"] = report.passed;
  j["seed"] = report.seed;
  if (!report.note.empty()) j["note"] = report.note;
  json witnesses = json::array();
  for (const auto& w : report.witnesses)
    witnesses.push_back({{"description", w.description},
                         {"violation", w.violation},
                         {"channel", channel_to_json(w.channel)}});
  j["witnesses"] = std::move(witnesses);
  return j;
}

}  // namespace cohchan
