#pragma once

// Implementations behind the `cohchan compute|sweep|verify|example`
// subcommands. Argument parsing lives in tools/; everything here is callable
// directly from tests.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cohchan/channels.hpp"
#include "cohchan/errors.hpp"
#include "cohchan/io.hpp"
#include "cohchan/monotones.hpp"
#include "cohchan/properties.hpp"
#include "cohchan/qubit_examples.hpp"

namespace cohchan {

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kPropertyFailure = 1;
inline constexpr int kMalformedInput = 2;
inline constexpr int kNotCptp = 3;
inline constexpr int kParameterRegime = 4;
inline constexpr int kPrecondition = 5;
inline constexpr int kNumerical = 6;
}  // namespace exit_code

inline int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::InvalidInput: return exit_code::kMalformedInput;
    case ErrorCategory::NotCptp: return exit_code::kNotCptp;
    case ErrorCategory::ParameterRegime: return exit_code::kParameterRegime;
    case ErrorCategory::Precondition: return exit_code::kPrecondition;
    case ErrorCategory::Numerical: return exit_code::kNumerical;
  }
  return exit_code::kMalformedInput;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Reads a ChannelDocument and validates it as CPTP at kDocumentCptpTol.
inline QuantumChannel load_channel(const std::string& path) {
  QuantumChannel channel = channel_from_string(read_text_file(path));
  require_cptp(channel, kDocumentCptpTol);
  return channel;
}

// ---------------------------------------------------------------- compute

struct ComputeOptions {
  std::string channel_path;
  std::string measure = "urs";
  std::optional<double> r;
  std::optional<double> s;
  std::uint64_t seed = 0;
  double incoherence_tol = kIncoherenceTol;
};

struct ComputeResult {
  ResultDocument document;
  bool incoherent = false;
};

inline json to_json(const ComputeResult& result) {
  json j = to_json(result.document);
  j["flags"]["incoherent_channel"] = result.incoherent;
  return j;
}

inline Measure require_measure(const std::string& name) {
  const auto m = parse_measure(name);
  if (!m) throw InvalidInputError("unknown measure \"" + name + "\"");
  return *m;
}

inline ComputeResult compute(const QuantumChannel& channel, const ComputeOptions& opts) {
  const Measure measure = require_measure(opts.measure);
  if (!opts.r) throw ParameterError("--r is required");
  if (measure == Measure::Urs && !opts.s) throw ParameterError("--s is required for urs");
  const CoherenceReport report =
      channel_coherence(channel, measure, *opts.r, opts.s.value_or(0.0), opts.seed);
  return {make_result_document(report, opts.seed),
          is_incoherent_channel(channel, opts.incoherence_tol)};
}

inline ComputeResult cmd_compute(const ComputeOptions& opts) {
  return compute(load_channel(opts.channel_path), opts);
}

// ------------------------------------------------------------------ sweep

struct SweepOptions {
  std::string param = "gamma";
  double from = 0.0;
  double to = std::numbers::pi;
  std::size_t steps = 9;
  std::string measure = "urs";
  double r = 0.5;
  double s = 1.0;
  UnitaryParams unitary;
  /// When set, sweep r or s on this channel instead of the qubit unitary family.
  std::optional<std::string> channel_path;
  std::uint64_t seed = 0;
};

struct SweepRow {
  double param = 0.0;
  double closed_form = 0.0;
  double pipeline = 0.0;
  double upper_bound = 0.0;
  double abs_diff = 0.0;
};

struct SweepTable {
  std::string param;
  std::string measure;
  std::vector<SweepRow> rows;
};

/// Unitary family: closed_form is the gamma-only formula, pipeline the full
/// Choi computation. With a channel file: closed_form is the channel-level
/// closed form and pipeline the independent route (simplex minimization for
/// urs, decomposition search for the sandwiched measure).
inline SweepTable sweep(const SweepOptions& opts, const std::optional<QuantumChannel>& channel) {
  const Measure measure = require_measure(opts.measure);
  if (measure == Measure::SandwichedRoof)
    throw InvalidInputError("sweep supports the urs and sandwiched-pure measures");
  if (opts.param != "gamma" && opts.param != "r" && opts.param != "s")
    throw InvalidInputError("--param must be gamma, r or s");
  if (opts.param == "s" && measure != Measure::Urs)
    throw InvalidInputError("an s sweep needs the urs measure");
  if (opts.param == "gamma" && channel)
    throw InvalidInputError("a gamma sweep runs on the unitary family; drop --channel");
  if (opts.steps < 1) throw InvalidInputError("--steps must be at least 1");

  SweepTable table{opts.param, opts.measure, {}};
  for (std::size_t k = 0; k < opts.steps; ++k) {
    const double x = opts.steps == 1
                         ? opts.from
                         : opts.from + (opts.to - opts.from) * static_cast<double>(k) /
                                           static_cast<double>(opts.steps - 1);
    UnitaryParams u = opts.unitary;
    double r = opts.r;
    double s = opts.s;
    if (opts.param == "gamma") u.gamma = x;
    if (opts.param == "r") r = x;
    if (opts.param == "s") s = x;

    SweepRow row;
    row.param = x;
    if (!channel) {
      const QuantumChannel ch = qubit_unitary_channel(u);
      if (measure == Measure::Urs) {
        const auto params = EntropyParams::unified(r, s);
        row.pipeline = urs_channel_coherence(ch, params).value;
        row.closed_form = urs_unitary_closed_form(u.gamma, r, s);
        row.upper_bound = urs_upper_bound(r, s);
      } else {
        const auto params = EntropyParams::sandwiched(r);
        row.pipeline = sandwiched_channel_coherence_pure(ch, params).value;
        row.closed_form = sandwiched_unitary_closed_form(u.gamma, r);
        row.upper_bound = sandwiched_upper_bound();
      }
    } else if (measure == Measure::Urs) {
      const auto params = EntropyParams::unified(r, s);
      const CoherenceReport closed = urs_channel_coherence(*channel, params);
      BruteForceConfig cfg;
      cfg.seed = opts.seed;
      row.closed_form = closed.value;
      row.pipeline = urs_coherence_bruteforce(*channel, params, cfg).value;
      row.upper_bound = closed.upper_bound.value_or(0.0);
    } else {
      const auto params = EntropyParams::sandwiched(r);
      const CoherenceReport closed = sandwiched_channel_coherence_pure(*channel, params);
      RoofConfig cfg;
      cfg.seed = opts.seed;
      row.closed_form = closed.value;
      row.pipeline = sandwiched_channel_coherence_convex_roof(*channel, params, cfg).value;
      row.upper_bound = closed.upper_bound.value_or(0.0);
    }
    row.abs_diff = std::abs(row.closed_form - row.pipeline);
    table.rows.push_back(row);
  }
  return table;
}

inline SweepTable cmd_sweep(const SweepOptions& opts) {
  std::optional<QuantumChannel> channel;
  if (opts.channel_path) channel = load_channel(*opts.channel_path);
  return sweep(opts, channel);
}

/// Header: <param>,closed_form,pipeline,upper_bound,abs_diff; 12 significant digits.
inline void write_csv(const SweepTable& table, std::ostream& out) {
  out << table.param << ",closed_form,pipeline,upper_bound,abs_diff\n";
  std::ostringstream os;
  os << std::setprecision(12);
  for (const auto& row : table.rows)
    os << row.param << ',' << row.closed_form << ',' << row.pipeline << ',' << row.upper_bound
       << ',' << row.abs_diff << '\n';
  out << os.str();
}

inline json to_json(const SweepTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows)
    rows.push_back({{table.param, row.param},
                    {"closed_form", row.closed_form},
                    {"pipeline", row.pipeline},
                    {"upper_bound", row.upper_bound},
                    {"abs_diff", row.abs_diff}});
  return {{"param", table.param}, {"measure", table.measure}, {"rows", std::move(rows)}};
}

// ----------------------------------------------------------------- verify

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = 0;
  /// Per-suite defaults when absent.
  std::optional<std::size_t> samples;
  double r = 0.5;
  double s = 1.0;
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"oracle",      "theorem2",     "bounds",
                                              "convexity",   "faithfulness", "postprocessing"};
  return names;
}

inline std::vector<EntropyParams> oracle_settings() {
  return {EntropyParams::unified(0.3, 1.0),  EntropyParams::unified(0.5, 0.5),
          EntropyParams::unified(0.5, 0.0),  EntropyParams::unified(0.7, -1.0),
          EntropyParams::unified(0.9, -2.0), EntropyParams::unified(0.2, 0.8)};
}

inline std::vector<EntropyParams> bounds_settings() {
  return {EntropyParams::unified(0.5, 1.0), EntropyParams::unified(0.3, -1.0),
          EntropyParams::unified(0.8, 0.5), EntropyParams::sandwiched(0.75),
          EntropyParams::sandwiched(2.0)};
}

/// Merges several reports into one under `name`.
inline PropertyReport merge_reports(std::string name, const std::vector<PropertyReport>& parts,
                                    std::uint64_t seed) {
  PropertyReport merged(std::move(name), parts.empty() ? 0.0 : parts.front().tolerance, seed);
  for (const auto& p : parts) {
    merged.samples += p.samples;
    merged.max_violation = std::max(merged.max_violation, p.max_violation);
    merged.passed = merged.passed && p.passed;
    for (const auto& w : p.witnesses)
      if (merged.witnesses.size() < 5) merged.witnesses.push_back(w);
    if (!p.note.empty() && merged.note.find(p.note) == std::string::npos)
      merged.note += (merged.note.empty() ? "" : "; ") + p.note;
  }
  return merged;
}

inline PropertyReport run_suite(const std::string& suite, const VerifyOptions& opts) {
  const std::uint64_t seed = opts.seed;
  if (suite == "oracle") {
    SamplerConfig cfg{opts.samples.value_or(20), seed};
    return check_oracle_equivalence(cfg, oracle_settings());
  }
  if (suite == "theorem2") {
    std::vector<PropertyReport> parts;
    std::vector<QuantumChannel> channels{hadamard_channel()};
    const std::size_t n = opts.samples.value_or(5);
    for (std::size_t k = 0; k < n; ++k) {
      Rng rng = make_rng(seed, k);
      channels.push_back(random_coherent_channel(rng, 2, 2));
    }
    for (const auto& ch : channels)
      for (double r : {0.3, 0.5, 0.8}) parts.push_back(check_s_profile(ch, r));
    return merge_reports("theorem2", parts, seed);
  }
  if (suite == "bounds") return check_unitary_bounds(bounds_settings());
  if (suite == "convexity") {
    SamplerConfig cfg{opts.samples.value_or(500), seed};
    return check_convexity(cfg, EntropyParams::unified(opts.r, opts.s));
  }
  if (suite == "faithfulness") {
    SamplerConfig cfg{opts.samples.value_or(200), seed};
    return check_faithfulness(cfg, EntropyParams::unified(opts.r, opts.s));
  }
  if (suite == "postprocessing") {
    std::vector<PropertyReport> parts;
    const std::size_t n = opts.samples.value_or(100);
    const auto params = EntropyParams::unified(opts.r, opts.s);
    for (std::size_t k = 0; k < n; ++k) {
      Rng rng = make_rng(seed, k);
      const QuantumChannel ch = random_coherent_channel(rng, 2, 2);
      parts.push_back(check_incoherent_postprocessing(ch, params, 1, seed + k));
    }
    return merge_reports("postprocessing", parts, seed);
  }
  throw InvalidInputError("unknown suite \"" + suite + "\"");
}

inline std::vector<PropertyReport> cmd_verify(const VerifyOptions& opts) {
  std::vector<PropertyReport> reports;
  if (opts.suite == "all") {
    for (const auto& name : verify_suites()) reports.push_back(run_suite(name, opts));
  } else {
    reports.push_back(run_suite(opts.suite, opts));
  }
  return reports;
}

inline json to_json(const std::vector<PropertyReport>& reports) {
  json suites = json::array();
  bool pass = true;
  for (const auto& r : reports) {
    suites.push_back(to_json(r));
    pass = pass && r.passed;
  }
  return {{"pass", pass}, {"suites", std::move(suites)}, {"tool_version", kToolVersion}};
}

// ---------------------------------------------------------------- example

struct ExampleOptions {
  std::string name;
  /// Rotation angle for `unitary`, damping rate for `amplitude-damping`.
  std::optional<double> gamma{};
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
};

inline QuantumChannel example_channel(const ExampleOptions& opts) {
  if (opts.name == "hadamard") return hadamard_channel();
  if (opts.name == "dephasing") return dephasing_channel(2);
  if (opts.name == "identity") return identity_channel(2);
  if (opts.name == "unitary")
    return qubit_unitary_channel({opts.alpha, opts.beta, opts.gamma.value_or(0.0), opts.delta});
  if (opts.name == "amplitude-damping") return amplitude_damping_channel(opts.gamma.value_or(0.3));
  throw InvalidInputError("unknown example \"" + opts.name +
                          "\" (hadamard, dephasing, identity, unitary, amplitude-damping)");
}

inline json cmd_example(const ExampleOptions& opts) { return channel_to_json(example_channel(opts)); }

}  // namespace cohchan
