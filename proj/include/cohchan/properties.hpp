#pragma once

// Executable checks of the channel-coherence axioms (faithfulness, restricted
// monotonicity under incoherent pre/post-processing, convexity), of the
// s-monotonicity and s-concavity of C_(r,s), of closed form vs simplex
// minimization, and of the qubit-unitary bounds.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cohchan/channels.hpp"
#include "cohchan/entropies.hpp"
#include "cohchan/monotones.hpp"
#include "cohchan/qubit_examples.hpp"
#include "cohchan/random.hpp"

namespace cohchan {

struct Witness {
  std::string description;
  QuantumChannel channel;
  double violation = 0.0;
};

struct PropertyReport {
  PropertyReport(std::string name_, double tolerance_, std::uint64_t seed_ = 0)
      : name(std::move(name_)), tolerance(tolerance_), seed(seed_) {}

  std::string name;
  std::size_t samples = 0;
  /// Largest amount by which a sample exceeded its threshold (0 if none did).
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::vector<Witness> witnesses;
  std::uint64_t seed = 0;
  std::string note;

  /// Records one sample; `excess` <= tolerance means the sample is fine.
  void record(double excess, const std::string& description, const QuantumChannel& channel) {
    ++samples;
    max_violation = std::max(max_violation, excess);
    if (excess > tolerance) {
      passed = false;
      if (witnesses.size() < 5) witnesses.push_back({description, channel, excess});
    }
  }
};

struct SamplerConfig {
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  std::size_t dim_in = 2;
  std::size_t dim_out = 2;
};

inline constexpr double kFaithfulZeroTol = 1e-9;
inline constexpr double kFaithfulPositiveTol = 1e-6;

/// Diagonal-Choi channels must score <= 1e-9; coherent channels > 1e-6.
/// A coherent channel scoring too low counts as a violation of size 1.
inline PropertyReport check_faithfulness(const SamplerConfig& config, const EntropyParams& params) {
  PropertyReport report("faithfulness", kFaithfulZeroTol, config.seed);
  for (std::size_t k = 0; k < config.samples; ++k) {
    Rng rng = make_rng(config.seed, 2 * k);
    const QuantumChannel incoherent =
        random_incoherent_channel(rng, config.dim_in, config.dim_out);
    const double zero_value = urs_channel_coherence(incoherent, params).value;
    std::ostringstream os;
    os << "diagonal-Choi sample " << k << " scored " << zero_value;
    report.record(std::max(0.0, zero_value), os.str(), incoherent);

    Rng rng2 = make_rng(config.seed, 2 * k + 1);
    const QuantumChannel coherent = random_coherent_channel(rng2, config.dim_in, config.dim_out);
    const double value = urs_channel_coherence(coherent, params).value;
    std::ostringstream os2;
    os2 << "coherent sample " << k << " scored " << value;
    report.record(value > kFaithfulPositiveTol ? 0.0 : 1.0, os2.str(), coherent);
  }
  return report;
}

struct SGrid {
  double from = -2.0;
  double to = 1.0;
  std::size_t points = 41;

  double at(std::size_t k) const {
    return from + (to - from) * static_cast<double>(k) / static_cast<double>(points - 1);
  }
};

inline constexpr double kFirstDifferenceTol = 1e-8;
inline constexpr double kSecondDifferenceTol = 1e-10;

/// s-profile of C_(r,s)(phi): first differences <= 1e-8 and, when
/// `assert_concavity` is set, second differences < 1e-10.
///
/// The concavity half does not hold: with m = t^{rs},
///   C''(s) = -(2m - 2 - 2m ln m + m ln^2 m) / ((1 - r) s^3) > 0,
/// so every non-flat profile is convex and fails that half.
inline PropertyReport check_s_profile(const QuantumChannel& channel, double r, const SGrid& grid = {},
                                      bool assert_concavity = true) {
  PropertyReport report("s-profile", 0.0);
  if (grid.points < 3) throw ParameterError("s-grid needs at least 3 points");
  if (grid.to > 1.0) throw ParameterError("s-grid must lie in (-inf, 1]");
  std::vector<double> profile(grid.points);
  for (std::size_t k = 0; k < grid.points; ++k)
    profile[k] = urs_channel_coherence(channel, EntropyParams::unified(r, grid.at(k))).value;

  const bool flat = std::all_of(profile.begin(), profile.end(),
                                [](double v) { return std::abs(v) <= 1e-12; });
  for (std::size_t k = 0; k + 1 < grid.points; ++k) {
    const double first = profile[k + 1] - profile[k];
    std::ostringstream os;
    os << "first difference " << first << " at s = " << grid.at(k);
    report.record(std::max(0.0, first - kFirstDifferenceTol), os.str(), channel);
  }
  if (flat) {
    report.note = "identically-zero profile: concavity not asserted";
    return report;
  }
  if (!assert_concavity) {
    report.note = "concavity not asserted";
    return report;
  }
  for (std::size_t k = 1; k + 1 < grid.points; ++k) {
    const double second = profile[k + 1] - 2.0 * profile[k] + profile[k - 1];
    std::ostringstream os;
    os << "second difference " << second << " at s = " << grid.at(k);
    const double excess = second >= kSecondDifferenceTol
                              ? std::max(second - kSecondDifferenceTol,
                                         std::numeric_limits<double>::min())
                              : 0.0;
    report.record(excess, os.str(), channel);
  }
  return report;
}

inline constexpr double kConvexityTol = 1e-9;

/// C(sum p_m phi_m) <= sum p_m C(phi_m) on random pairs and triples.
inline PropertyReport check_convexity(const SamplerConfig& config, const EntropyParams& params) {
  PropertyReport report("convexity", kConvexityTol, config.seed);
  for (std::size_t k = 0; k < config.samples; ++k) {
    Rng rng = make_rng(config.seed, k);
    const std::size_t terms = 2 + k % 2;
    std::vector<QuantumChannel> parts;
    for (std::size_t m = 0; m < terms; ++m) {
      switch ((k + m) % 3) {
        case 0: parts.push_back(random_coherent_channel(rng, config.dim_in, config.dim_out)); break;
        case 1: parts.push_back(random_incoherent_channel(rng, config.dim_in, config.dim_out)); break;
        default:
          parts.push_back(config.dim_in == config.dim_out
                              ? unitary_channel(random_unitary(rng, config.dim_in))
                              : random_coherent_channel(rng, config.dim_in, config.dim_out));
      }
    }
    const std::vector<double> w = random_probability_vector(rng, terms);
    double rhs = 0.0;
    for (std::size_t m = 0; m < terms; ++m) rhs += w[m] * urs_channel_coherence(parts[m], params).value;
    const QuantumChannel mixed = mix_channels(parts, w);
    const double lhs = urs_channel_coherence(mixed, params).value;
    std::ostringstream os;
    os << "mixture " << k << ": C(mix) = " << lhs << ", average = " << rhs;
    report.record(lhs - rhs, os.str(), mixed);
  }
  return report;
}

inline constexpr double kPostprocessingTol = 1e-9;

/// Random member of {permutation unitaries, complete dephasing, mixtures}.
inline QuantumChannel random_incoherent_processing(Rng& rng, std::size_t dim) {
  auto permutation = [&] {
    std::vector<std::size_t> perm(dim);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    return permutation_channel(perm);
  };
  std::uniform_int_distribution<int> kind(0, 2);
  switch (kind(rng)) {
    case 0: return permutation();
    case 1: return dephasing_channel(dim);
    default: {
      std::uniform_real_distribution<double> uni(0.0, 1.0);
      const double p = uni(rng);
      const std::vector<QuantumChannel> parts{permutation(),
                                              uni(rng) < 0.5 ? dephasing_channel(dim)
                                                             : permutation()};
      const std::vector<double> w{p, 1.0 - p};
      return mix_channels(parts, w);
    }
  }
}

/// C(post o phi o pre) <= C(phi) for pre/post drawn from the incoherent family
/// above. This is a restricted subfamily of incoherent superchannels.
inline PropertyReport check_incoherent_postprocessing(const QuantumChannel& channel,
                                                      const EntropyParams& params,
                                                      std::size_t draws = 20,
                                                      std::uint64_t seed = 0) {
  PropertyReport report("postprocessing", kPostprocessingTol, seed);
  report.note = "restricted to pre/post-composition with permutation, dephasing and mixed "
                "incoherent channels";
  const double base = urs_channel_coherence(channel, params).value;
  for (std::size_t k = 0; k < draws; ++k) {
    Rng rng = make_rng(seed, k);
    const QuantumChannel pre = random_incoherent_processing(rng, channel.dim_in());
    const QuantumChannel post = random_incoherent_processing(rng, channel.dim_out());
    const QuantumChannel processed = compose(post, compose(channel, pre));
    const double value = urs_channel_coherence(processed, params).value;
    std::ostringstream os;
    os << "draw " << k << ": C(processed) = " << value << ", C(original) = " << base;
    report.record(value - base, os.str(), processed);
  }
  return report;
}

inline constexpr double kOracleRelTol = 1e-5;

/// |closed - brute| / max(closed, 1e-6) on random channels for every setting.
inline PropertyReport check_oracle_equivalence(const SamplerConfig& config,
                                               const std::vector<EntropyParams>& settings,
                                               const BruteForceConfig& optimizer = {}) {
  PropertyReport report("oracle", kOracleRelTol, config.seed);
  for (std::size_t k = 0; k < config.samples; ++k) {
    Rng rng = make_rng(config.seed, k);
    std::uniform_int_distribution<std::size_t> n_kraus(1, config.dim_in * config.dim_out);
    const QuantumChannel ch = random_kraus_channel(rng, config.dim_in, config.dim_out, n_kraus(rng));
    for (const auto& params : settings) {
      const double closed = urs_channel_coherence(ch, params).value;
      BruteForceConfig opt = optimizer;
      opt.seed = config.seed + k;
      const double brute = urs_coherence_bruteforce(ch, params, opt).value;
      const double rel = std::abs(closed - brute) / std::max(closed, 1e-6);
      std::ostringstream os;
      os << "channel " << k << " (r = " << params.r() << ", s = " << *params.s()
         << "): closed " << closed << ", brute force " << brute;
      report.record(rel, os.str(), ch);
    }
  }
  return report;
}

inline constexpr double kBoundTol = 1e-9;

/// Closed forms on a gamma grid over [0, pi] stay within [0, bound], agree
/// with the full Choi pipeline, and reach the bound at gamma = pi/2.
inline PropertyReport check_unitary_bounds(const std::vector<EntropyParams>& settings,
                                           std::size_t grid_points = 50,
                                           const UnitaryParams& phases = {}) {
  PropertyReport report("bounds", kBoundTol);
  for (const auto& params : settings) {
    const bool urs = params.family() == EntropyFamily::Unified;
    const double bound = urs ? urs_upper_bound(params.r(), *params.s()) : sandwiched_upper_bound();
    auto closed = [&](double gamma) {
      return urs ? urs_unitary_closed_form(gamma, params.r(), *params.s())
                 : sandwiched_unitary_closed_form(gamma, params.r());
    };
    for (std::size_t k = 0; k < grid_points; ++k) {
      UnitaryParams u = phases;
      u.gamma = std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid_points - 1);
      const QuantumChannel ch = qubit_unitary_channel(u);
      const double pipeline = urs ? urs_channel_coherence(ch, params).value
                                  : sandwiched_channel_coherence_pure(ch, params).value;
      const double cf = closed(u.gamma);
      const double excess = std::max({-pipeline, pipeline - bound, -cf, cf - bound,
                                      std::abs(cf - pipeline)});
      std::ostringstream os;
      os << "gamma = " << u.gamma << ": closed " << cf << ", pipeline " << pipeline << ", bound "
         << bound;
      report.record(std::max(0.0, excess), os.str(), ch);
    }
    UnitaryParams peak = phases;
    peak.gamma = std::numbers::pi / 2.0;
    std::ostringstream os;
    os << "value at gamma = pi/2 vs bound " << bound;
    report.record(std::abs(closed(peak.gamma) - bound), os.str(), qubit_unitary_channel(peak));
  }
  return report;
}

}  // namespace cohchan
