#pragma once

// Coherence monotones of quantum channels, evaluated on the normalized
// Choi-Jamiolkowski state M_phi:
//  - the unified (r,s) monotone in closed form, plus an independent simplex
//    minimization of the same objective over diagonal M_phi~;
//  - the sandwiched Rényi monotone for pure CJ states;
//  - a heuristic search over pure-channel decompositions (convex roof) for
//    mixed-unitary qubit channels.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cohchan/channels.hpp"
#include "cohchan/entropies.hpp"
#include "cohchan/errors.hpp"
#include "cohchan/linalg.hpp"

namespace cohchan {

enum class Measure { Urs, SandwichedPure, SandwichedRoof };

inline std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::Urs: return "urs";
    case Measure::SandwichedPure: return "sandwiched-pure";
    case Measure::SandwichedRoof: return "sandwiched-roof";
  }
  return "unknown";
}

inline std::optional<Measure> parse_measure(std::string_view name) {
  if (name == "urs") return Measure::Urs;
  if (name == "sandwiched-pure") return Measure::SandwichedPure;
  if (name == "sandwiched-roof") return Measure::SandwichedRoof;
  return std::nullopt;
}

/// One term lambda_n * phi_n of a pure-channel decomposition; phi_n = U · U†.
struct RoofComponent {
  double weight = 0.0;
  ComplexMatrix unitary;
  double coherence = 0.0;
};

struct CoherenceReport {
  CoherenceReport(Measure m, const EntropyParams& p) : measure(m), params(p) {}

  Measure measure;
  EntropyParams params;
  double value = 0.0;
  /// Closed-form scalar: t for the unified family, t~ for the sandwiched one.
  std::optional<double> t;
  /// Minimizing diagonal distribution p_{i beta}.
  std::vector<double> optimal_diag;
  std::optional<double> upper_bound;
  std::vector<RoofComponent> decomposition;
  bool heuristic_upper_bound = false;
  /// s = 0 evaluated through the analytic limit r ln t / (r - 1).
  bool limit_branch_used = false;
  /// Optimizer status (brute-force and roof searches only).
  bool converged = true;
  double optimizer_residual = 0.0;
};

namespace detail {

inline void require_urs_regime(const EntropyParams& params) {
  if (params.family() != EntropyFamily::Unified)
    throw ParameterError("urs coherence needs unified-family parameters");
  if (!params.monotone_valid()) {
    std::ostringstream os;
    os << "urs coherence is only defined for r in (0,1) and s <= 1 (got r = " << params.r()
       << ", s = " << *params.s() << ")";
    throw ParameterError(os.str());
  }
}

inline std::vector<double> real_diagonal(const ComplexMatrix& m) {
  std::vector<double> d(m.dim());
  for (std::size_t k = 0; k < m.dim(); ++k) d[k] = std::max(0.0, m(k, k).real());
  return d;
}

/// (x^{s} - 1) / ((r - 1) s), or -ln x / (1 - r) at s = 0.
inline double urs_of_trace(double x, double r, double s) {
  if (s == 0.0) return std::log(x) / (r - 1.0);
  return std::expm1(s * std::log(x)) / ((r - 1.0) * s);
}

/// Simplex objective trace term X(p) = sum p^{1-r} q.
inline double urs_simplex_trace(std::span<const double> p, std::span<const double> q, double r) {
  double x = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (q[k] > 0.0 && p[k] > 0.0) x += std::pow(p[k], 1.0 - r) * q[k];
  return x;
}

/// Closed-form evaluation from the diagonal q_k = <k|rho^r|k>.
inline CoherenceReport urs_from_diagonal(std::vector<double> q, const EntropyParams& params) {
  const double r = params.r();
  const double s = *params.s();
  double t = 0.0;
  std::vector<double> weights(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    weights[k] = q[k] > 0.0 ? std::pow(q[k], 1.0 / r) : 0.0;
    t += weights[k];
  }
  CoherenceReport report(Measure::Urs, params);
  report.t = t;
  // C = (t^{rs} - 1) / ((r - 1) s); s = 0 takes the limit r ln t / (r - 1).
  report.value = urs_of_trace(std::pow(t, r), r, s);
  report.limit_branch_used = s == 0.0;
  for (auto& w : weights) w /= t;
  report.optimal_diag = std::move(weights);
  return report;
}

/// Largest value of the unified monotone over states of dimension `dim`.
inline double urs_dimension_bound(std::size_t dim, double r, double s) {
  const double d = static_cast<double>(dim);
  if (s == 0.0) return std::log(d);
  return std::expm1((r - 1.0) * s * std::log(d)) / ((r - 1.0) * s);
}

}  // namespace detail

/// Unified (r,s) coherence of a density matrix in its own basis.
inline CoherenceReport state_urs_coherence(const ComplexMatrix& rho, const EntropyParams& params) {
  detail::require_urs_regime(params);
  detail::require_density_matrix(rho, "rho");
  CoherenceReport report = detail::urs_from_diagonal(
      detail::real_diagonal(fractional_power(rho, params.r())), params);
  report.upper_bound = detail::urs_dimension_bound(rho.dim(), params.r(), *params.s());
  return report;
}

/// C_(r,s)(phi) = (t^{rs} - 1) / ((r - 1) s) with
/// t = sum_{i beta} <i beta|M_phi^r|i beta>^{1/r}.
inline CoherenceReport urs_channel_coherence(const QuantumChannel& channel,
                                             const EntropyParams& params) {
  detail::require_urs_regime(params);
  return state_urs_coherence(cj_state(channel).matrix, params);
}

struct BruteForceConfig {
  int restarts = 16;
  int max_iterations = 5000;
  double gradient_tol = 1e-10;
  std::uint64_t seed = 0;
};

/// Euclidean projection onto the probability simplex.
inline std::vector<double> project_to_simplex(std::span<const double> v) {
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) theta = candidate;
  }
  std::vector<double> p(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) p[k] = std::max(v[k] - theta, 0.0);
  return p;
}

/// Minimizes [(sum p^{1-r} q)^s - 1] / ((r - 1) s) over the simplex from
/// Dirichlet(1) starts. Each step is a projected Newton step on the diagonal
/// part of the Hessian, kept inside the simplex by never shrinking a
/// coordinate below a tenth of its value, followed by an Armijo backtrack.
/// Never consults the closed form; the only shared step with
/// urs_channel_coherence is M_phi^r.
inline CoherenceReport urs_coherence_bruteforce(const QuantumChannel& channel,
                                                const EntropyParams& params,
                                                const BruteForceConfig& config = {}) {
  detail::require_urs_regime(params);
  const ComplexMatrix m = cj_state(channel).matrix;
  const std::vector<double> q = detail::real_diagonal(fractional_power(m, params.r()));
  const double r = params.r();
  const double s = *params.s();
  const std::size_t n = q.size();
  constexpr double kTiny = 1e-300;

  auto objective = [&](std::span<const double> p) {
    const double x = detail::urs_simplex_trace(p, q, r);
    if (x <= 0.0) return std::numeric_limits<double>::infinity();
    return detail::urs_of_trace(x, r, s);
  };
  auto gradient = [&](std::span<const double> p) {
    const double x = detail::urs_simplex_trace(p, q, r);
    const double scale = std::pow(x, s - 1.0);
    std::vector<double> g(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      if (q[k] > 0.0) g[k] = -scale * q[k] * std::pow(std::max(p[k], kTiny), -r);
    return g;
  };
  auto stationarity = [&](std::span<const double> p, std::span<const double> g) {
    std::vector<double> shifted(n);
    for (std::size_t k = 0; k < n; ++k) shifted[k] = p[k] - g[k];
    const std::vector<double> step = project_to_simplex(shifted);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(step[k] - p[k]));
    return worst;
  };

  CoherenceReport best(Measure::Urs, params);
  best.value = std::numeric_limits<double>::infinity();
  best.converged = false;
  best.optimizer_residual = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < config.restarts; ++restart) {
    std::seed_seq seq{config.seed, static_cast<std::uint64_t>(restart)};
    std::mt19937_64 rng(seq);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> p(n);
    double total = 0.0;
    for (auto& x : p) total += (x = expo(rng));
    for (auto& x : p) x /= total;

    double f = objective(p);
    for (int it = 0; it < config.max_iterations; ++it) {
      const std::vector<double> g = gradient(p);
      const double residual = stationarity(p, g);
      if (residual <= config.gradient_tol) break;
      // Diagonal Hessian entry is r |g_k| / p_k, so the Newton displacement
      // (g_k - lambda) / D_k is written without forming D_k.
      auto target = [&](double lambda, std::size_t k) {
        if (q[k] <= 0.0) return 0.1 * p[k];
        const double pk = std::max(p[k], kTiny);
        return std::max(0.1 * p[k], p[k] + pk / r - lambda * pk / (r * -g[k]));
      };
      auto mass = [&](double lambda) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) sum += target(lambda, k);
        return sum;
      };
      double lo = -1.0, hi = 1.0;
      while (mass(lo) < 1.0) lo *= 2.0;
      while (mass(hi) > 1.0) hi *= 2.0;
      for (int b = 0; b < 200 && hi - lo > 1e-15 * std::max(std::abs(lo), std::abs(hi)); ++b) {
        const double mid = 0.5 * (lo + hi);
        (mass(mid) > 1.0 ? lo : hi) = mid;
      }
      std::vector<double> dir(n);
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += (dir[k] = target(0.5 * (lo + hi), k));
      double slope = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        dir[k] = dir[k] / sum - p[k];
        slope += g[k] * dir[k];
      }
      bool moved = false;
      for (double step = 1.0; step > 1e-20; step *= 0.5) {
        std::vector<double> trial(n);
        for (std::size_t k = 0; k < n; ++k) trial[k] = p[k] + step * dir[k];
        const double ft = objective(trial);
        bool accept = ft <= f + 1e-4 * step * slope;
        // Once f is flat to roundoff the decrease test is blind; fall back to
        // requiring a smaller stationarity residual.
        if (!accept && std::abs(ft - f) <= 1e-13 * std::max(1.0, std::abs(f)))
          accept = stationarity(trial, gradient(trial)) < residual;
        if (accept) {
          p = std::move(trial);
          f = ft;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    const double residual = stationarity(p, gradient(p));
    const double tie = 1e-14 * std::max(1.0, std::abs(f));
    if (f < best.value - tie || (f <= best.value + tie && residual < best.optimizer_residual)) {
      best.value = f;
      best.optimal_diag = p;
      best.optimizer_residual = residual;
      best.converged = residual <= config.gradient_tol;
    }
  }
  best.limit_branch_used = s == 0.0;
  best.upper_bound = detail::urs_dimension_bound(n, r, s);
  return best;
}

/// Largest CJ eigenvalue must reach 1 - kPureTol for the pure formula.
inline constexpr double kPureTol = 1e-8;

namespace detail {

inline void require_sandwiched_params(const EntropyParams& params) {
  if (params.family() != EntropyFamily::Sandwiched)
    throw ParameterError("sandwiched coherence needs sandwiched-family parameters");
}

/// ((2r-1)/(r-1)) log2 sum_k |psi_k|^{2r/(2r-1)}, populations given as |psi_k|^2.
inline double sandwiched_pure_value(std::span<const double> populations, double r,
                                    double* t_out = nullptr) {
  const double power = r / (2.0 * r - 1.0);
  double t = 0.0;
  for (double x : populations)
    if (x > 0.0) t += std::pow(x, power);
  if (t_out) *t_out = t;
  return (2.0 * r - 1.0) / (r - 1.0) * std::log2(t);
}

}  // namespace detail

/// C~_R(phi) for a channel whose CJ state is pure. The optimal diagonal
/// reported is the minimizing incoherent sigma, p_k ∝ |psi_k|^{2r/(2r-1)}.
inline CoherenceReport sandwiched_channel_coherence_pure(const QuantumChannel& channel,
                                                         const EntropyParams& params) {
  detail::require_sandwiched_params(params);
  const CJState state = cj_state(channel);
  const EigenSystem eig = hermitian_eigendecomposition(state.matrix);
  if (eig.max_eigenvalue() < 1.0 - kPureTol) {
    std::ostringstream os;
    os << "CJ state is mixed (largest eigenvalue " << eig.max_eigenvalue()
       << "); use the sandwiched-roof measure";
    throw PreconditionError(os.str());
  }
  const ComplexVector psi = eig.eigenvectors.column(eig.eigenvalues.size() - 1);
  std::vector<double> populations(psi.size());
  for (std::size_t k = 0; k < psi.size(); ++k) populations[k] = std::norm(psi[k]);

  CoherenceReport report(Measure::SandwichedPure, params);
  double t = 0.0;
  const double r = params.r();
  report.value = detail::sandwiched_pure_value(populations, r, &t);
  report.t = t;
  report.upper_bound = std::log2(static_cast<double>(psi.size()));
  report.optimal_diag.resize(psi.size());
  for (std::size_t k = 0; k < psi.size(); ++k)
    report.optimal_diag[k] = std::pow(populations[k], r / (2.0 * r - 1.0)) / t;
  return report;
}

struct RoofConfig {
  int max_terms = 4;
  int restarts = 64;
  int max_iterations = 300;
  std::uint64_t seed = 0;
};

namespace detail {

/// Columns (|00>+|11>)/√2, i(|00>-|11>)/√2, i(|01>+|10>)/√2, (|01>-|10>)/√2.
/// A two-qubit vector is maximally entangled iff its coordinates in this basis
/// are real up to a global phase.
inline ComplexMatrix magic_basis() {
  const double h = 1.0 / std::numbers::sqrt2;
  const complex i{0.0, 1.0};
  return ComplexMatrix{{h, i * h, 0.0, 0.0},
                       {0.0, 0.0, i * h, h},
                       {0.0, 0.0, i * h, -h},
                       {h, -i * h, 0.0, 0.0}};
}

/// N x N rotation built as an ordered product of Givens rotations.
inline std::vector<double> givens_orthogonal(std::span<const double> angles, std::size_t n) {
  std::vector<double> o(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) o[k * n + k] = 1.0;
  std::size_t a = 0;
  for (std::size_t p = 0; p + 1 < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q, ++a) {
      const double c = std::cos(angles[a]);
      const double s = std::sin(angles[a]);
      for (std::size_t k = 0; k < n; ++k) {
        const double okp = o[k * n + p];
        const double okq = o[k * n + q];
        o[k * n + p] = c * okp - s * okq;
        o[k * n + q] = s * okp + c * okq;
      }
    }
  return o;
}

struct RoofEnsemble {
  ComplexMatrix magic;
  /// sqrt(mu_k) f_k in magic coordinates (real), one per support eigenvalue.
  std::vector<std::array<double, 4>> weighted;
  std::size_t terms = 0;
};

struct RoofEvaluation {
  double value = 0.0;
  std::vector<RoofComponent> components;
};

inline RoofEvaluation evaluate_roof(const RoofEnsemble& ens, std::span<const double> angles,
                                    double r, bool keep_components) {
  const std::size_t n = ens.terms;
  const std::vector<double> o = givens_orthogonal(angles, n);
  RoofEvaluation eval;
  for (std::size_t col = 0; col < n; ++col) {
    std::array<double, 4> coords{};
    for (std::size_t k = 0; k < ens.weighted.size(); ++k)
      for (std::size_t d = 0; d < 4; ++d) coords[d] += ens.weighted[k][d] * o[k * n + col];
    double lambda = 0.0;
    for (double c : coords) lambda += c * c;
    if (lambda <= 1e-15) continue;
    ComplexVector u(4);
    for (std::size_t row = 0; row < 4; ++row)
      for (std::size_t d = 0; d < 4; ++d) u[row] += ens.magic(row, d) * (coords[d] / std::sqrt(lambda));
    std::array<double, 4> populations{};
    for (std::size_t k = 0; k < 4; ++k) populations[k] = std::norm(u[k]);
    double score = sandwiched_pure_value(populations, r);
    // Components must be maximally entangled (unitary channels).
    const ComplexMatrix marginal =
        partial_trace(ComplexMatrix::projector(u), Subsystem::Second, {2, 2});
    const double distance = max_abs_diff(marginal, ComplexMatrix::identity(2) * 0.5);
    if (distance > 1e-8) score += 10.0 + 1e3 * distance;
    eval.value += lambda * score;
    if (keep_components) {
      ComplexMatrix unitary(2);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t b = 0; b < 2; ++b) unitary(b, i) = std::numbers::sqrt2 * u[i * 2 + b];
      eval.components.push_back({lambda, std::move(unitary), score});
    }
  }
  return eval;
}

}  // namespace detail

/// Heuristic upper bound on the convex roof of C~_R for a mixed-unitary qubit
/// channel. Decompositions M_phi = sum_n lambda_n |u_n><u_n| are generated by
/// real orthogonal remixing of the eigenvectors of M_phi expressed in the
/// magic basis, which is exactly the family whose components are all
/// maximally entangled, i.e. unitary channels.
inline CoherenceReport sandwiched_channel_coherence_convex_roof(const QuantumChannel& channel,
                                                                const EntropyParams& params,
                                                                const RoofConfig& config = {}) {
  detail::require_sandwiched_params(params);
  if (channel.dim_in() != 2 || channel.dim_out() != 2)
    throw PreconditionError("convex-roof estimate is only supported for qubit channels");
  const CJState state = cj_state(channel);
  if (!is_unital(channel))
    throw PreconditionError(
        "channel is not unital, so it has no decomposition into pure-Choi (unitary) channels");

  detail::RoofEnsemble ens;
  ens.magic = detail::magic_basis();
  const ComplexMatrix in_magic = ens.magic.adjoint() * state.matrix * ens.magic;
  ComplexMatrix real_part(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) real_part(i, j) = in_magic(i, j).real();
  const EigenSystem eig = hermitian_eigendecomposition(real_part);
  for (std::size_t k = eig.eigenvalues.size(); k-- > 0;) {
    const double mu = eig.eigenvalues[k];
    if (mu <= kSupportCutoff) continue;
    ComplexVector f = eig.eigenvectors.column(k);
    std::size_t pivot = 0;
    for (std::size_t d = 1; d < 4; ++d)
      if (std::abs(f[d]) > std::abs(f[pivot])) pivot = d;
    const complex phase = std::conj(f[pivot]) / std::abs(f[pivot]);
    std::array<double, 4> w{};
    for (std::size_t d = 0; d < 4; ++d) w[d] = std::sqrt(mu) * (f[d] * phase).real();
    ens.weighted.push_back(w);
  }
  ens.terms = std::max<std::size_t>(static_cast<std::size_t>(std::max(config.max_terms, 1)),
                                    ens.weighted.size());
  const std::size_t n_angles = ens.terms * (ens.terms - 1) / 2;
  const double r = params.r();

  auto objective = [&](std::span<const double> angles) {
    return detail::evaluate_roof(ens, angles, r, false).value;
  };

  std::vector<double> best_angles(n_angles, 0.0);
  double best_value = objective(best_angles);
  double best_residual = 0.0;
  for (int restart = 0; restart < config.restarts; ++restart) {
    std::vector<double> angles(n_angles, 0.0);
    if (restart > 0) {
      std::seed_seq seq{config.seed, static_cast<std::uint64_t>(restart)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
      for (auto& a : angles) a = uni(rng);
    }
    double f = objective(angles);
    double step = 0.5;
    double grad_norm = 0.0;
    for (int it = 0; it < config.max_iterations && n_angles > 0; ++it) {
      std::vector<double> g(n_angles);
      constexpr double h = 1e-6;
      grad_norm = 0.0;
      for (std::size_t a = 0; a < n_angles; ++a) {
        std::vector<double> plus = angles, minus = angles;
        plus[a] += h;
        minus[a] -= h;
        g[a] = (objective(plus) - objective(minus)) / (2.0 * h);
        grad_norm += g[a] * g[a];
      }
      grad_norm = std::sqrt(grad_norm);
      if (grad_norm < 1e-9) break;
      bool moved = false;
      step = std::min(step * 2.0, 4.0);
      for (int halving = 0; halving < 40; ++halving, step *= 0.5) {
        std::vector<double> trial(n_angles);
        for (std::size_t a = 0; a < n_angles; ++a) trial[a] = angles[a] - step * g[a];
        const double ft = objective(trial);
        if (ft < f - 1e-4 * step * grad_norm * grad_norm) {
          angles = std::move(trial);
          moved = f - ft > 1e-15;
          f = ft;
          break;
        }
      }
      if (!moved) break;
    }
    if (f < best_value) {
      best_value = f;
      best_angles = angles;
      best_residual = grad_norm;
    }
  }

  detail::RoofEvaluation eval = detail::evaluate_roof(ens, best_angles, r, true);
  CoherenceReport report(Measure::SandwichedRoof, params);
  report.value = eval.value;
  report.decomposition = std::move(eval.components);
  report.heuristic_upper_bound = true;
  report.upper_bound = 2.0;
  report.optimizer_residual = best_residual;
  return report;
}

/// Dispatches on the measure; `params` is built from (r, s) accordingly.
inline CoherenceReport channel_coherence(const QuantumChannel& channel, Measure measure, double r,
                                         double s, std::uint64_t seed = 0) {
  switch (measure) {
    case Measure::Urs: return urs_channel_coherence(channel, EntropyParams::unified(r, s));
    case Measure::SandwichedPure:
      return sandwiched_channel_coherence_pure(channel, EntropyParams::sandwiched(r));
    case Measure::SandwichedRoof: {
      RoofConfig config;
      config.seed = seed;
      return sandwiched_channel_coherence_convex_roof(channel, EntropyParams::sandwiched(r),
                                                      config);
    }
  }
  throw InvalidInputError("unknown measure");
}

}  // namespace cohchan
