#pragma once

// General qubit unitary channels and their closed-form coherence values.

#include <cmath>
#include <numbers>

#include "cohchan/channels.hpp"
#include "cohchan/errors.hpp"
#include "cohchan/linalg.hpp"

namespace cohchan {

struct UnitaryParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

/// U = [[a, -b], [e^{2i alpha} conj(b), e^{2i alpha} conj(a)]] with
///   a = e^{i(alpha - beta/2 - delta/2)} cos(gamma/2),
///   b = e^{i(alpha - beta/2 + delta/2)} sin(gamma/2).
inline ComplexMatrix build_qubit_unitary(const UnitaryParams& p) {
  const complex a = std::polar(std::cos(p.gamma / 2.0), p.alpha - p.beta / 2.0 - p.delta / 2.0);
  const complex b = std::polar(std::sin(p.gamma / 2.0), p.alpha - p.beta / 2.0 + p.delta / 2.0);
  const complex phase = std::polar(1.0, 2.0 * p.alpha);
  return ComplexMatrix{{a, -b}, {phase * std::conj(b), phase * std::conj(a)}};
}

inline QuantumChannel qubit_unitary_channel(const UnitaryParams& p) {
  return unitary_channel(build_qubit_unitary(p));
}

/// K = (1/√2)[[1, 1], [1, -1]].
inline QuantumChannel hadamard_channel() {
  const double h = 1.0 / std::numbers::sqrt2;
  return unitary_channel(ComplexMatrix{{h, h}, {h, -h}});
}

/// C_(r,s)(phi_U) = (2^{rs-s} [c^{1/r} + s^{1/r}]^{rs} - 1) / ((r-1)s),
/// c = cos^2(gamma/2), s = sin^2(gamma/2). s = 0 is the limit r ln t/(r-1).
inline double urs_unitary_closed_form(double gamma, double r, double s) {
  if (!(r > 0.0 && r < 1.0) || s > 1.0 || !std::isfinite(s))
    throw ParameterError("urs closed form needs r in (0,1) and s <= 1");
  const double c2 = std::pow(std::cos(gamma / 2.0), 2);
  const double s2 = std::pow(std::sin(gamma / 2.0), 2);
  const double bracket = std::pow(c2, 1.0 / r) + std::pow(s2, 1.0 / r);
  if (s == 0.0) {
    // ln(2^{r-1} bracket^r) / (r - 1)
    return ((r - 1.0) * std::log(2.0) + r * std::log(bracket)) / (r - 1.0);
  }
  const double log_term = (r * s - s) * std::log(2.0) + r * s * std::log(bracket);
  return std::expm1(log_term) / ((r - 1.0) * s);
}

/// C~_R(phi_U) = ((2r-1)/(r-1)) log2[c^{r/(2r-1)} + s^{r/(2r-1)}] + 1.
inline double sandwiched_unitary_closed_form(double gamma, double r) {
  if (!std::isfinite(r) || r <= 0.5 || r == 1.0)
    throw ParameterError("sandwiched closed form needs r in (1/2,1) U (1,inf)");
  const double c2 = std::pow(std::cos(gamma / 2.0), 2);
  const double s2 = std::pow(std::sin(gamma / 2.0), 2);
  const double k = r / (2.0 * r - 1.0);
  return (2.0 * r - 1.0) / (r - 1.0) * std::log2(std::pow(c2, k) + std::pow(s2, k)) + 1.0;
}

/// (4^{(r-1)s} - 1) / ((r-1)s), ln 4 at s = 0.
inline double urs_upper_bound(double r, double s) {
  if (s == 0.0) return std::log(4.0);
  return std::expm1((r - 1.0) * s * std::log(4.0)) / ((r - 1.0) * s);
}

inline constexpr double sandwiched_upper_bound() { return 2.0; }

}  // namespace cohchan
