#pragma once

// Unified (r,s)-relative entropy (natural log) and sandwiched Rényi relative
// entropy (base-2 log) between density matrices.

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "cohchan/errors.hpp"
#include "cohchan/linalg.hpp"

namespace cohchan {

/// A real number or +infinity. Infinity is a flag, never an overflowed double.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr explicit ExtendedReal(double value) : value_(value) {}

  static constexpr ExtendedReal infinity() {
    ExtendedReal x;
    x.infinite_ = true;
    return x;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }

  /// Finite value; throws for +infinity.
  double value() const {
    if (infinite_) throw InvalidInputError("value is +infinity");
    return value_;
  }
  /// Finite value or std::numeric_limits<double>::infinity().
  double to_double() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

enum class EntropyFamily { Unified, Sandwiched };

/// Which branch of the unified family an (r, s) pair selects.
enum class Regime { General, Renyi, Tsallis, TypeR, VonNeumann, Sandwiched };

inline std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::General: return "rs-general";
    case Regime::Renyi: return "renyi";
    case Regime::Tsallis: return "tsallis";
    case Regime::TypeR: return "type-r";
    case Regime::VonNeumann: return "von-neumann";
    case Regime::Sandwiched: return "sandwiched";
  }
  return "unknown";
}

/// s counts as 1/r when within this distance.
inline constexpr double kTypeRTol = 1e-12;

class EntropyParams {
 public:
  /// Unified family: r in [0, 1], any real s (ignored at r = 1).
  static EntropyParams unified(double r, double s) {
    if (!std::isfinite(r) || !std::isfinite(s)) throw ParameterError("r and s must be finite");
    if (r < 0.0 || r > 1.0) {
      std::ostringstream os;
      os << "unified (r,s)-relative entropy needs 0 <= r <= 1, got r = " << r;
      throw ParameterError(os.str());
    }
    EntropyParams p;
    p.family_ = EntropyFamily::Unified;
    p.r_ = r;
    p.s_ = s;
    // Dispatch order: r = 1, s = 0, s = 1, s = 1/r, general.
    if (r == 1.0) p.regime_ = Regime::VonNeumann;
    else if (s == 0.0) p.regime_ = Regime::Renyi;
    else if (s == 1.0) p.regime_ = Regime::Tsallis;
    else if (r > 0.0 && std::abs(s - 1.0 / r) <= kTypeRTol) p.regime_ = Regime::TypeR;
    else p.regime_ = Regime::General;
    return p;
  }

  /// Sandwiched family: r in (1/2, 1) ∪ (1, ∞), finite.
  static EntropyParams sandwiched(double r) {
    if (!std::isfinite(r) || r <= 0.5 || r == 1.0) {
      std::ostringstream os;
      os << "sandwiched Renyi relative entropy needs r in (1/2,1) U (1,inf), got r = " << r;
      throw ParameterError(os.str());
    }
    EntropyParams p;
    p.family_ = EntropyFamily::Sandwiched;
    p.r_ = r;
    p.regime_ = Regime::Sandwiched;
    return p;
  }

  EntropyFamily family() const noexcept { return family_; }
  Regime regime() const noexcept { return regime_; }
  double r() const noexcept { return r_; }
  /// s of the unified family (absent for the sandwiched family).
  std::optional<double> s() const noexcept {
    return family_ == EntropyFamily::Unified ? std::optional<double>(s_) : std::nullopt;
  }

  /// Whether the induced coherence quantity is a monotone for these params.
  bool monotone_valid() const noexcept {
    if (family_ == EntropyFamily::Sandwiched) return true;
    return r_ > 0.0 && r_ < 1.0 && s_ <= 1.0;
  }

 private:
  EntropyParams() = default;

  EntropyFamily family_ = EntropyFamily::Unified;
  Regime regime_ = Regime::General;
  double r_ = 0.0;
  double s_ = 0.0;
};

struct EntropyValue {
  ExtendedReal value;
  /// Tr(rho^r sigma^{1-r}) or Tr[(sigma^a rho sigma^a)^r], when it was formed.
  std::optional<double> trace_term;
};

/// Tr(rho^r sigma^{1-r}) below this counts as zero.
inline constexpr double kZeroTraceTol = 1e-14;
/// Weight of rho outside supp(sigma) above this means supp(rho) ⊄ supp(sigma).
inline constexpr double kSupportLeakTol = 1e-10;

namespace detail {

inline double trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * b(j, i);
  return acc.real();
}

inline void require_density_matrix(const ComplexMatrix& m, const char* name) {
  if (!m.is_square()) throw InvalidInputError(std::string(name) + " is not square");
  const double tr_err = std::abs(m.trace() - complex{1.0, 0.0});
  if (tr_err > 1e-8) {
    std::ostringstream os;
    os << name << " does not have unit trace (deviation " << tr_err << ")";
    throw InvalidInputError(os.str());
  }
}

/// Tr[(I - P_sigma) rho]
inline double weight_outside_support(const ComplexMatrix& rho, const EigenSystem& sigma_eig) {
  double leak = 0.0;
  for (std::size_t k = 0; k < sigma_eig.eigenvalues.size(); ++k) {
    if (sigma_eig.eigenvalues[k] > kSupportCutoff) continue;
    const ComplexVector v = sigma_eig.eigenvectors.column(k);
    leak += inner_product(v, rho * std::span<const complex>(v)).real();
  }
  return leak;
}

}  // namespace detail

inline EntropyValue unified_relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                                             const EntropyParams& params) {
  if (params.family() != EntropyFamily::Unified)
    throw ParameterError("unified_relative_entropy called with sandwiched parameters");
  detail::require_density_matrix(rho, "rho");
  detail::require_density_matrix(sigma, "sigma");
  if (rho.dim() != sigma.dim()) throw InvalidInputError("rho and sigma differ in dimension");

  const double r = params.r();
  const EigenSystem rho_eig = hermitian_eigendecomposition(rho);
  const EigenSystem sigma_eig = hermitian_eigendecomposition(sigma);
  require_psd(rho_eig, "rho");
  require_psd(sigma_eig, "sigma");

  if (params.regime() == Regime::VonNeumann) {
    if (detail::weight_outside_support(rho, sigma_eig) > kSupportLeakTol)
      return {ExtendedReal::infinity(), std::nullopt};
    double rho_log_rho = 0.0;
    for (double lambda : rho_eig.eigenvalues)
      if (lambda > kSupportCutoff) rho_log_rho += lambda * std::log(lambda);
    const double rho_log_sigma = detail::trace_of_product(rho, matrix_log(sigma_eig));
    return {ExtendedReal(rho_log_rho - rho_log_sigma), std::nullopt};
  }

  const double q = detail::trace_of_product(fractional_power(rho_eig, r),
                                            fractional_power(sigma_eig, 1.0 - r));
  const double s = *params.s();
  const bool q_zero = q <= kZeroTraceTol;
  switch (params.regime()) {
    case Regime::Renyi:
      if (q_zero) return {ExtendedReal::infinity(), q};
      return {ExtendedReal(-std::log(q) / (1.0 - r)), q};
    case Regime::Tsallis:
      return {ExtendedReal(-(q - 1.0) / (1.0 - r)), q};
    case Regime::TypeR: {
      // Order-1/r relative entropy of type r: -(1/r - 1)^{-1} [(Tr rho^r sigma^{1-r})^{1/r} - 1].
      const double qq = q_zero ? 0.0 : std::pow(q, 1.0 / r);
      return {ExtendedReal(-(qq - 1.0) / (1.0 / r - 1.0)), q};
    }
    default: {
      if (q_zero && s < 0.0) return {ExtendedReal::infinity(), q};
      const double qs = q_zero ? 0.0 : std::pow(q, s);
      return {ExtendedReal(-(qs - 1.0) / ((1.0 - r) * s)), q};
    }
  }
}

inline EntropyValue sandwiched_relative_entropy(const ComplexMatrix& rho,
                                                const ComplexMatrix& sigma,
                                                const EntropyParams& params) {
  if (params.family() != EntropyFamily::Sandwiched)
    throw ParameterError("sandwiched_relative_entropy called with unified parameters");
  detail::require_density_matrix(rho, "rho");
  detail::require_density_matrix(sigma, "sigma");
  if (rho.dim() != sigma.dim()) throw InvalidInputError("rho and sigma differ in dimension");

  const double r = params.r();
  const EigenSystem sigma_eig = hermitian_eigendecomposition(sigma);
  require_psd(sigma_eig, "sigma");
  require_psd(hermitian_eigendecomposition(rho), "rho");
  if (r > 1.0 && detail::weight_outside_support(rho, sigma_eig) > kSupportLeakTol)
    return {ExtendedReal::infinity(), std::nullopt};

  const ComplexMatrix side = fractional_power(sigma_eig, (1.0 - r) / (2.0 * r));
  const ComplexMatrix sandwich = hermitian_part(side * rho * side);
  const EigenSystem sandwich_eig = hermitian_eigendecomposition(sandwich);
  require_psd(sandwich_eig, "sandwiched operator");
  // Eigenvalues below the solver's roundoff floor are treated as zero; for
  // r < 1 their powers would otherwise leak into q.
  double top = 0.0;
  for (double lambda : sandwich_eig.eigenvalues) top = std::max(top, lambda);
  const double floor = std::max(kSupportCutoff * kSupportCutoff, 1e-14 * top);
  double q = 0.0;
  for (double lambda : sandwich_eig.eigenvalues)
    if (lambda > floor) q += std::pow(lambda, r);
  if (q <= kZeroTraceTol) return {ExtendedReal::infinity(), q};
  return {ExtendedReal(std::log2(q) / (r - 1.0)), q};
}

}  // namespace cohchan
