#pragma once

// Quantum channels between finite-dimensional systems and their
// Choi-Jamiolkowski representation.
//
// Basis convention: the product basis |i beta> of H_A ⊗ H_B is flattened as
// i * |B| + beta, with i the reference (input copy) index and beta the output
// index. J_phi = sum_ij |i><j| ⊗ phi(|i><j|), and M_phi = J_phi / |A|.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cohchan/errors.hpp"
#include "cohchan/linalg.hpp"

namespace cohchan {

/// Trace-preservation tolerance used when a Choi matrix is derived from Kraus.
inline constexpr double kTracePreservingTol = 1e-10;
/// Tolerance applied to externally supplied channels.
inline constexpr double kDocumentCptpTol = 1e-8;
inline constexpr double kIncoherenceTol = 1e-10;

namespace detail {

inline ComplexMatrix choi_from_kraus_unchecked(std::span<const ComplexMatrix> kraus,
                                               std::size_t dim_in, std::size_t dim_out) {
  const std::size_t n = dim_in * dim_out;
  ComplexMatrix choi(n);
  ComplexVector vec(n);
  for (const auto& k : kraus) {
    for (std::size_t i = 0; i < dim_in; ++i)
      for (std::size_t b = 0; b < dim_out; ++b) vec[i * dim_out + b] = k(b, i);
    for (std::size_t p = 0; p < n; ++p) {
      if (vec[p] == complex{0.0, 0.0}) continue;
      for (std::size_t q = 0; q < n; ++q) choi(p, q) += vec[p] * std::conj(vec[q]);
    }
  }
  return choi;
}

inline ComplexMatrix kraus_gram(std::span<const ComplexMatrix> kraus, std::size_t dim_in) {
  ComplexMatrix gram(dim_in);
  for (const auto& k : kraus) gram += k.adjoint() * k;
  return gram;
}

}  // namespace detail

/// A linear map D(H_A) -> D(H_B) held as its (unnormalized) Choi matrix J_phi,
/// optionally together with the Kraus operators it was built from. Nothing
/// about complete positivity or trace preservation is assumed here; see
/// validate_cptp.
class QuantumChannel {
 public:
  static QuantumChannel from_kraus(std::size_t dim_in, std::size_t dim_out,
                                   std::vector<ComplexMatrix> kraus) {
    if (dim_in == 0 || dim_out == 0) throw InvalidInputError("channel dimensions must be positive");
    if (kraus.empty()) throw InvalidInputError("Kraus list is empty");
    for (const auto& k : kraus) {
      if (k.rows() != dim_out || k.cols() != dim_in) {
        std::ostringstream os;
        os << "Kraus operator has shape " << k.rows() << "x" << k.cols() << ", expected "
           << dim_out << "x" << dim_in;
        throw InvalidInputError(os.str());
      }
    }
    QuantumChannel ch;
    ch.dim_in_ = dim_in;
    ch.dim_out_ = dim_out;
    ch.choi_ = detail::choi_from_kraus_unchecked(kraus, dim_in, dim_out);
    ch.kraus_ = std::move(kraus);
    return ch;
  }

  static QuantumChannel from_choi(std::size_t dim_in, std::size_t dim_out, ComplexMatrix choi) {
    if (dim_in == 0 || dim_out == 0) throw InvalidInputError("channel dimensions must be positive");
    if (!choi.is_square() || choi.dim() != dim_in * dim_out) {
      std::ostringstream os;
      os << "Choi matrix has shape " << choi.rows() << "x" << choi.cols() << ", expected "
         << dim_in * dim_out << "x" << dim_in * dim_out;
      throw InvalidInputError(os.str());
    }
    QuantumChannel ch;
    ch.dim_in_ = dim_in;
    ch.dim_out_ = dim_out;
    ch.choi_ = std::move(choi);
    return ch;
  }

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  BipartiteDims dims() const noexcept { return {dim_in_, dim_out_}; }

  /// J_phi, unnormalized (trace |A| for a trace-preserving map).
  const ComplexMatrix& choi() const noexcept { return choi_; }
  const std::optional<std::vector<ComplexMatrix>>& kraus() const noexcept { return kraus_; }

 private:
  QuantumChannel() = default;

  std::size_t dim_in_ = 0;
  std::size_t dim_out_ = 0;
  ComplexMatrix choi_;
  std::optional<std::vector<ComplexMatrix>> kraus_;
};

/// Normalized Choi-Jamiolkowski state M_phi = J_phi / |A|.
struct CJState {
  ComplexMatrix matrix;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;

  BipartiteDims dims() const noexcept { return {dim_a, dim_b}; }
};

struct CptpReport {
  double hermitian_asymmetry = 0.0;
  double min_choi_eigenvalue = 0.0;
  /// ||Tr_B J - I_A||_max
  double trace_deviation = 0.0;
  bool hermitian = false;
  bool completely_positive = false;
  bool trace_preserving = false;

  bool passed() const noexcept { return hermitian && completely_positive && trace_preserving; }

  std::string describe() const {
    std::ostringstream os;
    os << "hermitian asymmetry " << hermitian_asymmetry << ", min Choi eigenvalue "
       << min_choi_eigenvalue << ", trace-preservation deviation " << trace_deviation;
    return os.str();
  }
};

inline CptpReport validate_cptp(const QuantumChannel& channel, double tol = kDocumentCptpTol) {
  CptpReport report;
  const ComplexMatrix& j = channel.choi();
  report.hermitian_asymmetry = hermitian_asymmetry(j);
  report.hermitian = report.hermitian_asymmetry <= tol;
  if (report.hermitian) {
    JacobiOptions opts;
    opts.hermitian_tol = tol;
    report.min_choi_eigenvalue = hermitian_eigendecomposition(j, opts).min_eigenvalue();
    report.completely_positive = report.min_choi_eigenvalue >= -tol;
  } else {
    report.min_choi_eigenvalue = -std::numeric_limits<double>::infinity();
  }
  const ComplexMatrix marginal = partial_trace(j, Subsystem::Second, channel.dims());
  report.trace_deviation = max_abs_diff(marginal, ComplexMatrix::identity(channel.dim_in()));
  report.trace_preserving = report.trace_deviation <= tol;
  return report;
}

inline void require_cptp(const QuantumChannel& channel, double tol = kDocumentCptpTol) {
  const CptpReport report = validate_cptp(channel, tol);
  if (!report.passed()) throw NotCptpError("channel is not CPTP: " + report.describe());
}

/// J_phi from the stored Kraus operators; refuses non-trace-preserving sets.
inline ComplexMatrix choi_from_kraus(const QuantumChannel& channel) {
  if (!channel.kraus()) throw InvalidInputError("channel carries no Kraus representation");
  const auto& kraus = *channel.kraus();
  const double deficit = max_abs_diff(detail::kraus_gram(kraus, channel.dim_in()),
                                      ComplexMatrix::identity(channel.dim_in()));
  if (deficit > kTracePreservingTol) {
    std::ostringstream os;
    os << "Kraus set is not trace preserving: ||sum K^dag K - I||_max = " << deficit;
    throw NotCptpError(os.str());
  }
  return detail::choi_from_kraus_unchecked(kraus, channel.dim_in(), channel.dim_out());
}

inline CJState cj_state(const QuantumChannel& channel) {
  require_cptp(channel);
  CJState state;
  state.matrix = hermitian_part(channel.choi()) * (1.0 / static_cast<double>(channel.dim_in()));
  state.dim_a = channel.dim_in();
  state.dim_b = channel.dim_out();
  return state;
}

/// Kraus operators K_n(beta, i) = sqrt(lambda_n) v_n[i * |B| + beta] from the
/// eigendecomposition of J. Degenerate eigenspaces yield an arbitrary
/// orthonormal basis, so only the reconstructed Choi matrix is canonical.
inline std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, BipartiteDims dims) {
  if (!choi.is_square() || choi.dim() != dims.total())
    throw InvalidInputError("Choi matrix does not match the given dimensions");
  const ComplexMatrix marginal = partial_trace(choi, Subsystem::Second, dims);
  const double deviation = max_abs_diff(marginal, ComplexMatrix::identity(dims.first));
  if (deviation > kDocumentCptpTol) {
    std::ostringstream os;
    os << "Choi matrix is not trace preserving: ||Tr_B J - I||_max = " << deviation;
    throw NotCptpError(os.str());
  }
  JacobiOptions opts;
  opts.hermitian_tol = kDocumentCptpTol;
  const EigenSystem eig = hermitian_eigendecomposition(choi, opts);
  if (eig.min_eigenvalue() < -kDocumentCptpTol) {
    std::ostringstream os;
    os << "Choi matrix is not positive semidefinite: min eigenvalue " << eig.min_eigenvalue();
    throw NotCptpError(os.str());
  }
  std::vector<ComplexMatrix> kraus;
  for (std::size_t n = eig.eigenvalues.size(); n-- > 0;) {
    const double lambda = eig.eigenvalues[n];
    if (lambda <= kSupportCutoff) continue;
    const double amp = std::sqrt(lambda);
    ComplexMatrix k(dims.second, dims.first);
    for (std::size_t i = 0; i < dims.first; ++i)
      for (std::size_t b = 0; b < dims.second; ++b)
        k(b, i) = amp * eig.eigenvectors(i * dims.second + b, n);
    kraus.push_back(std::move(k));
  }
  return kraus;
}

/// Stored Kraus operators, or ones derived from the Choi matrix.
inline std::vector<ComplexMatrix> kraus_operators(const QuantumChannel& channel) {
  if (channel.kraus()) return *channel.kraus();
  return kraus_from_choi(channel.choi(), channel.dims());
}

inline bool is_incoherent_channel(const QuantumChannel& channel, double tol = kIncoherenceTol) {
  const ComplexMatrix& j = channel.choi();
  const double norm = 1.0 / static_cast<double>(channel.dim_in());
  for (std::size_t p = 0; p < j.dim(); ++p)
    for (std::size_t q = 0; q < j.dim(); ++q)
      if (p != q && std::abs(j(p, q)) * norm > tol) return false;
  return true;
}

/// phi(rho) = Tr_A[(rho^T ⊗ I_B) J_phi]
inline ComplexMatrix apply_channel(const QuantumChannel& channel, const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.dim() != channel.dim_in())
    throw InvalidInputError("input state does not match channel input dimension");
  const ComplexMatrix lifted =
      tensor_product(rho.transpose(), ComplexMatrix::identity(channel.dim_out())) * channel.choi();
  return partial_trace(lifted, Subsystem::First, channel.dims());
}

/// Sum over n of weights[n] * J_{channels[n]}.
inline QuantumChannel mix_channels(std::span<const QuantumChannel> channels,
                                   std::span<const double> weights) {
  if (channels.empty() || channels.size() != weights.size())
    throw InvalidInputError("mixture needs one weight per channel");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidInputError("mixture weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) throw InvalidInputError("mixture weights must sum to 1");
  ComplexMatrix choi(channels.front().choi().dim());
  for (std::size_t n = 0; n < channels.size(); ++n) {
    if (channels[n].dim_in() != channels.front().dim_in() ||
        channels[n].dim_out() != channels.front().dim_out())
      throw InvalidInputError("mixture of channels with different dimensions");
    choi += channels[n].choi() * weights[n];
  }
  return QuantumChannel::from_choi(channels.front().dim_in(), channels.front().dim_out(),
                                   std::move(choi));
}

/// after ∘ before
inline QuantumChannel compose(const QuantumChannel& after, const QuantumChannel& before) {
  if (after.dim_in() != before.dim_out())
    throw InvalidInputError("composition dimension mismatch");
  std::vector<ComplexMatrix> kraus;
  for (const auto& ka : kraus_operators(after))
    for (const auto& kb : kraus_operators(before)) kraus.push_back(ka * kb);
  return QuantumChannel::from_kraus(before.dim_in(), after.dim_out(), std::move(kraus));
}

inline QuantumChannel unitary_channel(const ComplexMatrix& u) {
  if (!u.is_square()) throw InvalidInputError("unitary must be square");
  return QuantumChannel::from_kraus(u.dim(), u.dim(), {u});
}

inline QuantumChannel identity_channel(std::size_t dim) {
  return unitary_channel(ComplexMatrix::identity(dim));
}

/// Completely dephasing channel, Kraus {|k><k|}.
inline QuantumChannel dephasing_channel(std::size_t dim) {
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < dim; ++k) {
    ComplexMatrix p(dim);
    p(k, k) = 1.0;
    kraus.push_back(std::move(p));
  }
  return QuantumChannel::from_kraus(dim, dim, std::move(kraus));
}

/// |perm[k]><k| for each k.
inline QuantumChannel permutation_channel(std::span<const std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  ComplexMatrix p(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (perm[k] >= perm.size() || seen[perm[k]]) throw InvalidInputError("not a permutation");
    seen[perm[k]] = true;
    p(perm[k], k) = 1.0;
  }
  return unitary_channel(p);
}

/// Kraus {diag(1, sqrt(1-gamma)), sqrt(gamma)|0><1|}.
inline QuantumChannel amplitude_damping_channel(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("damping rate must lie in [0, 1]");
  ComplexMatrix k0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}};
  ComplexMatrix k1{{0.0, std::sqrt(gamma)}, {0.0, 0.0}};
  return QuantumChannel::from_kraus(2, 2, {k0, k1});
}

/// Tr_A M_phi == I_B / |B|, i.e. phi(I/|A|) = I/|B|.
inline bool is_unital(const QuantumChannel& channel, double tol = 1e-8) {
  const ComplexMatrix marginal = partial_trace(channel.choi(), Subsystem::First, channel.dims()) *
                                 (1.0 / static_cast<double>(channel.dim_in()));
  return max_abs_diff(marginal, ComplexMatrix::identity(channel.dim_out()) *
                                    (1.0 / static_cast<double>(channel.dim_out()))) <= tol;
}

}  // namespace cohchan
