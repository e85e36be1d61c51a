#pragma once

// Seeded samplers for states and channels used by the property harness.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cohchan/channels.hpp"
#include "cohchan/linalg.hpp"

namespace cohchan {

using Rng = std::mt19937_64;

/// Independent stream number `index` derived from `seed`.
inline Rng make_rng(std::uint64_t seed, std::uint64_t index = 0) {
  std::seed_seq seq{seed, index, std::uint64_t{0x636f6863}};
  return Rng(seq);
}

inline ComplexMatrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = complex{re, im};
    }
  return g;
}

inline ComplexVector random_pure_state(Rng& rng, std::size_t dim) {
  ComplexMatrix g = gaussian_matrix(rng, dim, 1);
  ComplexVector v = g.column(0);
  const double norm = vector_norm(v);
  for (auto& x : v) x /= norm;
  return v;
}

/// G G† / Tr(G G†) with G of size dim x rank (full rank by default).
inline ComplexMatrix random_density_matrix(Rng& rng, std::size_t dim, std::size_t rank = 0) {
  const ComplexMatrix g = gaussian_matrix(rng, dim, rank == 0 ? dim : rank);
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return hermitian_part(rho);
}

/// Haar-ish unitary: polar factor G (G†G)^{-1/2} of a Gaussian matrix.
inline ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
  const ComplexMatrix g = gaussian_matrix(rng, dim, dim);
  return g * fractional_power(hermitian_part(g.adjoint() * g), -0.5);
}

/// Kraus operators from stacked Gaussian blocks G_m, normalized as
/// K_m = G_m S^{-1/2} with S = sum_m G_m† G_m.
inline QuantumChannel random_kraus_channel(Rng& rng, std::size_t dim_in, std::size_t dim_out,
                                           std::size_t n_kraus) {
  if (n_kraus * dim_out < dim_in)
    throw ParameterError("need n_kraus * dim_out >= dim_in for a trace-preserving draw");
  std::vector<ComplexMatrix> blocks;
  ComplexMatrix gram(dim_in);
  for (std::size_t m = 0; m < n_kraus; ++m) {
    blocks.push_back(gaussian_matrix(rng, dim_out, dim_in));
    gram += blocks.back().adjoint() * blocks.back();
  }
  const ComplexMatrix inv_sqrt = fractional_power(hermitian_part(gram), -0.5);
  for (auto& k : blocks) k = k * inv_sqrt;
  return QuantumChannel::from_kraus(dim_in, dim_out, std::move(blocks));
}

inline std::vector<double> random_probability_vector(Rng& rng, std::size_t n) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) total += (x = expo(rng));
  for (auto& x : p) x /= total;
  return p;
}

/// Channel with diagonal Choi matrix: |i> -> sum_beta p(beta|i) |beta><beta|.
inline QuantumChannel random_incoherent_channel(Rng& rng, std::size_t dim_in, std::size_t dim_out) {
  ComplexMatrix choi(dim_in * dim_out);
  for (std::size_t i = 0; i < dim_in; ++i) {
    const std::vector<double> p = random_probability_vector(rng, dim_out);
    for (std::size_t b = 0; b < dim_out; ++b) choi(i * dim_out + b, i * dim_out + b) = p[b];
  }
  return QuantumChannel::from_choi(dim_in, dim_out, std::move(choi));
}

/// Random Kraus channel whose CJ state has an off-diagonal entry above `margin`.
inline QuantumChannel random_coherent_channel(Rng& rng, std::size_t dim_in, std::size_t dim_out,
                                              double margin = 1e-3) {
  std::uniform_int_distribution<std::size_t> n_kraus((dim_in + dim_out - 1) / dim_out, dim_in * dim_out);
  for (;;) {
    QuantumChannel ch = random_kraus_channel(rng, dim_in, dim_out, n_kraus(rng));
    if (!is_incoherent_channel(ch, margin)) return ch;
  }
}

/// Convex mixture of `terms` random unitary qubit channels.
inline QuantumChannel random_mixed_unitary_channel(Rng& rng, std::size_t dim, std::size_t terms) {
  std::vector<QuantumChannel> parts;
  for (std::size_t n = 0; n < terms; ++n) parts.push_back(unitary_channel(random_unitary(rng, dim)));
  const std::vector<double> w = random_probability_vector(rng, terms);
  return mix_channels(parts, w);
}

}  // namespace cohchan
