#pragma once

// Dense complex linear algebra for the small Hermitian problems that show up
// in channel-coherence computations (dimensions up to a few dozen).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "cohchan/errors.hpp"

namespace cohchan {

using complex = std::complex<double>;
using ComplexVector = std::vector<complex>;

/// Tolerance below which a Hermitian matrix is accepted as Hermitian.
inline constexpr double kHermitianTol = 1e-12;
/// Eigenvalues in [-kPsdTol, 0) are clamped to zero; below that is an error.
inline constexpr double kPsdTol = 1e-10;
/// Eigenvalues at or below this value are treated as outside the support.
inline constexpr double kSupportCutoff = 1e-10;

/// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, complex{0.0, 0.0}) {}
  explicit ComplexMatrix(std::size_t dim) : ComplexMatrix(dim, dim) {}

  ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw InvalidInputError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }
  static ComplexMatrix diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
  }

  /// |v><w|
  static ComplexMatrix outer(std::span<const complex> v, std::span<const complex> w) {
    ComplexMatrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
    return m;
  }
  static ComplexMatrix projector(std::span<const complex> v) { return outer(v, v); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  /// Dimension of a square matrix.
  std::size_t dim() const noexcept { return rows_; }

  complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const complex> data() const noexcept { return data_; }

  ComplexVector column(std::size_t j) const {
    ComplexVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  complex trace() const {
    complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) acc += (*this)(i, i);
    return acc;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(complex scale) {
    for (auto& x : data_) x *= scale;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
  friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= complex{s, 0.0}; }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= complex{s, 0.0}; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      std::ostringstream os;
      os << "matrix product shape mismatch: " << a.rows_ << "x" << a.cols_ << " * " << b.rows_
         << "x" << b.cols_;
      throw InvalidInputError(os.str());
    }
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const complex aik = a(i, k);
        if (aik == complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend ComplexVector operator*(const ComplexMatrix& a, std::span<const complex> v) {
    if (a.cols_ != v.size()) throw InvalidInputError("matrix-vector shape mismatch");
    ComplexVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

 private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInputError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> data_;
};

inline double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const auto& x : m.data()) best = std::max(best, std::abs(x));
  return best;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInputError("matrix shape mismatch");
  double best = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    best = std::max(best, std::abs(a.data()[k] - b.data()[k]));
  return best;
}

inline double frobenius_norm(const ComplexMatrix& m) {
  double acc = 0.0;
  for (const auto& x : m.data()) acc += std::norm(x);
  return std::sqrt(acc);
}

/// max |M[i][j] - conj(M[j][i])|
inline double hermitian_asymmetry(const ComplexMatrix& m) {
  if (!m.is_square()) throw InvalidInputError("hermitian check on non-square matrix");
  double best = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
  return best;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol) {
  return m.is_square() && hermitian_asymmetry(m) <= tol;
}

/// (M + M†)/2, used to scrub rounding asymmetry from products that are
/// Hermitian in exact arithmetic.
inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

inline double vector_norm(std::span<const complex> v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

inline complex inner_product(std::span<const complex> v, std::span<const complex> w) {
  complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(v[i]) * w[i];
  return acc;
}

/// Eigenvalues ascending; eigenvectors are the matching columns.
struct EigenSystem {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  double min_eigenvalue() const { return eigenvalues.front(); }
  double max_eigenvalue() const { return eigenvalues.back(); }
};

struct JacobiOptions {
  double hermitian_tol = kHermitianTol;
  double off_diagonal_tol = 1e-14;
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot A(p,q) and then applies
/// the classical real Jacobi rotation, so the combined 2x2 block is
///   J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]],   A(p,q) = |A(p,q)| e^{i phi}.
/// Sweeps run in fixed row-major pivot order; iteration stops once the
/// off-diagonal Frobenius norm drops below off_diagonal_tol * max(1, ||A||_F).
inline EigenSystem hermitian_eigendecomposition(const ComplexMatrix& m,
                                                const JacobiOptions& options = {}) {
  if (!m.is_square()) throw InvalidInputError("eigendecomposition of non-square matrix");
  const double asym = hermitian_asymmetry(m);
  if (asym > options.hermitian_tol) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max asymmetry " << asym;
    throw NotHermitianError(os.str(), asym);
  }

  const std::size_t n = m.dim();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, frobenius_norm(a));

  auto off_norm = [&] {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) acc += std::norm(a(i, j));
    return std::sqrt(acc);
  };

  bool converged = n <= 1;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    if (off_norm() <= options.off_diagonal_tol * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g < 1e-300) continue;
        const complex phase_conj = std::conj(apq / g);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const complex jpp = c;
        const complex jpq = s;
        const complex jqp = -s * phase_conj;
        const complex jqq = c * phase_conj;

        for (std::size_t k = 0; k < n; ++k) {
          const complex akp = a(k, p);
          const complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const complex vkp = v(k, p);
          const complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const complex apk = a(p, k);
          const complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (!converged && off_norm() > options.off_diagonal_tol * scale) {
    std::ostringstream os;
    os << "Jacobi eigensolver did not converge after " << options.max_sweeps
       << " sweeps (off-diagonal norm " << off_norm() << ")";
    throw ConvergenceError(os.str());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  EigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

/// V diag(f(lambda)) V†
template <typename F>
ComplexMatrix spectral_function(const EigenSystem& eig, F&& f) {
  const std::size_t n = eig.eigenvalues.size();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const complex vik = eig.eigenvectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

/// Throws NotPsdError if the smallest eigenvalue is below -kPsdTol.
inline void require_psd(const EigenSystem& eig, const char* what = "matrix") {
  if (!eig.eigenvalues.empty() && eig.min_eigenvalue() < -kPsdTol) {
    std::ostringstream os;
    os << what << " is not positive semidefinite: min eigenvalue " << eig.min_eigenvalue();
    throw NotPsdError(os.str(), eig.min_eigenvalue());
  }
}

/// Support-restricted power of an eigendecomposed PSD matrix: eigenvalues at
/// or below kSupportCutoff map to 0 for every exponent, so x = 0 gives the
/// support projector and x < 0 gives the pseudo-inverse power.
inline ComplexMatrix fractional_power(const EigenSystem& eig, double x) {
  require_psd(eig);
  return spectral_function(eig, [x](double lambda) {
    if (lambda <= kSupportCutoff) return 0.0;
    return x == 0.0 ? 1.0 : std::pow(lambda, x);
  });
}

inline ComplexMatrix fractional_power(const ComplexMatrix& m, double x) {
  return fractional_power(hermitian_eigendecomposition(m), x);
}

inline ComplexMatrix support_projector(const ComplexMatrix& m) { return fractional_power(m, 0.0); }

/// Logarithm restricted to the support (zero on the kernel).
inline ComplexMatrix matrix_log(const EigenSystem& eig) {
  require_psd(eig);
  return spectral_function(eig, [](double lambda) {
    return lambda <= kSupportCutoff ? 0.0 : std::log(lambda);
  });
}

inline ComplexMatrix matrix_log(const ComplexMatrix& m) {
  return matrix_log(hermitian_eigendecomposition(m));
}

/// Kronecker product; row index (i, k) of A ⊗ B flattens to i * B.rows() + k.
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const complex aij = a(i, j);
      if (aij == complex{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

inline ComplexVector tensor_product(std::span<const complex> a, std::span<const complex> b) {
  ComplexVector out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

enum class Subsystem { First, Second };

struct BipartiteDims {
  std::size_t first = 0;
  std::size_t second = 0;
  std::size_t total() const noexcept { return first * second; }
};

/// Traces out `traced` from a matrix on H_first ⊗ H_second.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced, BipartiteDims dims) {
  if (!m.is_square() || m.dim() != dims.total()) {
    std::ostringstream os;
    os << "partial trace: matrix of size " << m.rows() << "x" << m.cols()
       << " does not match dims " << dims.first << "x" << dims.second;
    throw InvalidInputError(os.str());
  }
  const std::size_t da = dims.first;
  const std::size_t db = dims.second;
  if (traced == Subsystem::Second) {
    ComplexMatrix out(da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t b = 0; b < db; ++b) out(i, j) += m(i * db + b, j * db + b);
    return out;
  }
  ComplexMatrix out(db);
  for (std::size_t b = 0; b < db; ++b)
    for (std::size_t c = 0; c < db; ++c)
      for (std::size_t i = 0; i < da; ++i) out(b, c) += m(i * db + b, i * db + c);
  return out;
}

inline ComplexVector basis_vector(std::size_t dim, std::size_t index) {
  ComplexVector v(dim);
  v.at(index) = 1.0;
  return v;
}

}  // namespace cohchan
