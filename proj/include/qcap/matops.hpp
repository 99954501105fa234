// Copyright 2026 The qcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace qcap {

using Complex = std::complex<double>;

/// Eigenvalues at or below this are treated as outside the support.
inline constexpr double kZeroTol = 1e-12;

/// Largest matrix edge produced by tensor() unless the caller says otherwise.
inline constexpr std::size_t kDefaultMaxDim = 4096;

/**
 * Dense complex matrix, row-major. Entries are always finite.
 */
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);
  /// |v><w| for column vectors v, w.
  static ComplexMatrix outer(std::span<const Complex> v,
                             std::span<const Complex> w);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Eigenvalues ascending; eigenvectors are the columns of a unitary matrix.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

double frobenius_norm(const ComplexMatrix& m);

/// Throws ShapeMismatch when the shapes differ.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||M - M^dagger||_F, zero for Hermitian input.
double hermiticity_defect(const ComplexMatrix& m);

/**
 * Cyclic Jacobi diagonalization of a Hermitian matrix.
 *
 * Requires ||M - M^dagger||_F <= 1e-10 * max(1, ||M||_F) (NotHermitian
 * otherwise) and gives up with NoConvergence after 100 sweeps.
 */
EigenDecomposition hermitian_eig(const ComplexMatrix& m);

/// V diag(f(lambda)) V^dagger.
ComplexMatrix spectral_apply(const EigenDecomposition& eig,
                             const std::function<double(double)>& f);

/**
 * Base-2 logarithm restricted to the support: eigenvalues above zero_tol map
 * to log2(lambda), the rest map to 0. Eigenvalues below -zero_tol raise
 * NegativeEigenvalue.
 */
ComplexMatrix matrix_log_on_support(const ComplexMatrix& m,
                                    double zero_tol = kZeroTol);

/// Kronecker product; DimensionOverflow if either edge exceeds max_dim.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b,
                     std::size_t max_dim = kDefaultMaxDim);

/**
 * Traces out every tensor factor whose index is not listed in keep. The kept
 * factors retain their original order. BadDims if the factor dimensions do
 * not multiply to the matrix edge or keep names a missing factor.
 */
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Transpose of the second factor of a bipartite operator on d1 x d2.
ComplexMatrix partial_transpose_second(const ComplexMatrix& m, std::size_t d1,
                                       std::size_t d2);

/// Hilbert-Schmidt inner product Tr(a^dagger b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Re Tr(a b) for square a, b without forming the product.
double real_trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Singular value decomposition M = U diag(s) V^dagger, s descending.
struct SingularValueDecomposition {
  std::vector<double> singular_values;
  ComplexMatrix left;   // rows x k, orthonormal columns
  ComplexMatrix right;  // cols x k, orthonormal columns
};

/// One-sided Jacobi SVD; k = min(rows, cols).
SingularValueDecomposition svd(const ComplexMatrix& m);

}  // namespace qcap
