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

// Random generators and small helpers shared by the test binaries.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/error.hpp"
#include "qcap/matops.hpp"
#include "qcap/states.hpp"

namespace qcap::testing {

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                                   std::size_t cols) {
  std::normal_distribution<double> n;
  ComplexMatrix m(rows, cols);
  for (Complex& z : m.entries()) {
    const double re = n(rng);
    z = {re, n(rng)};
  }
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix g = random_matrix(rng, n, n);
  ComplexMatrix h = g + g.adjoint();
  h *= 0.5;
  return h;
}

/// Eigenvectors of a random Hermitian matrix.
inline ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
  return hermitian_eig(random_hermitian(rng, n)).eigenvectors;
}

inline DensityMatrix random_density(std::mt19937_64& rng, std::size_t dim,
                                    std::size_t rank) {
  return random_state(dim, rank, rng());
}

inline DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& u) {
  return validate_state(u * rho.matrix() * u.adjoint());
}

/// Columns orthonormalized by modified Gram-Schmidt.
inline ComplexMatrix orthonormalize_columns(ComplexMatrix m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < m.rows(); ++i) dot += std::conj(m(i, k)) * m(i, j);
      for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) -= dot * m(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) norm += std::norm(m(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) /= norm;
  }
  return m;
}

/// Random channel from a random isometry into out (x) env.
inline QuantumChannel random_channel(std::mt19937_64& rng, std::size_t dim_in,
                                     std::size_t dim_out, std::size_t kraus) {
  const ComplexMatrix v =
      orthonormalize_columns(random_matrix(rng, dim_out * kraus, dim_in));
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < kraus; ++k) {
    ComplexMatrix a(dim_out, dim_in);
    for (std::size_t o = 0; o < dim_out; ++o) {
      for (std::size_t i = 0; i < dim_in; ++i) a(o, i) = v(o * kraus + k, i);
    }
    ops.push_back(std::move(a));
  }
  return QuantumChannel(dim_in, dim_out, std::move(ops));
}

inline DensityMatrix diag_state(std::vector<double> values) {
  return validate_state(ComplexMatrix::diagonal(values));
}

inline DensityMatrix ket_state(std::vector<Complex> psi) {
  return DensityMatrix::pure(psi);
}

inline DensityMatrix plus_state() {
  const double r = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(std::vector<Complex>{r, r});
}

inline DensityMatrix bell_state() {
  const double r = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(std::vector<Complex>{r, 0.0, 0.0, r});
}

/// Error code thrown by f, or nullopt-like sentinel if nothing was thrown.
inline bool throws_code(const std::function<void()>& f, ErrorCode code) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

/// Zoo channels with qubit input, as spec strings.
inline const std::vector<std::string>& qubit_zoo() {
  static const std::vector<std::string> specs = {
      "identity(2)",          "erasure(2,0.3)",
      "depolarizing(0.5)",    "amplitude_damping(0.3)",
      "amplitude_damping(0.7)", "phase_damping(0.5)",
      "depolarizing(1)",
  };
  return specs;
}

}  // namespace qcap::testing
