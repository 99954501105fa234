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

#include "qcap/matops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qcap/error.hpp"

namespace qcap {

namespace {

constexpr int kMaxJacobiSweeps = 100;

void require_finite(std::span<const Complex> entries) {
  for (const Complex& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::kBadParam, "matrix entry is not finite");
    }
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kShapeMismatch,
                "expected " + std::to_string(rows_ * cols_) +
                    " entries, got " + std::to_string(entries_.size()));
  }
  require_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw Error(ErrorCode::kShapeMismatch, "ragged row list");
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(entries));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v,
                                   std::span<const Complex> w) {
  ComplexMatrix m(v.size(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      m(i, j) = v[i] * std::conj(w[j]);
    }
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out(j, i) = std::conj((*this)(i, j));
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) {
    throw Error(ErrorCode::kShapeMismatch, "trace of a non-square matrix");
  }
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] += other.entries_[i];
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] -= other.entries_[i];
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (Complex& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorCode::kShapeMismatch,
                "cannot multiply " + std::to_string(a.rows_) + "x" +
                    std::to_string(a.cols_) + " by " +
                    std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  }
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    Complex* out_row = &out.entries_[i * b.cols_];
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a.entries_[i * a.cols_ + k];
      if (aik == Complex(0.0)) continue;
      const Complex* b_row = &b.entries_[k * b.cols_];
      for (std::size_t j = 0; j < b.cols_; ++j) out_row[j] += aik * b_row[j];
    }
  }
  return out;
}

double frobenius_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (const Complex& z : m.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double sum = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) sum += std::norm(ea[i] - eb[i]);
  return std::sqrt(sum);
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorCode::kShapeMismatch, "Hermiticity of a non-square matrix");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      sum += std::norm(m(i, j) - std::conj(m(j, i)));
    }
  }
  return std::sqrt(sum);
}

EigenDecomposition hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorCode::kNotHermitian, "matrix is not square");
  }
  const double norm = frobenius_norm(m);
  const double defect = hermiticity_defect(m);
  if (defect > 1e-10 * std::max(1.0, norm)) {
    throw Error(ErrorCode::kNotHermitian,
                "||M - M^dagger||_F = " + std::to_string(defect));
  }

  const std::size_t n = m.rows();
  // Work on the Hermitian part so the rotations see an exactly Hermitian matrix.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(i, j) = h;
      a(j, i) = std::conj(h);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double threshold =
      std::numeric_limits<double>::epsilon() * std::max(norm, 1e-300) /
      static_cast<double>(std::max<std::size_t>(n, 1));
  bool converged = n <= 1;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= threshold) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const Complex phase = apq / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = [[c, s], [-s conj(e), c conj(e)]] on the (p, q) plane.
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + jqp * akq;
          a(k, q) = s * akp + jqq * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = s * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * g;
        a(q, q) = aqq + t * g;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + jqp * vkq;
          v(k, q) = s * vkp + jqq * vkq;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw Error(ErrorCode::kNoConvergence,
                "Jacobi iteration exceeded " +
                    std::to_string(kMaxJacobiSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t k = 0; k < n; ++k) {
      out.eigenvectors(k, j) = v(k, order[j]);
    }
  }
  return out;
}

ComplexMatrix spectral_apply(const EigenDecomposition& eig,
                             const std::function<double(double)>& f) {
  const ComplexMatrix& v = eig.eigenvectors;
  const std::size_t n = v.rows();
  std::vector<double> fl(eig.eigenvalues.size());
  for (std::size_t k = 0; k < fl.size(); ++k) fl[k] = f(eig.eigenvalues[k]);
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < fl.size(); ++k) {
        if (fl[k] == 0.0) continue;
        sum += fl[k] * v(i, k) * std::conj(v(j, k));
      }
      out(i, j) = sum;
      out(j, i) = std::conj(sum);
    }
    out(i, i) = out(i, i).real();
  }
  return out;
}

ComplexMatrix matrix_log_on_support(const ComplexMatrix& m, double zero_tol) {
  if (!(zero_tol > 0.0)) {
    throw Error(ErrorCode::kBadParam, "zero_tol must be positive");
  }
  const EigenDecomposition eig = hermitian_eig(m);
  if (!eig.eigenvalues.empty() && eig.eigenvalues.front() < -zero_tol) {
    throw Error(ErrorCode::kNegativeEigenvalue,
                "eigenvalue " + std::to_string(eig.eigenvalues.front()));
  }
  return spectral_apply(eig, [zero_tol](double lambda) {
    return lambda > zero_tol ? std::log2(lambda) : 0.0;
  });
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b,
                     std::size_t max_dim) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > max_dim || cols > max_dim) {
    throw Error(ErrorCode::kDimensionOverflow,
                std::to_string(rows) + "x" + std::to_string(cols) +
                    " exceeds " + std::to_string(max_dim));
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  if (!m.is_square()) {
    throw Error(ErrorCode::kBadDims, "partial trace of a non-square matrix");
  }
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw Error(ErrorCode::kBadDims, "zero factor dimension");
    total *= d;
  }
  if (total != m.rows()) {
    throw Error(ErrorCode::kBadDims,
                "factor dimensions multiply to " + std::to_string(total) +
                    ", matrix edge is " + std::to_string(m.rows()));
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) {
      throw Error(ErrorCode::kBadDims, "invalid keep index " + std::to_string(k));
    }
    kept[k] = true;
  }

  // Row-major factor strides; an index is the sum of per-factor offsets.
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t f = dims.size(); f-- > 1;) stride[f - 1] = stride[f] * dims[f];

  auto offsets_for = [&](bool want_kept) {
    std::vector<std::size_t> offsets{0};
    for (std::size_t f = 0; f < dims.size(); ++f) {
      if (kept[f] != want_kept) continue;
      std::vector<std::size_t> next;
      next.reserve(offsets.size() * dims[f]);
      for (std::size_t base : offsets) {
        for (std::size_t i = 0; i < dims[f]; ++i) {
          next.push_back(base + i * stride[f]);
        }
      }
      offsets = std::move(next);
    }
    return offsets;
  };
  const std::vector<std::size_t> kept_offsets = offsets_for(true);
  const std::vector<std::size_t> traced_offsets = offsets_for(false);

  const std::size_t out_dim = kept_offsets.size();
  ComplexMatrix out(out_dim, out_dim);
  for (std::size_t a = 0; a < out_dim; ++a) {
    for (std::size_t b = 0; b < out_dim; ++b) {
      Complex sum = 0.0;
      for (std::size_t t : traced_offsets) {
        sum += m(kept_offsets[a] + t, kept_offsets[b] + t);
      }
      out(a, b) = sum;
    }
  }
  return out;
}

ComplexMatrix partial_transpose_second(const ComplexMatrix& m, std::size_t d1,
                                       std::size_t d2) {
  if (!m.is_square() || d1 * d2 != m.rows()) {
    throw Error(ErrorCode::kBadDims, "partial transpose dimensions");
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i1 = 0; i1 < d1; ++i1) {
    for (std::size_t i2 = 0; i2 < d2; ++i2) {
      for (std::size_t j1 = 0; j1 < d1; ++j1) {
        for (std::size_t j2 = 0; j2 < d2; ++j2) {
          out(i1 * d2 + j2, j1 * d2 + i2) = m(i1 * d2 + i2, j1 * d2 + j2);
        }
      }
    }
  }
  return out;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  Complex sum = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) sum += std::conj(ea[i]) * eb[i];
  return sum;
}

double real_trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "trace of product shapes");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      sum += (a(i, k) * b(k, i)).real();
    }
  }
  return sum;
}

SingularValueDecomposition svd(const ComplexMatrix& m) {
  if (m.rows() < m.cols()) {
    SingularValueDecomposition t = svd(m.adjoint());
    std::swap(t.left, t.right);
    return t;
  }
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto column_dot = [&](std::size_t i, std::size_t j) {
    Complex sum = 0.0;
    for (std::size_t k = 0; k < rows; ++k) sum += std::conj(a(k, i)) * a(k, j);
    return sum;
  };

  const double eps = std::numeric_limits<double>::epsilon();
  // Column pairs whose overlap is below this are numerically orthogonal no
  // matter how small the columns themselves have become.
  const double norm2 = frobenius_norm(m) * frobenius_norm(m);
  const double floor = eps * eps * norm2;
  bool converged = n <= 1;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = column_dot(p, p).real();
        const double beta = column_dot(q, q).real();
        const Complex gamma = column_dot(p, q);
        const double g = std::abs(gamma);
        if (g <= floor || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = gamma / g;
        const double tau = (beta - alpha) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < rows; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + jqp * akq;
          a(k, q) = s * akp + jqq * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + jqp * vkq;
          v(k, q) = s * vkp + jqq * vkq;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw Error(ErrorCode::kNoConvergence, "one-sided Jacobi SVD");
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(column_dot(j, j).real());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SingularValueDecomposition out;
  out.singular_values.resize(n);
  out.left = ComplexMatrix(rows, n);
  out.right = ComplexMatrix(n, n);
  const double cutoff = sigma.empty() ? 0.0 : sigma[order[0]] * 1e-14;
  std::size_t filled = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.singular_values[j] = sigma[src];
    for (std::size_t k = 0; k < n; ++k) out.right(k, j) = v(k, src);
    if (sigma[src] > cutoff && sigma[src] > 0.0) {
      for (std::size_t k = 0; k < rows; ++k) out.left(k, j) = a(k, src) / sigma[src];
      ++filled;
    }
  }
  // Complete the left basis for vanishing singular values by Gram-Schmidt
  // against the standard basis.
  std::size_t candidate = 0;
  for (std::size_t j = filled; j < n; ++j) {
    while (candidate < rows) {
      std::vector<Complex> w(rows, 0.0);
      w[candidate++] = 1.0;
      for (std::size_t pass = 0; pass < 2; ++pass) {
        for (std::size_t prev = 0; prev < j; ++prev) {
          Complex dot = 0.0;
          for (std::size_t k = 0; k < rows; ++k) dot += std::conj(out.left(k, prev)) * w[k];
          for (std::size_t k = 0; k < rows; ++k) w[k] -= dot * out.left(k, prev);
        }
      }
      double nrm = 0.0;
      for (const Complex& z : w) nrm += std::norm(z);
      nrm = std::sqrt(nrm);
      if (nrm > 1e-8) {
        for (std::size_t k = 0; k < rows; ++k) out.left(k, j) = w[k] / nrm;
        break;
      }
    }
  }
  return out;
}

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::kDimensionOverflow: return "DimensionOverflow";
    case ErrorCode::kBadDims: return "BadDims";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNotPSD: return "NotPSD";
    case ErrorCode::kTraceNotOne: return "TraceNotOne";
    case ErrorCode::kBadRank: return "BadRank";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kUnknownChannel: return "UnknownChannel";
    case ErrorCode::kBadParam: return "BadParam";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kCompletenessViolation: return "CompletenessViolation";
    case ErrorCode::kInfiniteTerm: return "InfiniteTerm";
    case ErrorCode::kDimTooLarge: return "DimTooLarge";
    case ErrorCode::kSupportViolation: return "SupportViolation";
    case ErrorCode::kBadConfig: return "BadConfig";
  }
  return "Unknown";
}

}  // namespace qcap
