// Copyright 2026 The lyjump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense complex numerics for small (n <= 8) matrices: Schur-based
// eigendecomposition, the action of the matrix exponential, and real
// polynomial roots through the companion matrix.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lyjump {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Square, row-major complex matrix. Small by intent: every algorithm here is O(n^3).
class ComplexMatrix {
 public:
  static constexpr std::size_t kMaxDim = 8;

  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> d);

  std::size_t dim() const noexcept { return n_; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }

  std::span<const cplx> data() const noexcept { return a_; }

  ComplexMatrix transpose() const;
  bool all_finite() const noexcept;
  /// Induced 1-norm (max column sum).
  double norm1() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexVector operator*(const ComplexMatrix& a, std::span<const cplx> v);

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

double norm2(std::span<const cplx> v) noexcept;

struct EigenSystem {
  ComplexVector values;   // ascending real part, ties by ascending imaginary part
  ComplexMatrix vectors;  // column k is the unit-norm right eigenvector of values[k]
  double condition = 1;   // ||V||_1 ||V^-1||_1, +inf when V is singular
};

/// Eigenvector condition above which a decomposition is reported as near-defective.
inline constexpr double kNearDefectiveCondition = 1e8;

/// Full decomposition without the conditioning gate; `condition` reports how
/// trustworthy the eigenvector basis is. Throws NoConvergence / NonFinite.
EigenSystem eigen_decompose(const ComplexMatrix& a);

/// Like eigen_decompose, but throws NearDefective when condition > 1e8.
EigenSystem eig(const ComplexMatrix& a);

/// Eigenvalues only (Schur form, no eigenvectors); sorted like eig.
ComplexVector eigenvalues(const ComplexMatrix& a);

/// Solves a x = b by LU with partial pivoting. Throws NonFinite on a singular pivot.
ComplexVector solve(const ComplexMatrix& a, std::span<const cplx> b);

/// Matrix inverse; throws NonFinite when singular.
ComplexMatrix inverse(const ComplexMatrix& a);

/// exp(a) by scaling and squaring with a degree-13 Pade approximant.
ComplexMatrix expm(const ComplexMatrix& a);

/// exp(-a t) v. Throws InvalidArgument for t < 0 and NonFinite on overflow.
ComplexVector expm_action(const ComplexMatrix& a, std::span<const cplx> v, double t);

/// Roots of sum_k coeffs[k] x^k (ascending powers, degree <= 8). Trailing zero
/// high-order coefficients are dropped; throws DegreeZero when nothing of
/// degree >= 1 remains.
ComplexVector polyroots(std::span<const double> coeffs);

/// Horner evaluation of a real-coefficient polynomial (ascending powers).
cplx polyval(std::span<const double> coeffs, cplx x) noexcept;

}  // namespace lyjump
