// Copyright 2026 The strobe-tomo Authors
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

// Dense complex operator kernel: Kronecker products, row-stacking
// vectorization, Hilbert-Schmidt geometry, numerical rank, spectra,
// matrix exponential and minimal polynomials.

#ifndef STROBE_OPERATOR_ALGEBRA_HPP
#define STROBE_OPERATOR_ALGEBRA_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "strobe/errors.hpp"

namespace strobe {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct ToleranceConfig {
  /// Singular values at or below rank_rtol * sigma_max count as zero.
  double rank_rtol = 1e-9;
  /// Eigenvalues closer than eig_cluster_rtol * (1 + |lambda|) * scale are merged.
  double eig_cluster_rtol = 1e-8;
  double hermiticity_atol = 1e-12;

  /// Throws ValidationError unless every field is strictly positive and finite.
  void validate() const;

  /// Defaults, with rank_rtol replaced by STROBE_TOMO_TOLERANCE when set.
  static ToleranceConfig from_environment();
};

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar =
      typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar, typename DerivedB::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = Scalar(a(i, j)) * b.template cast<Scalar>();
    }
  }
  return out;
}

/// Row-stacking vectorization: vec([[a, b], [c, d]]) = (a, b, c, d).
/// Under this convention vec(A X B) = kron(A, B^T) vec(X).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> vec(const Eigen::MatrixBase<Derived>& m) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out(m.size());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  }
  return out;
}

/// Inverse of vec for an n x n matrix.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> unvec(const Eigen::MatrixBase<Derived>& v,
                                                                               Index n) {
  if (v.cols() != 1 || n < 0 || v.rows() != n * n) {
    throw DimensionError("unvec: vector of length " + std::to_string(v.size()) + " cannot be reshaped to " +
                         std::to_string(n) + "x" + std::to_string(n));
  }
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) out(i, j) = v(i * n + j);
  }
  return out;
}

/// Hilbert-Schmidt inner product tr(A^dagger B).
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar hs_inner(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hs_inner: shape mismatch");
  }
  return (a.adjoint() * b).trace();
}

/// max |A - A^dagger| <= atol * (1 + max |A|).
template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double atol = ToleranceConfig{}.hermiticity_atol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return defect <= atol * (1.0 + m.cwiseAbs().maxCoeff());
}

/// Number of singular values above rank_rtol times the largest one.
template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m, const ToleranceConfig& tol = {}) {
  if (m.size() == 0) return 0;
  using Plain = typename Derived::PlainObject;
  Eigen::JacobiSVD<Plain> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = tol.rank_rtol * sv(0);
  return static_cast<Index>((sv.array() > cutoff).count());
}

template <typename Derived>
Index kernel_dim(const Eigen::MatrixBase<Derived>& m, const ToleranceConfig& tol = {}) {
  return m.cols() - rank(m, tol);
}

/// All eigenvalues with multiplicity, via Hessenberg-Schur QR iteration.
/// Throws NumericalError when the iteration does not converge.
std::vector<Complex> eigenvalues(const ComplexMatrix& m);

/// Matrix exponential by scaling and squaring with a Pade approximant.
ComplexMatrix expm(const ComplexMatrix& m);

/// Monic minimal polynomial of m, ascending coefficients (c_0, ..., c_{d-1}, 1).
ComplexVector minimal_polynomial(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Evaluate an ascending-coefficient polynomial at a scalar (Horner).
Complex polyval(const ComplexVector& coeffs, Complex z);

/// Evaluate an ascending-coefficient polynomial at a square matrix (Horner).
ComplexMatrix polyval(const ComplexVector& coeffs, const ComplexMatrix& m);

/// Orthonormal hermitian basis of n x n matrices: I/sqrt(n), then the
/// symmetric, antisymmetric and diagonal generalized Gell-Mann families.
std::vector<ComplexMatrix> hermitian_basis(Index n);

/// Real coordinates of a hermitian matrix in hermitian_basis(n).
RealVector hermitian_coordinates(const ComplexMatrix& h, const std::vector<ComplexMatrix>& basis);

}  // namespace strobe

#endif  // STROBE_OPERATOR_ALGEBRA_HPP
