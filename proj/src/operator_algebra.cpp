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

#include "strobe/operator_algebra.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cerrno>
#include <cstdlib>
#include <limits>
#include <string>

namespace strobe {

void ToleranceConfig::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string("tolerance ") + name + " must be strictly positive, got " +
                            std::to_string(v));
    }
  };
  check(rank_rtol, "rank_rtol");
  check(eig_cluster_rtol, "eig_cluster_rtol");
  check(hermiticity_atol, "hermiticity_atol");
}

ToleranceConfig ToleranceConfig::from_environment() {
  ToleranceConfig tol;
  if (const char* raw = std::getenv("STROBE_TOMO_TOLERANCE"); raw != nullptr && *raw != '\0') {
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(raw, &end);
    if (errno != 0 || end == raw || *end != '\0') {
      throw ParseError(std::string("STROBE_TOMO_TOLERANCE: not a number: '") + raw + "'");
    }
    tol.rank_rtol = value;
  }
  tol.validate();
  return tol;
}

std::vector<Complex> eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("eigenvalues: matrix is not square");
  if (m.size() == 0) return {};
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalues: QR iteration did not converge for a " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " matrix");
  }
  const ComplexVector& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

ComplexMatrix expm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("expm: matrix is not square");
  if (m.size() == 0) return m;
  return m.exp();
}

ComplexVector minimal_polynomial(const ComplexMatrix& m, const ToleranceConfig& tol) {
  if (m.rows() != m.cols()) throw DimensionError("minimal_polynomial: matrix is not square");
  const Index n = m.rows();
  if (n == 0) return ComplexVector::Ones(1);

  // Work with a unit-norm copy so powers stay O(1); coefficients are rescaled at the end.
  const double norm = m.norm();
  const double scale = norm > 0.0 ? norm : 1.0;
  const ComplexMatrix a = m / scale;

  // The degree is the dimension of span{I, A, A^2, ...}. Raw powers form a
  // Vandermonde-like basis that loses rank numerically well before the true
  // degree, so the space is built by Arnoldi on X -> A X with two passes of
  // Gram-Schmidt; breakdown of the recurrence marks the dependency.
  std::vector<ComplexMatrix> orthonormal;
  orthonormal.push_back(ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  ComplexMatrix hessenberg = ComplexMatrix::Zero(n + 1, n);
  Index degree = n;
  for (Index k = 1; k <= n; ++k) {
    ComplexMatrix w = a * orthonormal.back();
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < orthonormal.size(); ++i) {
        const Complex c = hs_inner(orthonormal[i], w);
        hessenberg(static_cast<Index>(i), k - 1) += c;
        w -= c * orthonormal[i];
      }
    }
    const double h = w.norm();
    hessenberg(k, k - 1) = h;
    if (h <= tol.rank_rtol || k == n) {
      degree = k;
      break;
    }
    orthonormal.push_back(w / h);
  }

  // I generates the Krylov space cyclically, so the minimal polynomial of A is
  // the characteristic polynomial of the d x d Hessenberg block. Expand it
  // with the standard Hessenberg determinant recurrence.
  std::vector<ComplexVector> partial(static_cast<std::size_t>(degree + 1));
  partial[0] = ComplexVector::Ones(1);
  for (Index k = 1; k <= degree; ++k) {
    ComplexVector p = ComplexVector::Zero(k + 1);
    const ComplexVector& prev = partial[static_cast<std::size_t>(k - 1)];
    p.segment(1, k) += prev;
    p.head(k) -= hessenberg(k - 1, k - 1) * prev;
    Complex subdiagonal(1.0, 0.0);
    for (Index i = k - 1; i >= 1; --i) {
      subdiagonal *= hessenberg(i, i - 1);
      const ComplexVector& lower = partial[static_cast<std::size_t>(i - 1)];
      p.head(lower.size()) -= hessenberg(i - 1, k - 1) * subdiagonal * lower;
    }
    partial[static_cast<std::size_t>(k)] = std::move(p);
  }

  // Snap noise on the normalized coefficients, where every term is O(1);
  // on raw coefficients a large norm would swamp the high-order terms.
  ComplexVector coeffs = partial[static_cast<std::size_t>(degree)];
  coeffs(degree) = Complex(1.0, 0.0);
  const double snap = 1e-9 * coeffs.cwiseAbs().maxCoeff();
  for (Index k = 0; k < degree; ++k) {
    double re = coeffs(k).real();
    double im = coeffs(k).imag();
    if (std::abs(coeffs(k)) < snap) re = im = 0.0;
    if (std::abs(re) < snap) re = 0.0;
    if (std::abs(im) < snap) im = 0.0;
    coeffs(k) = Complex(re, im);
  }

  // Undo the scaling: the coefficient of M^k is a_k * scale^(d - k).
  for (Index k = 0; k < degree; ++k) coeffs(k) *= std::pow(scale, static_cast<double>(degree - k));
  return coeffs;
}

Complex polyval(const ComplexVector& coeffs, Complex z) {
  Complex acc(0.0, 0.0);
  for (Index k = coeffs.size() - 1; k >= 0; --k) acc = acc * z + coeffs(k);
  return acc;
}

ComplexMatrix polyval(const ComplexVector& coeffs, const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("polyval: matrix is not square");
  const Index n = m.rows();
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (Index k = coeffs.size() - 1; k >= 0; --k) {
    acc = acc * m;
    acc.diagonal().array() += coeffs(k);
  }
  return acc;
}

std::vector<ComplexMatrix> hermitian_basis(Index n) {
  if (n < 2) throw ValidationError("hermitian_basis: dimension must be at least 2, got " + std::to_string(n));
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n * n));
  basis.push_back(ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));

  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  for (Index j = 0; j < n; ++j) {
    for (Index k = j + 1; k < n; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(n, n);
      sym(j, k) = r;
      sym(k, j) = r;
      basis.push_back(std::move(sym));

      ComplexMatrix anti = ComplexMatrix::Zero(n, n);
      anti(j, k) = -i * r;
      anti(k, j) = i * r;
      basis.push_back(std::move(anti));
    }
  }
  for (Index l = 1; l < n; ++l) {
    const double ld = static_cast<double>(l);
    const double factor = 1.0 / std::sqrt(ld * (ld + 1.0));
    ComplexMatrix diag = ComplexMatrix::Zero(n, n);
    for (Index j = 0; j < l; ++j) diag(j, j) = factor;
    diag(l, l) = -ld * factor;
    basis.push_back(std::move(diag));
  }
  return basis;
}

RealVector hermitian_coordinates(const ComplexMatrix& h, const std::vector<ComplexMatrix>& basis) {
  RealVector coords(static_cast<Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    coords(static_cast<Index>(k)) = hs_inner(basis[k], h).real();
  }
  return coords;
}

}  // namespace strobe
