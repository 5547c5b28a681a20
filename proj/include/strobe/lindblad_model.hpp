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

#ifndef STROBE_LINDBLAD_MODEL_HPP
#define STROBE_LINDBLAD_MODEL_HPP

#include <vector>

#include "strobe/operator_algebra.hpp"

namespace strobe {

/// One dissipative channel: rate * (L rho L^dagger - 1/2 {L^dagger L, rho}).
struct JumpChannel {
  double rate = 0.0;
  ComplexMatrix op;
};

/// Time-independent GKLS master equation
///   d rho / dt = -i [H, rho] + sum_k rate_k (L_k rho L_k^dagger - 1/2 {L_k^dagger L_k, rho}).
class LindbladModel {
 public:
  /// Throws ValidationError when H is not hermitian, a rate is negative or
  /// non-finite, or an operator is not dim x dim.
  LindbladModel(ComplexMatrix hamiltonian, std::vector<JumpChannel> jumps,
                const ToleranceConfig& tol = {});

  /// Zero Hamiltonian.
  LindbladModel(Index dim, std::vector<JumpChannel> jumps, const ToleranceConfig& tol = {});

  Index dim() const noexcept { return hamiltonian_.rows(); }
  const ComplexMatrix& hamiltonian() const noexcept { return hamiltonian_; }
  const std::vector<JumpChannel>& jumps() const noexcept { return jumps_; }

 private:
  ComplexMatrix hamiltonian_;
  std::vector<JumpChannel> jumps_;
};

/// Three-level laser-cooling model: H = 0, E1 = |1><2|, E2 = |3><2|.
LindbladModel laser_cooling_model(double gamma1, double gamma2);

enum class Vectorization { RowStacking };

/// Matrix of the generator acting on vec(rho).
class Superoperator {
 public:
  /// matrix must be dim^2 x dim^2 for some dim >= 1.
  explicit Superoperator(ComplexMatrix matrix);

  Index dim() const noexcept { return dim_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Vectorization convention() const noexcept { return Vectorization::RowStacking; }

  /// Hilbert-Schmidt adjoint, i.e. the Heisenberg-picture generator on vec(Q).
  ComplexMatrix dual() const { return matrix_.adjoint(); }

  /// Applies the dual generator to an operator.
  ComplexMatrix apply_dual(const ComplexMatrix& q) const;

  /// max |vec(I)^dagger L|; zero for trace-preserving generators.
  double trace_defect() const;

 private:
  Index dim_;
  ComplexMatrix matrix_;
};

Superoperator build_generator(const LindbladModel& model);

/// Validated density matrix: hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  struct Tolerance {
    double trace_atol = 1e-10;
    double positivity_floor = 1e-10;
    double hermiticity_atol = 1e-12;
  };

  explicit DensityMatrix(ComplexMatrix matrix) : DensityMatrix(std::move(matrix), Tolerance{}) {}
  /// Throws StateError on any violated invariant.
  DensityMatrix(ComplexMatrix matrix, const Tolerance& tol);

  Index dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  /// |k><k| in an n-dimensional space (0-based k).
  static DensityMatrix basis_state(Index n, Index k);

 private:
  ComplexMatrix matrix_;
};

/// Smallest eigenvalue of the hermitian part of m.
double min_hermitian_eigenvalue(const ComplexMatrix& m);

/// Propagator exp(t L) of the generator.
ComplexMatrix propagator(const Superoperator& gen, double t);

/// rho(t) = unvec(exp(t L) vec(rho0)). Throws NumericalError when the result
/// leaves the density-matrix set by more than 1e-8.
DensityMatrix evolve(const Superoperator& gen, const DensityMatrix& rho0, double t);

}  // namespace strobe

#endif  // STROBE_LINDBLAD_MODEL_HPP
