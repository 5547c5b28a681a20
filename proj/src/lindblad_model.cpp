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

#include "strobe/lindblad_model.hpp"

#include <cmath>
#include <string>

namespace strobe {

LindbladModel::LindbladModel(ComplexMatrix hamiltonian, std::vector<JumpChannel> jumps, const ToleranceConfig& tol)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  const Index n = hamiltonian_.rows();
  if (n < 1 || hamiltonian_.cols() != n) {
    throw ValidationError("model: hamiltonian must be a non-empty square matrix");
  }
  if (!hamiltonian_.allFinite() || !is_hermitian(hamiltonian_, tol.hermiticity_atol)) {
    throw ValidationError("model: hamiltonian is not hermitian");
  }
  for (std::size_t k = 0; k < jumps_.size(); ++k) {
    const auto& j = jumps_[k];
    const std::string where = "model: jumps[" + std::to_string(k) + "]";
    if (!std::isfinite(j.rate) || j.rate < 0.0) {
      throw ValidationError(where + ".rate must be finite and >= 0, got " + std::to_string(j.rate));
    }
    if (j.op.rows() != n || j.op.cols() != n) {
      throw ValidationError(where + ".matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (!j.op.allFinite()) throw ValidationError(where + ".matrix has non-finite entries");
  }
}

LindbladModel::LindbladModel(Index dim, std::vector<JumpChannel> jumps, const ToleranceConfig& tol)
    : LindbladModel(ComplexMatrix::Zero(dim, dim), std::move(jumps), tol) {}

LindbladModel laser_cooling_model(double gamma1, double gamma2) {
  if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0)) {
    throw ValidationError("laser cooling: rates must be >= 0");
  }
  ComplexMatrix e1 = ComplexMatrix::Zero(3, 3);
  ComplexMatrix e2 = ComplexMatrix::Zero(3, 3);
  e1(0, 1) = 1.0;  // |1><2|
  e2(2, 1) = 1.0;  // |3><2|
  return LindbladModel(3, {{gamma1, e1}, {gamma2, e2}});
}

Superoperator::Superoperator(ComplexMatrix matrix) : dim_(0), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw DimensionError("superoperator: matrix is not square");
  const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(matrix_.rows()))));
  if (n < 1 || n * n != matrix_.rows()) {
    throw DimensionError("superoperator: size " + std::to_string(matrix_.rows()) + " is not a perfect square");
  }
  dim_ = n;
}

ComplexMatrix Superoperator::apply_dual(const ComplexMatrix& q) const {
  if (q.rows() != dim_ || q.cols() != dim_) throw DimensionError("apply_dual: operator dimension mismatch");
  return unvec(ComplexVector(matrix_.adjoint() * vec(q)), dim_);
}

double Superoperator::trace_defect() const {
  const ComplexVector id = vec(ComplexMatrix::Identity(dim_, dim_));
  return (id.adjoint() * matrix_).cwiseAbs().maxCoeff();
}

Superoperator build_generator(const LindbladModel& model) {
  const Index n = model.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix& h = model.hamiltonian();
  const Complex minus_i(0.0, -1.0);

  // Row stacking: vec(A X B) = (A kron B^T) vec(X).
  ComplexMatrix l = minus_i * (kron(h, id) - kron(id, h.transpose()));
  for (const auto& jump : model.jumps()) {
    const ComplexMatrix& op = jump.op;
    const ComplexMatrix number = op.adjoint() * op;
    l += jump.rate * (kron(op, op.conjugate()) - 0.5 * (kron(number, id) + kron(id, number.transpose())));
  }

  Superoperator gen(std::move(l));
  const double scale = std::max(1.0, gen.matrix().cwiseAbs().maxCoeff());
  if (gen.trace_defect() > 1e-10 * scale) {
    throw NumericalError("build_generator: generator is not trace preserving (defect " +
                         std::to_string(gen.trace_defect()) + ")");
  }
  return gen;
}

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian eigensolver did not converge");
  return solver.eigenvalues().minCoeff();
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, const Tolerance& tol) : matrix_(std::move(matrix)) {
  if (matrix_.rows() < 1 || matrix_.rows() != matrix_.cols()) {
    throw StateError("density matrix must be a non-empty square matrix");
  }
  if (!matrix_.allFinite()) throw StateError("density matrix has non-finite entries");
  if (!is_hermitian(matrix_, tol.hermiticity_atol)) throw StateError("density matrix is not hermitian");
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace_atol) {
    throw StateError("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  const double lowest = min_hermitian_eigenvalue(matrix_);
  if (lowest < -tol.positivity_floor) {
    throw StateError("density matrix has negative eigenvalue " + std::to_string(lowest));
  }
}

DensityMatrix DensityMatrix::basis_state(Index n, Index k) {
  if (k < 0 || k >= n) throw DimensionError("basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(k, k) = 1.0;
  return DensityMatrix(std::move(m));
}

ComplexMatrix propagator(const Superoperator& gen, double t) {
  if (!std::isfinite(t) || t < 0.0) throw ValidationError("propagator: time must be finite and >= 0");
  return expm(t * gen.matrix());
}

DensityMatrix evolve(const Superoperator& gen, const DensityMatrix& rho0, double t) {
  if (rho0.dim() != gen.dim()) {
    throw DimensionError("evolve: state is " + std::to_string(rho0.dim()) + "-dimensional, generator acts on " +
                         std::to_string(gen.dim()));
  }
  if (!std::isfinite(t) || t < 0.0) throw ValidationError("evolve: time must be finite and >= 0");
  if (t == 0.0) return rho0;

  const ComplexVector out = propagator(gen, t) * vec(rho0.matrix());
  ComplexMatrix rho = unvec(out, gen.dim());

  constexpr double kFloor = 1e-8;
  const double lowest = min_hermitian_eigenvalue(rho);
  if (lowest < -kFloor) {
    throw NumericalError("evolve: positivity violated, eigenvalue " + std::to_string(lowest));
  }
  const double trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (trace_error > kFloor) {
    throw NumericalError("evolve: trace drifted by " + std::to_string(trace_error));
  }
  return DensityMatrix(std::move(rho), {kFloor, kFloor, kFloor});
}

}  // namespace strobe
