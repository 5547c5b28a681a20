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

#include "strobe/tomography_sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace strobe {

TimeGrid::TimeGrid(std::vector<double> instants) : instants_(std::move(instants)) {
  if (instants_.empty()) throw ValidationError("time grid must contain at least one instant");
  for (std::size_t j = 0; j < instants_.size(); ++j) {
    const double t = instants_[j];
    if (!std::isfinite(t) || t <= 0.0) {
      throw ValidationError("time grid instant " + std::to_string(j) + " must be finite and > 0");
    }
    if (j > 0 && !(t > instants_[j - 1])) throw ValidationError("time grid must be strictly increasing");
  }
}

TimeGrid default_time_grid(const SpectralReport& report, Index mu) {
  if (mu < 1) throw ValidationError("default_time_grid: mu must be >= 1");
  double rate = 0.0;
  double magnitude = 0.0;
  for (const auto& c : report.distinct_eigenvalues) {
    if (c.value == Complex(0.0, 0.0)) continue;
    rate = std::max(rate, std::abs(c.value.real()));
    magnitude = std::max(magnitude, std::abs(c.value));
  }
  // Purely oscillatory spectra have no decay rate; fall back to the fastest frequency.
  double dt = 1.0;
  if (rate > 0.0) {
    dt = 1.0 / rate;
  } else if (magnitude > 0.0) {
    dt = 1.0 / magnitude;
  }
  std::vector<double> instants;
  instants.reserve(static_cast<std::size_t>(mu));
  for (Index j = 1; j <= mu; ++j) instants.push_back(static_cast<double>(j) * dt);
  return TimeGrid(std::move(instants));
}

void MeasurementRecord::validate() const {
  if (observable_count < 1) throw ValidationError("record: observable_count must be >= 1");
  for (std::size_t r = 0; r < entries.size(); ++r) {
    const auto& e = entries[r];
    const std::string where = "record row " + std::to_string(r + 1);
    if (e.observable_index < 0 || e.observable_index >= observable_count) {
      throw ValidationError(where + ": observable_index " + std::to_string(e.observable_index) +
                            " out of range [0, " + std::to_string(observable_count) + ")");
    }
    if (!std::isfinite(e.time) || e.time < 0.0) throw ValidationError(where + ": time must be finite and >= 0");
    if (!std::isfinite(e.value)) throw ValidationError(where + ": value is not finite");
    if (!std::isfinite(e.sigma) || e.sigma < 0.0) throw ValidationError(where + ": sigma must be finite and >= 0");
  }
}

std::vector<double> MeasurementRecord::times() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.time);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MeasurementRecord simulate_measurements(const LindbladModel& model, const DensityMatrix& rho0,
                                        const ObservableSet& set, const TimeGrid& grid, double noise_sigma,
                                        std::uint64_t seed) {
  if (rho0.dim() != model.dim() || set.dim() != model.dim()) {
    throw DimensionError("simulate_measurements: model, state and observables must share one dimension");
  }
  if (!std::isfinite(noise_sigma) || noise_sigma < 0.0) {
    throw ValidationError("simulate_measurements: noise sigma must be finite and >= 0");
  }
  const Superoperator gen = build_generator(model);
  std::vector<DensityMatrix> states;
  states.reserve(grid.instants().size());
  for (double t : grid.instants()) states.push_back(evolve(gen, rho0, t));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  MeasurementRecord record;
  record.observable_count = set.size();
  record.entries.reserve(static_cast<std::size_t>(set.size() * grid.size()));
  for (Index i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const Complex expectation = (set[i] * states[j].matrix()).trace();
      if (std::abs(expectation.imag()) > 1e-10 * (1.0 + set[i].norm())) {
        throw NumericalError("simulate_measurements: expectation of observable " + std::to_string(i) +
                             " has imaginary part " + std::to_string(expectation.imag()));
      }
      double value = expectation.real();
      if (noise_sigma > 0.0) value += noise_sigma * noise(rng);
      record.entries.push_back({i, grid.instants()[j], value, noise_sigma});
    }
  }
  return record;
}

ComplexMatrix project_to_states(const ComplexMatrix& m) {
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  if (solver.info() != Eigen::Success) throw NumericalError("projection: eigensolver did not converge");
  const RealVector clipped = solver.eigenvalues().cwiseMax(0.0);
  const double total = clipped.sum();
  if (!(total > 0.0)) throw NumericalError("projection: estimate has no positive spectrum");
  const ComplexMatrix& v = solver.eigenvectors();
  ComplexMatrix out = v * (clipped / total).cast<Complex>().asDiagonal() * v.adjoint();
  return 0.5 * (out + out.adjoint());
}

ReconstructionResult reconstruct(const LindbladModel& model, const ObservableSet& set, const MeasurementRecord& record,
                                 const ReconstructionOptions& options, const std::optional<DensityMatrix>& truth) {
  options.tol.validate();
  record.validate();
  const Index n = model.dim();
  if (set.dim() != n) throw DimensionError("reconstruct: observable dimension does not match the model");
  if (record.observable_count != set.size()) {
    throw ValidationError("reconstruct: record refers to " + std::to_string(record.observable_count) +
                          " observables but the set has " + std::to_string(set.size()));
  }
  if (truth && truth->dim() != n) throw DimensionError("reconstruct: truth dimension does not match the model");
  if (!(options.trace_row_weight > 0.0)) throw ValidationError("reconstruct: trace_row_weight must be > 0");

  const Index params = n * n;
  const auto basis = hermitian_basis(n);
  const Superoperator gen = build_generator(model);

  // Row for observable i at time t: coordinates of exp(t L*) Q_i, i.e.
  // a_k = tr(Q_i exp(t L)[B_k]). One propagator per distinct time.
  std::map<double, ComplexMatrix> propagators;
  for (double t : record.times()) propagators.emplace(t, propagator(gen, t));

  const Index data_rows = static_cast<Index>(record.entries.size());
  RealMatrix design(data_rows + 1, params);
  RealVector rhs(data_rows + 1);
  std::map<std::pair<Index, double>, RealVector> row_cache;
  for (Index r = 0; r < data_rows; ++r) {
    const auto& e = record.entries[static_cast<std::size_t>(r)];
    auto key = std::make_pair(e.observable_index, e.time);
    auto it = row_cache.find(key);
    if (it == row_cache.end()) {
      const ComplexMatrix heisenberg =
          unvec(ComplexVector(propagators.at(e.time).adjoint() * vec(set[e.observable_index])), n);
      it = row_cache.emplace(key, hermitian_coordinates(0.5 * (heisenberg + heisenberg.adjoint()), basis)).first;
    }
    design.row(r) = it->second.transpose();
    rhs(r) = e.value;
  }
  for (Index k = 0; k < params; ++k) design(data_rows, k) = basis[static_cast<std::size_t>(k)].trace().real();
  rhs(data_rows) = 1.0;

  ReconstructionResult result;
  {
    Eigen::JacobiSVD<RealMatrix> svd(design);
    const RealVector& sv = svd.singularValues();
    const double cutoff = options.tol.rank_rtol * (sv.size() > 0 ? sv(0) : 0.0);
    result.design_rank = sv.size() > 0 && sv(0) > 0.0 ? static_cast<Index>((sv.array() > cutoff).count()) : 0;
    if (result.design_rank < params) {
      throw RankDeficiency("reconstruct: design matrix has rank " + std::to_string(result.design_rank) + " but " +
                               std::to_string(params) + " parameters must be determined",
                           result.design_rank, params);
    }
    result.design_condition = sv(0) / sv(params - 1);
  }

  // The trace constraint row is weighted so that it dominates the data rows.
  RealMatrix weighted = design;
  RealVector weighted_rhs = rhs;
  weighted.row(data_rows) *= options.trace_row_weight;
  weighted_rhs(data_rows) *= options.trace_row_weight;
  Eigen::JacobiSVD<RealMatrix> solver(weighted, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector x = solver.solve(weighted_rhs);
  result.residual_norm = (design.topRows(data_rows) * x - rhs.head(data_rows)).norm();

  ComplexMatrix estimate = ComplexMatrix::Zero(n, n);
  for (Index k = 0; k < params; ++k) estimate += x(k) * basis[static_cast<std::size_t>(k)];
  if (options.project) {
    result.rho_hat = project_to_states(estimate);
    result.projected = true;
  } else {
    result.rho_hat = estimate;
  }

  if (truth) {
    const StateDistance d = state_distance(result.rho_hat, truth->matrix());
    result.frobenius_error = d.frobenius;
    result.trace_distance = d.trace_distance;
  }
  return result;
}

StateDistance state_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols() || rho.rows() != rho.cols()) {
    throw DimensionError("state_distance: shape mismatch");
  }
  const ComplexMatrix diff = rho - sigma;
  const ComplexMatrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("state_distance: eigensolver did not converge");
  return {diff.norm(), 0.5 * solver.eigenvalues().cwiseAbs().sum()};
}

DensityMatrix random_density_matrix(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix w(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      w(i, j) = Complex(re, im);
    }
  }
  ComplexMatrix rho = w * w.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(std::move(rho));
}

}  // namespace strobe
