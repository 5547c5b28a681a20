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

#ifndef STROBE_TOMOGRAPHY_SIM_HPP
#define STROBE_TOMOGRAPHY_SIM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "strobe/stroboscopic_analysis.hpp"

namespace strobe {

/// Strictly increasing, positive, finite measurement instants.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> instants);

  const std::vector<double>& instants() const noexcept { return instants_; }
  Index size() const noexcept { return static_cast<Index>(instants_.size()); }

 private:
  std::vector<double> instants_;
};

/// t_j = j * dt for j = 1..mu, dt = 1 / max |Re lambda| over nonzero eigenvalues.
TimeGrid default_time_grid(const SpectralReport& report, Index mu);

struct Measurement {
  Index observable_index = 0;
  double time = 0.0;
  double value = 0.0;
  double sigma = 0.0;

  friend bool operator==(const Measurement&, const Measurement&) = default;
};

struct MeasurementRecord {
  Index observable_count = 0;
  std::vector<Measurement> entries;

  /// Throws ValidationError on non-finite values or out-of-range indices.
  void validate() const;
  /// Distinct measurement times, ascending.
  std::vector<double> times() const;

  friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

/// value = tr(Q_i rho(t_j)) + N(0, noise_sigma^2), observables outer, instants inner.
MeasurementRecord simulate_measurements(const LindbladModel& model, const DensityMatrix& rho0,
                                        const ObservableSet& set, const TimeGrid& grid, double noise_sigma,
                                        std::uint64_t seed);

struct ReconstructionOptions {
  bool project = true;
  double trace_row_weight = 1e3;
  ToleranceConfig tol;
};

struct ReconstructionResult {
  ComplexMatrix rho_hat;
  bool projected = false;
  double residual_norm = 0.0;
  Index design_rank = 0;
  double design_condition = 0.0;
  std::optional<double> frobenius_error;
  std::optional<double> trace_distance;
};

/// Linear-inversion estimate of the initial state from a stroboscopic record.
/// Throws RankDeficiency when the design does not determine all N^2 real
/// parameters.
ReconstructionResult reconstruct(const LindbladModel& model, const ObservableSet& set, const MeasurementRecord& record,
                                 const ReconstructionOptions& options = {},
                                 const std::optional<DensityMatrix>& truth = std::nullopt);

struct StateDistance {
  double frobenius = 0.0;
  double trace_distance = 0.0;
};

StateDistance state_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Clip negative eigenvalues of the hermitian part to zero and renormalize the trace.
ComplexMatrix project_to_states(const ComplexMatrix& m);

/// W W^dagger / tr(W W^dagger) with W standard complex Gaussian.
DensityMatrix random_density_matrix(Index n, std::mt19937_64& rng);

}  // namespace strobe

#endif  // STROBE_TOMOGRAPHY_SIM_HPP
