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

// Stroboscopic tomography resources of a generator: index of cyclicity
// (eta, the number of distinct observables), minimal-polynomial degree
// (mu, the number of instants per observable) and the Krylov spanning test
// that decides whether a given observable set determines the initial state.

#ifndef STROBE_STROBOSCOPIC_ANALYSIS_HPP
#define STROBE_STROBOSCOPIC_ANALYSIS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "strobe/lindblad_model.hpp"

namespace strobe {

struct EigenvalueCluster {
  Complex value;
  Index algebraic_multiplicity = 0;
  Index geometric_multiplicity = 0;
};

struct SpectralReport {
  Index dim = 0;  // Hilbert-space dimension N
  std::vector<EigenvalueCluster> distinct_eigenvalues;
  Index eta = 0;
  Index mu = 0;
  ComplexVector min_poly;  // ascending, monic
  Index static_observable_count = 0;  // N^2 - 1
  Index measurement_budget = 0;       // eta * mu
};

SpectralReport spectral_report(const Superoperator& gen, const ToleranceConfig& tol = {});

struct MeasurementBudget {
  Index eta = 0;
  Index mu = 0;
  Index total = 0;

  friend bool operator==(const MeasurementBudget&, const MeasurementBudget&) = default;
};

MeasurementBudget measurement_budget(const SpectralReport& report);

/// Non-empty list of hermitian N x N observables.
class ObservableSet {
 public:
  explicit ObservableSet(std::vector<ComplexMatrix> observables, const ToleranceConfig& tol = {});

  Index size() const noexcept { return static_cast<Index>(observables_.size()); }
  Index dim() const noexcept { return observables_.front().rows(); }
  const ComplexMatrix& operator[](Index i) const { return observables_[static_cast<std::size_t>(i)]; }
  const std::vector<ComplexMatrix>& observables() const noexcept { return observables_; }
  auto begin() const noexcept { return observables_.begin(); }
  auto end() const noexcept { return observables_.end(); }

 private:
  std::vector<ComplexMatrix> observables_;
};

/// [Q, L*Q, ..., (L*)^(depth-1) Q] with L* the Hilbert-Schmidt dual generator.
std::vector<ComplexMatrix> krylov_subspace(const Superoperator& gen, const ComplexMatrix& q, Index depth,
                                           const ToleranceConfig& tol = {});

struct VerificationResult {
  bool ok = false;
  Index achieved_rank = 0;
  Index required_rank = 0;
};

/// Rank of the union of depth-deep Krylov subspaces inside the real N^2
/// dimensional space of hermitian operators; ok iff that rank is N^2.
VerificationResult verify_observables(const Superoperator& gen, const ObservableSet& set, Index depth,
                                      const ToleranceConfig& tol = {});

/// Same, with depth = degree of the generator's minimal polynomial.
VerificationResult verify_observables(const Superoperator& gen, const ObservableSet& set,
                                      const ToleranceConfig& tol = {});

/// Hermitian matrix (G + G^dagger) / 2 with i.i.d. standard complex Gaussian G.
ComplexMatrix random_hermitian(Index n, std::mt19937_64& rng);

/// Draws report.eta random hermitian observables per attempt until the set
/// passes verify_observables. Deterministic for a fixed seed. Throws
/// SearchExhausted carrying the best achieved rank.
ObservableSet find_observables(const Superoperator& gen, const SpectralReport& report, std::uint64_t seed,
                               int max_attempts, const ToleranceConfig& tol = {});

ObservableSet find_observables(const Superoperator& gen, const ToleranceConfig& tol, std::uint64_t seed,
                               int max_attempts);

}  // namespace strobe

#endif  // STROBE_STROBOSCOPIC_ANALYSIS_HPP
