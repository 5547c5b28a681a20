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

#include "strobe/stroboscopic_analysis.hpp"

#include <algorithm>
#include <string>

namespace strobe {

namespace {

// Single-linkage grouping of computed eigenvalues into distinct values.
std::vector<EigenvalueCluster> cluster_eigenvalues(const std::vector<Complex>& values, double scale,
                                                   const ToleranceConfig& tol) {
  std::vector<std::vector<Complex>> groups;
  for (const Complex& v : values) {
    const double radius = tol.eig_cluster_rtol * (1.0 + std::abs(v)) * scale;
    std::vector<std::size_t> hits;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const bool near = std::any_of(groups[g].begin(), groups[g].end(),
                                    [&](const Complex& w) { return std::abs(w - v) <= radius; });
      if (near) hits.push_back(g);
    }
    if (hits.empty()) {
      groups.push_back({v});
      continue;
    }
    auto& target = groups[hits.front()];
    target.push_back(v);
    for (auto it = hits.rbegin(); it != hits.rend() - 1; ++it) {
      target.insert(target.end(), groups[*it].begin(), groups[*it].end());
      groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(*it));
    }
  }

  std::vector<EigenvalueCluster> clusters;
  clusters.reserve(groups.size());
  for (const auto& g : groups) {
    Complex mean(0.0, 0.0);
    for (const Complex& v : g) mean += v;
    mean /= static_cast<double>(g.size());
    clusters.push_back({mean, static_cast<Index>(g.size()), 0});
  }
  // Descending real part, then imaginary part: stationary eigenvalues first.
  std::sort(clusters.begin(), clusters.end(), [](const EigenvalueCluster& a, const EigenvalueCluster& b) {
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });
  return clusters;
}

// Zero out components that sit inside the clustering radius.
Complex tidy(Complex z, double atol) {
  double re = z.real();
  double im = z.imag();
  if (std::abs(re) <= atol) re = 0.0;
  if (std::abs(im) <= atol) im = 0.0;
  return {re, im};
}

}  // namespace

SpectralReport spectral_report(const Superoperator& gen, const ToleranceConfig& tol) {
  tol.validate();
  const ComplexMatrix& m = gen.matrix();
  const Index size = m.rows();
  const double scale = std::max(1.0, m.norm());

  SpectralReport report;
  report.dim = gen.dim();
  report.distinct_eigenvalues = cluster_eigenvalues(eigenvalues(m), scale, tol);

  const ComplexMatrix id = ComplexMatrix::Identity(size, size);
  for (auto& cluster : report.distinct_eigenvalues) {
    cluster.value = tidy(cluster.value, tol.eig_cluster_rtol * scale);
    Index geometric = kernel_dim(ComplexMatrix(m - cluster.value * id), tol);
    // A computed eigenvalue always owns an eigenvector; a split cluster can
    // see the whole eigenspace. Keep 1 <= geometric <= algebraic.
    geometric = std::clamp<Index>(geometric, 1, cluster.algebraic_multiplicity);
    cluster.geometric_multiplicity = geometric;
    report.eta = std::max(report.eta, geometric);
  }

  report.min_poly = minimal_polynomial(m, tol);
  report.mu = report.min_poly.size() - 1;
  report.static_observable_count = report.dim * report.dim - 1;
  report.measurement_budget = report.eta * report.mu;
  return report;
}

MeasurementBudget measurement_budget(const SpectralReport& report) {
  return {report.eta, report.mu, report.eta * report.mu};
}

ObservableSet::ObservableSet(std::vector<ComplexMatrix> observables, const ToleranceConfig& tol)
    : observables_(std::move(observables)) {
  if (observables_.empty()) throw ValidationError("observable set must contain at least one observable");
  const Index n = observables_.front().rows();
  for (std::size_t i = 0; i < observables_.size(); ++i) {
    const auto& q = observables_[i];
    const std::string where = "observables[" + std::to_string(i) + "]";
    if (q.rows() != n || q.cols() != n || n < 1) {
      throw ValidationError(where + " must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (!q.allFinite() || !is_hermitian(q, tol.hermiticity_atol)) {
      throw ValidationError(where + " is not hermitian");
    }
  }
}

std::vector<ComplexMatrix> krylov_subspace(const Superoperator& gen, const ComplexMatrix& q, Index depth,
                                           const ToleranceConfig& tol) {
  if (q.rows() != gen.dim() || q.cols() != gen.dim()) {
    throw DimensionError("krylov_subspace: observable dimension mismatch");
  }
  if (!is_hermitian(q, tol.hermiticity_atol)) throw ValidationError("krylov_subspace: observable is not hermitian");
  if (depth < 1) throw ValidationError("krylov_subspace: depth must be >= 1");

  const ComplexMatrix dual = gen.dual();
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(depth));
  ComplexVector v = vec(q);
  out.push_back(q);
  for (Index k = 1; k < depth; ++k) {
    v = dual * v;
    out.push_back(unvec(v, gen.dim()));
  }
  return out;
}

VerificationResult verify_observables(const Superoperator& gen, const ObservableSet& set, Index depth,
                                      const ToleranceConfig& tol) {
  if (set.dim() != gen.dim()) throw DimensionError("verify_observables: observable dimension mismatch");
  const Index n = gen.dim();
  const Index target = n * n;
  VerificationResult result;
  result.required_rank = target;
  if (n < 2) {
    // The 1x1 hermitian space is spanned by any nonzero observable.
    const bool nonzero = std::any_of(set.begin(), set.end(), [](const ComplexMatrix& q) { return q.norm() > 0.0; });
    result.achieved_rank = nonzero ? 1 : 0;
    result.ok = nonzero;
    return result;
  }

  const auto basis = hermitian_basis(n);
  RealMatrix columns(target, set.size() * depth);
  Index c = 0;
  for (const auto& q : set) {
    for (const auto& element : krylov_subspace(gen, q, depth, tol)) {
      columns.col(c++) = hermitian_coordinates(element, basis);
    }
  }

  // Rank is invariant under column scaling; normalizing keeps fast-decaying
  // directions from hiding under the relative cutoff.
  const double biggest = columns.colwise().norm().maxCoeff();
  for (Index j = 0; j < columns.cols(); ++j) {
    const double norm = columns.col(j).norm();
    if (norm > tol.rank_rtol * biggest) {
      columns.col(j) /= norm;
    } else {
      columns.col(j).setZero();
    }
  }
  result.achieved_rank = rank(columns, tol);
  result.ok = result.achieved_rank == target;
  return result;
}

VerificationResult verify_observables(const Superoperator& gen, const ObservableSet& set,
                                      const ToleranceConfig& tol) {
  const Index depth = minimal_polynomial(gen.matrix(), tol).size() - 1;
  return verify_observables(gen, set, depth, tol);
}

ComplexMatrix random_hermitian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return 0.5 * (g + g.adjoint());
}

ObservableSet find_observables(const Superoperator& gen, const SpectralReport& report, std::uint64_t seed,
                               int max_attempts, const ToleranceConfig& tol) {
  const Index n = gen.dim();
  const Index count = std::max<Index>(report.eta, 1);
  const Index depth = std::max<Index>(report.mu, 1);
  std::mt19937_64 rng(seed);
  Index best = 0;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<ComplexMatrix> candidate;
    candidate.reserve(static_cast<std::size_t>(count));
    for (Index k = 0; k < count; ++k) candidate.push_back(random_hermitian(n, rng));
    ObservableSet set(std::move(candidate), tol);
    const auto check = verify_observables(gen, set, depth, tol);
    if (check.ok) return set;
    best = std::max(best, check.achieved_rank);
  }
  throw SearchExhausted("find_observables: no spanning set of " + std::to_string(count) + " observables in " +
                            std::to_string(max_attempts) + " attempts (best rank " + std::to_string(best) + " of " +
                            std::to_string(n * n) + ")",
                        best, n * n);
}

ObservableSet find_observables(const Superoperator& gen, const ToleranceConfig& tol, std::uint64_t seed,
                               int max_attempts) {
  return find_observables(gen, spectral_report(gen, tol), seed, max_attempts, tol);
}

}  // namespace strobe
