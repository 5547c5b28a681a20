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

#ifndef STROBE_ERRORS_HPP
#define STROBE_ERRORS_HPP

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace strobe {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A model, observable, or option violates its declared invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A matrix offered as a density matrix is not one.
class StateError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Malformed input document (JSON or CSV).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An algorithm failed to converge or produced a result outside tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  SearchExhausted(const std::string& what, Eigen::Index best_rank, Eigen::Index required_rank)
      : Error(what), best_rank_(best_rank), required_rank_(required_rank) {}

  Eigen::Index best_rank() const noexcept { return best_rank_; }
  Eigen::Index required_rank() const noexcept { return required_rank_; }

 private:
  Eigen::Index best_rank_;
  Eigen::Index required_rank_;
};

/// The tomography design does not determine the state.
class RankDeficiency : public Error {
 public:
  RankDeficiency(const std::string& what, Eigen::Index achieved_rank, Eigen::Index required_rank)
      : Error(what), achieved_rank_(achieved_rank), required_rank_(required_rank) {}

  Eigen::Index achieved_rank() const noexcept { return achieved_rank_; }
  Eigen::Index required_rank() const noexcept { return required_rank_; }

 private:
  Eigen::Index achieved_rank_;
  Eigen::Index required_rank_;
};

}  // namespace strobe

#endif  // STROBE_ERRORS_HPP
