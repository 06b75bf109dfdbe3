// Copyright 2026 The gpath Authors
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

#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gpath {

inline constexpr const char* kVersion = "0.1.0";

using Index = Eigen::Index;

/// Exact integer matrix used for boundary operators and identity checks.
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Raised when a physical or structural precondition of the model fails.
/// The CLI maps this family onto exit status 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coupling constants of the relational action.
///
/// `alpha` carries units of momentum, `beta` momentum/length and `hbar`
/// action. All three must be strictly positive.
struct Couplings {
  double alpha = 1.0;
  double beta = 1.0;
  double hbar = 1.0;

  void validate() const {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(hbar > 0.0)) {
      throw std::invalid_argument("couplings alpha, beta and hbar must be positive");
    }
  }
};

}  // namespace gpath
