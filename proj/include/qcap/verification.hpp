// Copyright 2026 The qcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Randomized checks of exact entropic identities.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qcap {

struct IdentityCheck {
  std::string name;
  std::size_t trials;
  /// Largest violation seen: |lhs - rhs| for equalities, shortfall for
  /// inequalities.
  double max_deviation;
  double tolerance;
  bool pass;
};

/// |D(r1 (x) r2 || s1 (x) s2) - D(r1||s1) - D(r2||s2)| <= 1e-8 on random
/// full-rank quartets with factor dims in 2..4.
std::vector<IdentityCheck> factorization_suite(std::size_t trials,
                                               std::uint64_t seed);

/**
 * Holevo quantity as entropy difference vs divergence radius (1e-9),
 * Klein's inequality D >= 0 (1e-9), additivity of entropy under tensor
 * products (1e-9), and coherent information of pure-member ensembles in both
 * forms (1e-8).
 */
std::vector<IdentityCheck> identity_suite(std::size_t trials, std::uint64_t seed);

}  // namespace qcap
