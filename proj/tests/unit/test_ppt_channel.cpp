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

// Checks on the shipped PPT channel file data/channels/ppt_shield_4.json.

#include <cmath>

#include "catch_amalgamated.hpp"
#include "qcap/capacity.hpp"
#include "qcap/channels.hpp"
#include "qcap/superactivation.hpp"
#include "test_util.hpp"

using Catch::Matchers::WithinAbs;
using namespace qcap;

namespace {

QuantumChannel ppt_channel() {
  return load_channel(QCAP_DATA_DIR "/channels/ppt_shield_4.json");
}

}  // namespace

TEST_CASE("PPT channel file is a valid 4 -> 4 channel") {
  const QuantumChannel ch = ppt_channel();
  CHECK(ch.dim_in() == 4);
  CHECK(ch.dim_out() == 4);
  CHECK(ch.kraus().size() == 8);
  CHECK(ch.completeness_defect() <= 1e-12);
}

TEST_CASE("PPT channel Choi matrix is PSD with a PSD partial transpose") {
  const ComplexMatrix choi = choi_matrix(ppt_channel());
  CHECK(hermitian_eig(choi).eigenvalues.front() >= -1e-12);
  CHECK(hermitian_eig(partial_transpose_second(choi, 4, 4)).eigenvalues.front() >= -1e-12);
  const DensityMatrix state = validate_state(choi * 0.25);
  CHECK(negativity(state, 4, 4) <= 1e-12);
  // Input marginal of the normalized Choi state is maximally mixed.
  const std::array<std::size_t, 2> dims{4, 4};
  const std::array<std::size_t, 1> keep_in{0};
  CHECK(frobenius_distance(partial_trace(state.matrix(), dims, keep_in),
                           ComplexMatrix::identity(4) * 0.25) <= 1e-12);
}

TEST_CASE("PPT channel Choi state carries correlations across the cut") {
  const DensityMatrix state = validate_state(choi_matrix(ppt_channel()) * 0.25);
  CHECK(product_residual(operator_schmidt(state, 4, 4).coefficients) > 0.1);
}

TEST_CASE("PPT channel has no single-use coherent information") {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  const CapacityReport r = q1(ppt_channel(), cfg);
  CHECK(r.value <= 1e-4);
}

TEST_CASE("PPT channel file matches its generator") {
  // The maximally entangled input reproduces the key/shield structure: the
  // output is block diagonal in the key basis with weight 2a on |00>,|11>.
  const QuantumChannel ch = ppt_channel();
  const double a = 1.0 / (2.0 + std::sqrt(2.0));
  const double b = a / std::sqrt(2.0);
  CHECK_THAT(2.0 * a + 2.0 * b, WithinAbs(1.0, 1e-15));
  const ComplexMatrix choi = choi_matrix(ch) * 0.25;
  double weight_00 = 0.0;
  double weight_01 = 0.0;
  // Key qubits are the leading factor of each side: input index i = (A, A'),
  // output index o = (B, B'); |kA kB> weight sums the shield diagonals.
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t o = 0; o < 4; ++o) {
      const double w = choi(i * 4 + o, i * 4 + o).real();
      const std::size_t ka = i / 2;
      const std::size_t kb = o / 2;
      if (ka == 0 && kb == 0) weight_00 += w;
      if (ka == 0 && kb == 1) weight_01 += w;
    }
  }
  CHECK_THAT(weight_00, WithinAbs(a, 1e-12));
  CHECK_THAT(weight_01, WithinAbs(b, 1e-12));
}
