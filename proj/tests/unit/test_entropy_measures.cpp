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

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "qcap/entropy_measures.hpp"
#include "qcap/error.hpp"
#include "test_util.hpp"

using Catch::Matchers::WithinAbs;
using namespace qcap;
using qcap::testing::throws_code;

namespace {

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

/// Chi of {(1/2, |0>), (1/2, |+>)} through the identity: the average has
/// eigenvalues (2 +- sqrt 2) / 4.
double two_state_chi() { return binary_entropy((2.0 + std::sqrt(2.0)) / 4.0); }

Ensemble zero_plus() {
  return Ensemble({{0.5, DensityMatrix::basis(2, 0)}, {0.5, qcap::testing::plus_state()}});
}

Ensemble random_ensemble(std::mt19937_64& rng, std::size_t dim, std::size_t members,
                         std::size_t rank) {
  std::exponential_distribution<double> draw;
  std::vector<double> w(members);
  double total = 0.0;
  for (double& x : w) total += (x = draw(rng));
  std::vector<EnsembleMember> out;
  for (std::size_t k = 0; k < members; ++k) {
    out.push_back({w[k] / total, qcap::testing::random_density(rng, dim, rank)});
  }
  return Ensemble(std::move(out));
}

}  // namespace

TEST_CASE("relative_entropy examples") {
  const DensityMatrix rho = random_state(3, 3, 2);
  CHECK(std::abs(relative_entropy(rho, rho).value) <= 1e-10);

  const RelEntResult one =
      relative_entropy(DensityMatrix::basis(2, 0), DensityMatrix::maximally_mixed(2));
  CHECK_THAT(one.value, WithinAbs(1.0, 1e-14));
  CHECK_FALSE(one.support_violation);

  const RelEntResult inf =
      relative_entropy(DensityMatrix::maximally_mixed(2), DensityMatrix::basis(2, 0));
  CHECK(inf.support_violation);
  CHECK(inf.value == std::numeric_limits<double>::infinity());

  CHECK(throws_code(
      [] { relative_entropy(DensityMatrix::basis(2, 0), DensityMatrix::basis(3, 0)); },
      ErrorCode::kDimMismatch));
}

TEST_CASE("relative_entropy on rank-deficient shared support is finite") {
  // Both states live on span{|0>, |1>} inside a qutrit.
  const DensityMatrix rho = qcap::testing::diag_state({0.3, 0.7, 0.0});
  const DensityMatrix sigma = qcap::testing::diag_state({0.6, 0.4, 0.0});
  const double expect = 0.3 * std::log2(0.3 / 0.6) + 0.7 * std::log2(0.7 / 0.4);
  const RelEntResult d = relative_entropy(rho, sigma);
  CHECK_FALSE(d.support_violation);
  CHECK_THAT(d.value, WithinAbs(expect, 1e-13));
}

TEST_CASE("Klein inequality") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t dim = 2 + trial % 3;
    const DensityMatrix rho = qcap::testing::random_density(rng, dim, dim);
    const DensityMatrix sigma = qcap::testing::random_density(rng, dim, dim);
    const RelEntResult d = relative_entropy(rho, sigma);
    CHECK_FALSE(d.support_violation);
    CHECK(d.value >= -1e-9);
    if (frobenius_distance(rho.matrix(), sigma.matrix()) > 1e-6) CHECK(d.value > 1e-9);
  }
}

TEST_CASE("relative entropy is additive on product quartets") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d1 = 2 + trial % 2;
    const std::size_t d2 = 2 + (trial / 2) % 3;
    const DensityMatrix r1 = qcap::testing::random_density(rng, d1, d1);
    const DensityMatrix s1 = qcap::testing::random_density(rng, d1, d1);
    const DensityMatrix r2 = qcap::testing::random_density(rng, d2, d2);
    const DensityMatrix s2 = qcap::testing::random_density(rng, d2, d2);
    const double joint =
        relative_entropy(validate_state(tensor(r1.matrix(), r2.matrix())),
                         validate_state(tensor(s1.matrix(), s2.matrix())))
            .value;
    CHECK_THAT(joint, WithinAbs(relative_entropy(r1, s1).value +
                                    relative_entropy(r2, s2).value,
                                1e-8));
  }
}

TEST_CASE("holevo_chi examples") {
  const QuantumChannel id = zoo_from_spec("identity(2)");
  CHECK_THAT(holevo_chi(Ensemble({{1.0, random_state(2, 2, 1)}}), id),
             WithinAbs(0.0, 1e-14));
  const Ensemble orth({{0.5, DensityMatrix::basis(2, 0)},
                       {0.5, DensityMatrix::basis(2, 1)}});
  CHECK_THAT(holevo_chi(orth, id), WithinAbs(1.0, 1e-14));
  CHECK_THAT(holevo_chi(zero_plus(), id), WithinAbs(two_state_chi(), 1e-13));
  CHECK_THAT(two_state_chi(), WithinAbs(0.600876, 1e-6));
  CHECK(throws_code([&] { holevo_chi(orth, zoo_from_spec("identity(3)")); },
                    ErrorCode::kDimMismatch));
}

TEST_CASE("holevo_from_relent examples") {
  const QuantumChannel id = zoo_from_spec("identity(2)");
  CHECK_THAT(holevo_from_relent(Ensemble({{1.0, random_state(2, 2, 1)}}), id),
             WithinAbs(0.0, 1e-13));
  CHECK_THAT(holevo_from_relent(zero_plus(), id), WithinAbs(two_state_chi(), 1e-12));
}

TEST_CASE("chi as entropy difference equals the divergence radius") {
  std::mt19937_64 rng(63);
  std::vector<std::string> specs = qcap::testing::qubit_zoo();
  specs.push_back("identity(3)");
  specs.push_back("erasure(3,0.6)");
  for (const std::string& spec : specs) {
    CAPTURE(spec);
    const QuantumChannel ch = zoo_from_spec(spec);
    for (int trial = 0; trial < 100; ++trial) {
      const Ensemble e = random_ensemble(rng, ch.dim_in(), 3, 1 + trial % ch.dim_in());
      CHECK_THAT(holevo_chi(e, ch), WithinAbs(holevo_from_relent(e, ch), 1e-9));
    }
  }
}

TEST_CASE("chi is non-increasing along the depolarizing family") {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    const Ensemble e = random_ensemble(rng, 2, 4, 1);
    double previous = std::numeric_limits<double>::infinity();
    for (int step = 0; step <= 10; ++step) {
      const std::string spec = "depolarizing(" + std::to_string(step / 10.0) + ")";
      const double chi = holevo_chi(e, zoo_from_spec(spec));
      CHECK(chi <= previous + 1e-12);
      previous = chi;
    }
    CHECK(previous <= 1e-12);
  }
}

TEST_CASE("entropy_exchange") {
  const QuantumChannel id = zoo_from_spec("identity(2)");
  CHECK_THAT(entropy_exchange(random_state(2, 2, 4), id), WithinAbs(0.0, 1e-14));
  CHECK_THAT(entropy_exchange(DensityMatrix::maximally_mixed(2),
                              zoo_from_spec("erasure(2,0.5)")),
             WithinAbs(1.5, 1e-13));
  std::mt19937_64 rng(65);
  for (const std::string& spec : qcap::testing::qubit_zoo()) {
    const QuantumChannel ch = zoo_from_spec(spec);
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix psi = qcap::testing::random_density(rng, 2, 1);
      CHECK_THAT(entropy_exchange(psi, ch),
                 WithinAbs(von_neumann_entropy(apply(ch, psi)), 1e-9));
    }
  }
  CHECK(throws_code([&] { entropy_exchange(random_state(3, 1, 0), id); },
                    ErrorCode::kDimMismatch));
}

TEST_CASE("coherent_information") {
  const CoherentInfoResult id =
      coherent_information(DensityMatrix::maximally_mixed(2), zoo_from_spec("identity(2)"));
  CHECK_THAT(id.value, WithinAbs(1.0, 1e-14));
  CHECK_THAT(id.s_output, WithinAbs(1.0, 1e-14));
  CHECK_THAT(id.s_env, WithinAbs(0.0, 1e-14));
  CHECK_FALSE(id.chi_ab.has_value());

  const QuantumChannel half = zoo_from_spec("erasure(2,0.5)");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DensityMatrix rho = random_state(2, 1 + seed % 2, seed);
    CHECK(std::abs(coherent_information(rho, half).value) <= 1e-9);
  }
  CHECK_THAT(coherent_information(DensityMatrix::maximally_mixed(2),
                                  zoo_from_spec("erasure(2,0.25)"))
                 .value,
             WithinAbs(0.5, 1e-13));

  // Closed form (1 - 2p) S(rho) for erasure on arbitrary inputs.
  for (double p : {0.1, 0.3, 0.7}) {
    const QuantumChannel ch = zoo_from_spec("erasure(2," + std::to_string(p) + ")");
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const DensityMatrix rho = random_state(2, 2, seed);
      const CoherentInfoResult r = coherent_information(rho, ch);
      CHECK_THAT(r.value, WithinAbs((1.0 - 2.0 * p) * von_neumann_entropy(rho), 1e-12));
      CHECK_THAT(r.value, WithinAbs(r.s_output - r.s_env, 1e-15));
    }
  }
  CHECK(coherent_information(DensityMatrix::maximally_mixed(2),
                             zoo_from_spec("depolarizing(0.9)"))
            .value < 0.0);
}

TEST_CASE("coherent_info_via_holevo") {
  const QuantumChannel id = zoo_from_spec("identity(2)");
  const CoherentInfoResult single =
      coherent_info_via_holevo(Ensemble({{1.0, random_state(2, 2, 9)}}), id);
  CHECK_THAT(single.value, WithinAbs(0.0, 1e-14));

  const Ensemble orth({{0.5, DensityMatrix::basis(2, 0)},
                       {0.5, DensityMatrix::basis(2, 1)}});
  const CoherentInfoResult r = coherent_info_via_holevo(orth, id);
  REQUIRE(r.chi_ab.has_value());
  REQUIRE(r.chi_ae.has_value());
  CHECK_THAT(*r.chi_ab, WithinAbs(1.0, 1e-14));
  CHECK_THAT(*r.chi_ae, WithinAbs(0.0, 1e-14));
  CHECK_THAT(r.value, WithinAbs(1.0, 1e-14));
  CHECK_THAT(r.value, WithinAbs(*r.chi_ab - *r.chi_ae, 1e-15));

  std::mt19937_64 rng(66);
  const QuantumChannel half = zoo_from_spec("erasure(2,0.5)");
  for (int trial = 0; trial < 50; ++trial) {
    CHECK(coherent_info_via_holevo(random_ensemble(rng, 2, 4, 1), half).value <= 1e-9);
  }
}

TEST_CASE("pure-member ensembles give equal coherent information in both forms") {
  std::mt19937_64 rng(67);
  for (const std::string& spec : qcap::testing::qubit_zoo()) {
    CAPTURE(spec);
    const QuantumChannel ch = zoo_from_spec(spec);
    for (int trial = 0; trial < 100; ++trial) {
      const Ensemble e = random_ensemble(rng, 2, 1 + trial % 4, 1);
      const CoherentInfoResult via = coherent_info_via_holevo(e, ch);
      const CoherentInfoResult direct = coherent_information(average_state(e), ch);
      CHECK_THAT(via.value, WithinAbs(direct.value, 1e-8));
      CHECK_THAT(via.s_output - via.s_env, WithinAbs(direct.value, 1e-8));
    }
  }
}

TEST_CASE("pure inputs: both entropies match the dilation marginals") {
  std::mt19937_64 rng(68);
  for (const std::string& spec : qcap::testing::qubit_zoo()) {
    const QuantumChannel ch = zoo_from_spec(spec);
    const ComplexMatrix v = stinespring_isometry(ch);
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix psi = qcap::testing::random_density(rng, 2, 1);
      const ComplexMatrix dilated = v * psi.matrix() * v.adjoint();
      const std::array<std::size_t, 2> dims{ch.dim_out(), ch.env_dim()};
      const std::array<std::size_t, 1> keep_out{0};
      const std::array<std::size_t, 1> keep_env{1};
      const CoherentInfoResult r = coherent_information(psi, ch);
      CHECK_THAT(r.s_output, WithinAbs(entropy_of(partial_trace(dilated, dims, keep_out)),
                                       1e-9));
      CHECK_THAT(r.s_env, WithinAbs(entropy_of(partial_trace(dilated, dims, keep_env)),
                                    1e-9));
      CHECK_THAT(r.value, WithinAbs(0.0, 1e-9));
    }
  }
}
