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

#include "qcap/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qcap/channels.hpp"
#include "qcap/entropy_measures.hpp"
#include "qcap/states.hpp"
#include "qcap/superactivation.hpp"

namespace qcap {

namespace {

class Check {
 public:
  Check(std::string name, double tolerance)
      : result_{std::move(name), 0, 0.0, tolerance, true} {}

  void record(double deviation) {
    ++result_.trials;
    if (!(deviation <= result_.max_deviation)) result_.max_deviation = deviation;
    if (!(deviation <= result_.tolerance)) result_.pass = false;
  }

  IdentityCheck done() const { return result_; }

 private:
  IdentityCheck result_;
};

Ensemble random_ensemble(std::mt19937_64& rng, std::size_t dim,
                         std::size_t count, bool pure) {
  std::exponential_distribution<double> exp1;
  std::vector<double> w(count);
  double sum = 0.0;
  for (double& x : w) sum += (x = exp1(rng));
  std::vector<EnsembleMember> members;
  for (std::size_t k = 0; k < count; ++k) {
    members.push_back({w[k] / sum, random_state(dim, pure ? 1 : dim, rng())});
  }
  return Ensemble(std::move(members));
}

}  // namespace

std::vector<IdentityCheck> factorization_suite(std::size_t trials,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(2, 4);
  Check check("relative_entropy_factorization", 1e-8);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d1 = dim(rng);
    const std::size_t d2 = dim(rng);
    const DensityMatrix r1 = random_state(d1, d1, rng());
    const DensityMatrix s1 = random_state(d1, d1, rng());
    const DensityMatrix r2 = random_state(d2, d2, rng());
    const DensityMatrix s2 = random_state(d2, d2, rng());
    check.record(verify_factorization(r1, s1, r2, s2));
  }
  return {check.done()};
}

std::vector<IdentityCheck> identity_suite(std::size_t trials,
                                          std::uint64_t seed) {
  const std::vector<QuantumChannel> channels = {
      zoo_from_spec("identity(2)"),
      zoo_from_spec("identity(3)"),
      zoo_from_spec("erasure(2,0.3)"),
      zoo_from_spec("erasure(3,0.6)"),
      zoo_from_spec("depolarizing(0.5)"),
      zoo_from_spec("amplitude_damping(0.3)"),
      zoo_from_spec("phase_damping(0.5)"),
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> members(2, 4);
  std::uniform_int_distribution<std::size_t> dim(2, 4);
  Check holevo("holevo_divergence_radius", 1e-9);
  Check klein("klein_inequality", 1e-9);
  Check additivity("entropy_additivity", 1e-9);
  Check coherent("coherent_information_forms", 1e-8);
  for (std::size_t t = 0; t < trials; ++t) {
    const QuantumChannel& ch = channels[t % channels.size()];

    const Ensemble mixed = random_ensemble(rng, ch.dim_in(), members(rng), false);
    holevo.record(std::abs(holevo_chi(mixed, ch) - holevo_from_relent(mixed, ch)));

    const Ensemble pure = random_ensemble(rng, ch.dim_in(), members(rng), true);
    const double avg_form = coherent_information(average_state(pure), ch).value;
    coherent.record(std::abs(coherent_info_via_holevo(pure, ch).value - avg_form));

    const std::size_t d = dim(rng);
    const DensityMatrix rho = random_state(d, 1 + rng() % d, rng());
    const DensityMatrix sigma = random_state(d, d, rng());
    klein.record(std::max(0.0, -relative_entropy(rho, sigma).value));

    const DensityMatrix joint = validate_state(tensor(rho.matrix(), sigma.matrix()));
    additivity.record(std::abs(von_neumann_entropy(joint) - von_neumann_entropy(rho) -
                               von_neumann_entropy(sigma)));
  }
  return {holevo.done(), klein.done(), additivity.done(), coherent.done()};
}

}  // namespace qcap
