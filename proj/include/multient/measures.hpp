// Copyright 2026 The multient Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file measures.hpp
 * Entanglement measures for labels: exact bi-GP entanglement of pure states
 * and the generalized relative entropy of entanglement (GRE), computed as an
 * upper bound by minimizing the relative entropy over states separable with
 * respect to some partition of the label's GPs. Values are reported in GHZ
 * units: the n-GHZ state on the label's parties scores 1.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "multient/parties.hpp"
#include "multient/rational.hpp"
#include "multient/states.hpp"

namespace multient {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Settings for the separable-ansatz optimizer. Serialized as
/// `{restarts, max_iters, K, tol, seed}`.
struct OptimizerBudget {
    int restarts = 8;
    int max_iters = 2000;
    /// Product components per mixture; 0 means min(D^2, 32).
    int components = 0;
    /// Relative objective decrease below which an iteration counts as stalled.
    double tol = 1e-9;
    std::uint64_t seed = kDefaultSeed;
    /// Report 0, a tight upper bound, for states diagonal in the
    /// computational product basis without running the optimizer.
    bool classical_shortcut = true;

    void validate() const;
    friend bool operator==(const OptimizerBudget &, const OptimizerBudget &) = default;
};

enum class ValueKind { Exact, UpperBound };
std::string to_string(ValueKind kind);

struct EntanglementValue {
    /// raw_nats / normalizer_nats.
    double value = 0.0;
    ValueKind kind = ValueKind::Exact;
    double raw_nats = 0.0;
    double normalizer_nats = 0.0;
    /// False when the optimizer hit its iteration budget on the best run.
    bool converged = true;
    /// Set for closed-form values (GHZ combinations).
    std::optional<Rational> exact;
};

/// Raised when an exact bi-GP value is requested for a label whose reduced
/// state is mixed.
class MixedReducedState : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Reduced state of psi on the label's parties. Party i of the result is the
/// i-th smallest party of the label.
DensityMatrix reduce_to_label(const PureState &psi, const Label &label);

/// S(tr_B rho_AB) / ln 2 for a two-GP label. Labels not covering every party
/// are reduced first and must leave a pure state (purity >= 1 - 1e-9).
EntanglementValue bi_gp_entanglement(const PureState &psi, const Label &label);

/// Exact value when one is available: a two-GP label whose reduced state is
/// pure.
std::optional<EntanglementValue> exact_entanglement(const PureState &psi, const Label &label);

/// Upper bound on the GRE of `rho`, whose parties are the label's parties in
/// increasing order. Minimizes over every partition of the label's GPs into
/// at least two blocks and divides by normalizer(label).
EntanglementValue gre(const DensityMatrix &rho, const Label &label, const OptimizerBudget &budget);

struct RelativeEntropyBound {
    double nats = 0.0;
    bool converged = true;
    /// Index into set_partitions(num_gps, 2) of the minimizing partition.
    int partition = 0;
};

/// The unnormalized minimum over partitions, in nats.
RelativeEntropyBound gre_nats(const DensityMatrix &rho, const Label &label, const OptimizerBudget &budget);

struct Normalizer {
    /// Value used as the denominator.
    double nats = 0.0;
    /// Optimizer result before pinning (ln 2 for two-GP labels).
    double raw_nats = 0.0;
    /// True when the numerical value was within 1e-2 of ln 2 and replaced by it.
    bool pinned = false;
};

/// GRE in nats of the n-GHZ state on the label's parties. ln 2 exactly for
/// two-GP labels; computed and memoized per GP-size pattern otherwise.
Normalizer normalizer(const Label &label, const OptimizerBudget &budget);

using Profile = std::map<Label, EntanglementValue>;

/// Values for every label. Labels that split psi into a GP and its
/// complement take the exact path; others use exact_entanglement() when it
/// applies and gre() on the reduced state otherwise. Labels run in parallel.
Profile gre_state_profile(const PureState &psi, std::span<const Label> labels,
                          const OptimizerBudget &budget);
/// Same result computed one label at a time.
Profile gre_state_profile_serial(const PureState &psi, std::span<const Label> labels,
                                 const OptimizerBudget &budget);

} // namespace multient
