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
#include <exception>
#include <random>

#include "multient/constraints.hpp"
#include "multient/ghz_calculus.hpp"
#include "multient/separable_optimizer.hpp"

namespace multient {

std::size_t SearchReport::skipped() const {
    std::size_t n = 0;
    for (const auto &r : reports) n += r.skipped ? 1 : 0;
    return n;
}

std::size_t SearchReport::violations() const {
    std::size_t n = 0;
    for (const auto &r : reports) n += r.certified_violation ? 1 : 0;
    return n;
}

TrialReport evaluate_state(const PureState &psi, const OptimizerBudget &budget, int trial) {
    const int n = psi.shape().num_parties();
    if (n < 2 || n > kMaxSearchParties) {
        throw std::invalid_argument("search supports 2 to " + std::to_string(kMaxSearchParties) + " parties");
    }
    TrialReport report{.trial = trial, .state = psi, .skipped = false, .skip_reason = {}, .gen = {}, .feasibility = {}};
    const auto labels = constraint_labels(n);
    const Profile profile = gre_state_profile(psi, labels, budget);
    for (const auto &[label, value] : profile) {
        if (!value.converged) {
            report.skipped = true;
            report.skip_reason = "optimizer did not converge on " + label.to_string();
            return report;
        }
    }
    report.gen = check_gen(profile, n);
    const ConstraintSystem sys = build_system(profile, n);
    SolveOptions options;
    options.exact_verify = true;
    report.feasibility = solve_feasibility(sys, options);
    bool infeasible = false;
    if (const auto *w = std::get_if<InfeasibilityWitness>(&report.feasibility->result)) {
        // Entropies on the equality rows carry rounding error; demand a margin well above it.
        infeasible = report.feasibility->exact_verified && w->margin > kCertifiedMargin;
    }
    report.certified_violation = report.gen.violations() > 0 || infeasible;
    return report;
}

SearchReport search_counterexamples(int num_parties, int trials, std::uint64_t seed,
                                    const OptimizerBudget &budget) {
    if (num_parties < 2 || num_parties > kMaxSearchParties) {
        throw std::invalid_argument("search supports 2 to " + std::to_string(kMaxSearchParties) + " parties");
    }
    if (trials < 0) throw std::invalid_argument("trial count must be nonnegative");
    budget.validate();
    const SystemShape shape = SystemShape::qubits(num_parties);

    std::vector<std::optional<TrialReport>> slots(static_cast<std::size_t>(trials));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        try {
            std::mt19937_64 rng(detail::mix_seed(seed, static_cast<std::uint64_t>(t)));
            const PureState psi = haar_random_state(shape, rng);
            OptimizerBudget trial_budget = budget;
            trial_budget.seed = detail::mix_seed(budget.seed, static_cast<std::uint64_t>(t));
            slots[static_cast<std::size_t>(t)] = evaluate_state(psi, trial_budget, t);
        } catch (...) {
#pragma omp critical(multient_search_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    SearchReport report{
        .num_parties = num_parties, .trials = trials, .seed = seed, .budget = budget, .reports = {}};
    for (auto &slot : slots) report.reports.push_back(std::move(*slot));
    return report;
}

} // namespace multient
