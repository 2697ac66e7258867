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
#include "multient/measures.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <tuple>

#include <omp.h>

#include "multient/separable_optimizer.hpp"

namespace multient {

namespace {

constexpr double kPurityTolerance = 1e-9;
constexpr double kNormalizerPinTolerance = 1e-2;

/// Maps label parties to positions 0..n-1 of the reduced state.
PartyMask to_positions(const GeneralizedParty &gp, const GeneralizedParty &support) {
    PartyMask out = 0;
    int pos = 0;
    for (int p : support.parties()) {
        if (gp.contains(p)) out |= PartyMask{1} << pos;
        ++pos;
    }
    return out;
}

std::uint64_t label_stream(const OptimizerBudget &budget, const std::string &key) {
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return detail::mix_seed(budget.seed, h);
}

EntanglementValue exact_value(double raw_nats) {
    EntanglementValue v;
    v.raw_nats = raw_nats;
    v.normalizer_nats = std::numbers::ln2;
    v.value = raw_nats / std::numbers::ln2;
    v.kind = ValueKind::Exact;
    return v;
}

bool covers_all(const Label &label, const SystemShape &shape) {
    return label.support() == shape.all_parties();
}

void check_label_fits(const Label &label, const SystemShape &shape) {
    if (!label.support().subset_of(shape.all_parties())) {
        throw std::invalid_argument("label " + label.to_string() + " refers to parties outside the state");
    }
}

} // namespace

void OptimizerBudget::validate() const {
    if (restarts < 1) throw std::invalid_argument("budget: restarts must be >= 1");
    if (max_iters < 1) throw std::invalid_argument("budget: max_iters must be >= 1");
    if (components < 0) throw std::invalid_argument("budget: K must be >= 0");
    if (!(tol >= 0.0)) throw std::invalid_argument("budget: tol must be >= 0");
}

std::string to_string(ValueKind kind) { return kind == ValueKind::Exact ? "Exact" : "UpperBound"; }

DensityMatrix reduce_to_label(const PureState &psi, const Label &label) {
    check_label_fits(label, psi.shape());
    return partial_trace(psi, label.support());
}

EntanglementValue bi_gp_entanglement(const PureState &psi, const Label &label) {
    if (label.num_gps() != 2) {
        throw std::invalid_argument("bi-GP entanglement needs exactly two GPs, got " + label.to_string());
    }
    check_label_fits(label, psi.shape());
    const auto &a = label.gps()[0];
    const auto &b = label.gps()[1];
    if (covers_all(label, psi.shape())) {
        // Entropy of the smaller side; both sides have the same spectrum.
        const auto &side = psi.shape().dimension(a) <= psi.shape().dimension(b) ? a : b;
        return exact_value(von_neumann_entropy(partial_trace(psi, side)));
    }
    const DensityMatrix reduced = reduce_to_label(psi, label);
    if (reduced.purity() < 1.0 - kPurityTolerance) {
        throw MixedReducedState("reduced state on " + label.support().to_string(false) +
                                " is mixed; use the GRE optimizer for " + label.to_string());
    }
    const GeneralizedParty support = label.support();
    const GeneralizedParty side(to_positions(a, support));
    return exact_value(von_neumann_entropy(partial_trace(reduced, side)));
}

std::optional<EntanglementValue> exact_entanglement(const PureState &psi, const Label &label) {
    check_label_fits(label, psi.shape());
    if (label.num_gps() == 2 && covers_all(label, psi.shape())) {
        return bi_gp_entanglement(psi, label);
    }
    const DensityMatrix reduced = reduce_to_label(psi, label);
    if (label.num_gps() == 2 && reduced.purity() >= 1.0 - kPurityTolerance) {
        const GeneralizedParty side(to_positions(label.gps()[0], label.support()));
        return exact_value(von_neumann_entropy(partial_trace(reduced, side)));
    }
    return std::nullopt;
}

RelativeEntropyBound gre_nats(const DensityMatrix &rho, const Label &label, const OptimizerBudget &budget) {
    budget.validate();
    const GeneralizedParty support = label.support();
    if (rho.num_parties() != support.size()) {
        throw std::invalid_argument("state has " + std::to_string(rho.num_parties()) +
                                    " parties but label " + label.to_string() + " covers " +
                                    std::to_string(support.size()));
    }
    const auto partitions = set_partitions(label.num_gps(), 2);
    const std::string key = label.to_string();
    RelativeEntropyBound best;
    best.nats = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < partitions.size(); ++s) {
        const auto &assign = partitions[s];
        const int nblocks = *std::max_element(assign.begin(), assign.end()) + 1;
        std::vector<PartyMask> blocks(static_cast<std::size_t>(nblocks), 0);
        for (std::size_t g = 0; g < assign.size(); ++g) {
            blocks[static_cast<std::size_t>(assign[g])] |= to_positions(label.gps()[g], support);
        }
        const SeparableFit fit =
            minimize_relative_entropy(rho.matrix(), rho.shape().dims(), blocks, budget,
                                      detail::mix_seed(label_stream(budget, key), s));
        if (fit.nats < best.nats) {
            best.nats = fit.nats;
            best.converged = fit.converged;
            best.partition = static_cast<int>(s);
        }
    }
    return best;
}

Normalizer normalizer(const Label &label, const OptimizerBudget &budget) {
    if (label.num_gps() == 2) {
        return {std::numbers::ln2, std::numbers::ln2, false};
    }
    // The n-GHZ value depends only on the GP sizes.
    std::vector<int> sizes;
    for (const auto &gp : label.gps()) sizes.push_back(gp.size());
    std::sort(sizes.begin(), sizes.end());
    using Key = std::tuple<std::vector<int>, int, int, int, double, std::uint64_t>;
    const Key key{sizes, budget.restarts, budget.max_iters, budget.components, budget.tol, budget.seed};

    static std::mutex mutex;
    static std::map<Key, Normalizer> memo;
    {
        std::lock_guard lock(mutex);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    std::vector<GeneralizedParty> gps;
    int next = 1;
    for (int s : sizes) {
        PartyMask m = 0;
        for (int i = 0; i < s; ++i) m |= PartyMask{1} << (next++ - 1);
        gps.emplace_back(m);
    }
    const Label shape_label(std::move(gps));
    const int n = next - 1;
    const auto ghz = DensityMatrix::from_pure(make_ghz(GeneralizedParty::first(n), SystemShape::qubits(n)));
    OptimizerBudget b = budget;
    b.classical_shortcut = false;
    const double raw = gre_nats(ghz, shape_label, b).nats;
    Normalizer result{raw, raw, false};
    if (std::abs(raw - std::numbers::ln2) <= kNormalizerPinTolerance) {
        result.nats = std::numbers::ln2;
        result.pinned = true;
    }
    std::lock_guard lock(mutex);
    memo.emplace(key, result);
    return result;
}

EntanglementValue gre(const DensityMatrix &rho, const Label &label, const OptimizerBudget &budget) {
    budget.validate();
    const Normalizer norm = normalizer(label, budget);
    if (rho.num_parties() != label.num_parties()) {
        throw std::invalid_argument("state and label " + label.to_string() + " disagree on party count");
    }
    EntanglementValue v;
    v.normalizer_nats = norm.nats;
    if (budget.classical_shortcut && is_diagonal_in_product_basis(rho.matrix())) {
        v.kind = ValueKind::UpperBound;
        return v;
    }
    const RelativeEntropyBound bound = gre_nats(rho, label, budget);
    v.kind = ValueKind::UpperBound;
    v.raw_nats = bound.nats;
    v.value = bound.nats / norm.nats;
    v.converged = bound.converged;
    return v;
}

namespace {

EntanglementValue profile_entry(const PureState &psi, const Label &label, const OptimizerBudget &budget) {
    const LabelClass cls = classify_label(label, psi.num_parties());
    if (cls.kind == LabelKind::BiGPAllParties) {
        return bi_gp_entanglement(psi, label);
    }
    if (auto exact = exact_entanglement(psi, label)) {
        if (label.num_gps() > 2) exact->normalizer_nats = normalizer(label, budget).nats;
        return *exact;
    }
    return gre(reduce_to_label(psi, label), label, budget);
}

} // namespace

Profile gre_state_profile(const PureState &psi, std::span<const Label> labels, const OptimizerBudget &budget) {
    budget.validate();
    // Fill the normalizer memo up front so parallel entries do not race to compute it.
    for (const auto &label : labels) {
        if (label.num_gps() > 2) normalizer(label, budget);
    }
    std::vector<std::optional<EntanglementValue>> values(labels.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(labels.size()); ++i) {
        try {
            values[static_cast<std::size_t>(i)] = profile_entry(psi, labels[static_cast<std::size_t>(i)], budget);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    Profile out;
    for (std::size_t i = 0; i < labels.size(); ++i) out.emplace(labels[i], *values[i]);
    return out;
}

Profile gre_state_profile_serial(const PureState &psi, std::span<const Label> labels,
                                 const OptimizerBudget &budget) {
    budget.validate();
    Profile out;
    for (const auto &label : labels) out.emplace(label, profile_entry(psi, label, budget));
    return out;
}

} // namespace multient
