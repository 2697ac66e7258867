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
 * @file ghz_calculus.hpp
 * Closed-form entanglement values of tensor products of GHZ-like states.
 *
 * In a combination with c_z copies of each g(z), a bi-GP entanglement (A, B)
 * receives exactly one unit from every copy of g(z) with z inside A u B and
 * meeting both A and B, and the entanglement among singletons (i1)...(in)
 * receives one unit per copy of g(i1...in) and nothing else.
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "multient/measures.hpp"
#include "multient/parties.hpp"
#include "multient/rational.hpp"

namespace multient {

/// Copy counts (or copy ratios x_z) per GHZ subset.
class GhzCombination {
  public:
    GhzCombination() = default;

    /// Parses `g(12)=2, g(123)=1/2`; separators are commas or whitespace.
    /// Party lists use the label bracket rules. A repeated subset is an error.
    static GhzCombination parse(std::string_view text);
    /// `{"12": 2, "123": "1/2"}`; keys use the same bracket-body rules.
    static GhzCombination from_json(const std::string &text);

    /// Throws unless |subset| >= 2 and count >= 0. A zero count erases.
    void set(const GeneralizedParty &subset, const Rational &count);
    [[nodiscard]] Rational get(const GeneralizedParty &subset) const;
    [[nodiscard]] const std::map<GeneralizedParty, Rational> &entries() const { return copies_; }
    [[nodiscard]] bool empty() const { return copies_.empty(); }
    /// Largest party index used, 0 when empty.
    [[nodiscard]] int max_party() const;

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] std::string to_json() const;

    friend GhzCombination operator+(const GhzCombination &a, const GhzCombination &b);
    friend bool operator==(const GhzCombination &, const GhzCombination &) = default;

  private:
    std::map<GeneralizedParty, Rational> copies_;
};

/// True iff subset lies inside A u B and meets both. Throws if A and B overlap.
bool contributes(const GeneralizedParty &subset, const GeneralizedParty &a, const GeneralizedParty &b);

/// sum_z c_z [contributes(z, A, B)].
Rational bi_gp_value(const GhzCombination &comb, const GeneralizedParty &a, const GeneralizedParty &b);

/// Copy count of g(i1...in) for a label of n >= 2 singletons.
Rational true_npartite_value(const GhzCombination &comb, const Label &label);

/// Closed form for two-GP or all-singleton labels, nullopt otherwise.
std::optional<Rational> closed_form_value(const GhzCombination &comb, const Label &label);

/// Exact values for every bi-GP label and every all-singleton label of an
/// N-party system (the labels the constraint system needs).
Profile combination_profile(const GhzCombination &comb, int num_parties);

/// Labels needed by build_system / check_gen: all two-GP labels and all
/// all-singleton labels over subsets of {1..N}.
std::vector<Label> constraint_labels(int num_parties);

} // namespace multient
