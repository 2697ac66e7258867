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
 * @file parties.hpp
 * Parties, generalized parties (GPs) and entanglement labels (sets of at
 * least two disjoint GPs), with the counting formulas for all labels of an
 * N-party system.
 *
 * Party indices are 1-based. A GP is stored as a bit mask where bit (i-1)
 * marks party i, which caps party indices at kMaxPartyIndex.
 */
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "multient/rational.hpp"

namespace multient {

using PartyMask = std::uint32_t;

inline constexpr int kMaxPartyIndex = 30;
inline constexpr int kMaxEnumerationParties = 8;

/// Raised for malformed label or combination text.
class ParseError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A nonempty set of parties acting as a single unit.
class GeneralizedParty {
  public:
    GeneralizedParty() = default;
    explicit GeneralizedParty(PartyMask mask);

    static GeneralizedParty of(std::initializer_list<int> parties);
    static GeneralizedParty of(std::span<const int> parties);
    /// Parties 1..n.
    static GeneralizedParty first(int n);
    /// Parses a bracket body such as "12" or "1 12": when the text contains
    /// whitespace or commas the tokens are decimal indices, otherwise every
    /// digit is one party.
    static GeneralizedParty parse(std::string_view body);

    [[nodiscard]] PartyMask mask() const { return mask_; }
    [[nodiscard]] std::vector<int> parties() const;
    [[nodiscard]] int size() const;
    [[nodiscard]] int min_party() const;
    [[nodiscard]] int max_party() const;
    [[nodiscard]] bool contains(int party) const;
    [[nodiscard]] bool disjoint(const GeneralizedParty &other) const {
        return (mask_ & other.mask_) == 0;
    }
    [[nodiscard]] bool subset_of(const GeneralizedParty &other) const {
        return (mask_ & ~other.mask_) == 0;
    }

    /// "12" when compact, "1 12" otherwise (no brackets).
    [[nodiscard]] std::string to_string(bool compact) const;

    friend bool operator==(const GeneralizedParty &, const GeneralizedParty &) = default;
    /// Orders by size, then lexicographically by sorted party list.
    friend std::strong_ordering operator<=>(const GeneralizedParty &a, const GeneralizedParty &b);

  private:
    PartyMask mask_ = 0;
};

GeneralizedParty operator|(const GeneralizedParty &a, const GeneralizedParty &b);

/// An entanglement label: an unordered set of at least two pairwise
/// disjoint GPs. Stored canonically with GPs sorted by smallest party.
class Label {
  public:
    explicit Label(std::vector<GeneralizedParty> gps);

    /// Parses "(1)(2 3)", "(1)(23)", "( 12 )( 3 )". Inside a bracket that
    /// contains whitespace or commas the tokens are decimal party indices;
    /// otherwise each digit is one party.
    static Label parse(std::string_view text);

    [[nodiscard]] const std::vector<GeneralizedParty> &gps() const { return gps_; }
    [[nodiscard]] int num_gps() const { return static_cast<int>(gps_.size()); }
    /// Union of all GPs.
    [[nodiscard]] GeneralizedParty support() const;
    [[nodiscard]] int num_parties() const { return support().size(); }
    [[nodiscard]] bool all_singletons() const;

    /// Compact form when every index is below 10, spaced form otherwise.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Label &, const Label &) = default;
    friend std::strong_ordering operator<=>(const Label &a, const Label &b);

  private:
    std::vector<GeneralizedParty> gps_;
};

/// Returns the label with its GPs in canonical order. Labels are always
/// canonical after construction; this exists for explicit idempotence checks.
Label canonical(const Label &label);

enum class LabelKind {
    BiGP,           ///< two GPs not covering all N parties
    BiGPAllParties, ///< a GP and its complement
    TrueNPartite,   ///< n >= 3 singleton GPs
    Other,
};

struct LabelClass {
    LabelKind kind;
    /// N for BiGPAllParties, n for TrueNPartite, party count otherwise.
    int parties;

    friend bool operator==(const LabelClass &, const LabelClass &) = default;
};

/// Classification precedence: BiGPAllParties, BiGP, TrueNPartite, Other.
/// A two-singleton label such as (1)(2) is therefore a bi-GP label; use
/// Label::all_singletons() for the "entanglement among all n parties" test.
/// Throws std::invalid_argument if the label uses a party above num_parties.
LabelClass classify_label(const Label &label, int num_parties);
std::string to_string(const LabelClass &cls);

/// Every label over every subset of size 2..N (or exactly `subset_size`).
/// Ordered by subset size, then subset, then number of GPs, then label.
std::vector<Label> enumerate_labels(int num_parties, std::optional<int> subset_size = std::nullopt);

/// Every subset of {1..N} with at least two parties, ordered by size then
/// lexicographically. These index the GHZ-like states of an N-party system.
std::vector<GeneralizedParty> enumerate_ghz_subsets(int num_parties);

/// All set partitions of {0..n-1} into at least `min_blocks` blocks, as
/// block assignments in restricted-growth form (first element in block 0).
std::vector<std::vector<int>> set_partitions(int n, int min_blocks);

/// Number of partitions of n parties into m GPs, summed over compositions
/// n1+...+nm = n of n!/(n1!...nm! m!).
Integer partition_count(int n, int m);

/// Total number of labels of an N-party system:
/// sum_{n=2}^N C(N,n) sum_{m=2}^n partition_count(n, m).
Integer count_labels(int num_parties);

/// 2^N - N - 1.
Integer ghz_subset_count(int num_parties);
/// 2^{N-1} - 1.
Integer bi_gp_all_count(int num_parties);
/// sum_{n1=1}^{N-1} sum_{n2=1}^{N-n1} N!/(n1! n2! (N-n1-n2)!), which counts
/// ordered (A, B) pairs.
Integer bi_gp_ordered_count(int num_parties);
/// Unordered bi-GP labels; half the ordered count.
Integer bi_gp_unordered_count(int num_parties);

} // namespace multient
