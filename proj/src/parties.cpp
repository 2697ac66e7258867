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
#include "multient/parties.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>

namespace multient {

namespace {

void check_party_index(int party) {
    if (party < 1 || party > kMaxPartyIndex) {
        throw std::invalid_argument("party index " + std::to_string(party) + " outside [1, " +
                                    std::to_string(kMaxPartyIndex) + "]");
    }
}

Integer factorial(int n) {
    Integer r(1);
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Integer binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

void check_enumeration_range(int num_parties) {
    if (num_parties < 2 || num_parties > kMaxEnumerationParties) {
        throw std::invalid_argument("party count " + std::to_string(num_parties) +
                                    " outside [2, " + std::to_string(kMaxEnumerationParties) + "]");
    }
}

} // namespace

GeneralizedParty::GeneralizedParty(PartyMask mask) : mask_(mask) {
    if (mask == 0) {
        throw std::invalid_argument("generalized party must be nonempty");
    }
    if (mask >> kMaxPartyIndex) {
        throw std::invalid_argument("generalized party has index above " + std::to_string(kMaxPartyIndex));
    }
}

GeneralizedParty GeneralizedParty::of(std::initializer_list<int> parties) {
    return of(std::span<const int>(parties.begin(), parties.size()));
}

GeneralizedParty GeneralizedParty::of(std::span<const int> parties) {
    PartyMask mask = 0;
    for (int p : parties) {
        check_party_index(p);
        const PartyMask bit = PartyMask{1} << (p - 1);
        if (mask & bit) {
            throw std::invalid_argument("party " + std::to_string(p) + " repeated within a GP");
        }
        mask |= bit;
    }
    return GeneralizedParty(mask);
}

GeneralizedParty GeneralizedParty::first(int n) {
    if (n < 1 || n > kMaxPartyIndex) {
        throw std::invalid_argument("party count out of range");
    }
    return GeneralizedParty(n == 32 ? ~PartyMask{0} : ((PartyMask{1} << n) - 1));
}

GeneralizedParty GeneralizedParty::parse(std::string_view body) {
    const bool spaced = body.find_first_of(" \t\n\r,") != std::string_view::npos;
    std::vector<int> parties;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        if (token.size() > 3) throw ParseError("party index '" + token + "' too large");
        parties.push_back(std::stoi(token));
        token.clear();
    };
    for (char c : body) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            if (spaced) {
                token += c;
            } else {
                parties.push_back(c - '0');
            }
        } else if (spaced && (std::isspace(static_cast<unsigned char>(c)) || c == ',')) {
            flush();
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'");
        }
    }
    flush();
    if (parties.empty()) throw ParseError("empty generalized party");
    return of(parties);
}

std::vector<int> GeneralizedParty::parties() const {
    std::vector<int> out;
    for (int i = 0; i < kMaxPartyIndex; ++i) {
        if (mask_ & (PartyMask{1} << i)) out.push_back(i + 1);
    }
    return out;
}

int GeneralizedParty::size() const { return std::popcount(mask_); }
int GeneralizedParty::min_party() const { return std::countr_zero(mask_) + 1; }
int GeneralizedParty::max_party() const { return 32 - std::countl_zero(mask_); }
bool GeneralizedParty::contains(int party) const {
    return party >= 1 && party <= kMaxPartyIndex && (mask_ & (PartyMask{1} << (party - 1)));
}

std::string GeneralizedParty::to_string(bool compact) const {
    std::string out;
    for (int p : parties()) {
        if (!compact && !out.empty()) out += ' ';
        out += std::to_string(p);
    }
    return out;
}

std::strong_ordering operator<=>(const GeneralizedParty &a, const GeneralizedParty &b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    const auto pa = a.parties();
    const auto pb = b.parties();
    return std::lexicographical_compare_three_way(pa.begin(), pa.end(), pb.begin(), pb.end());
}

GeneralizedParty operator|(const GeneralizedParty &a, const GeneralizedParty &b) {
    return GeneralizedParty(a.mask() | b.mask());
}

Label::Label(std::vector<GeneralizedParty> gps) : gps_(std::move(gps)) {
    if (gps_.size() < 2) {
        throw std::invalid_argument("a label needs at least two generalized parties");
    }
    PartyMask seen = 0;
    for (const auto &gp : gps_) {
        if (gp.mask() == 0) {
            throw std::invalid_argument("empty generalized party in label");
        }
        if (seen & gp.mask()) {
            throw std::invalid_argument("generalized parties in a label must not overlap");
        }
        seen |= gp.mask();
    }
    std::sort(gps_.begin(), gps_.end(),
              [](const auto &a, const auto &b) { return a.min_party() < b.min_party(); });
}

GeneralizedParty Label::support() const {
    PartyMask m = 0;
    for (const auto &gp : gps_) m |= gp.mask();
    return GeneralizedParty(m);
}

bool Label::all_singletons() const {
    return std::all_of(gps_.begin(), gps_.end(), [](const auto &gp) { return gp.size() == 1; });
}

std::string Label::to_string() const {
    const bool compact = support().max_party() < 10;
    std::string out;
    for (const auto &gp : gps_) {
        out += '(';
        out += gp.to_string(compact);
        out += ')';
    }
    return out;
}

std::strong_ordering operator<=>(const Label &a, const Label &b) {
    return std::lexicographical_compare_three_way(a.gps_.begin(), a.gps_.end(), b.gps_.begin(),
                                                  b.gps_.end());
}

Label Label::parse(std::string_view text) {
    std::vector<GeneralizedParty> gps;
    std::size_t i = 0;
    auto fail = [&](const std::string &why) -> ParseError {
        return ParseError("bad label '" + std::string(text) + "': " + why);
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c != '(') throw fail("expected '('");
        const auto close = text.find(')', i + 1);
        if (close == std::string_view::npos) throw fail("unbalanced '('");
        const std::string_view body = text.substr(i + 1, close - i - 1);
        if (body.find('(') != std::string_view::npos) throw fail("nested '('");
        try {
            gps.push_back(GeneralizedParty::parse(body));
        } catch (const std::invalid_argument &e) {
            throw fail(e.what());
        }
        i = close + 1;
    }
    try {
        return Label(std::move(gps));
    } catch (const std::invalid_argument &e) {
        throw fail(e.what());
    }
}

Label canonical(const Label &label) { return Label(label.gps()); }

LabelClass classify_label(const Label &label, int num_parties) {
    if (label.support().max_party() > num_parties) {
        throw std::invalid_argument("label " + label.to_string() + " uses parties beyond " +
                                    std::to_string(num_parties));
    }
    const int covered = label.num_parties();
    if (label.num_gps() == 2) {
        if (label.support() == GeneralizedParty::first(num_parties)) {
            return {LabelKind::BiGPAllParties, num_parties};
        }
        return {LabelKind::BiGP, covered};
    }
    if (label.all_singletons()) {
        return {LabelKind::TrueNPartite, covered};
    }
    return {LabelKind::Other, covered};
}

std::string to_string(const LabelClass &cls) {
    switch (cls.kind) {
    case LabelKind::BiGP:
        return "BiGP";
    case LabelKind::BiGPAllParties:
        return "BiGPAllParties(" + std::to_string(cls.parties) + ")";
    case LabelKind::TrueNPartite:
        return "TrueNPartite(" + std::to_string(cls.parties) + ")";
    case LabelKind::Other:
        return "Other";
    }
    return "Other";
}

std::vector<std::vector<int>> set_partitions(int n, int min_blocks) {
    std::vector<std::vector<int>> out;
    if (n <= 0) return out;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int pos, int blocks) {
        if (pos == n) {
            if (blocks >= min_blocks) out.push_back(rgs);
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            rgs[static_cast<std::size_t>(pos)] = b;
            rec(pos + 1, std::max(blocks, b + 1));
        }
    };
    rgs[0] = 0;
    rec(1, 1);
    return out;
}

std::vector<Label> enumerate_labels(int num_parties, std::optional<int> subset_size) {
    check_enumeration_range(num_parties);
    if (subset_size && (*subset_size < 2 || *subset_size > num_parties)) {
        throw std::invalid_argument("subset size must lie in [2, N]");
    }
    const int lo = subset_size.value_or(2);
    const int hi = subset_size.value_or(num_parties);
    std::vector<Label> out;
    for (int n = lo; n <= hi; ++n) {
        const auto partitions = set_partitions(n, 2);
        for (const auto &subset : enumerate_ghz_subsets(num_parties)) {
            if (subset.size() != n) continue;
            const auto members = subset.parties();
            std::vector<Label> here;
            for (const auto &rgs : partitions) {
                const int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
                std::vector<PartyMask> masks(static_cast<std::size_t>(blocks), 0);
                for (int j = 0; j < n; ++j) {
                    masks[static_cast<std::size_t>(rgs[static_cast<std::size_t>(j)])] |=
                        PartyMask{1} << (members[static_cast<std::size_t>(j)] - 1);
                }
                std::vector<GeneralizedParty> gps;
                for (auto m : masks) gps.emplace_back(m);
                here.emplace_back(std::move(gps));
            }
            std::stable_sort(here.begin(), here.end(), [](const Label &a, const Label &b) {
                if (a.num_gps() != b.num_gps()) return a.num_gps() < b.num_gps();
                return a < b;
            });
            out.insert(out.end(), here.begin(), here.end());
        }
    }
    return out;
}

std::vector<GeneralizedParty> enumerate_ghz_subsets(int num_parties) {
    if (num_parties < 2 || num_parties > kMaxPartyIndex) {
        throw std::invalid_argument("party count out of range");
    }
    std::vector<GeneralizedParty> out;
    const PartyMask full = (PartyMask{1} << num_parties) - 1;
    for (PartyMask m = 1; m <= full; ++m) {
        if (std::popcount(m) >= 2) out.emplace_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Integer partition_count(int n, int m) {
    if (m < 1 || n < m) return Integer(0);
    Integer sum(0);
    const Integer n_fact = factorial(n);
    // Ordered compositions n1 + ... + nm = n with every ni >= 1.
    std::vector<int> parts(static_cast<std::size_t>(m), 1);
    std::function<void(int, int)> rec = [&](int idx, int remaining) {
        if (idx == m - 1) {
            parts[static_cast<std::size_t>(idx)] = remaining;
            Integer denom(1);
            for (int p : parts) denom *= factorial(p);
            sum += n_fact / denom;
            return;
        }
        for (int v = 1; v <= remaining - (m - 1 - idx); ++v) {
            parts[static_cast<std::size_t>(idx)] = v;
            rec(idx + 1, remaining - v);
        }
    };
    rec(0, n);
    const Integer m_fact = factorial(m);
    if (sum % m_fact != 0) {
        throw std::logic_error("partition count not divisible by m!");
    }
    return sum / m_fact;
}

Integer count_labels(int num_parties) {
    if (num_parties < 2) {
        throw std::invalid_argument("count_labels needs N >= 2");
    }
    Integer total(0);
    for (int n = 2; n <= num_parties; ++n) {
        Integer inner(0);
        for (int m = 2; m <= n; ++m) inner += partition_count(n, m);
        total += binomial(num_parties, n) * inner;
    }
    return total;
}

Integer ghz_subset_count(int num_parties) {
    return (Integer(1) << num_parties) - num_parties - 1;
}

Integer bi_gp_all_count(int num_parties) { return (Integer(1) << (num_parties - 1)) - 1; }

Integer bi_gp_ordered_count(int num_parties) {
    Integer total(0);
    const Integer n_fact = factorial(num_parties);
    for (int n1 = 1; n1 <= num_parties - 1; ++n1) {
        for (int n2 = 1; n2 <= num_parties - n1; ++n2) {
            total += n_fact / (factorial(n1) * factorial(n2) * factorial(num_parties - n1 - n2));
        }
    }
    return total;
}

Integer bi_gp_unordered_count(int num_parties) { return bi_gp_ordered_count(num_parties) / 2; }

} // namespace multient
