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
#include "multient/ghz_calculus.hpp"

#include <algorithm>
#include <cctype>
#include <numbers>

#include <json.hpp>

namespace multient {

GhzCombination GhzCombination::parse(std::string_view text) {
    GhzCombination out;
    std::vector<GeneralizedParty> seen;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',' || text[i] == ';')) ++i;
    };
    auto fail = [&](const std::string &why) {
        return ParseError("bad combination '" + std::string(text) + "': " + why);
    };
    skip();
    while (i < text.size()) {
        if (text[i] != 'g' || i + 1 >= text.size() || text[i + 1] != '(') throw fail("expected 'g('");
        const auto close = text.find(')', i + 2);
        if (close == std::string_view::npos) throw fail("unbalanced '('");
        GeneralizedParty subset;
        try {
            subset = GeneralizedParty::parse(text.substr(i + 2, close - i - 2));
        } catch (const std::invalid_argument &e) {
            throw fail(e.what());
        }
        i = close + 1;
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size() || text[i] != '=') throw fail("expected '='");
        ++i;
        const std::size_t start = i;
        while (i < text.size() && text[i] != ',' && text[i] != ';' && text[i] != 'g') ++i;
        Rational count;
        try {
            count = parse_rational(text.substr(start, i - start));
        } catch (const std::invalid_argument &e) {
            throw fail(e.what());
        }
        if (std::find(seen.begin(), seen.end(), subset) != seen.end()) throw fail("subset listed twice");
        seen.push_back(subset);
        try {
            out.set(subset, count);
        } catch (const std::invalid_argument &e) {
            throw fail(e.what());
        }
        skip();
    }
    return out;
}

GhzCombination GhzCombination::from_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("combination JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("combination JSON must be an object");
    GhzCombination out;
    for (const auto &[key, value] : doc.items()) {
        const GeneralizedParty subset = GeneralizedParty::parse(key);
        Rational count;
        if (value.is_number_integer()) {
            count = Rational(value.get<long long>());
        } else if (value.is_string()) {
            count = parse_rational(value.get<std::string>());
        } else if (value.is_number()) {
            count = exact_rational(value.get<double>());
        } else {
            throw ParseError("combination count for '" + key + "' must be a number or string");
        }
        out.set(subset, count);
    }
    return out;
}

void GhzCombination::set(const GeneralizedParty &subset, const Rational &count) {
    if (subset.size() < 2) {
        throw std::invalid_argument("GHZ subsets need at least two parties");
    }
    if (count < 0) {
        throw std::invalid_argument("copy counts must be nonnegative");
    }
    if (count == 0) {
        copies_.erase(subset);
    } else {
        copies_[subset] = count;
    }
}

Rational GhzCombination::get(const GeneralizedParty &subset) const {
    const auto it = copies_.find(subset);
    return it == copies_.end() ? Rational(0) : it->second;
}

int GhzCombination::max_party() const {
    int m = 0;
    for (const auto &[s, c] : copies_) m = std::max(m, s.max_party());
    return m;
}

std::string GhzCombination::to_string() const {
    std::string out;
    for (const auto &[s, c] : copies_) {
        if (!out.empty()) out += ", ";
        out += "g(" + s.to_string(s.max_party() < 10) + ")=" + multient::to_string(c);
    }
    return out;
}

std::string GhzCombination::to_json() const {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto &[s, c] : copies_) doc[s.to_string(s.max_party() < 10)] = multient::to_string(c);
    return doc.dump();
}

GhzCombination operator+(const GhzCombination &a, const GhzCombination &b) {
    GhzCombination out = a;
    for (const auto &[s, c] : b.copies_) out.set(s, out.get(s) + c);
    return out;
}

bool contributes(const GeneralizedParty &subset, const GeneralizedParty &a, const GeneralizedParty &b) {
    if (!a.disjoint(b)) {
        throw std::invalid_argument("contributes: GPs overlap");
    }
    return subset.subset_of(a | b) && !subset.disjoint(a) && !subset.disjoint(b);
}

Rational bi_gp_value(const GhzCombination &comb, const GeneralizedParty &a, const GeneralizedParty &b) {
    Rational total(0);
    for (const auto &[subset, count] : comb.entries()) {
        if (contributes(subset, a, b)) total += count;
    }
    return total;
}

Rational true_npartite_value(const GhzCombination &comb, const Label &label) {
    if (!label.all_singletons()) {
        throw std::invalid_argument("true n-partite value needs singleton GPs, got " + label.to_string());
    }
    return comb.get(label.support());
}

std::optional<Rational> closed_form_value(const GhzCombination &comb, const Label &label) {
    if (label.num_gps() == 2) return bi_gp_value(comb, label.gps()[0], label.gps()[1]);
    if (label.all_singletons()) return true_npartite_value(comb, label);
    return std::nullopt;
}

std::vector<Label> constraint_labels(int num_parties) {
    std::vector<Label> out;
    for (const auto &label : enumerate_labels(num_parties)) {
        if (label.num_gps() == 2 || label.all_singletons()) out.push_back(label);
    }
    return out;
}

Profile combination_profile(const GhzCombination &comb, int num_parties) {
    if (comb.max_party() > num_parties) {
        throw std::invalid_argument("combination uses parties beyond N");
    }
    Profile out;
    for (const auto &label : constraint_labels(num_parties)) {
        const Rational q = *closed_form_value(comb, label);
        EntanglementValue v;
        v.kind = ValueKind::Exact;
        v.exact = q;
        v.value = to_double(q);
        v.normalizer_nats = std::numbers::ln2;
        v.raw_nats = v.value * std::numbers::ln2;
        out.emplace(label, v);
    }
    return out;
}

} // namespace multient
