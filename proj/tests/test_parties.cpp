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
#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "multient/parties.hpp"

using namespace multient;

namespace {

// Labels of {1..N} by brute force: every subset, every assignment of its
// parties to block ids, kept when it uses at least two blocks. Printed in
// a canonical text form independent of Label::to_string.
std::set<std::string> brute_force_labels(int n) {
    std::set<std::string> out;
    for (unsigned subset = 1; subset < (1u << n); ++subset) {
        std::vector<int> members;
        for (int p = 0; p < n; ++p) {
            if (subset & (1u << p)) members.push_back(p + 1);
        }
        const int k = static_cast<int>(members.size());
        if (k < 2) continue;
        std::vector<int> block(static_cast<std::size_t>(k), 0);
        std::function<void(int)> assign = [&](int i) {
            if (i == k) {
                std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
                for (int j = 0; j < k; ++j) blocks[static_cast<std::size_t>(block[j])].push_back(members[j]);
                std::vector<std::string> parts;
                for (const auto &b : blocks) {
                    if (b.empty()) continue;
                    std::string s = "(";
                    for (int p : b) s += std::to_string(p);
                    parts.push_back(s + ")");
                }
                if (parts.size() < 2) return;
                std::sort(parts.begin(), parts.end());
                std::string text;
                for (const auto &p : parts) text += p;
                out.insert(text);
                return;
            }
            for (int b = 0; b < k; ++b) {
                block[static_cast<std::size_t>(i)] = b;
                assign(i + 1);
            }
        };
        assign(0);
    }
    return out;
}

std::string sorted_text(const Label &l) {
    std::vector<std::string> parts;
    for (const auto &gp : l.gps()) parts.push_back("(" + gp.to_string(true) + ")");
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto &p : parts) s += p;
    return s;
}

long long binom(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Bell numbers via the Stirling recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1).
long long bell(int n) {
    std::vector<std::vector<long long>> s(static_cast<std::size_t>(n + 1),
                                          std::vector<long long>(static_cast<std::size_t>(n + 1), 0));
    s[0][0] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int k = 1; k <= i; ++k) s[i][k] = k * s[i - 1][k] + s[i - 1][k - 1];
    }
    long long b = 0;
    for (int k = 0; k <= n; ++k) b += s[n][k];
    return b;
}

} // namespace

TEST_CASE("three parties have seven labels") {
    CHECK(count_labels(3) == 7);
    const auto labels = enumerate_labels(3);
    std::vector<std::string> text;
    for (const auto &l : labels) text.push_back(l.to_string());
    CHECK(text == std::vector<std::string>{"(1)(2)", "(1)(3)", "(2)(3)", "(1)(23)", "(12)(3)", "(13)(2)",
                                           "(1)(2)(3)"});
}

TEST_CASE("label counts match brute force and the Stirling oracle") {
    for (int n = 2; n <= 6; ++n) {
        CAPTURE(n);
        const auto brute = brute_force_labels(n);
        long long stirling = 0;
        for (int k = 2; k <= n; ++k) stirling += binom(n, k) * (bell(k) - 1);
        CHECK(count_labels(n) == static_cast<long long>(brute.size()));
        CHECK(count_labels(n) == stirling);
        std::set<std::string> got;
        for (const auto &l : enumerate_labels(n)) got.insert(sorted_text(l));
        CHECK(got == brute);
        CHECK(enumerate_labels(n).size() == brute.size());
    }
    CHECK(count_labels(7) == 7 * 6 / 2 * 1 + 35 * 4 + 35 * 14 + 21 * 51 + 7 * 202 + 876);
}

TEST_CASE("partition_count equals Stirling numbers of the second kind") {
    // S(5,2)=15, S(5,3)=25, S(5,4)=10, S(5,5)=1.
    CHECK(partition_count(5, 2) == 15);
    CHECK(partition_count(5, 3) == 25);
    CHECK(partition_count(5, 4) == 10);
    CHECK(partition_count(5, 5) == 1);
    CHECK(set_partitions(4, 2).size() == 14);
    CHECK(set_partitions(5, 1).size() == 52);
}

TEST_CASE("subset and bipartition counts") {
    for (int n = 2; n <= 8; ++n) {
        CAPTURE(n);
        CHECK(ghz_subset_count(n) == (1 << n) - n - 1);
        CHECK(enumerate_ghz_subsets(n).size() == static_cast<std::size_t>((1 << n) - n - 1));
        CHECK(bi_gp_all_count(n) == (1 << (n - 1)) - 1);
        // Ordered disjoint nonempty pairs: 3^n - 2*2^n + 1.
        long long pow3 = 1;
        for (int i = 0; i < n; ++i) pow3 *= 3;
        CHECK(bi_gp_ordered_count(n) == pow3 - 2 * (1LL << n) + 1);
        CHECK(bi_gp_ordered_count(n) == 2 * bi_gp_unordered_count(n));
        if (n <= 6) {
            long long two_gp = 0;
            for (const auto &l : enumerate_labels(n)) two_gp += l.num_gps() == 2;
            CHECK(bi_gp_unordered_count(n) == two_gp);
        }
    }
    CHECK(ghz_subset_count(3) == 4);
    CHECK(bi_gp_all_count(3) == 3);
}

TEST_CASE("enumeration caps") {
    CHECK_THROWS_AS(enumerate_labels(9), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_labels(1), std::invalid_argument);
    CHECK(enumerate_labels(2).size() == 1);
    CHECK(enumerate_labels(4, 3).size() == 4 * 4);
}

TEST_CASE("label parsing and printing round trip") {
    for (int n = 2; n <= 5; ++n) {
        for (const auto &l : enumerate_labels(n)) CHECK(Label::parse(l.to_string()) == l);
    }
    CHECK(Label::parse("(23)(1)") == Label::parse("(1)(23)"));
    CHECK(Label::parse("( 1 2 )( 3 )").to_string() == "(12)(3)");
    CHECK(Label::parse("(1,2)(3)").to_string() == "(12)(3)");
    const Label wide = Label::parse("(1 11)(2)");
    CHECK(wide.to_string() == "(1 11)(2)");
    CHECK(Label::parse(wide.to_string()) == wide);
    CHECK(canonical(wide) == wide);
}

TEST_CASE("invalid labels") {
    CHECK_THROWS_AS(Label::parse("(12)(2)"), ParseError);
    CHECK_THROWS_AS(Label::parse("(123)"), ParseError);
    CHECK_THROWS_AS(Label::parse("(1)()"), ParseError);
    CHECK_THROWS_AS(Label::parse("(0)(1)"), ParseError);
    CHECK_THROWS_AS(Label::parse("(1)(2"), ParseError);
    CHECK_THROWS_AS(Label::parse("(1)(x)"), ParseError);
    CHECK_THROWS_AS(Label::parse("(1)(31)"), ParseError);
    CHECK_THROWS(Label({GeneralizedParty::of({1, 2}), GeneralizedParty::of({2})}));
}

TEST_CASE("classification precedence") {
    CHECK(classify_label(Label::parse("(1)(2)"), 2) == LabelClass{LabelKind::BiGPAllParties, 2});
    CHECK(classify_label(Label::parse("(1)(2)"), 3).kind == LabelKind::BiGP);
    CHECK(classify_label(Label::parse("(12)(3)"), 3) == LabelClass{LabelKind::BiGPAllParties, 3});
    CHECK(classify_label(Label::parse("(1)(2)(3)"), 4) == LabelClass{LabelKind::TrueNPartite, 3});
    CHECK(classify_label(Label::parse("(12)(3)(4)"), 4).kind == LabelKind::Other);
    CHECK(Label::parse("(1)(2)").all_singletons());
    CHECK_FALSE(Label::parse("(12)(3)").all_singletons());
    CHECK_THROWS(classify_label(Label::parse("(1)(5)"), 4));
}

TEST_CASE("generalized party ordering and set operations") {
    const auto a = GeneralizedParty::of({1, 3});
    const auto b = GeneralizedParty::of({2});
    CHECK(a.size() == 2);
    CHECK(a.min_party() == 1);
    CHECK(a.max_party() == 3);
    CHECK(a.disjoint(b));
    CHECK((a | b) == GeneralizedParty::first(3));
    CHECK(b < a);
    CHECK(GeneralizedParty::of({1, 2}) < GeneralizedParty::of({1, 3}));
    CHECK(GeneralizedParty::parse("12 3").parties() == std::vector<int>{3, 12});
}
