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
 * @file multient_cli.cpp
 * Command-line driver. JSON on stdout (or --out) by default, aligned text
 * with --format table.
 *
 * Exit codes: 0 success, 1 certified violation, 2 usage error,
 * 3 numerical failure.
 */
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multient/constraints.hpp"
#include "multient/ghz_calculus.hpp"
#include "multient/measures.hpp"
#include "multient/parties.hpp"
#include "multient/report_json.hpp"
#include "multient/states.hpp"

namespace {

using namespace multient;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct RunConfig {
    int parties = 0;
    std::string state_path;
    std::string label;
    std::string combination;
    std::string budget;
    std::uint64_t seed = kDefaultSeed;
    int trials = 10;
    std::string format = "json";
    std::string out;
    bool exact_verify = false;
    bool show_class = false;
};

class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

OptimizerBudget make_budget(const RunConfig &cfg) {
    OptimizerBudget base;
    base.seed = cfg.seed;
    return cfg.budget.empty() ? base : load_budget(cfg.budget, base);
}

Json envelope(const RunConfig &cfg, const OptimizerBudget &budget, const std::string &command) {
    return Json{{"tool_version", kToolVersion}, {"command", command}, {"seed", cfg.seed}, {"budget", to_json(budget)}};
}

std::uint64_t small(const Integer &z) { return z.convert_to<std::uint64_t>(); }

/// Writes text to --out or stdout.
void emit(const RunConfig &cfg, const std::string &text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw UsageError("cannot write " + cfg.out);
    out << text;
}

std::string table(const std::vector<std::vector<std::string>> &rows) {
    std::vector<std::size_t> width;
    for (const auto &r : rows) {
        width.resize(std::max(width.size(), r.size()));
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    std::string out;
    for (const auto &r : rows) {
        std::string line;
        for (std::size_t c = 0; c < r.size(); ++c) {
            line += r[c];
            if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
        }
        out += line + "\n";
    }
    return out;
}

std::string number(double v) { return format_number(v); }

void require(bool cond, const std::string &message) {
    if (!cond) throw UsageError(message);
}

int parties_or(const RunConfig &cfg, int fallback) { return cfg.parties > 0 ? cfg.parties : fallback; }

GhzCombination load_combination(const std::string &text) {
    const auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && text[first] == '{') return GhzCombination::from_json(text);
    return GhzCombination::parse(text);
}

/// Profile over the constraint labels from either a state file or a combination.
struct ProfileSource {
    Profile profile;
    int parties = 0;
    bool exact = false;
};

ProfileSource source_profile(const RunConfig &cfg, const OptimizerBudget &budget) {
    require(cfg.state_path.empty() != cfg.combination.empty(), "give exactly one of --state or --combination");
    ProfileSource src;
    if (!cfg.combination.empty()) {
        const GhzCombination comb = load_combination(cfg.combination);
        src.parties = parties_or(cfg, std::max(2, comb.max_party()));
        require(src.parties >= comb.max_party(), "--parties is smaller than the combination's largest party");
        src.profile = combination_profile(comb, src.parties);
        src.exact = true;
        return src;
    }
    const PureState psi = load_state_file(cfg.state_path);
    src.parties = psi.shape().num_parties();
    require(cfg.parties == 0 || cfg.parties == src.parties, "--parties does not match the state");
    require(src.parties <= kMaxSearchParties,
            "state-based constraint systems support at most " + std::to_string(kMaxSearchParties) + " parties");
    const auto labels = constraint_labels(src.parties);
    src.profile = gre_state_profile(psi, labels, budget);
    return src;
}

int cmd_enumerate(const RunConfig &cfg) {
    require(cfg.parties > 0, "--parties is required");
    const int n = cfg.parties;
    const auto labels = enumerate_labels(n);
    const OptimizerBudget budget = make_budget(cfg);
    Json j = envelope(cfg, budget, "enumerate");
    j["parties"] = n;
    Json list = Json::array();
    for (const auto &l : labels) {
        list.push_back(Json{{"label", l.to_string()}, {"class", to_string(classify_label(l, n))}});
    }
    const Json counts{{"labels", small(count_labels(n))},
                      {"ghz", small(ghz_subset_count(n))},
                      {"bGa", small(bi_gp_all_count(n))},
                      {"bG_unordered", small(bi_gp_unordered_count(n))},
                      {"bG_ordered", small(bi_gp_ordered_count(n))}};
    if (cfg.format == "table") {
        std::vector<std::vector<std::string>> rows;
        rows.push_back(cfg.show_class ? std::vector<std::string>{"label", "class"} : std::vector<std::string>{"label"});
        for (const auto &l : labels) {
            if (cfg.show_class) rows.push_back({l.to_string(), to_string(classify_label(l, n))});
            else rows.push_back({l.to_string()});
        }
        std::string text = table(rows);
        for (const auto &[k, v] : counts.items()) text += k + ": " + v.dump() + "\n";
        emit(cfg, text);
        return kExitOk;
    }
    j["labels"] = list;
    j["counts"] = counts;
    emit(cfg, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_entanglement(const RunConfig &cfg) {
    require(!cfg.state_path.empty(), "--state is required");
    require(!cfg.label.empty(), "--label is required");
    const OptimizerBudget budget = make_budget(cfg);
    const PureState psi = load_state_file(cfg.state_path);
    const Label label = Label::parse(cfg.label);
    const std::vector<Label> one{label};
    const EntanglementValue v = gre_state_profile_serial(psi, one, budget).at(label);
    if (cfg.format == "table") {
        emit(cfg, table({{"label", "value", "kind", "raw_nats", "converged"},
                         {label.to_string(), number(v.value), to_string(v.kind), number(v.raw_nats),
                          v.converged ? "yes" : "no"}}));
        return kExitOk;
    }
    Json j = envelope(cfg, budget, "entanglement");
    j["label"] = label.to_string();
    j.update(to_json(v));
    emit(cfg, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_ghz_calculus(const RunConfig &cfg) {
    require(!cfg.combination.empty(), "--combination is required");
    const GhzCombination comb = load_combination(cfg.combination);
    const OptimizerBudget budget = make_budget(cfg);
    std::vector<Label> labels;
    int n = 0;
    if (!cfg.label.empty()) {
        labels.push_back(Label::parse(cfg.label));
        n = std::max(comb.max_party(), labels.front().support().max_party());
    } else {
        n = parties_or(cfg, std::max(2, comb.max_party()));
        require(n >= comb.max_party(), "--parties is smaller than the combination's largest party");
        labels = constraint_labels(n);
    }
    std::vector<std::vector<std::string>> rows{{"label", "value"}};
    Json values = Json::array();
    for (const auto &l : labels) {
        const auto v = closed_form_value(comb, l);
        require(v.has_value(), "no closed form for " + l.to_string() + "; use a two-GP or all-singleton label");
        values.push_back(Json{{"label", l.to_string()}, {"value", to_string(*v)}, {"value_float", to_double(*v)}});
        rows.push_back({l.to_string(), to_string(*v)});
    }
    if (cfg.format == "table") {
        emit(cfg, table(rows));
        return kExitOk;
    }
    Json j = envelope(cfg, budget, "ghz-calculus");
    j["combination"] = comb.to_string();
    j["values"] = values;
    emit(cfg, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_feasibility(const RunConfig &cfg) {
    const OptimizerBudget budget = make_budget(cfg);
    const ProfileSource src = source_profile(cfg, budget);
    const ConstraintSystem sys = build_system(src.profile, src.parties);
    SolveOptions options;
    options.exact_verify = cfg.exact_verify;
    const FeasibilityCertificate cert = solve_feasibility(sys, options);
    const Verification check = verify_certificate(sys, cert);
    if (cfg.format == "table") {
        std::string text = to_lp_text(sys);
        text += "feasible: " + std::string(cert.feasible() ? "yes" : "no") + "\n";
        text += "phase1_objective: " + number(cert.phase1_objective) + "\n";
        text += "route: " + cert.route + "\n";
        text += "verified: " + std::string(check.ok ? "yes" : "no") + " (" + check.reason + ")\n";
        emit(cfg, text);
        return kExitOk;
    }
    Json j = envelope(cfg, budget, "feasibility");
    j["parties"] = src.parties;
    j["profile"] = to_json(src.profile);
    j["system"] = to_json(sys);
    j["certificate"] = to_json(cert);
    j["verification"] = Json{{"ok", check.ok}, {"reason", check.reason}};
    emit(cfg, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_check_gen(const RunConfig &cfg) {
    const OptimizerBudget budget = make_budget(cfg);
    const ProfileSource src = source_profile(cfg, budget);
    const GenReport report = check_gen(src.profile, src.parties);
    if (cfg.format == "table") {
        std::vector<std::vector<std::string>> rows{{"lhs_label", "lhs", "rhs", "rhs_kind", "verdict"}};
        for (const auto &r : report.rows) {
            rows.push_back({r.lhs_label.to_string(), number(r.lhs), number(r.rhs), to_string(r.rhs_kind),
                            to_string(r.verdict)});
        }
        emit(cfg, table(rows));
    } else {
        Json j = envelope(cfg, budget, "check-gen");
        j["parties"] = src.parties;
        j.update(to_json(report));
        emit(cfg, j.dump(2) + "\n");
    }
    return report.violations() > 0 ? kExitViolation : kExitOk;
}

int cmd_search(const RunConfig &cfg) {
    require(cfg.parties > 0, "--parties is required");
    require(cfg.trials >= 0, "--trials must be nonnegative");
    const OptimizerBudget budget = make_budget(cfg);
    const SearchReport report = search_counterexamples(cfg.parties, cfg.trials, cfg.seed, budget);
    std::string text;
    if (cfg.format == "table") {
        std::vector<std::vector<std::string>> rows{{"trial", "status", "gen_violations", "feasible"}};
        for (const auto &r : report.reports) {
            rows.push_back({std::to_string(r.trial), r.skipped ? "skipped" : (r.certified_violation ? "VIOLATION" : "ok"),
                            r.skipped ? "-" : std::to_string(r.gen.violations()),
                            r.feasibility ? (r.feasibility->feasible() ? "yes" : "no") : "-"});
        }
        text = table(rows);
        text += "trials: " + std::to_string(report.trials) + "\nskipped: " + std::to_string(report.skipped()) +
                "\nviolations: " + std::to_string(report.violations()) + "\nresult: " +
                (report.violations() > 0 ? "violations found" : "none found") + "\n";
    } else {
        // JSON lines: one object per trial, then a summary.
        for (const auto &r : report.reports) {
            Json j = envelope(cfg, budget, "search");
            j.update(to_json(r));
            text += j.dump() + "\n";
        }
        Json summary = envelope(cfg, budget, "search");
        summary["summary"] = Json{{"parties", report.num_parties},
                                  {"trials", report.trials},
                                  {"skipped", report.skipped()},
                                  {"violations", report.violations()},
                                  {"result", report.violations() > 0 ? "violations found" : "none found"}};
        text += summary.dump() + "\n";
    }
    emit(cfg, text);
    return report.violations() > 0 ? kExitViolation : kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multipartite entanglement labels, measures and GHZ-copy constraint systems"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--budget", cfg.budget, "Optimizer budget as inline JSON or a JSON file");
        sub->add_option("--seed", cfg.seed, "Random seed");
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--out", cfg.out, "Write output to this file");
    };

    auto *enumerate = app.add_subcommand("enumerate", "List every label of an N-party system");
    enumerate->add_option("--parties", cfg.parties, "Number of parties")->required();
    enumerate->add_flag("--class", cfg.show_class, "Show label classes in table output");
    add_common(enumerate);

    auto *entanglement = app.add_subcommand("entanglement", "Entanglement of a state for one label");
    entanglement->add_option("--state", cfg.state_path, "State JSON file")->required();
    entanglement->add_option("--label", cfg.label, "Label such as (12)(3)")->required();
    add_common(entanglement);

    auto *ghz = app.add_subcommand("ghz-calculus", "Exact entanglements of a GHZ combination");
    ghz->add_option("--combination", cfg.combination, "Combination such as g(12)=2, g(123)=1/2")->required();
    ghz->add_option("--label", cfg.label, "Single label; default is every constraint label");
    ghz->add_option("--parties", cfg.parties, "Number of parties");
    add_common(ghz);

    auto *feasibility = app.add_subcommand("feasibility", "Decide the copy-ratio constraint system");
    feasibility->add_option("--state", cfg.state_path, "State JSON file");
    feasibility->add_option("--combination", cfg.combination, "GHZ combination");
    feasibility->add_option("--parties", cfg.parties, "Number of parties");
    feasibility->add_flag("--exact-verify", cfg.exact_verify, "Verify the certificate in exact rationals");
    add_common(feasibility);

    auto *check = app.add_subcommand("check-gen", "Check the copy-free inequalities for every bipartition");
    check->add_option("--state", cfg.state_path, "State JSON file");
    check->add_option("--combination", cfg.combination, "GHZ combination");
    check->add_option("--parties", cfg.parties, "Number of parties");
    add_common(check);

    auto *search = app.add_subcommand("search", "Test random states for certified violations");
    search->add_option("--parties", cfg.parties, "Number of parties")->required();
    search->add_option("--trials", cfg.trials, "Number of random states");
    add_common(search);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(enumerate)) return cmd_enumerate(cfg);
        if (app.got_subcommand(entanglement)) return cmd_entanglement(cfg);
        if (app.got_subcommand(ghz)) return cmd_ghz_calculus(cfg);
        if (app.got_subcommand(feasibility)) return cmd_feasibility(cfg);
        if (app.got_subcommand(check)) return cmd_check_gen(cfg);
        if (app.got_subcommand(search)) return cmd_search(cfg);
    } catch (const NumericalStall &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
