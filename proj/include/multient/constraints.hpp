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
 * @file constraints.hpp
 * Linear conditions on the copy ratios x_z = c_z / c_psi that any pure state
 * psi reversibly obtainable from GHZ-like states must admit, a feasibility
 * decision with checkable certificates, and the copy-free inequalities
 * between entanglements of psi itself.
 *
 * Rows:
 *  - complement equality: for each label (A)(complement of A),
 *    sum over contributing z of x_z = E(psi), which must be exact;
 *  - bi-GP inequality: same sum <= E(psi) for two-GP labels that do not
 *    cover every party;
 *  - true n-partite inequality: x_{g(T)} <= E_{(t1)...(tn)}(psi) for |T| >= 3.
 * Variables are implicitly nonnegative.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "multient/measures.hpp"
#include "multient/parties.hpp"
#include "multient/rational.hpp"
#include "multient/simplex.hpp"

namespace multient {

enum class RowOrigin { ComplementEquality, BiGPInequality, TrueNPartiteInequality, Manual };
std::string to_string(RowOrigin origin);
std::string to_string(Relation relation);

struct ConstraintRow {
    std::vector<Rational> coeffs;
    Relation relation = Relation::Equal;
    double rhs = 0.0;
    /// Exact rhs when known (closed-form profiles); otherwise rhs is used.
    std::optional<Rational> rhs_exact;
    ValueKind rhs_kind = ValueKind::Exact;
    std::optional<Label> label;
    RowOrigin origin = RowOrigin::Manual;

    /// rhs_exact if present, else the exact value of the double rhs.
    [[nodiscard]] Rational exact_rhs() const;
};

struct ConstraintSystem {
    int num_parties = 0;
    std::vector<GeneralizedParty> variables;
    std::vector<ConstraintRow> rows;

    [[nodiscard]] std::size_t count(RowOrigin origin) const;
    /// Adds a row with the given coefficients; used for hand-built systems.
    void add_row(std::vector<Rational> coeffs, Relation relation, const Rational &rhs);
};

class IncompleteProfile : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an upper-bound value is offered as an equality rhs.
class UnsoundRow : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class NumericalStall : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct BuildOptions {
    /// Two-GP labels (not covering every party) whose inequality becomes an
    /// equality with rhs 0, i.e. the entanglement of psi is assumed to vanish.
    std::vector<Label> zero_labels;
};

ConstraintSystem build_system(const Profile &profile, int num_parties, const BuildOptions &options = {});

/// Expected row counts for an N-party system.
struct RowCounts {
    Integer equalities;         ///< 2^{N-1} - 1
    Integer bi_gp_inequalities; ///< unordered bi-GP labels minus equalities
    Integer true_npartite;      ///< one per subset of size 3..N
    Integer true_npartite_families; ///< N - 2, one per size
};
RowCounts expected_row_counts(int num_parties);

struct FeasiblePoint {
    std::vector<double> x;
    /// Exact point when verified in rational arithmetic.
    std::optional<std::vector<Rational>> x_exact;
    double max_residual = 0.0;
};

struct InfeasibilityWitness {
    /// One multiplier per row: <= 0 on <= rows, >= 0 on >= rows, free on =.
    std::vector<double> y;
    std::vector<Rational> y_exact;
    /// y.A per variable (all <= 0) and y.b (> 0).
    std::vector<double> y_dot_a;
    double y_dot_b = 0.0;
    /// y.b - max(0, max_j (y.A)_j).
    double margin = 0.0;
};

struct FeasibilityCertificate {
    std::variant<FeasiblePoint, InfeasibilityWitness> result;
    double phase1_objective = 0.0;
    int pivots = 0;
    /// "float", "float-basis-exact" or "exact-simplex".
    std::string route = "float";
    /// Certificate checked in exact rational arithmetic.
    bool exact_verified = false;

    [[nodiscard]] bool feasible() const { return std::holds_alternative<FeasiblePoint>(result); }
};

struct SolveOptions {
    /// Re-derive and check the certificate in exact rationals; falls back to
    /// a rational simplex when the floating-point basis does not verify.
    bool exact_verify = false;
    int max_pivots = 20000;
    double pivot_tolerance = 1e-9;
    double feasibility_tolerance = 1e-8;
};

FeasibilityCertificate solve_feasibility(const ConstraintSystem &sys, const SolveOptions &options = {});

struct Verification {
    bool ok = false;
    std::string reason;
};

/// Independent check: a feasible point must satisfy every row within
/// `tolerance` (exactly when x_exact is present); a witness must meet the
/// sign conditions, y.A <= 0 and y.b > 0 exactly.
Verification verify_certificate(const ConstraintSystem &sys, const FeasibilityCertificate &cert,
                                double tolerance = 1e-8);

enum class Verdict { Holds, Violated };
std::string to_string(Verdict verdict);

struct GenRow {
    GeneralizedParty side;       ///< contains party 1
    GeneralizedParty complement;
    Label lhs_label;
    double lhs = 0.0;
    std::vector<Label> rhs_labels;
    double rhs = 0.0;
    ValueKind rhs_kind = ValueKind::Exact;
    Verdict verdict = Verdict::Holds;
};

struct GenReport {
    std::vector<GenRow> rows;
    [[nodiscard]] std::size_t violations() const;
};

/// For every split (A, complement): E_{(A)(complement)} <= sum of the
/// entanglements among all singletons of each subset T with |T| >= 2 that
/// meets both sides. The left side must be exact; right-side upper bounds
/// only make a reported violation stronger. A row holds when
/// lhs <= rhs + margin and is a certified violation otherwise.
GenReport check_gen(const Profile &profile, int num_parties, double margin = 1e-8);

/// Outcome of evaluating one state against every necessary condition.
struct TrialReport {
    int trial = 0;
    PureState state;
    bool skipped = false;
    std::string skip_reason;
    GenReport gen;
    std::optional<FeasibilityCertificate> feasibility;
    /// A violated row or an exactly verified infeasibility witness.
    bool certified_violation = false;
};

struct SearchReport {
    int num_parties = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    OptimizerBudget budget;
    std::vector<TrialReport> reports;
    [[nodiscard]] std::size_t skipped() const;
    [[nodiscard]] std::size_t violations() const;
};

inline constexpr int kMaxSearchParties = 4;
/// Smallest witness margin counted as a certified infeasibility in search.
inline constexpr double kCertifiedMargin = 1e-8;

TrialReport evaluate_state(const PureState &psi, const OptimizerBudget &budget, int trial = 0);

/// Haar-random N-qubit states, one RNG stream per trial derived from `seed`.
/// Trials run in parallel; results are ordered by trial index. A state is
/// skipped when the optimizer exhausts its budget on any label.
SearchReport search_counterexamples(int num_parties, int trials, std::uint64_t seed,
                                    const OptimizerBudget &budget);

/// Plain LP text (`min`/`s.t.`/`bounds`/`end`) for external solvers.
std::string to_lp_text(const ConstraintSystem &sys);

} // namespace multient
