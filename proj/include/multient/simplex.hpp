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
 * @file simplex.hpp
 * Dense phase-1 simplex with Bland's rule, templated on the scalar so the
 * same code runs in floating point and in exact rationals.
 *
 * Solves: find x >= 0 with a_i . x (rel_i) b_i for every row, by minimizing
 * the sum of one artificial variable per row. The final phase-1 duals give
 * a Farkas certificate when the minimum is positive.
 */
#pragma once

#include <cstddef>
#include <vector>

namespace multient {

enum class Relation { Equal, LessEqual, GreaterEqual };

enum class SimplexStatus { Optimal, Stalled };

template <typename Scalar>
struct Phase1Result {
    SimplexStatus status = SimplexStatus::Optimal;
    /// Sum of artificials at the optimum.
    Scalar objective{};
    /// Values of the original variables.
    std::vector<Scalar> x;
    /// Multipliers for the original rows (sign flips undone). With the
    /// problem infeasible they satisfy the Farkas conditions:
    /// y_i <= 0 on <= rows, y_i >= 0 on >= rows, y.A <= 0, y.b = objective.
    std::vector<Scalar> y;
    /// Final basis as column indices of [A | slacks | artificials] after
    /// row sign normalization.
    std::vector<std::size_t> basis;
    int pivots = 0;
};

/// Standardized phase-1 problem: rows with negative rhs are negated, one
/// slack per inequality row, one artificial per row.
template <typename Scalar>
struct Phase1Tableau {
    std::size_t rows = 0;
    std::size_t vars = 0;
    std::size_t slacks = 0;
    std::vector<int> flip;              ///< +1 or -1 per row
    std::vector<std::size_t> slack_of;  ///< column of each row's slack, or npos
    std::vector<std::vector<Scalar>> a; ///< rows x (vars + slacks + rows)
    std::vector<Scalar> b;

    [[nodiscard]] std::size_t cols() const { return vars + slacks + rows; }
    [[nodiscard]] std::size_t artificial(std::size_t i) const { return vars + slacks + i; }
};

template <typename Scalar>
Phase1Tableau<Scalar> standardize(const std::vector<std::vector<Scalar>> &a, const std::vector<Scalar> &b,
                                  const std::vector<Relation> &rel) {
    Phase1Tableau<Scalar> t;
    t.rows = a.size();
    t.vars = t.rows ? a.front().size() : 0;
    t.flip.assign(t.rows, 1);
    t.slack_of.assign(t.rows, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < t.rows; ++i) {
        if (rel[i] != Relation::Equal) t.slack_of[i] = t.vars + t.slacks++;
    }
    t.a.assign(t.rows, std::vector<Scalar>(t.cols(), Scalar(0)));
    t.b.assign(t.rows, Scalar(0));
    for (std::size_t i = 0; i < t.rows; ++i) {
        const int f = b[i] < Scalar(0) ? -1 : 1;
        t.flip[i] = f;
        for (std::size_t j = 0; j < t.vars; ++j) t.a[i][j] = f < 0 ? Scalar(-a[i][j]) : a[i][j];
        t.b[i] = f < 0 ? Scalar(-b[i]) : b[i];
        if (rel[i] == Relation::LessEqual) t.a[i][t.slack_of[i]] = Scalar(f);
        if (rel[i] == Relation::GreaterEqual) t.a[i][t.slack_of[i]] = Scalar(-f);
        t.a[i][t.artificial(i)] = Scalar(1);
    }
    return t;
}

template <typename Scalar>
Phase1Result<Scalar> phase1_simplex(const std::vector<std::vector<Scalar>> &a, const std::vector<Scalar> &b,
                                    const std::vector<Relation> &rel, const Scalar &eps, int max_pivots) {
    Phase1Tableau<Scalar> t = standardize(a, b, rel);
    const std::size_t m = t.rows;
    const std::size_t cols = t.cols();
    auto &tab = t.a;
    auto &rhs = t.b;
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = t.artificial(i);

    // Reduced costs of the phase-1 objective (1 on artificials).
    std::vector<Scalar> cost(cols, Scalar(0));
    for (std::size_t i = 0; i < m; ++i) cost[t.artificial(i)] = Scalar(1);
    std::vector<Scalar> reduced = cost;
    Scalar neg_objective(0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < cols; ++j) reduced[j] -= tab[i][j];
        neg_objective -= rhs[i];
    }

    Phase1Result<Scalar> result;
    while (true) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (reduced[j] < -eps) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;
        if (result.pivots >= max_pivots) {
            result.status = SimplexStatus::Stalled;
            break;
        }
        std::size_t leave = m;
        Scalar best_ratio(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (!(tab[i][enter] > eps)) continue;
            Scalar ratio = rhs[i] / tab[i][enter];
            if (leave == m || ratio < best_ratio || (!(best_ratio < ratio) && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) {
            // Phase 1 is bounded below by zero; an unbounded ray means the
            // tolerances have broken down.
            result.status = SimplexStatus::Stalled;
            break;
        }
        const Scalar pivot = tab[leave][enter];
        for (std::size_t j = 0; j < cols; ++j) tab[leave][j] /= pivot;
        rhs[leave] /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            const Scalar factor = tab[i][enter];
            if (factor == Scalar(0)) continue;
            for (std::size_t j = 0; j < cols; ++j) tab[i][j] -= factor * tab[leave][j];
            rhs[i] -= factor * rhs[leave];
        }
        const Scalar rfactor = reduced[enter];
        for (std::size_t j = 0; j < cols; ++j) reduced[j] -= rfactor * tab[leave][j];
        neg_objective -= rfactor * rhs[leave];
        basis[leave] = enter;
        ++result.pivots;
    }

    result.objective = -neg_objective;
    result.x.assign(t.vars, Scalar(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < t.vars) result.x[basis[i]] = rhs[i];
    }
    result.y.assign(m, Scalar(0));
    for (std::size_t i = 0; i < m; ++i) {
        const Scalar dual = Scalar(1) - reduced[t.artificial(i)];
        result.y[i] = t.flip[i] < 0 ? Scalar(-dual) : dual;
    }
    result.basis = basis;
    return result;
}

} // namespace multient
