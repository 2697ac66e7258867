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
#include "multient/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "multient/ghz_calculus.hpp"

namespace multient {

std::string to_string(RowOrigin origin) {
    switch (origin) {
    case RowOrigin::ComplementEquality:
        return "complement_equality";
    case RowOrigin::BiGPInequality:
        return "bi_gp_inequality";
    case RowOrigin::TrueNPartiteInequality:
        return "true_npartite_inequality";
    case RowOrigin::Manual:
        return "manual";
    }
    return "manual";
}

std::string to_string(Relation relation) {
    switch (relation) {
    case Relation::Equal:
        return "=";
    case Relation::LessEqual:
        return "<=";
    case Relation::GreaterEqual:
        return ">=";
    }
    return "=";
}

std::string to_string(Verdict verdict) { return verdict == Verdict::Holds ? "HOLDS" : "VIOLATED"; }

Rational ConstraintRow::exact_rhs() const { return rhs_exact ? *rhs_exact : exact_rational(rhs); }

std::size_t ConstraintSystem::count(RowOrigin origin) const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [&](const ConstraintRow &r) { return r.origin == origin; }));
}

void ConstraintSystem::add_row(std::vector<Rational> coeffs, Relation relation, const Rational &rhs) {
    if (coeffs.size() != variables.size()) {
        throw std::invalid_argument("row length does not match the variable count");
    }
    ConstraintRow row;
    row.coeffs = std::move(coeffs);
    row.relation = relation;
    row.rhs = to_double(rhs);
    row.rhs_exact = rhs;
    rows.push_back(std::move(row));
}

namespace {

const EntanglementValue &lookup(const Profile &profile, const Label &label) {
    const auto it = profile.find(label);
    if (it == profile.end()) {
        throw IncompleteProfile("profile has no value for " + label.to_string());
    }
    return it->second;
}

Label singletons(const GeneralizedParty &subset) {
    std::vector<GeneralizedParty> gps;
    for (int p : subset.parties()) gps.push_back(GeneralizedParty::of({p}));
    return Label(std::move(gps));
}

void set_rhs(ConstraintRow &row, const EntanglementValue &v) {
    row.rhs = v.value;
    row.rhs_exact = v.exact;
    row.rhs_kind = v.kind;
}

} // namespace

ConstraintSystem build_system(const Profile &profile, int num_parties, const BuildOptions &options) {
    if (num_parties < 2 || num_parties > kMaxEnumerationParties) {
        throw std::invalid_argument("party count outside [2, " + std::to_string(kMaxEnumerationParties) + "]");
    }
    ConstraintSystem sys;
    sys.num_parties = num_parties;
    sys.variables = enumerate_ghz_subsets(num_parties);
    const std::size_t nv = sys.variables.size();

    std::vector<ConstraintRow> equalities, inequalities, npartite;
    for (const auto &label : constraint_labels(num_parties)) {
        if (label.num_gps() == 2) {
            const auto &a = label.gps()[0];
            const auto &b = label.gps()[1];
            ConstraintRow row;
            row.label = label;
            row.coeffs.assign(nv, Rational(0));
            for (std::size_t j = 0; j < nv; ++j) {
                if (contributes(sys.variables[j], a, b)) row.coeffs[j] = 1;
            }
            const EntanglementValue &v = lookup(profile, label);
            set_rhs(row, v);
            if (classify_label(label, num_parties).kind == LabelKind::BiGPAllParties) {
                if (v.kind != ValueKind::Exact) {
                    throw UnsoundRow("equality row " + label.to_string() + " needs an exact value");
                }
                row.relation = Relation::Equal;
                row.origin = RowOrigin::ComplementEquality;
                equalities.push_back(std::move(row));
            } else {
                row.relation = Relation::LessEqual;
                row.origin = RowOrigin::BiGPInequality;
                if (std::find(options.zero_labels.begin(), options.zero_labels.end(), label) !=
                    options.zero_labels.end()) {
                    row.relation = Relation::Equal;
                    row.rhs = 0.0;
                    row.rhs_exact = Rational(0);
                    row.rhs_kind = ValueKind::Exact;
                }
                inequalities.push_back(std::move(row));
            }
        } else if (label.all_singletons()) {
            ConstraintRow row;
            row.label = label;
            row.coeffs.assign(nv, Rational(0));
            const auto pos = std::find(sys.variables.begin(), sys.variables.end(), label.support());
            row.coeffs[static_cast<std::size_t>(pos - sys.variables.begin())] = 1;
            set_rhs(row, lookup(profile, label));
            row.relation = Relation::LessEqual;
            row.origin = RowOrigin::TrueNPartiteInequality;
            npartite.push_back(std::move(row));
        }
    }
    for (const auto &zl : options.zero_labels) {
        if (zl.num_gps() != 2 || classify_label(zl, num_parties).kind != LabelKind::BiGP) {
            throw std::invalid_argument("only two-GP labels not covering every party can be zeroed: " +
                                        zl.to_string());
        }
    }
    for (auto *group : {&equalities, &inequalities, &npartite}) {
        for (auto &row : *group) sys.rows.push_back(std::move(row));
    }
    return sys;
}

RowCounts expected_row_counts(int num_parties) {
    RowCounts c;
    c.equalities = bi_gp_all_count(num_parties);
    c.bi_gp_inequalities = bi_gp_unordered_count(num_parties) - c.equalities;
    // Subsets of size >= 3.
    c.true_npartite = (Integer(1) << num_parties) - 1 - num_parties - num_parties * (num_parties - 1) / 2;
    c.true_npartite_families = num_parties - 2;
    return c;
}

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Solves m x = rhs exactly; nullopt when m is singular.
std::optional<std::vector<Rational>> solve_exact(RationalMatrix m, std::vector<Rational> rhs) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t r = col; r < n; ++r) {
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == n) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        const Rational inv = 1 / m[col][col];
        for (std::size_t j = col; j < n; ++j) m[col][j] *= inv;
        rhs[col] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

struct ExactProblem {
    RationalMatrix a;
    std::vector<Rational> b;
    std::vector<Relation> rel;
};

ExactProblem exact_problem(const ConstraintSystem &sys) {
    ExactProblem p;
    for (const auto &row : sys.rows) {
        p.a.push_back(row.coeffs);
        p.b.push_back(row.exact_rhs());
        p.rel.push_back(row.relation);
    }
    return p;
}

bool exact_row_holds(const Rational &lhs, Relation rel, const Rational &rhs) {
    switch (rel) {
    case Relation::Equal:
        return lhs == rhs;
    case Relation::LessEqual:
        return lhs <= rhs;
    case Relation::GreaterEqual:
        return lhs >= rhs;
    }
    return false;
}

double row_violation(double lhs, Relation rel, double rhs) {
    switch (rel) {
    case Relation::Equal:
        return std::abs(lhs - rhs);
    case Relation::LessEqual:
        return std::max(0.0, lhs - rhs);
    case Relation::GreaterEqual:
        return std::max(0.0, rhs - lhs);
    }
    return 0.0;
}

FeasiblePoint make_point(const ConstraintSystem &sys, std::vector<double> x) {
    FeasiblePoint fp;
    fp.x = std::move(x);
    for (auto &v : fp.x) v = std::max(v, 0.0);
    for (const auto &row : sys.rows) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < fp.x.size(); ++j) lhs += to_double(row.coeffs[j]) * fp.x[j];
        fp.max_residual = std::max(fp.max_residual, row_violation(lhs, row.relation, row.rhs));
    }
    return fp;
}

InfeasibilityWitness make_witness(const ConstraintSystem &sys, std::vector<Rational> y_exact) {
    InfeasibilityWitness w;
    w.y_exact = std::move(y_exact);
    const std::size_t nv = sys.variables.size();
    Rational yb(0);
    std::vector<Rational> ya(nv, Rational(0));
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        w.y.push_back(to_double(w.y_exact[i]));
        yb += w.y_exact[i] * sys.rows[i].exact_rhs();
        for (std::size_t j = 0; j < nv; ++j) ya[j] += w.y_exact[i] * sys.rows[i].coeffs[j];
    }
    Rational worst(0);
    for (const auto &v : ya) {
        w.y_dot_a.push_back(to_double(v));
        worst = std::max(worst, v);
    }
    w.y_dot_b = to_double(yb);
    w.margin = to_double(yb - worst);
    return w;
}

} // namespace

Verification verify_certificate(const ConstraintSystem &sys, const FeasibilityCertificate &cert, double tolerance) {
    const std::size_t nv = sys.variables.size();
    if (const auto *fp = std::get_if<FeasiblePoint>(&cert.result)) {
        if (fp->x.size() != nv) return {false, "point has the wrong length"};
        if (fp->x_exact) {
            for (const auto &v : *fp->x_exact) {
                if (v < 0) return {false, "exact point has a negative entry"};
            }
            for (std::size_t i = 0; i < sys.rows.size(); ++i) {
                Rational lhs(0);
                for (std::size_t j = 0; j < nv; ++j) lhs += sys.rows[i].coeffs[j] * (*fp->x_exact)[j];
                if (!exact_row_holds(lhs, sys.rows[i].relation, sys.rows[i].exact_rhs())) {
                    return {false, "exact point violates row " + std::to_string(i)};
                }
            }
        }
        for (double v : fp->x) {
            if (v < 0) return {false, "point has a negative entry"};
        }
        for (std::size_t i = 0; i < sys.rows.size(); ++i) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < nv; ++j) lhs += to_double(sys.rows[i].coeffs[j]) * fp->x[j];
            if (row_violation(lhs, sys.rows[i].relation, sys.rows[i].rhs) > tolerance) {
                return {false, "row " + std::to_string(i) + " residual exceeds tolerance"};
            }
        }
        return {true, "feasible point satisfies every row"};
    }
    const auto &w = std::get<InfeasibilityWitness>(cert.result);
    if (w.y_exact.size() != sys.rows.size()) return {false, "witness has the wrong length"};
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        const auto &y = w.y_exact[i];
        if (sys.rows[i].relation == Relation::LessEqual && y > 0) {
            return {false, "positive multiplier on <= row " + std::to_string(i)};
        }
        if (sys.rows[i].relation == Relation::GreaterEqual && y < 0) {
            return {false, "negative multiplier on >= row " + std::to_string(i)};
        }
    }
    Rational yb(0);
    for (std::size_t i = 0; i < sys.rows.size(); ++i) yb += w.y_exact[i] * sys.rows[i].exact_rhs();
    for (std::size_t j = 0; j < nv; ++j) {
        Rational ya(0);
        for (std::size_t i = 0; i < sys.rows.size(); ++i) ya += w.y_exact[i] * sys.rows[i].coeffs[j];
        if (ya > 0) return {false, "y.A is positive on variable " + std::to_string(j)};
    }
    if (!(yb > 0)) return {false, "y.b is not positive"};
    return {true, "Farkas witness verified"};
}

FeasibilityCertificate solve_feasibility(const ConstraintSystem &sys, const SolveOptions &options) {
    const std::size_t nv = sys.variables.size();
    for (const auto &row : sys.rows) {
        if (row.coeffs.size() != nv) throw std::invalid_argument("malformed constraint row");
    }
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    std::vector<Relation> rel;
    for (const auto &row : sys.rows) {
        std::vector<double> r;
        for (const auto &c : row.coeffs) r.push_back(to_double(c));
        a.push_back(std::move(r));
        b.push_back(row.rhs);
        rel.push_back(row.relation);
    }
    const auto fl = phase1_simplex<double>(a, b, rel, options.pivot_tolerance, options.max_pivots);
    if (fl.status == SimplexStatus::Stalled) {
        throw NumericalStall("phase-1 simplex stalled after " + std::to_string(fl.pivots) + " pivots");
    }

    FeasibilityCertificate cert;
    cert.phase1_objective = fl.objective;
    cert.pivots = fl.pivots;
    const bool feasible = fl.objective <= options.feasibility_tolerance;

    // Exact solution of the final basis.
    const ExactProblem ep = exact_problem(sys);
    const auto tab = standardize<Rational>(ep.a, ep.b, ep.rel);
    const std::size_t m = tab.rows;
    RationalMatrix basis_matrix(m, std::vector<Rational>(m));
    RationalMatrix basis_transposed(m, std::vector<Rational>(m));
    std::vector<Rational> cost(m, Rational(0));
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t col = fl.basis[k];
        for (std::size_t i = 0; i < m; ++i) {
            basis_matrix[i][k] = tab.a[i][col];
            basis_transposed[k][i] = tab.a[i][col];
        }
        if (col >= tab.vars + tab.slacks) cost[k] = 1;
    }

    auto exact_fallback = [&] {
        const auto ex = phase1_simplex<Rational>(ep.a, ep.b, ep.rel, Rational(0), options.max_pivots);
        if (ex.status == SimplexStatus::Stalled) {
            throw NumericalStall("exact phase-1 simplex exceeded the pivot limit");
        }
        cert.route = "exact-simplex";
        cert.phase1_objective = to_double(ex.objective);
        cert.pivots += ex.pivots;
        if (ex.objective == 0) {
            std::vector<double> x;
            for (const auto &v : ex.x) x.push_back(to_double(v));
            FeasiblePoint fp = make_point(sys, std::move(x));
            fp.x_exact = ex.x;
            cert.result = std::move(fp);
        } else {
            cert.result = make_witness(sys, ex.y);
        }
        cert.exact_verified = verify_certificate(sys, cert).ok;
    };

    if (feasible) {
        cert.result = make_point(sys, fl.x);
        if (options.exact_verify) {
            if (auto xb = solve_exact(basis_matrix, tab.b)) {
                std::vector<Rational> x(nv, Rational(0));
                bool nonneg = true;
                bool artificial_zero = true;
                for (std::size_t k = 0; k < m; ++k) {
                    const std::size_t col = fl.basis[k];
                    if ((*xb)[k] < 0) nonneg = false;
                    if (col < nv) x[col] = (*xb)[k];
                    if (col >= tab.vars + tab.slacks && (*xb)[k] != 0) artificial_zero = false;
                }
                if (nonneg && artificial_zero) {
                    std::get<FeasiblePoint>(cert.result).x_exact = std::move(x);
                    cert.route = "float-basis-exact";
                    cert.exact_verified = verify_certificate(sys, cert).ok;
                }
            }
            if (!cert.exact_verified) exact_fallback();
        }
        return cert;
    }

    // Infeasible: the phase-1 duals of the final basis solve B^T y' = c_B.
    bool done = false;
    if (auto yp = solve_exact(basis_transposed, cost)) {
        std::vector<Rational> y(m);
        for (std::size_t i = 0; i < m; ++i) y[i] = tab.flip[i] < 0 ? Rational(-(*yp)[i]) : (*yp)[i];
        cert.result = make_witness(sys, std::move(y));
        cert.route = "float-basis-exact";
        cert.exact_verified = verify_certificate(sys, cert).ok;
        done = cert.exact_verified;
    }
    if (!done && options.exact_verify) {
        exact_fallback();
    } else if (!done) {
        std::vector<Rational> y;
        for (double v : fl.y) y.push_back(exact_rational(v));
        cert.result = make_witness(sys, std::move(y));
        cert.route = "float";
    }
    return cert;
}

GenReport check_gen(const Profile &profile, int num_parties, double margin) {
    if (num_parties < 2 || num_parties > kMaxEnumerationParties) {
        throw std::invalid_argument("party count outside [2, " + std::to_string(kMaxEnumerationParties) + "]");
    }
    const GeneralizedParty all = GeneralizedParty::first(num_parties);
    const auto subsets = enumerate_ghz_subsets(num_parties);
    GenReport report;
    for (PartyMask m = 1; m < all.mask(); ++m) {
        if (!(m & 1u)) continue; // side holds party 1
        const GeneralizedParty side(m);
        const GeneralizedParty rest(all.mask() & ~m);
        GenRow row{.side = side, .complement = rest, .lhs_label = Label({side, rest}), .rhs_labels = {}};
        const EntanglementValue &lhs = lookup(profile, row.lhs_label);
        if (lhs.kind != ValueKind::Exact) {
            throw UnsoundRow("left side " + row.lhs_label.to_string() + " must be exact");
        }
        row.lhs = lhs.value;
        for (const auto &t : subsets) {
            if (t.disjoint(row.side) || t.disjoint(row.complement)) continue;
            Label term = singletons(t);
            const EntanglementValue &v = lookup(profile, term);
            row.rhs += v.value;
            if (v.kind == ValueKind::UpperBound) row.rhs_kind = ValueKind::UpperBound;
            row.rhs_labels.push_back(std::move(term));
        }
        row.verdict = row.lhs <= row.rhs + margin ? Verdict::Holds : Verdict::Violated;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::size_t GenReport::violations() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const GenRow &r) { return r.verdict == Verdict::Violated; }));
}

std::string to_lp_text(const ConstraintSystem &sys) {
    auto var = [&](const GeneralizedParty &z) {
        const bool compact = z.max_party() < 10;
        std::string s = "x";
        for (int p : z.parties()) {
            if (!compact && s.size() > 1) s += '_';
            s += std::to_string(p);
        }
        return s;
    };
    auto number = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::string out = "\\ copy-ratio system, N = " + std::to_string(sys.num_parties) + "\n";
    out += "min\n obj: 0 " + (sys.variables.empty() ? std::string("x") : var(sys.variables.front())) + "\n";
    out += "s.t.\n";
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        const auto &row = sys.rows[i];
        out += " c" + std::to_string(i + 1) + ": ";
        bool first = true;
        for (std::size_t j = 0; j < row.coeffs.size(); ++j) {
            if (row.coeffs[j] == 0) continue;
            const double c = to_double(row.coeffs[j]);
            if (!first) out += c < 0 ? " - " : " + ";
            else if (c < 0) out += "- ";
            const double mag = std::abs(c);
            if (mag != 1.0) out += number(mag) + " ";
            out += var(sys.variables[j]);
            first = false;
        }
        if (first) out += "0 " + var(sys.variables.front());
        out += " " + to_string(row.relation) + " " + number(row.rhs);
        if (row.label) out += "  \\ " + row.label->to_string() + " " + to_string(row.origin);
        out += "\n";
    }
    out += "bounds\n";
    for (const auto &z : sys.variables) out += " " + var(z) + " >= 0\n";
    out += "end\n";
    return out;
}

} // namespace multient
