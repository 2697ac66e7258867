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
#include "multient/report_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace multient {

namespace {

Json rational_json(const Rational &r) { return to_string(r); }

Json label_list(const std::vector<Label> &labels) {
    Json out = Json::array();
    for (const auto &l : labels) out.push_back(l.to_string());
    return out;
}

std::string gp_text(const GeneralizedParty &gp) { return "(" + gp.to_string(gp.max_party() < 10) + ")"; }

} // namespace

std::string format_number(double v) { return Json(v).dump(); }

Json to_json(const OptimizerBudget &budget) {
    return Json{{"restarts", budget.restarts},
                {"max_iters", budget.max_iters},
                {"K", budget.components},
                {"tol", budget.tol},
                {"seed", budget.seed}};
}

OptimizerBudget budget_from_json(const Json &j, OptimizerBudget base) {
    if (!j.is_object()) throw std::invalid_argument("budget must be a JSON object");
    for (const auto &[key, value] : j.items()) {
        if (key == "restarts") {
            base.restarts = value.get<int>();
        } else if (key == "max_iters") {
            base.max_iters = value.get<int>();
        } else if (key == "K") {
            base.components = value.get<int>();
        } else if (key == "tol") {
            base.tol = value.get<double>();
        } else if (key == "seed") {
            base.seed = value.get<std::uint64_t>();
        } else {
            throw std::invalid_argument("unknown budget key: " + key);
        }
    }
    base.validate();
    return base;
}

OptimizerBudget load_budget(const std::string &text, OptimizerBudget base) {
    std::string body = text;
    if (std::ifstream in(text); in && !text.empty() && text.front() != '{') {
        std::ostringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    try {
        return budget_from_json(Json::parse(body), base);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed budget: ") + e.what());
    }
}

Json to_json(const EntanglementValue &value) {
    Json j{{"value", value.value},
           {"kind", to_string(value.kind)},
           {"raw_nats", value.raw_nats},
           {"normalizer_nats", value.normalizer_nats},
           {"converged", value.converged}};
    if (value.exact) j["exact"] = rational_json(*value.exact);
    return j;
}

Json to_json(const Profile &profile) {
    Json out = Json::object();
    for (const auto &[label, value] : profile) out[label.to_string()] = to_json(value);
    return out;
}

Json to_json(const ConstraintSystem &sys) {
    Json vars = Json::array();
    for (const auto &z : sys.variables) vars.push_back("g" + gp_text(z));
    Json rows = Json::array();
    for (const auto &row : sys.rows) {
        Json coeffs = Json::array();
        for (const auto &c : row.coeffs) coeffs.push_back(to_double(c));
        Json r{{"origin", to_string(row.origin)},
               {"label", row.label ? Json(row.label->to_string()) : Json(nullptr)},
               {"coeffs", coeffs},
               {"relation", to_string(row.relation)},
               {"rhs", row.rhs},
               {"rhs_kind", to_string(row.rhs_kind)}};
        if (row.rhs_exact) r["rhs_exact"] = rational_json(*row.rhs_exact);
        rows.push_back(std::move(r));
    }
    return Json{{"num_parties", sys.num_parties}, {"variables", vars}, {"rows", rows}};
}

Json to_json(const FeasibilityCertificate &cert) {
    Json j{{"feasible", cert.feasible()},
           {"phase1_objective", cert.phase1_objective},
           {"pivots", cert.pivots},
           {"route", cert.route},
           {"exact_verified", cert.exact_verified}};
    if (const auto *fp = std::get_if<FeasiblePoint>(&cert.result)) {
        Json p{{"x", fp->x}, {"max_residual", fp->max_residual}};
        if (fp->x_exact) {
            Json ex = Json::array();
            for (const auto &v : *fp->x_exact) ex.push_back(rational_json(v));
            p["x_exact"] = ex;
        }
        j["point"] = std::move(p);
    } else {
        const auto &w = std::get<InfeasibilityWitness>(cert.result);
        Json ex = Json::array();
        for (const auto &v : w.y_exact) ex.push_back(rational_json(v));
        j["witness"] = Json{{"y", w.y},
                            {"y_exact", ex},
                            {"y_dot_a", w.y_dot_a},
                            {"y_dot_b", w.y_dot_b},
                            {"margin", w.margin}};
    }
    return j;
}

Json to_json(const GenReport &report) {
    Json rows = Json::array();
    for (const auto &r : report.rows) {
        rows.push_back(Json{{"side", gp_text(r.side)},
                            {"complement", gp_text(r.complement)},
                            {"lhs_label", r.lhs_label.to_string()},
                            {"lhs", r.lhs},
                            {"rhs_labels", label_list(r.rhs_labels)},
                            {"rhs", r.rhs},
                            {"rhs_kind", to_string(r.rhs_kind)},
                            {"verdict", to_string(r.verdict)}});
    }
    return Json{{"violations", report.violations()}, {"rows", rows}};
}

Json to_json(const TrialReport &report) {
    Json j{{"trial", report.trial},
           {"state", Json::parse(write_state_json(report.state))},
           {"skipped", report.skipped}};
    if (report.skipped) {
        j["skip_reason"] = report.skip_reason;
        return j;
    }
    j["gen"] = to_json(report.gen);
    if (report.feasibility) j["feasibility"] = to_json(*report.feasibility);
    j["certified_violation"] = report.certified_violation;
    return j;
}

Json to_json(const SearchReport &report) {
    Json trials = Json::array();
    for (const auto &r : report.reports) trials.push_back(to_json(r));
    return Json{{"num_parties", report.num_parties},
                {"trials", report.trials},
                {"skipped", report.skipped()},
                {"violations", report.violations()},
                {"reports", trials}};
}

} // namespace multient
