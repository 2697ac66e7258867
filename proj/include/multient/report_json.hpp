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
 * @file report_json.hpp
 * JSON forms of budgets, profiles, constraint systems, certificates and
 * search reports. Key order is fixed so equal inputs give identical bytes.
 */
#pragma once

#include <string>

#include <json.hpp>

#include "multient/constraints.hpp"
#include "multient/measures.hpp"

namespace multient {

using Json = nlohmann::ordered_json;

inline constexpr const char *kToolVersion = "0.1.0";

Json to_json(const OptimizerBudget &budget);
/// Accepts any subset of {restarts, max_iters, K, tol, seed}; unknown keys
/// are rejected.
OptimizerBudget budget_from_json(const Json &j, OptimizerBudget base = {});
/// Parses inline JSON text or, when `text` names a readable file, its contents.
OptimizerBudget load_budget(const std::string &text, OptimizerBudget base = {});

Json to_json(const EntanglementValue &value);
Json to_json(const Profile &profile);
Json to_json(const ConstraintSystem &sys);
Json to_json(const FeasibilityCertificate &cert);
Json to_json(const GenReport &report);
Json to_json(const TrialReport &report);
Json to_json(const SearchReport &report);

/// Number formatting shared by JSON and tables: shortest round-trip form.
std::string format_number(double v);

} // namespace multient
