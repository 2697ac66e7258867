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
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "multient/states.hpp"

namespace multient {

namespace {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::string write_state_json(const PureState &psi) {
    std::string out = "{\"dims\":[";
    const auto &dims = psi.shape().dims();
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(dims[i]);
    }
    out += "],\"amplitudes\":[";
    const auto &a = psi.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (i) out += ',';
        out += '[' + format_double(a[i].real()) + ',' + format_double(a[i].imag()) + ']';
    }
    out += "]}";
    return out;
}

PureState read_state_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("state file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("dims") || !doc.contains("amplitudes") ||
        !doc["dims"].is_array() || !doc["amplitudes"].is_array()) {
        throw ParseError("state file needs \"dims\" and \"amplitudes\" arrays");
    }
    std::vector<int> dims;
    for (const auto &d : doc["dims"]) {
        if (!d.is_number_integer()) throw ParseError("dims must be integers");
        dims.push_back(d.get<int>());
    }
    SystemShape shape(std::move(dims));
    const auto &amps = doc["amplitudes"];
    if (amps.size() != shape.dimension()) {
        throw InvalidState("expected " + std::to_string(shape.dimension()) + " amplitudes, found " +
                           std::to_string(amps.size()));
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const auto &pair = amps[i];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw ParseError("each amplitude must be [re, im]");
        }
        v[static_cast<Eigen::Index>(i)] = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    return PureState(std::move(shape), std::move(v));
}

PureState load_state_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open state file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return read_state_json(ss.str());
}

void save_state_file(const PureState &psi, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write state file '" + path + "'");
    }
    out << write_state_json(psi) << '\n';
}

} // namespace multient
