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
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "multient/report_json.hpp"
#include "multient/states.hpp"

using namespace multient;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string &args) {
    const std::string cmd = std::string(MULTIENT_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path scratch() {
    auto dir = std::filesystem::temp_directory_path() / "multient_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_state(const std::string &name, const PureState &psi) {
    const auto path = (scratch() / name).string();
    save_state_file(psi, path);
    return path;
}

void check_provenance(const Json &j) {
    CHECK(j.at("tool_version") == kToolVersion);
    CHECK(j.contains("seed"));
    CHECK(j.at("budget").contains("restarts"));
    CHECK(j.at("budget").contains("K"));
}

} // namespace

TEST_CASE("enumerate") {
    const Run r = run("enumerate --parties 3");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    check_provenance(j);
    CHECK(j["labels"].size() == 7);
    CHECK(j["counts"]["labels"] == 7);
    CHECK(j["counts"]["ghz"] == 4);
    CHECK(j["counts"]["bGa"] == 3);
    CHECK(Json::parse(run("enumerate --parties 2").out)["labels"].size() == 1);
    CHECK(run("enumerate --parties 9").code == 2);
    CHECK(run("enumerate").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    const Run table = run("enumerate --parties 3 --format table --class");
    CHECK(table.code == 0);
    CHECK(table.out.find("(1)(2)(3)  TrueNPartite(3)") != std::string::npos);
}

TEST_CASE("entanglement") {
    const auto three = SystemShape::qubits(3);
    const auto ghz = write_state("ghz3.json", make_ghz(GeneralizedParty::first(3), three));
    const auto zero = write_state("zero3.json", PureState::zero(three));
    const auto epr = write_state("epr.json", make_ghz(GeneralizedParty::of({1, 2}), SystemShape::qubits(2)));
    const Json a = Json::parse(run("entanglement --state " + ghz + " --label '(12)(3)'").out);
    check_provenance(a);
    CHECK(a["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a["kind"] == "Exact");
    const Json b = Json::parse(run("entanglement --state " + zero + " --label '(1)(2)(3)'").out);
    CHECK(b["value"].get<double>() <= 1e-6);
    CHECK(b["kind"] == "UpperBound");
    const Json c = Json::parse(run("entanglement --state " + epr + " --label '(1)(2)'").out);
    CHECK(std::abs(c["value"].get<double>() - 1.0) <= 5e-3);
    CHECK(run("entanglement --state /nonexistent.json --label '(1)(2)'").code == 2);
    CHECK(run("entanglement --state " + epr + " --label '(1)(3)'").code == 2);
    CHECK(run("entanglement --state " + epr + " --label '(1)(2'").code == 2);
}

TEST_CASE("ghz-calculus") {
    const Run r = run("ghz-calculus --combination 'g(123)=2, g(13)=1, g(12)=5' --label '(12)(3)'");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["values"][0]["value"] == "3");
    const Json all = Json::parse(run("ghz-calculus --combination 'g(123)=3, g(12)=7'").out);
    CHECK(all["values"].size() == 7);
    CHECK(run("ghz-calculus --combination 'g(12)=-1'").code == 2);
    CHECK(run("ghz-calculus --combination 'g(12)=1' --label '(12)(3)(4)'").code == 2);
}

TEST_CASE("feasibility and check-gen from combinations") {
    const Run r = run("feasibility --combination 'g(123)=1' --exact-verify");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    check_provenance(j);
    CHECK(j["certificate"]["feasible"] == true);
    CHECK(j["certificate"]["exact_verified"] == true);
    CHECK(j["certificate"]["point"]["x"] == Json::array({0.0, 0.0, 0.0, 1.0}));
    CHECK(j["verification"]["ok"] == true);
    CHECK(j["profile"].contains("(1)(2)(3)"));
    const Run g = run("check-gen --combination 'g(12)=1, g(123)=2' --parties 4");
    CHECK(g.code == 0);
    CHECK(Json::parse(g.out)["rows"].size() == 7);
    CHECK(run("feasibility").code == 2);
    CHECK(run("feasibility --combination 'g(12)=1' --state x.json").code == 2);
    const Run lp = run("feasibility --combination 'g(12)=1' --format table");
    CHECK(lp.out.find("s.t.") != std::string::npos);
}

TEST_CASE("check-gen from a state") {
    const auto ghz = write_state("ghz3b.json", make_ghz(GeneralizedParty::first(3), SystemShape::qubits(3)));
    const Run r = run("check-gen --state " + ghz);
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["violations"] == 0);
}

TEST_CASE("search output is byte-identical and JSON lines") {
    const std::string args = "search --parties 3 --trials 2 --seed 5 --budget '{\"restarts\":2,\"max_iters\":120}'";
    const Run a = run(args);
    const Run b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    std::istringstream lines(a.out);
    std::string line;
    int count = 0;
    Json last;
    while (std::getline(lines, line)) {
        last = Json::parse(line);
        check_provenance(last);
        CHECK(last["seed"] == 5);
        CHECK(last["budget"]["restarts"] == 2);
        ++count;
    }
    CHECK(count == 3);
    CHECK(last["summary"]["trials"] == 2);
    CHECK(last["summary"]["result"] == "none found");
    CHECK(run("search --parties 5 --trials 1").code == 2);
    CHECK(run("search --parties 3 --trials 1 --budget '{\"bogus\":1}'").code == 2);
}

TEST_CASE("--out and budget files") {
    const auto out = (scratch() / "enum.json").string();
    const auto budget = (scratch() / "budget.json").string();
    std::ofstream(budget) << R"({"restarts": 3})";
    REQUIRE(run("enumerate --parties 4 --out " + out + " --budget " + budget).code == 0);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    const Json j = Json::parse(ss.str());
    CHECK(j["budget"]["restarts"] == 3);
    CHECK(j["counts"]["labels"] == 36);
}
