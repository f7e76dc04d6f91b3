// Copyright 2026 The qleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qleak/cli.hpp"
#include "qleak/qdiv.hpp"

using namespace qleak;
using namespace qleak::cli;

namespace {

const char* kOrth =
    R"({"alphabet":["0","1"],"prior":[0.5,0.5],"dim":2,)"
    R"("states":{"0":[[[1,0],[0,0]],[[0,0],[0,0]]],"1":[[[0,0],[0,0]],[[0,0],[1,0]]]}})";

const char* kPlus =
    R"({"alphabet":["a","b"],"prior":[0.5,0.5],"dim":2,)"
    R"("states":{"a":[[[1,0],[0,0]],[[0,0],[0,0]]],"b":[[[0.5,0],[0.5,0]],[[0.5,0],[0.5,0]]]}})";

const char* kSame =
    R"({"alphabet":["x","y"],"prior":[0.25,0.75],"dim":2,)"
    R"("states":{"x":[[[0.6,0],[0,0]],[[0,0],[0.4,0]]],"y":[[[0.6,0],[0,0]],[[0,0],[0.4,0]]]}})";

const char* kCommuting =
    R"({"alphabet":["u","v"],"prior":[0.4,0.6],"dim":2,)"
    R"("states":{"u":[[[0.9,0],[0,0]],[[0,0],[0.1,0]]],"v":[[[0.2,0],[0,0]],[[0,0],[0.8,0]]]}})";

std::string expect_error_message(const std::string& text) {
    try {
        parse_ensemble_text(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

const AuditRow* find_row(const std::vector<AuditRow>& rows, const std::string& check, double alpha) {
    for (const auto& r : rows)
        if (r.check == check && (r.alpha == alpha || (std::isinf(r.alpha) && std::isinf(alpha)))) return &r;
    return nullptr;
}

std::filesystem::path scratch_dir() {
    auto p = std::filesystem::temp_directory_path() / "qleak_test_cli";
    std::filesystem::create_directories(p);
    return p;
}

std::string write_file(const std::string& name, const std::string& text) {
    const auto p = scratch_dir() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int exit_code(const std::string& args) {
    const std::string cmd = std::string(QLEAK_BINARY) + " " + args + " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST_CASE("ensemble parsing") {
    const CQState e = parse_ensemble_text(kPlus);
    CHECK(e.size() == 2);
    CHECK(e.dim() == 2);
    CHECK(e.prior().labels() == std::vector<std::string>{"a", "b"});
    CHECK(e.states()[1].matrix()(0, 1).real() == doctest::Approx(0.5));

    CHECK_THROWS_AS(parse_ensemble_text("{\"alphabet\": ["), ParseError);
    CHECK_THROWS_AS(parse_ensemble_text(R"({"alphabet":["a"],"prior":[1],"dim":1})"), SchemaError);
    CHECK_THROWS_AS(parse_ensemble_text(R"({"alphabet":["a"],"prior":[1],"dim":1,"states":{"a":[[[1,0]]]},"x":1})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_ensemble_text(R"({"alphabet":["a"],"prior":[1],"dim":1,"states":{"a":[[[1,0],[0,0]]]}})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_ensemble_text(R"({"alphabet":["a"],"prior":[1],"dim":1,"states":{"b":[[[1,0]]]}})"),
                    SchemaError);

    const std::string badPrior =
        R"({"alphabet":["a","b"],"prior":[0.6,0.5],"dim":1,"states":{"a":[[[1,0]]],"b":[[[1,0]]]}})";
    CHECK_THROWS_AS(parse_ensemble_text(badPrior), InvariantError);
    CHECK(expect_error_message(badPrior).find("1.1") != std::string::npos);

    const std::string nonHermitian =
        R"({"alphabet":["ok","bad"],"prior":[0.5,0.5],"dim":2,)"
        R"("states":{"ok":[[[1,0],[0,0]],[[0,0],[0,0]]],"bad":[[[0.5,0],[0.3,0]],[[0.1,0],[0.5,0]]]}})";
    CHECK_THROWS_AS(parse_ensemble_text(nonHermitian), InvariantError);
    CHECK(expect_error_message(nonHermitian).find("bad") != std::string::npos);
}

TEST_CASE("alpha parsing") {
    CHECK(parse_alpha("2") == 2.0);
    CHECK(std::isinf(parse_alpha("inf")));
    CHECK(std::isinf(parse_alpha("Infinity")));
    CHECK(parse_alpha_list("0.5,1,inf").size() == 3);
    CHECK_THROWS(parse_alpha("-1"));
    CHECK_THROWS(parse_alpha("two"));
}

TEST_CASE("quantity values") {
    const auto same = run({"alpha-leakage"}, {1.0, 2.0, kInf}, parse_ensemble_text(kSame));
    REQUIRE(same.size() == 3);
    for (const auto& r : same) CHECK(std::abs(r.value.value()) < 1e-9);

    const auto orth = run({"max-alpha-leakage"}, {2.0}, parse_ensemble_text(kOrth));
    REQUIRE(orth.size() == 1);
    CHECK(format_number(orth[0].value.value()).substr(0, 7) == "0.69314");

    const CQState plus = parse_ensemble_text(kPlus);
    const auto md = run({"measured-divergence"}, {0.5}, plus);
    CHECK(md[0].value.value() == doctest::Approx(sandwiched(plus.states()[0], plus.states()[1].op(), 0.5).value.value()));
    CHECK(md[0].value.value() == doctest::Approx(std::log(2.0)));
}

TEST_CASE("rows are sorted and deduplicated") {
    const CQState e = parse_ensemble_text(kCommuting);
    const auto rows = run({"umegaki", "capacity", "capacity"}, {2.0, 0.5, 2.0}, e);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].quantity == "capacity");
    CHECK(rows[0].alpha == 0.5);
    CHECK(rows[1].alpha == 2.0);
    CHECK(rows[3].quantity == "umegaki");
    for (const auto& r : rows) CHECK(r.seconds == 0.0);
}

TEST_CASE("infinite values survive serialization") {
    const CQState e = parse_ensemble_text(kPlus);
    const auto rows = run({"sandwiched-divergence"}, {2.0, kInf}, e);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].value.is_infinite());
    CHECK(format_number(rows[0].value.value()) == "inf");
    const std::string csv = to_csv(rows);
    CHECK(csv.find(",inf,") != std::string::npos);
    const auto j = nlohmann::json::parse(to_json(rows));
    CHECK(j.is_array());
    CHECK(j[1]["alpha"] == "inf");
    CHECK(std::isinf(parse_alpha(j[0]["value"].get<std::string>())));
    CHECK(format_number(-0.0) == "0");
}

TEST_CASE("unknown quantities and out-of-domain alphas") {
    const CQState e = parse_ensemble_text(kOrth);
    CHECK_THROWS_AS(run({"mutual-entropy"}, {2.0}, e), UnknownQuantity);
    CHECK_THROWS_AS(run({"alpha-leakage"}, {0.5}, e), AlphaOutOfDomain);
    CHECK_THROWS_AS(run({"sandwiched-divergence"}, {0.0}, e), AlphaOutOfDomain);
    CHECK_THROWS_AS(run({"regularize-capacity"}, {1.0}, e), AlphaOutOfDomain);
    CHECK(quantity_tags().size() == 18);
}

TEST_CASE("audit rows") {
    const auto plus = audit(parse_ensemble_text(kPlus), {kInf}, 64);
    const AuditRow* h = find_row(plus, "helstrom", kInf);
    REQUIRE(h != nullptr);
    CHECK(h->status == "PASS");
    CHECK(h->oracle == doctest::Approx(0.5 + std::sqrt(2.0) / 4.0));
    for (const auto& r : plus) CHECK(r.status != "FAIL");

    const auto com = audit(parse_ensemble_text(kCommuting), {2.0}, 64);
    for (const char* c : {"classical-divergence", "classical-conditional-entropy", "classical-arimoto-information",
                          "classical-renyi-information", "classical-capacity"}) {
        const AuditRow* r = find_row(com, c, 2.0);
        REQUIRE(r != nullptr);
        CHECK(r->status == "PASS");
    }

    const std::string single = R"({"alphabet":["s"],"prior":[1],"dim":2,"states":{"s":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}})";
    const auto one = audit(parse_ensemble_text(single), {2.0}, 64);
    for (const auto& r : one) {
        CHECK(r.status != "FAIL");
        if (r.status == "PASS") CHECK(std::abs(r.solver) < 1e-9);
    }
    CHECK_THROWS_AS(audit(parse_ensemble_text(kPlus), {2.0}, 32), DomainError);
    CHECK(audit_csv(plus).rfind("check,alpha,solver,oracle,gap,status\n", 0) == 0);
}

TEST_CASE("formatted output is reproducible") {
    const CQState e = parse_ensemble_text(kPlus);
    const std::vector<std::string> q{"alpha-leakage", "radius", "measured-divergence", "arimoto-information"};
    const std::vector<double> a{1.0, 2.0, kInf};
    CHECK(to_csv(run(q, a, e)) == to_csv(run(q, a, e)));
    CHECK(to_json(run(q, a, e)) == to_json(run(q, a, e)));
}

TEST_CASE("command-line tool") {
    const std::string plus = write_file("plus.json", kPlus);
    const std::string bad = write_file("bad.json", R"({"alphabet":["a"],"prior":[1],"dim":1})");
    const std::string out1 = (scratch_dir() / "out1.csv").string();
    const std::string out2 = (scratch_dir() / "out2.csv").string();
    const std::string base = "--input " + plus + " --quantity alpha-leakage --quantity radius --alpha 1,2,inf";
    CHECK(exit_code(base + " --output " + out1) == 0);
    CHECK(exit_code(base + " --output " + out2) == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(slurp(out1).rfind("quantity,alpha,value,converged,iterations,seconds\n", 0) == 0);
    CHECK(exit_code("--input " + bad + " --quantity umegaki --alpha 1") == 2);
    CHECK(exit_code("--input " + plus + " --quantity nope --alpha 1") == 2);
    CHECK(exit_code("--input " + plus + " --quantity alpha-leakage --alpha 0.5") == 2);
    CHECK(exit_code("--input " + plus + " --alpha 1") == 2);
    CHECK(exit_code("--input " + plus + " --audit --alpha 2,inf") == 0);
    CHECK(exit_code("--input " + plus + " --audit --alpha 2 --grid-resolution 32") == 2);
}
