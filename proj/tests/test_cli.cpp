/*
   Copyright 2026 The dynzeta Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "dynzeta/cli.hpp"

using namespace dynzeta;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "dynzeta");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<json> records(const std::string& text) {
    std::vector<json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
    return out;
}

std::string job_path(const std::string& name) {
    const char* dir = std::getenv("DYNZETA_JOBS_DIR");
    return std::string(dir ? dir : "jobs") + "/" + name;
}

}  // namespace

TEST_CASE("count matches the oracle") {
    auto r = run({"count", "--family", "power", "--p", "3", "--d", "2", "--n-max", "8"});
    REQUIRE(r.code == exit_ok);
    auto rows = records(r.out);
    REQUIRE(rows.size() == 8);
    for (const auto& row : rows) {
        CHECK(row["record"] == "count");
        CHECK(row["schema"] == "1");
        CHECK(row["match"] == true);
        CHECK(row["closed"].is_string());
    }
    CHECK(rows[0]["closed"] == "3");

    // additive x^3 - x: the oracle column is empty beyond the degree cap
    auto add = records(run({"count", "--family", "additive", "--p", "3", "--sigma", "-1", "1", "--n-max", "9"}).out);
    REQUIRE(add.size() == 9);
    CHECK(add[0]["closed"] == "4");
    CHECK(add[1]["closed"] == "4");
    CHECK(add[0]["match"] == true);
    CHECK(add[7]["match"] == true);
    CHECK(add[8]["oracle"].is_null());  // 3^9 exceeds the degree cap

    auto ins = records(run({"count", "--family", "power", "--p", "3", "--d", "3", "--n-max", "5"}).out);
    CHECK(ins[4]["closed"] == "244");
}

TEST_CASE("zeta, verdict and automata commands") {
    auto z = records(run({"zeta", "--family", "power", "--p", "3", "--d", "2", "--terms", "30"}).out);
    REQUIRE(z.size() == 1);
    CHECK(z[0]["coefficients"].size() == 31);
    CHECK(z[0]["guess"].is_null());

    auto zr = records(run({"zeta", "--family", "additive", "--rational-field", "--p", "3", "--sigma", "u", "1"}).out);
    REQUIRE(zr.size() == 1);
    CHECK(zr[0]["guess"]["closed_form"] == "(1)/(1 - 4*t + 3*t^2)");

    auto v = run({"--job", job_path("verdict_additive_f3.json")});
    REQUIRE(v.code == exit_ok);
    auto vr = records(v.out);
    CHECK(vr[0]["kind"] == "transcendental_evidence");
    CHECK(vr[0]["certificate"]["ell"] == "29");
    CHECK(vr[0]["certificate"]["consistent"] == true);

    auto c = run({"--job", job_path("christol_powers_of_two.json")});
    REQUIRE(c.code == exit_ok);
    auto coeffs = records(c.out)[0]["coefficients"];
    REQUIRE(coeffs.size() == 64);
    for (std::size_t n = 0; n < 64; ++n) CHECK(coeffs[n] == ((n & (n - 1)) == 0 && n ? "1" : "0"));

    auto k = records(run({"automata", "--mode", "kernel", "--sequence", "valuation", "--p", "3", "--a", "2", "--ell",
                          "5", "--base", "3", "--depth", "6", "--kernel-prefix", "128"})
                         .out);
    CHECK(k[0]["classification"] == "closed");

    auto census = records(run({"census", "--family", "power", "--p", "3", "--d", "2", "--n-max", "4"}).out);
    REQUIRE(census.size() == 1);
    CHECK(census[0]["cycles"][0] == "3");

    auto o = records(run({"oracle", "--family", "rational", "--p", "5", "--num", "1", "0", "1"}).out);
    CHECK(o.size() == 8);
}

TEST_CASE("job files round-trip and runs are deterministic") {
    for (const char* name : {"count_power_f3.json", "verdict_additive_f3.json", "christol_powers_of_two.json"}) {
        auto printed = run({"--job", job_path(name), "--print-spec"});
        REQUIRE(printed.code == exit_ok);
        const JobSpec spec = job_from_json(json::parse(printed.out));
        CHECK(job_from_json(job_to_json(spec)) == spec);
        CHECK(job_to_json(spec) == json::parse(printed.out));
        CHECK(run({"--job", job_path(name)}).out == run({"--job", job_path(name)}).out);
    }
    // flags and a job file compile to the same spec
    auto a = run({"count", "--family", "power", "--p", "3", "--d", "2", "--n-max", "8", "--print-spec"});
    auto b = run({"--job", job_path("count_power_f3.json"), "--print-spec"});
    CHECK(a.out == b.out);
}

TEST_CASE("table output") {
    auto t = run({"count", "--family", "power", "--p", "3", "--d", "2", "--n-max", "3", "--table"});
    REQUIRE(t.code == exit_ok);
    CHECK(t.out.rfind("# count\n", 0) == 0);
    CHECK(t.out.find("closed") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({"count", "--family", "nope", "--p", "3"}).code == exit_invalid_spec);
    CHECK(run({"count", "--family", "power", "--p", "4", "--d", "2"}).code == exit_invalid_spec);
    CHECK(run({"bogus"}).code == exit_invalid_spec);
    CHECK(run({"count", "--bad-flag"}).code == exit_invalid_spec);
    CHECK(run({"--job", "/nonexistent.json"}).code == exit_invalid_spec);
    CHECK(run({"--job", job_path("count_power_f3.json"), "--p", "5"}).code == exit_invalid_spec);
    auto big = run({"oracle", "--family", "power", "--p", "3", "--d", "2", "--n-min", "20", "--n-max", "20"});
    CHECK(big.code == exit_scale);
    CHECK(big.err.find("ScaleExceeded") != std::string::npos);
    CHECK(run({"verdict", "--family", "power", "--p", "3", "--d", "2", "--terms", "10"}).code == exit_ok);
    CHECK(exit_code_for(Errc::mismatch) == exit_inconsistent);
    CHECK(run({"--help"}).code == exit_ok);
}
