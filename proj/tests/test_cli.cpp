#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

using namespace ioconf::test;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string command = std::string(IOCONF_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 512> buffer;
    while (fgets(buffer.data(), buffer.size(), pipe)) result.output += buffer.data();
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string fx(const std::string& name) { return fixture_path(name); }

} // namespace

TEST_CASE("exit codes: holds, fails, usage error") {
    CHECK(run("iocos " + fx("ex2.lts") + " i s").exit_code == 0);
    CHECK(run("iocos " + fx("ex6.lts") + " i s").exit_code == 1);
    CHECK(run("iocos " + fx("ex2.lts") + " i nosuch").exit_code == 2);
    CHECK(run("frobnicate").exit_code != 0);
    CHECK(run("iocos /nonexistent.lts i s").exit_code == 2);
}

TEST_CASE("validate reports violations") {
    auto ok = run("validate " + fx("ex2.lts"));
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("quiescence-coherent") != std::string::npos);

    auto bad = run("validate " + fx("incoherent.lts"));
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("delta-alongside-output") != std::string::npos);
    CHECK(bad.output.find("missing-delta-loop") != std::string::npos);

    // closing repairs output-less states only; the fixture stays broken
    CHECK(run("validate --close-quiescence " + fx("incoherent.lts")).exit_code == 1);
}

TEST_CASE("bridge prints the LM13 refutation with iocos as the headline verdict") {
    auto r = run("bridge " + fx("ex6.lts") + " i s --depth 3");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("ioco: yes") != std::string::npos);
    CHECK(r.output.find("iocos: no") != std::string::npos);
    CHECK(r.output.find("bounded trace comparison (depth 3): yes") != std::string::npos);
}

TEST_CASE("failing iocos verdicts carry a witness that re-checks under mc") {
    auto r = run("--format json iocos " + fx("ex6.lts") + " i s");
    CHECK(r.exit_code == 1);
    json doc = json::parse(r.output);
    REQUIRE(doc.contains("witness"));
    REQUIRE(doc.contains("rank"));
    std::string witness = doc["witness"];
    CHECK(run("mc " + fx("ex6.lts") + " i \"" + witness + "\"").exit_code == 0);
    CHECK(run("mc " + fx("ex6.lts") + " s \"" + witness + "\"").exit_code == 1);
}

TEST_CASE("mc checks formulas and declarations") {
    CHECK(run("mc " + fx("ex6.lts") + " s \"[[a?]]([a!]ff | [b!]ff)\"").exit_code == 0);
    CHECK(run("mc " + fx("ex6.lts") + " i \"[[a?]]([a!]ff | [b!]ff)\"").exit_code == 1);
    CHECK(run("mc " + fx("ex2.lts") + " s \"<<a?>>ff\"").exit_code == 0);
    CHECK(run("mc " + fx("ex2.lts") + " i \"oops(\"").exit_code == 2);
}

TEST_CASE("distinguish emits a witness that mc re-checks") {
    auto none = run("distinguish " + fx("ex2.lts") + " i s");
    CHECK(none.exit_code == 0);
    CHECK(none.output.find("none") != std::string::npos);

    auto r = run("--json distinguish " + fx("ex6.lts") + " i s");
    CHECK(r.exit_code == 1);
    json doc = json::parse(r.output);
    REQUIRE(doc.contains("formula"));
    std::string formula = doc["formula"];
    CHECK(run("mc " + fx("ex6.lts") + " i \"" + formula + "\"").exit_code == 0);
    CHECK(run("mc " + fx("ex6.lts") + " s \"" + formula + "\"").exit_code == 1);

    // box-side witness: satisfied by the specification instead
    auto dual = run("--json distinguish --fragment tliocos " + fx("ex6.lts") + " i s");
    CHECK(dual.exit_code == 1);
    std::string dual_formula = json::parse(dual.output)["formula"];
    CHECK(run("mc " + fx("ex6.lts") + " s \"" + dual_formula + "\"").exit_code == 0);
    CHECK(run("mc " + fx("ex6.lts") + " i \"" + dual_formula + "\"").exit_code == 1);
}

TEST_CASE("charform output feeds back through mc --decl") {
    auto r = run("--json charform " + fx("ex2.lts") + " s");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.output);
    CHECK(doc["root"] == "X_s");
    CHECK(doc["declaration"] == "max X_s = [delta!]X_s;");

    std::string decl_file = "/tmp/ioconf_charform_ex2.decl";
    {
        std::FILE* f = std::fopen(decl_file.c_str(), "w");
        REQUIRE(f != nullptr);
        std::string text = doc["declaration"];
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
    }
    CHECK(run("mc " + fx("ex2.lts") + " i --decl " + decl_file + " --root X_s").exit_code == 0);
}

TEST_CASE("gsos-check names the violated clause") {
    auto choice = run("gsos-check " + fx("choice.gsos"));
    CHECK(choice.exit_code == 1);
    CHECK(choice.output.find("clause 2 violated") != std::string::npos);

    CHECK(run("gsos-check " + fx("merge2.gsos")).exit_code == 0);
    auto ce6 = run("gsos-check " + fx("ce6.gsos"));
    CHECK(ce6.exit_code == 1);
    CHECK(ce6.output.find("clause 3 violated") != std::string::npos);

    auto merge_q = run("gsos-check --quiescence " + fx("merge2.gsos"));
    CHECK(merge_q.exit_code == 1);
    CHECK(merge_q.output.find("[delta2] violated") != std::string::npos);
    CHECK(run("gsos-check --quiescence " + fx("qc_copy.gsos")).exit_code == 0);
}

TEST_CASE("gsos-lts prints a reparsable system") {
    auto r = run("gsos-lts " + fx("merge2.gsos") + " " + fx("base2_ao.lts") + " \"and2(@v0,@v1)\"");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("trans and2(@v0,@v1)") != std::string::npos);
    auto reparsed = ioconf::parse_lts(r.output);
    CHECK(reparsed.has_state("and2(@v0,@v1)"));

    CHECK(run("gsos-lts " + fx("merge2.gsos") + " " + fx("base2_ao.lts") + " \"and2(@v0,@v1)\" --cap 1")
              .exit_code == 2);
}

TEST_CASE("decompose prints maps and verifies substitutions") {
    auto r = run("decompose " + fx("decomp_example.gsos") + " \"f(x)\" \"<<a?>><b!>tt\"");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("3 decomposition map(s)") != std::string::npos);
    CHECK(r.output.find("{x: <b!>tt}") != std::string::npos);

    auto verified = run("decompose " + fx("ce3.gsos") + " \"f(x)\" \"<<a?>><<a?>>ff\" --base " +
                        fx("ex2.lts") + " --sub x=s");
    CHECK(verified.exit_code == 1);   // direct and decomposed disagree off-format
    CHECK(verified.output.find("direct satisfaction: no") != std::string::npos);
    CHECK(verified.output.find("decomposed satisfaction: yes") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
    for (const std::string args :
         {std::string("bridge ") + fx("ex6.lts") + " i s", std::string("--json iocos ") + fx("ex6.lts") + " i s",
          std::string("charform ") + fx("ex6.lts") + " s",
          std::string("gsos-check ") + fx("choice.gsos")}) {
        auto first = run(args);
        auto second = run(args);
        CHECK(first.output == second.output);
        CHECK(first.exit_code == second.exit_code);
    }
}
