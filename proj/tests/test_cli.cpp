#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "support/fixtures.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output;   // stdout + stderr
};

RunResult run(const std::string& args) {
    const char* bin = std::getenv("CTMC_CHECK_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string pdgf_args() {
    std::string dir = testsup::models_dir();
    return dir + "/pdgf-rates.gcm " + dir + "/pdgf-structure.gcm";
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/" + name;
    std::ofstream os(path);
    os << content;
    return path;
}

} // namespace

TEST_CASE("check prints a probability and exits 0") {
    RunResult r = run("check " + pdgf_args() + " -p \"S=? [ PPX=1 ]\"");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("S=? [ PPX=1 ] = 0") != std::string::npos);
}

TEST_CASE("missing model file: exit 1, error class io") {
    RunResult r = run("check /nonexistent/missing.gcm -p \"S=? [ x=1 ]\"");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("error [io]") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    RunResult r = run("definitely-not-a-subcommand");
    CHECK(r.exit_code != 0);
    CHECK(r.exit_code != 1);

    r = run("check");   // missing required model argument
    CHECK(r.exit_code != 0);
    CHECK(r.exit_code != 1);
}

TEST_CASE("error classes map to greppable prefixes") {
    std::string bad_lex = write_temp("cli_lex.gcm", "module m\n  x : [0..1] init 0;\n  $\nendmodule\n");
    RunResult r = run("build " + bad_lex);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("error [lex]") != std::string::npos);

    std::string bad_syntax = write_temp("cli_syntax.gcm", "module m\n  x : [0..1 init 0;\nendmodule\n");
    r = run("build " + bad_syntax);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("error [syntax]") != std::string::npos);

    std::string bad_validate =
        write_temp("cli_validate.gcm", "module m\n  x : [0..1] init 7;\nendmodule\n");
    r = run("build " + bad_validate);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("error [validate]") != std::string::npos);

    r = run("build " + pdgf_args() + " --max-states 100");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("error [build]") != std::string::npos);

    r = run("check " + pdgf_args() + " -p \"S=? [ missing=1 ]\"");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("error [validate]") != std::string::npos);
}

TEST_CASE("build --stats prints the statistics table") {
    RunResult r = run("build " + pdgf_args() + " --stats --name WildType");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("Model,States,Transitions") != std::string::npos);
    CHECK(r.output.find("WildType,24576,") != std::string::npos);
}

TEST_CASE("json output carries value and diagnostics") {
    RunResult r = run("check " + pdgf_args() + " -p \"P=? [ F[1,1] PDGFR=1 ]\" --json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"formula\"") != std::string::npos);
    CHECK(r.output.find("\"value\"") != std::string::npos);
    CHECK(r.output.find("\"diagnostics\"") != std::string::npos);
    CHECK(r.output.find("\"wall_ms\"") != std::string::npos);
}

TEST_CASE("read-only subcommands are byte-identical across reruns") {
    std::string out1 = "/tmp/cli_sweep_1.csv", out2 = "/tmp/cli_sweep_2.csv";
    std::string cmd = "sweep " + pdgf_args() +
                      " --expr \"PDGFR=1\" --times 0,1,2 "
                      "--variant name=SHP2Mutant,remove-reaction=7 -o ";
    CHECK(run(cmd + out1).exit_code == 0);
    CHECK(run(cmd + out2).exit_code == 0);
    CHECK(testsup::slurp(out1) == testsup::slurp(out2));
    CHECK(testsup::slurp(out1).find("time,wildtype,SHP2Mutant") != std::string::npos);
}

TEST_CASE("simulate: fixed seed gives identical trajectories, CSV shape as documented") {
    std::string out1 = "/tmp/cli_sim_1.csv", out2 = "/tmp/cli_sim_2.csv";
    std::string cmd = "simulate " + pdgf_args() + " --seed 11 --horizon 5 -o ";
    CHECK(run(cmd + out1).exit_code == 0);
    CHECK(run(cmd + out2).exit_code == 0);
    std::string a = testsup::slurp(out1);
    CHECK(a == testsup::slurp(out2));
    CHECK(a.rfind("time,stateIndex,PDGFR,PPX,", 0) == 0);
}

TEST_CASE("export writes the three explicit-chain files") {
    RunResult r = run("export " + pdgf_args() + " -o /tmp/cli_export");
    CHECK(r.exit_code == 0);
    CHECK(!testsup::slurp("/tmp/cli_export.tra").empty());
    CHECK(!testsup::slurp("/tmp/cli_export.sta").empty());
    CHECK(!testsup::slurp("/tmp/cli_export.lab").empty());
}

TEST_CASE("steady and rewards and knockout-scan produce CSV artifacts") {
    RunResult r = run("steady " + pdgf_args() + " --molecules PPX,MTOR");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PPX,0.00") != std::string::npos);

    r = run("rewards " + pdgf_args() + " --blocks PDGFRactive --times 0,1,2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("time,PDGFRactive") != std::string::npos);

    r = run("knockout-scan " + pdgf_args() +
            " --formula-a \"Akt=1\" --formula-b \"MEK12=1\" -o /tmp/cli_scan.csv");
    CHECK(r.exit_code == 0);
    std::string scan = testsup::slurp("/tmp/cli_scan.csv");
    CHECK(scan.find("wildtype") != std::string::npos);
    // 37 reactions + wildtype + header
    int lines = 0;
    for (char ch : scan)
        if (ch == '\n') ++lines;
    CHECK(lines == 39);
}

TEST_CASE("property files run line by line") {
    std::string props = write_temp("cli_props.txt",
                                   "# two properties\nS=? [ PPX=1 ]\nP=? [ F[1,1] PDGFR=1 ]\n");
    RunResult r = run("check " + pdgf_args() + " --props " + props);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("S=? [ PPX=1 ]") != std::string::npos);
    CHECK(r.output.find("P=? [ F[1,1] PDGFR=1 ]") != std::string::npos);
}

TEST_CASE("sweep accepts an experiment spec file") {
    std::string dir = testsup::models_dir();
    std::string spec = write_temp("cli_spec.txt",
                                  "mode = sweep\n"
                                  "model = \"" + dir + "/pdgf-rates.gcm " + dir +
                                      "/pdgf-structure.gcm\"\n"
                                  "times = 0,1\n"
                                  "expr = \"PDGFR=1\"\n"
                                  "output = /tmp/cli_spec_out.csv\n"
                                  "[variant]\n"
                                  "name = cCblMutant\n"
                                  "remove-reaction = 6\n");
    RunResult r = run("sweep --spec " + spec);
    CHECK(r.exit_code == 0);
    CHECK(testsup::slurp("/tmp/cli_spec_out.csv").find("cCblMutant") != std::string::npos);
}
