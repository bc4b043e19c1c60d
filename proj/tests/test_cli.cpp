#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "nilc/serialize.hpp"

using namespace nilc;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(NILC_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(NILC_DATA_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text)
{
    const std::string path = "/tmp/nilc_test_" + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("centre output for the examples")
{
    const Run r1 = run("centre " + data("ex1.json"));
    CHECK(r1.code == 0);
    CHECK(r1.out.find("C1: Im ψ ⊆ span{x}") != std::string::npos);
    CHECK(r1.out.find("C(K): trivial only") != std::string::npos);

    const Run r4 = run("centre " + data("ex4.json"));
    CHECK(r4.code == 0);
    CHECK(r4.out.find("C(K): Im ψ ⊆ span{y,z}") != std::string::npos);

    const std::string bare = write_temp("bare.json", R"({"base": {"dim": 2}, "layers": []})");
    const Run rb = run("centre " + bare);
    CHECK(rb.out.find("C(K): Im ψ ⊆ U (all of S(K))") != std::string::npos);
}

TEST_CASE("json output is deterministic")
{
    for (const char* f : {"ex1.json", "ex2.json", "ex3.json", "ex4.json"}) {
        const Run a = run("centre --json " + data(f));
        const Run b = run("centre --json " + data(f));
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        const json j = json::parse(a.out);
        CHECK(j.contains("mode"));
        CHECK(j["per_level"].size() == 2);
    }
    const json j4 = json::parse(run("centre --json " + data("ex4.json")).out);
    CHECK(j4["mode"] == "subspace");
    CHECK(j4["basis"] == json::parse("[[0,1,0],[0,0,1]]"));
    CHECK(json::parse(run("centre --json " + data("ex1.json")).out)["mode"] == "trivial_only");
}

TEST_CASE("oracle, comodule and invariants commands")
{
    const Run o = run("oracle " + data("ex1.json") + " --pair 'dim=1;psi=[[1],[0]]' --json --max-degree 4");
    CHECK(o.code == 0);
    const json jo = json::parse(o.out);
    CHECK(jo["pieces"][0]["lifts"] == 2);
    CHECK(jo["central"] == false);

    const Run c = run("comodule " + data("ex4.json") + " " + data("coactions/x.json") + " --max-degree 3");
    CHECK(c.code == 0);
    CHECK(c.out.find("u^3 ↦ u^3⊗1 + u^2⊗t + u⊗t^2 + 1⊗t^3") != std::string::npos);

    const Run inv = run("invariants --dim 2 --group B2 --max-degree 4 --json");
    CHECK(inv.code == 0);
    CHECK(json::parse(inv.out)["dims"] == json::parse("[1,1,2,2,3]"));
}

TEST_CASE("exit codes")
{
    CHECK(run("validate " + data("ex1.json")).code == 0);

    const std::string bad = write_temp("levels.json",
        R"({"base": {"dim": 2}, "layers": [{"level": 2, "kernel": [], "cokernel": []}]})");
    CHECK(run("validate " + bad).code == 1);
    CHECK(run("centre " + bad).code == 1);

    const std::string garbage = write_temp("garbage.json", "{not json");
    CHECK(run("centre " + garbage).code == 1);
    CHECK(run("centre /nonexistent.json").code == 1);
    CHECK(run("oracle " + data("ex1.json") + " --pair nonsense").code == 1);

    CHECK(run("centre --cap-hom-bits 4 " + data("ex4.json")).code == 3);
    CHECK(run("invariants --dim 4 --group GL --cap-group-order 100").code == 3);
}
