#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "wcop/cli.hpp"
#include "wcop/report.hpp"

using namespace wcop;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("classify prints verdicts") {
    Run r = run({"classify", "--psi", "1", "--phi", "x^2+1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("power_bounded                 Yes") != std::string::npos);
    Run s = run({"classify", "--psi", "x", "--phi", "x+1", "--format", "json"});
    CHECK(s.code == 0);
    Json doc = Json::parse(s.out);
    CHECK(doc["verdicts"]["topologizable"]["value"] == "No");
    CHECK(doc["verdicts"]["topologizable"]["rationale"][0]["rule"] == "top.affine-nonconstant-weight");
    Run e = run({"classify", "--psi", "exp(x)", "--phi", "exp(x)", "--format", "json"});
    CHECK(Json::parse(e.out)["verdicts"]["power_bounded"]["value"] == "Yes");
}

TEST_CASE("classify json is byte-identical across runs") {
    std::vector<std::string> args = {"classify", "--psi", "x^3-2", "--phi", "x^2+1", "--format", "json"};
    Run a = run(args), b = run(args);
    CHECK(a.out == b.out);
    CHECK(Json::parse(a.out).dump(2) + "\n" == a.out);
}

TEST_CASE("config flags are echoed") {
    Run r = run({"classify", "--psi", "1", "--phi", "x^2", "--format", "json", "--alpha-max", "2", "--q-max", "8",
                 "--n-max", "5", "--grid-J", "256", "--disable-rule", "pb.fixed-points"});
    REQUIRE(r.code == 0);
    Json c = Json::parse(r.out)["config"];
    CHECK(c["alpha_max"] == 2);
    CHECK(c["q_max"] == "8");
    CHECK(c["n_max"] == 5);
    CHECK(c["grid_J"] == 256);
    CHECK(c["disabled_rules"][0] == "pb.fixed-points");
}

TEST_CASE("exit codes") {
    CHECK(run({"classify", "--psi", "x+", "--phi", "x"}).code == 2);
    CHECK(run({"classify", "--psi", "1"}).code == 2);
    CHECK(run({"classify", "--psi", "1", "--phi", "x", "--format", "yaml"}).code == 2);
    CHECK(run({"classify", "--psi", "1", "--phi", "x", "--dim", "2"}).code == 2);
    CHECK(run({"classify", "--psi", "1", "--phi", "x", "--q-max", "-1"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"check", "bogus", "--phi", "x"}).code == 2);
    CHECK(run({"check", "acts", "--phi", "x", "--alpha", "1,2"}).code == 2);
    CHECK(run({"check", "pb-a", "--phi", "x", "--lambda", "1"}).code == 2);
    CHECK(run({"check", "pb-a", "--phi", "x", "--n", "3..1"}).code == 2);
    CHECK(run({"check", "pb-a", "--phi", "x", "--n", "1-3"}).code == 2);
    CHECK(run({"check", "exp-ineq", "--xrange", "5..-20"}).code == 2);
}

TEST_CASE("check subcommand") {
    Run e = run({"check", "exp-ineq", "--alpha", "1", "--n", "3..8", "--xrange", "-20..5"});
    CHECK(e.code == 0);
    CHECK(e.out.find("result:    holds") != std::string::npos);
    Run f = run({"check", "exp-ineq", "--alpha", "2", "--n", "1..1", "--format", "json"});
    CHECK(f.code == 1);
    CHECK(Json::parse(f.out)["result"]["holds"] == false);

    Run b = run({"check", "pb-b", "--phi", "x^2", "--alpha", "1", "--n", "1..6", "--format", "json"});
    REQUIRE(b.code == 0);
    Json jb = Json::parse(b.out)["result"];
    CHECK(jb["tag"] == "LikelyFails");
    CHECK(jb["rows"].size() == 6);
    CHECK(jb["rows"][5]["q"] == "63/64");

    Run s = run({"check", "smalldecay", "--psi", "x^2-5", "--phi", "x^2+1"});
    CHECK(s.code == 0);
    CHECK(s.out.find("result:    Holds") != std::string::npos);

    Run a = run({"check", "acts", "--psi", "x^2", "--phi", "x^2+1", "--alpha", "2", "--lambda", "1", "--q", "2"});
    CHECK(a.code == 0);
    CHECK(a.out.find("result:    Fails") != std::string::npos);

    Run t = run({"check", "top-a", "--psi", "x", "--phi", "x+1", "--alpha", "0", "--p", "1", "--n", "1..4",
                 "--q", "3", "--format", "json"});
    REQUIRE(t.code == 0);
    Json jt = Json::parse(t.out)["result"];
    CHECK(jt["tag"] == "Fails");
    CHECK(jt["rows"].size() == 4);
}

TEST_CASE("corpus subcommand") {
    Run ok = run({"corpus"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("entries match") != std::string::npos);
    Run off = run({"corpus", "--disable-rule", "pb.translation"});
    CHECK(off.code == 1);
    CHECK(off.out.find("shift-two") != std::string::npos);

    std::string path = "wcop_test_empty_corpus.json";
    std::ofstream(path) << "[]";
    CHECK(run({"corpus", "--file", path}).code == 2);
    std::ofstream(path) << "{ broken";
    CHECK(run({"corpus", "--file", path}).code == 2);

    Run dump = run({"corpus", "--dump"});
    REQUIRE(dump.code == 0);
    std::ofstream(path) << dump.out;
    Run again = run({"corpus", "--file", path, "--format", "json"});
    CHECK(again.code == 0);
    CHECK(Json::parse(again.out)["mismatches"].empty());
    std::remove(path.c_str());
}
