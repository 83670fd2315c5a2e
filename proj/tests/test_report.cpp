#include <fstream>

#include "doctest.h"
#include "wcop/errors.hpp"
#include "wcop/report.hpp"

using namespace wcop;

namespace {

Json classify_json(const char* psi, const char* phi, const ClassifierConfig& cfg = {}) {
    auto sp = SymbolPair::parse(psi, phi);
    return report_json(sp, cfg, full_report(sp, cfg));
}

}  // namespace

TEST_CASE("report document has stable fields") {
    Json doc = classify_json("1", "x^2+1");
    std::vector<std::string> keys;
    for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"tool", "version", "input", "config", "verdicts", "evidence"});
    CHECK(doc["tool"] == "wcop");
    CHECK(doc["input"]["phi"][0] == "x^2 + 1");
    CHECK(doc["config"]["grid_J"] == 512);
    CHECK(doc["config"]["q_max"] == "16");
    CHECK(doc["verdicts"]["power_bounded"]["value"] == "Yes");
    CHECK(doc["verdicts"]["power_bounded"]["rationale"][0]["rule"] == "pb.no-fixed-points");
    CHECK(doc["verdicts"].size() == 9);
    for (auto& [name, v] : doc["verdicts"].items())
        if (v["value"] != "Unknown")
            for (auto& e : v["rationale"]) CHECK_FALSE(e["citation"].get<std::string>().empty());
}

TEST_CASE("report json is deterministic and re-parses") {
    for (auto [psi, phi] : {std::pair{"x^3-2", "x^2+1"}, {"exp(x)", "exp(x)"}, {"1", "x+1"}}) {
        std::string a = classify_json(psi, phi).dump(2);
        std::string b = classify_json(psi, phi).dump(2);
        CHECK(a == b);
        CHECK(Json::parse(a).dump(2) == a);
    }
}

TEST_CASE("evidence is serialized with finite or named infinities") {
    ClassifierConfig cfg;
    cfg.probe.alpha_max = 1;
    Json doc = classify_json("exp(x)", "x", cfg);
    REQUIRE_FALSE(doc["evidence"].empty());
    auto& rows = doc["evidence"][0]["rows"];
    REQUIRE_FALSE(rows.empty());
    for (auto& band : rows[0]["bands"]) {
        auto& m = band["running_max"];
        CHECK((m.is_number() || m == "inf" || m == "-inf"));
    }
    std::string s = doc.dump();
    CHECK(Json::parse(s).dump() == s);
}

TEST_CASE("text report lists every property") {
    auto sp = SymbolPair::parse("x", "x+1");
    std::string t = report_text(sp, full_report(sp));
    for (const auto& [name, v] : full_report(sp).properties()) CHECK(t.find(name) != std::string::npos);
    CHECK(t.find("top.affine-nonconstant-weight") != std::string::npos);
}

TEST_CASE("built-in corpus passes") {
    const auto& c = builtin_corpus();
    CHECK(c.size() >= 30);
    CorpusOutcome out = run_corpus(c);
    CHECK(out.passed == out.entries);
    CHECK(out.mismatches.empty());
    for (const auto& e : c) {
        CHECK_FALSE(e.citation.empty());
        CHECK((e.source == "worked-example" || e.source == "derived" || e.source == "elementary"));
    }
}

TEST_CASE("corpus with a rule disabled names the failures") {
    ClassifierConfig cfg;
    cfg.disabled_rules = {"sc.affine"};
    CorpusOutcome out = run_corpus(builtin_corpus(), cfg);
    REQUIRE_FALSE(out.mismatches.empty());
    bool named = false;
    for (const auto& m : out.mismatches) named = named || m.id == "sc-affine";
    CHECK(named);
    CHECK(corpus_text(out).find("sc-affine") != std::string::npos);
}

TEST_CASE("corpus parsing") {
    CHECK_THROWS_AS(parse_corpus("[]"), InvalidRange);
    CHECK_THROWS_AS(parse_corpus("{\"entries\": []}"), InvalidRange);
    CHECK_THROWS_AS(parse_corpus("not json"), InvalidRange);
    CHECK_THROWS_AS(parse_corpus("[{\"id\": \"a\"}]"), InvalidRange);
    CHECK_THROWS_AS(parse_corpus("[{\"id\":\"a\",\"psi\":\"1\",\"phi\":\"x\",\"property\":\"power_bounded\","
                                 "\"expected\":\"Maybe\"}]"),
                    InvalidRange);
    CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.json"), InvalidRange);

    auto round = parse_corpus(corpus_json(builtin_corpus()).dump());
    REQUIRE(round.size() == builtin_corpus().size());
    CHECK(round[3].property == builtin_corpus()[3].property);
    CHECK(round[3].expected == builtin_corpus()[3].expected);

    auto missing = parse_corpus("[{\"id\":\"a\",\"psi\":\"1\",\"phi\":\"x\",\"property\":\"power_bounded\","
                                "\"expected\":\"Yes\",\"source\":\"elementary\"}]");
    CHECK_THROWS_AS(run_corpus(missing), InvalidRange);
    missing[0].citation = "c";
    missing[0].source = "folklore";
    CHECK_THROWS_AS(run_corpus(missing), InvalidRange);
    missing[0].source = "elementary";
    CHECK(run_corpus(missing).passed == 1);
}

TEST_CASE("corpus records bad inputs as mismatches") {
    std::vector<CorpusEntry> c = {{"bad", "x+", "x", 1, "power_bounded", Verdict::Yes, "elementary", "c"},
                                  {"prop", "1", "x", 1, "nonsense", Verdict::Yes, "elementary", "c"}};
    CorpusOutcome out = run_corpus(c);
    CHECK(out.passed == 0);
    CHECK(out.mismatches.size() == 2);
}

TEST_CASE("probe and exp inequality serialization") {
    ProbeOptions po;
    po.alpha = MultiIndex{1};
    po.n_max = 4;
    auto p = probe_iterates(parse_expr("1", 1), parse_expr_list("x^2", 1), IterateCondition::Symbol,
                            IterateMode::PowerBounded, po);
    Json j = probe_json(p);
    CHECK(j["criterion"] == "pb-b");
    CHECK(j["rows"].size() == 4);
    CHECK(j["rows"][1]["q"] == "3/4");
    CHECK(probe_text(p).find("3/4") != std::string::npos);

    ExpIneqOptions eo;
    eo.alphas = {0};
    eo.n_max = 4;
    Json e = exp_ineq_json(check_exp_inequality(eo));
    CHECK(e["holds"] == true);
    CHECK(e["rows"].size() == 4);
    CHECK(exp_ineq_text(check_exp_inequality(eo)).find("holds") != std::string::npos);
}
