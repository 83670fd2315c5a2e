#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "wcop/classifier.hpp"
#include "wcop/errors.hpp"

using namespace wcop;

namespace {

ClassificationReport report(const char* psi, const char* phi, ClassifierConfig cfg = {}) {
    return full_report(SymbolPair::parse(psi, phi), cfg);
}

Verdict get(const ClassificationReport& r, const char* name) { return r.property(name).value; }

std::string rule(const ClassificationReport& r, const char* name) { return r.property(name).rationale.at(0).rule; }

}  // namespace

TEST_CASE("acts on S") {
    auto r = report("x^3", "x^2+1");
    CHECK(get(r, "acts_on_S") == Verdict::Yes);
    CHECK(rule(r, "acts_on_S") == "acts.polynomial-multiplier");
    CHECK(get(report("1", "2"), "acts_on_S") == Verdict::No);
    CHECK(get(report("exp(x)", "exp(x)"), "acts_on_S") == Verdict::Yes);
    CHECK(get(report("0", "7"), "acts_on_S") == Verdict::Yes);
    CHECK(get(report("x", "sqrt(1+x^2)"), "acts_on_S") == Verdict::Yes);
    CHECK(get(report("sqrt(1+x^2)", "x^3"), "acts_on_S") == Verdict::Yes);
    CHECK(rule(report("sqrt(1+x^2)", "x^3"), "acts_on_S") == "acts.exp-free-multiplier");
}

TEST_CASE("acts evidence mode") {
    ClassifierConfig cfg;
    cfg.probe.alpha_max = 2;
    auto r = report("exp(x)", "x", cfg);
    CHECK(get(r, "acts_on_S") == Verdict::LikelyNo);
    CHECK_FALSE(r.evidence.empty());
    CHECK(r.evidence.front().criterion == "acts");
    cfg.evidence = false;
    auto u = report("exp(x)", "x", cfg);
    CHECK(get(u, "acts_on_S") == Verdict::Unknown);
    CHECK(u.evidence.empty());
}

TEST_CASE("power boundedness rules") {
    CHECK(get(report("5*x^7-3", "x^2+1"), "power_bounded") == Verdict::Yes);
    CHECK(get(report("1", "x^2"), "power_bounded") == Verdict::No);
    CHECK(get(report("1/2", "1/2*x"), "power_bounded") == Verdict::No);
    CHECK(get(report("1", "-3*x+1"), "power_bounded") == Verdict::No);
    CHECK(get(report("exp(x)", "exp(x)"), "power_bounded") == Verdict::Yes);
    CHECK(get(report("0", "x+1"), "power_bounded") == Verdict::Yes);
    // identity and reflection: constants of modulus at most one
    CHECK(get(report("1", "x"), "power_bounded") == Verdict::Yes);
    CHECK(get(report("-1", "x"), "power_bounded") == Verdict::Yes);
    CHECK(get(report("x", "x"), "power_bounded") == Verdict::No);
    CHECK(get(report("1", "-x+4"), "power_bounded") == Verdict::Yes);
    CHECK(get(report("3/2", "-x+4"), "power_bounded") == Verdict::No);
    CHECK(get(report("x^2+1", "-x"), "power_bounded") == Verdict::No);
    // exp-free weights with a fixed-point-free symbol
    CHECK(get(report("sqrt(1+x^2)", "x^2+1"), "power_bounded") == Verdict::Yes);
}

TEST_CASE("translations and the sqrt symbol") {
    for (auto [c, pb] : {std::pair{"1/2", Verdict::Yes}, {"1", Verdict::No}, {"2", Verdict::No}, {"-1/3", Verdict::Yes}}) {
        CAPTURE(c);
        CHECK(get(report(c, "x+1"), "power_bounded") == pb);
        CHECK(get(report(c, "x-5/2"), "power_bounded") == pb);
    }
    for (auto [c, pb] : {std::pair{"1/2", Verdict::Yes}, {"1", Verdict::Yes}, {"2", Verdict::No}, {"x", Verdict::No}}) {
        CAPTURE(c);
        CHECK(get(report(c, "sqrt(1+x^2)"), "power_bounded") == pb);
    }
}

TEST_CASE("topologizability") {
    auto r = report("1", "x+1");
    CHECK(get(r, "topologizable") == Verdict::Yes);
    CHECK(get(r, "m_topologizable") == Verdict::Yes);
    CHECK(get(r, "power_bounded") == Verdict::No);
    auto s = report("x^2", "x+1");
    CHECK(get(s, "topologizable") == Verdict::No);
    CHECK(get(s, "m_topologizable") == Verdict::No);
    auto t = report("x^3", "sqrt(1+x^2)");
    CHECK(get(t, "topologizable") == Verdict::No);
    CHECK(get(t, "m_topologizable") == Verdict::No);
    auto u = report("2", "sqrt(1+x^2)");
    CHECK(get(u, "topologizable") == Verdict::Yes);
    CHECK(get(u, "m_topologizable") == Verdict::Yes);
    for (const char* phi : {"x", "-x+1", "3*x", "1/2*x+1"}) {
        CAPTURE(phi);
        CHECK(get(report("x+1", phi), "topologizable") == Verdict::No);
        CHECK(get(report("5", phi), "m_topologizable") == Verdict::Yes);
    }
    // open case: fixed points and a nonconstant weight
    auto o = report("x", "x^2");
    CHECK(get(o, "topologizable") == Verdict::Unknown);
    CHECK(get(o, "m_topologizable") == Verdict::Unknown);
    auto c = report("1", "x^2");
    CHECK(get(c, "topologizable") == Verdict::Yes);
}

TEST_CASE("iterates, ergodicity and Cesaro boundedness") {
    auto r = report("x", "x^2+2");
    CHECK(get(r, "iterates_to_zero") == Verdict::Yes);
    CHECK(get(r, "uniformly_mean_ergodic") == Verdict::Yes);
    CHECK(get(r, "cesaro_bounded") == Verdict::Yes);
    CHECK(get(report("1/2", "x+1"), "iterates_to_zero") == Verdict::Yes);
    CHECK(get(report("1", "x"), "iterates_to_zero") == Verdict::No);
    CHECK(get(report("1/3", "x"), "iterates_to_zero") == Verdict::Yes);
    CHECK(get(report("1/3", "-x+2"), "iterates_to_zero") == Verdict::Yes);
    CHECK(get(report("1", "x+1"), "iterates_to_zero") == Verdict::No);
    auto c = report("1", "x^2");
    CHECK(get(c, "uniformly_mean_ergodic") == Verdict::No);
    CHECK(get(c, "cesaro_bounded") == Verdict::No);
    CHECK(get(report("x", "x^2"), "uniformly_mean_ergodic") == Verdict::Unknown);
}

TEST_CASE("weak supercyclicity") {
    for (const char* phi : {"x^2", "x^2+1", "x^3-x", "2*x+1", "x", "3", "-x", "x^3"}) {
        CAPTURE(phi);
        CHECK(get(report("1", phi), "weak_supercyclicity_possible") == Verdict::No);
    }
    CHECK(get(report("1+x^2", "x+1"), "weak_supercyclicity_possible") == Verdict::Unknown);
    CHECK(get(report("x", "x+1"), "weak_supercyclicity_possible") == Verdict::No);
    // odd degree, one fixed point, zero-free weight
    auto r = report("1+x^2", "x^3+x+1");
    CHECK(get(r, "weak_supercyclicity_possible") == Verdict::No);
    CHECK(rule(r, "weak_supercyclicity_possible") == "sc.odd-degree-one-fixed-point");
    CHECK_THROWS_AS(classify_supercyclicity(SymbolPair::parse("1", "exp(x)")), NotApplicable);
    CHECK(get(report("exp(x)", "exp(x)"), "weak_supercyclicity_possible") == Verdict::Unknown);
}

TEST_CASE("universal Schwartz weights") {
    CHECK(classify_universal_weights(parse_expr_list("x^3", 1)).value == Verdict::Yes);
    CHECK(classify_universal_weights(parse_expr_list("sqrt(1+x^2)", 1)).value == Verdict::Yes);
    CHECK(classify_universal_weights(parse_expr_list("exp(x)", 1)).value == Verdict::No);
    CHECK(classify_universal_weights(parse_expr_list("x*exp(x)", 1)).value == Verdict::LikelyNo);
    CHECK(classify_universal_weights(parse_expr_list("exp(-x^2)", 1)).value == Verdict::LikelyYes);
    CHECK(classify_universal_weights(parse_expr_list("x1*x2, x2^2", 2)).value == Verdict::Yes);
    // a property of phi: it holds even where the operator does not act
    auto r = report("1", "2");
    CHECK(get(r, "universal_schwartz_weights") == Verdict::Yes);
    CHECK(get(r, "acts_on_S") == Verdict::No);
}

TEST_CASE("preconditions and dimensions") {
    auto sp = SymbolPair::parse("1", "2");
    CHECK_THROWS_AS(classify_power_bounded(sp), PreconditionViolated);
    CHECK_THROWS_AS(classify_topologizable(sp), PreconditionViolated);
    CHECK_THROWS_AS(classify_iterates_to_zero(sp), PreconditionViolated);
    CHECK(get(full_report(sp), "power_bounded") == Verdict::No);
    CHECK(rule(full_report(sp), "power_bounded") == "general.not-acting");
    SymbolPair bad{parse_expr("x", 1), parse_expr_list("x1, x2", 2)};
    CHECK_THROWS_AS(full_report(bad), DimensionMismatch);
    CHECK_THROWS_AS(SymbolPair::parse("x", "x", 0), DimensionMismatch);
    CHECK_THROWS_AS(SymbolPair::parse("x+", "x"), SyntaxError);
    CHECK_THROWS_AS(ClassificationReport().property("nope"), InvalidRange);
    CHECK(verdict_from_string("LikelyNo") == Verdict::LikelyNo);
    CHECK_THROWS_AS(verdict_from_string("maybe"), InvalidRange);
}

TEST_CASE("complex phase only adds a note") {
    auto plain = full_report(SymbolPair::parse("1/2", "x+1"));
    auto phased = full_report(SymbolPair::parse("1/2", "x+1", 1, true));
    for (const auto& [name, v] : plain.properties()) CHECK(v->value == phased.property(name).value);
    bool noted = false;
    for (const auto& e : phased.power_bounded.rationale) noted = noted || e.rule == "general.complex-phase";
    CHECK(noted);
}

TEST_CASE("disabled rules fall through") {
    ClassifierConfig cfg;
    cfg.disabled_rules = {"pb.translation"};
    cfg.evidence = false;
    auto r = report("1/2", "x+1", cfg);
    CHECK(rule(r, "power_bounded") == "pb.from-iterates-to-zero");
    cfg.disabled_rules.insert("itz.translation");
    auto u = report("1/2", "x+1", cfg);
    CHECK(get(u, "power_bounded") == Verdict::Unknown);
    CHECK(get(u, "iterates_to_zero") == Verdict::Unknown);
    cfg.disabled_rules = {"acts.polynomial-multiplier", "acts.exp-free-multiplier"};
    CHECK(classify_acts(SymbolPair::parse("x", "x^2+1"), cfg).value == Verdict::Unknown);
    cfg.evidence = true;
    cfg.probe.alpha_max = 2;
    CHECK(classify_acts(SymbolPair::parse("x", "x^2+1"), cfg).value == Verdict::LikelyYes);
    cfg.evidence = false;
    CHECK(classify_acts(SymbolPair::parse("x", "x^2+1"), cfg).value == Verdict::Unknown);
    CHECK(rule(report("x", "x^2+1", cfg), "acts_on_S") == "acts.from-operator-property");
}

TEST_CASE("lattice check rejects inconsistent reports") {
    ClassificationReport r;
    r.power_bounded.value = Verdict::Yes;
    r.power_bounded.rationale.push_back({"x", "y", true});
    CHECK_THROWS_AS(check_lattice(r), InternalInconsistency);
    ClassificationReport s = report("1", "x^2");
    s.iterates_to_zero.value = Verdict::Yes;
    CHECK_THROWS_AS(check_lattice(s), InternalInconsistency);
    ClassificationReport t = report("1", "x^2");
    t.power_bounded.rationale.front().exact = false;
    CHECK_THROWS_AS(check_lattice(t), InternalInconsistency);
}

TEST_CASE("lattice holds on random polynomial pairs") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<unsigned> deg(0, 4);
    for (int i = 0; i < 200; ++i) {
        Polynomial psi = test::random_poly(rng, 1, deg(rng), i % 10 == 0);
        Polynomial phi = test::random_poly(rng, 1, deg(rng));
        SymbolPair sp{Expr::from_polynomial(psi), {Expr::from_polynomial(phi)}};
        CAPTURE(psi.to_string());
        CAPTURE(phi.to_string());
        ClassificationReport r;
        CHECK_NOTHROW(r = full_report(sp));
        check_lattice(r);
        // exactness firewall
        for (const auto& [name, v] : r.properties())
            if (v->value == Verdict::Yes || v->value == Verdict::No)
                for (const auto& e : v->rationale) CHECK(e.exact);
        CHECK(r.evidence.empty());
    }
}

TEST_CASE("power boundedness depends only on phi for degree >= 2") {
    std::mt19937 rng(11);
    for (const char* phi : {"x^2+1", "x^2", "x^4+x+3", "x^3+2", "-x^2-1"}) {
        auto sym = parse_expr_list(phi, 1);
        std::optional<Verdict> first;
        for (int i = 0; i < 10; ++i) {
            SymbolPair sp{Expr::from_polynomial(test::random_poly(rng, 1, 5)), sym};
            Verdict v = full_report(sp).power_bounded.value;
            CHECK((v == Verdict::Yes || v == Verdict::No));
            if (!first) first = v;
            CHECK(v == *first);
        }
    }
}

TEST_CASE("translation verdict is monotone in |c|") {
    std::vector<Rational> cs = {0, Rational(1, 10), Rational(1, 2), Rational(99, 100), 1, Rational(101, 100), 2, 10};
    auto sym = parse_expr_list("x+3", 1);
    bool seen_no = false;
    for (const auto& c : cs)
        for (int sign : {1, -1}) {
            SymbolPair sp{Expr::constant(1, c * sign), sym};
            Verdict v = full_report(sp).power_bounded.value;
            CHECK((v == Verdict::Yes) == (c < 1));
            if (v == Verdict::No) seen_no = true;
            if (seen_no && sign == 1) CHECK(v == Verdict::No);
        }
}
