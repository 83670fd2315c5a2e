#include "doctest.h"
#include "helpers.hpp"
#include "wcop/checks.hpp"
#include "wcop/errors.hpp"

using namespace wcop;
using wcop::test::ex;

namespace {

std::vector<Expr> sym(const char* text) { return parse_expr_list(text, 1); }

ProbeOptions small() {
    ProbeOptions o;
    o.alpha_max = 2;
    return o;
}

ProbeResult pb(const char* psi, const char* phi, IterateCondition c, ProbeOptions o = small()) {
    return probe_iterates(ex(psi), sym(phi), c, IterateMode::PowerBounded, o);
}

ProbeResult top(const char* psi, const char* phi, ProbeOptions o = small()) {
    return probe_iterates(ex(psi), sym(phi), IterateCondition::Weights, IterateMode::Topologizable, o);
}

}  // namespace

TEST_CASE("acts probe") {
    auto o = small();
    auto r = probe_acts(ex("x^3"), sym("x^2+1"), o);
    CHECK(r.tag == ProbeTag::Holds);
    for (const auto& row : r.rows) CHECK(row.tag == GrowthTag::Finite);

    CHECK(probe_acts(ex("1"), sym("2"), o).tag == ProbeTag::Fails);
    CHECK(probe_acts(ex("exp(x)"), sym("exp(x)"), o).tag == ProbeTag::LikelyHolds);
    CHECK(probe_acts(ex("exp(x)"), sym("x"), o).tag == ProbeTag::LikelyFails);
    CHECK(probe_acts(ex("x"), sym("sqrt(1+x^2)"), o).tag == ProbeTag::LikelyHolds);
}

TEST_CASE("acts probe rows") {
    ProbeOptions o = small();
    o.alpha = MultiIndex{2};
    o.lambda = MultiIndex{1};
    auto r = probe_acts(ex("x^2"), sym("x^2+1"), o);
    REQUIRE(r.rows.size() == o.ps.size());
    // F = psi phi'' + 2 psi' phi' = 2x^2 + 8x^2, degree 2; q = (p + 2) / 2
    CHECK(*r.rows[0].q == Rational(3, 2));
    CHECK(*r.rows[1].q == Rational(2));
    CHECK(*r.rows[2].q == Rational(3));

    o.alpha = MultiIndex{1, 0};
    CHECK_THROWS_AS(probe_acts(ex("x"), sym("x"), o), DimensionMismatch);
}

TEST_CASE("power boundedness probes") {
    CHECK(pb("1", "x^2", IterateCondition::Symbol).tag == ProbeTag::LikelyFails);
    CHECK(pb("1", "x^2+1", IterateCondition::Symbol).tag == ProbeTag::LikelyHolds);
    CHECK(pb("x", "x^2+1", IterateCondition::Weights).tag == ProbeTag::LikelyHolds);
    CHECK(pb("2", "sqrt(1+x^2)", IterateCondition::Weights).tag == ProbeTag::LikelyFails);
    CHECK(pb("1/2", "sqrt(1+x^2)", IterateCondition::Weights).tag == ProbeTag::LikelyHolds);
    CHECK(pb("1", "1/2*x", IterateCondition::Weights).tag == ProbeTag::LikelyFails);
    CHECK(pb("exp(x)", "exp(x)", IterateCondition::Symbol).tag == ProbeTag::LikelyHolds);
}

TEST_CASE("fixed point divergence of x^2") {
    ProbeOptions o;
    o.alpha = MultiIndex{1};
    o.n_max = 6;
    auto r = pb("1", "x^2", IterateCondition::Symbol, o);
    CHECK(r.tag == ProbeTag::LikelyFails);
    REQUIRE(r.rows.size() == 6);
    for (const auto& row : r.rows) {
        // phi_n' / (1+|phi_n|) needs q = 1 - 2^-n, exactly
        CHECK(row.tag == GrowthTag::Finite);
        CHECK(*row.q == Rational((1 << *row.n) - 1, 1 << *row.n));
    }
}

TEST_CASE("topologizability probes") {
    auto a = top("x", "x+1");
    CHECK(a.tag == ProbeTag::LikelyFails);
    CHECK(*a.m_tag == ProbeTag::LikelyFails);
    auto b = top("1", "x+1");
    CHECK(b.tag == ProbeTag::LikelyHolds);
    CHECK(*b.m_tag != ProbeTag::LikelyFails);
    CHECK(top("x^3", "sqrt(1+x^2)").tag == ProbeTag::LikelyFails);
    CHECK_FALSE(pb("x", "x+1", IterateCondition::Weights).m_tag.has_value());
}

TEST_CASE("iterate probe caps and ranges") {
    ProbeOptions o = small();
    o.caps.degree_cap = 16;
    auto r = pb("1", "x^2+1", IterateCondition::Symbol, o);
    REQUIRE_FALSE(r.notes.empty());
    CHECK(r.notes.front().find("truncated at n = 4") != std::string::npos);
    o = small();
    o.n_min = 3;
    o.n_max = 2;
    CHECK_THROWS_AS(pb("1", "x", IterateCondition::Symbol, o), InvalidRange);
}

TEST_CASE("small decay probe") {
    auto r = probe_small_decay(ex("x^2-5"), sym("x^2+1"));
    CHECK(r.tag == ProbeTag::Holds);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].p == 7);
    CHECK_FALSE(r.rows[0].q);
    CHECK(r.notes == std::vector<std::string>{"m = 7"});
    CHECK(probe_small_decay(ex("0"), sym("x")).tag == ProbeTag::Fails);
}

TEST_CASE("exp tower inequality") {
    auto r = check_exp_inequality();
    CHECK(r.all_hold_from_n_alpha);
    for (unsigned a : {0u, 1u, 2u}) CHECK(*r.n_alpha.at(a) == 2);
    for (const auto& row : r.rows) {
        CHECK(row.points == 101);
        if (row.n >= 2) CHECK(row.violations == 0);
        if (row.n == 1) CHECK(row.violations > 0);
    }
    ExpIneqOptions o;
    o.alphas = {1};
    o.n_min = 3;
    CHECK(*check_exp_inequality(o).n_alpha.at(1) == 3);
    o.x_min = 1;
    o.x_max = 0;
    CHECK_THROWS_AS(check_exp_inequality(o), InvalidRange);
}
