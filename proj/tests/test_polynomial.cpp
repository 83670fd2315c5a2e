#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "wcop/errors.hpp"
#include "wcop/polynomial.hpp"

using namespace wcop;
using wcop::test::poly;

TEST_CASE("construction and degree") {
    Polynomial zero(1);
    CHECK(zero.is_zero());
    CHECK_FALSE(zero.degree().has_value());
    CHECK(Polynomial::constant(1, 3).degree() == Degree(0));
    auto p = Polynomial::from_coefficients({1, 0, 2});
    CHECK(p.degree() == Degree(2));
    CHECK(p.to_string() == "2*x^2 + 1");
    CHECK(Polynomial::from_coefficients({0, Rational(-3, 2)}).to_string() == "-3/2*x");
    auto q = poly("x1^2*x2 + x2^3", 2);
    CHECK(q.degree() == Degree(3));
    CHECK(q.degree_in(0) == Degree(2));
    CHECK(q.to_string() == "x1^2*x2 + x2^3");
    CHECK(q.used_axes() == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_AS(Polynomial::variable(2, 2), DimensionMismatch);
}

TEST_CASE("arithmetic and expansion") {
    CHECK((poly("x+1") * poly("x-1")) == poly("x^2-1"));
    CHECK(poly("x+1").pow(3) == poly("x^3+3*x^2+3*x+1"));
    CHECK((poly("x") - poly("x")).is_zero());
    CHECK((poly("x^2") * Rational(0)).is_zero());
    CHECK_THROWS_AS(poly("x") + Polynomial(2), DimensionMismatch);
}

TEST_CASE("derivative and composition") {
    CHECK(poly("x^2+1").derivative(0) == poly("2*x"));
    CHECK(poly("x1^2*x2^3", 2).derivative(MultiIndex{1, 2}) == poly("12*x1*x2", 2));
    auto f = poly("x^2+1");
    CHECK(f.compose({f}) == poly("x^4+2*x^2+2"));
    CHECK(poly("x1*x2", 2).compose({poly("x1+x2", 2), poly("x1-x2", 2)}) == poly("x1^2-x2^2", 2));
}

TEST_CASE("evaluation") {
    auto p = poly("x^3 - 2*x + 1/2");
    CHECK(p.evaluate(std::vector<Rational>{2}) == Rational(9, 2));
    CHECK(p.evaluate(std::vector<double>{2.0}) == doctest::Approx(4.5));
    CHECK(p.univariate_coefficients() == std::vector<Rational>{Rational(1, 2), -2, 0, 1});
}

TEST_CASE("derivative is a derivation (random)") {
    std::mt19937 rng(7);
    for (int i = 0; i < 40; ++i) {
        auto a = test::random_poly(rng, 2, 4);
        auto b = test::random_poly(rng, 2, 4);
        for (std::size_t axis = 0; axis < 2; ++axis)
            CHECK((a * b).derivative(axis) == a.derivative(axis) * b + a * b.derivative(axis));
        CHECK(a.derivative(0).derivative(1) == a.derivative(1).derivative(0));
    }
}
