#include <algorithm>

#include "doctest.h"
#include "wcop/errors.hpp"
#include "wcop/multi_index.hpp"

using namespace wcop;

TEST_CASE("graded order") {
    CHECK(precedes(MultiIndex{1, 0}, MultiIndex{0, 2}));
    CHECK(precedes(MultiIndex{0, 2}, MultiIndex{1, 1}));
    CHECK_FALSE(precedes(MultiIndex{1, 1}, MultiIndex{1, 1}));
    CHECK_FALSE(precedes(MultiIndex{1, 1}, MultiIndex{0, 2}));
    CHECK(precedes(MultiIndex{0, 0}, MultiIndex{0, 1}));
    CHECK_THROWS_AS(precedes(MultiIndex{1}, MultiIndex{1, 0}), DimensionMismatch);
}

TEST_CASE("order is strict and total on small boxes") {
    auto all = indices_up_to_order(3, 4);
    for (const auto& a : all)
        for (const auto& b : all) {
            int count = precedes(a, b) + precedes(b, a) + (a == b);
            CHECK(count == 1);
            for (const auto& c : all)
                if (precedes(a, b) && precedes(b, c)) CHECK(precedes(a, c));
        }
}

TEST_CASE("arithmetic") {
    MultiIndex a{2, 1}, b{1, 1};
    CHECK(a.order() == 3);
    CHECK((a + b) == MultiIndex{3, 2});
    CHECK((a - b) == MultiIndex{1, 0});
    CHECK_THROWS_AS(b - a, InvalidRange);
    CHECK(b.fits_in(a));
    CHECK_FALSE(a.fits_in(b));
    CHECK(a.scaled(3) == MultiIndex{6, 3});
    CHECK(a.factorial() == 2);
    CHECK(multi_binomial(MultiIndex{3, 2}, MultiIndex{1, 1}) == 6);
    CHECK(multi_binomial(MultiIndex{1, 2}, MultiIndex{2, 0}) == 0);
    CHECK(MultiIndex::unit(3, 1) == MultiIndex{0, 1, 0});
    CHECK(MultiIndex(2).is_zero());
}

TEST_CASE("enumeration helpers") {
    auto below = indices_below(MultiIndex{1, 2});
    CHECK(below.size() == 6);
    CHECK(std::is_sorted(below.begin(), below.end(), [](auto& x, auto& y) { return precedes(x, y); }));
    CHECK(below.front() == MultiIndex{0, 0});
    CHECK(below.back() == MultiIndex{1, 2});
    // number of monomials of degree <= 3 in 2 variables
    CHECK(indices_up_to_order(2, 3).size() == 10);
    CHECK(indices_up_to_order(1, 0).size() == 1);
}
