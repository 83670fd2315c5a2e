#include <cmath>
#include <random>

#include "doctest.h"
#include "wcop/logreal.hpp"

using namespace wcop;

TEST_CASE("level-index canonical form") {
    auto a = LevelIndex::from_double(5.0);
    CHECK(a.level() == 0);
    CHECK(a.to_double() == 5.0);
    auto b = LevelIndex::from_double(-2.5);
    CHECK(b.sign() == -1);
    CHECK((a + b).to_double() == doctest::Approx(2.5));
    CHECK((a - a).is_zero());
    CHECK(LevelIndex::from_double(0.0).is_zero());
    auto big = LevelIndex::make(1, 1, 800.0);  // e^800
    CHECK(big.level() == 1);
    CHECK(std::isinf(big.to_double()));
    CHECK(LevelIndex::make(1, 1, 10.0).to_double() == doctest::Approx(std::exp(10.0)));
}

TEST_CASE("level-index arithmetic above double range") {
    auto e800 = LevelIndex::make(1, 1, 800.0);
    auto e801 = LevelIndex::make(1, 1, 801.0);
    CHECK(e800 < e801);
    CHECK(-e801 < -e800);
    auto sum = e800 + e800;
    CHECK(sum.level() == 1);
    CHECK(sum.t() == doctest::Approx(800.0 + std::log(2.0)));
    auto diff = e801 - e800;
    CHECK(diff.t() == doctest::Approx(800.0 + std::log(std::exp(1.0) - 1.0)));
    CHECK(e800.scaled(3.0).t() == doctest::Approx(800.0 + std::log(3.0)));
    auto tower = e800.exp();
    CHECK(tower.level() == 2);
    CHECK(tower > e801);
    CHECK((-e800).exp().is_zero());
    CHECK(LevelIndex::from_double(-3.0).exp().to_double() == doctest::Approx(std::exp(-3.0)));
    CHECK(LevelIndex::from_double(2.0).softplus().to_double() == doctest::Approx(std::log1p(std::exp(2.0))));
    CHECK(e800.softplus().t() == doctest::Approx(800.0));
}

TEST_CASE("LogReal basics") {
    CHECK(LogReal::zero().sign() == 0);
    CHECK(std::isinf(LogReal::zero().log_abs()));
    auto a = LogReal::from_double(-3.0), b = LogReal::from_double(4.0);
    CHECK((a * b).to_double() == doctest::Approx(-12.0));
    CHECK((a + b).to_double() == doctest::Approx(1.0));
    CHECK((a - a).sign() == 0);
    CHECK((b / a).to_double() == doctest::Approx(-4.0 / 3.0));
    CHECK(a.pow(3).to_double() == doctest::Approx(-27.0));
    CHECK(b.pow(0.5).to_double() == doctest::Approx(2.0));
    CHECK_THROWS(a.pow(0.5));
    CHECK(LogReal::from_double(3.0).exp().log_abs() == doctest::Approx(3.0));
    CHECK(LogReal::from_double(-700.0).exp().exp().to_double() == doctest::Approx(1.0));
    CHECK(LogReal::from_double(4.0).log1p_abs().to_double() == doctest::Approx(std::log(5.0)));
}

TEST_CASE("exp towers do not overflow") {
    // exp(exp(exp(exp(3))))
    auto v = LogReal::from_double(3.0).exp().exp().exp().exp();
    CHECK(v.sign() == 1);
    CHECK(std::isinf(v.log_abs()));
    CHECK(v.log_magnitude().level() >= 1);
    auto w = LogReal::from_double(3.1).exp().exp().exp().exp();
    CHECK(v.log_magnitude() < w.log_magnitude());
    CHECK((v * v).log_magnitude() > v.log_magnitude());
}

TEST_CASE("products add log magnitudes (random)") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-50.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        double x = d(rng), y = d(rng);
        auto a = LogReal::from_double(x), b = LogReal::from_double(y);
        auto p = a * b;
        CHECK(p.sign() == a.sign() * b.sign());
        CHECK(p.log_abs() == doctest::Approx(a.log_abs() + b.log_abs()).epsilon(1e-12));
        CHECK((a + b).to_double() == doctest::Approx(x + y).epsilon(1e-9));
    }
}
