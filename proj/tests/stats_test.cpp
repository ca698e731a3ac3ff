#include <doctest.h>

#include <cmath>
#include <vector>

#include "streampart/rng.hpp"
#include "streampart/stats.hpp"

using namespace streampart;

TEST_CASE("ln_choose matches small exact values") {
    CHECK(std::exp(ln_choose(5, 2)) == doctest::Approx(10.0));
    CHECK(std::exp(ln_choose(10, 5)) == doctest::Approx(252.0));
    CHECK(std::exp(ln_choose(4, 0)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(ln_choose(3, 5), std::invalid_argument);
}

TEST_CASE("ks statistic on a hand-computed sample") {
    // sorted {0.1, 0.5, 0.9}: D = max over steps = 7/30... computed by hand:
    // i=1: max(1/3-0.1, 0.1) = 0.2333..; i=2: max(2/3-0.5, 0.5-1/3) = 0.1667;
    // i=3: max(1-0.9, 0.9-2/3) = 0.2333..
    const double d = ks_statistic_uniform({0.9, 0.1, 0.5});
    CHECK(d == doctest::Approx(7.0 / 30.0));
}

TEST_CASE("two-sample ks of identical samples is zero") {
    const std::vector<double> xs = {0.3, 0.1, 0.7, 0.2};
    CHECK(ks_statistic_two_sample(xs, xs) == doctest::Approx(0.0));
}

TEST_CASE("ks p-value at the 1% critical statistic") {
    // asymptotic critical value c(0.01) = 1.628: D = c/sqrt(n)
    const double n = 1000.0;
    const double p = ks_pvalue(1.628 / std::sqrt(n), n);
    CHECK(p > 0.005);
    CHECK(p < 0.02);
}

TEST_CASE("ks accepts uniform samples and rejects shifted ones") {
    Rng rng(2024);
    std::vector<double> uniform(2000);
    std::vector<double> shifted(2000);
    for (std::size_t i = 0; i < uniform.size(); ++i) {
        uniform[i] = rng.next_unit();
        shifted[i] = 0.75 * rng.next_unit() + 0.25;
    }
    CHECK_FALSE(ks_uniform_reject(uniform, 0.01));
    CHECK(ks_uniform_reject(shifted, 0.01));
    CHECK(ks_two_sample_reject(uniform, shifted, 0.01));
    std::vector<double> uniform2(2000);
    for (double& x : uniform2) x = rng.next_unit();
    CHECK_FALSE(ks_two_sample_reject(uniform, uniform2, 0.01));
}

TEST_CASE("chi-square p-values match table entries") {
    CHECK(chi_square_pvalue(14.067, 7) == doctest::Approx(0.05).epsilon(0.01));
    CHECK(chi_square_pvalue(6.635, 1) == doctest::Approx(0.01).epsilon(0.01));
    CHECK(chi_square_pvalue(23.209, 10) == doctest::Approx(0.01).epsilon(0.01));
    CHECK(chi_square_pvalue(0.0, 5) == doctest::Approx(1.0));
}

TEST_CASE("regularized gamma Q agrees with erfc at a = 1/2") {
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        CHECK(regularized_gamma_q(0.5, x) == doctest::Approx(std::erfc(std::sqrt(x))).epsilon(1e-10));
    }
}

TEST_CASE("chi-square statistic") {
    const std::vector<double> obs = {12, 8, 10};
    const std::vector<double> exp = {10, 10, 10};
    CHECK(chi_square_statistic(obs, exp) == doctest::Approx(0.8));
}
