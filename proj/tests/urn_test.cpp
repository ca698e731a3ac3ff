#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "streampart/stats.hpp"
#include "streampart/urn.hpp"

using namespace streampart;

TEST_CASE("urn choice probabilities match the attachment rule") {
    UrnState state;
    state.loads = {1, 1};
    state.gamma = 3.0;
    auto probs = urn_choice_probabilities(state);
    CHECK(probs[0] == doctest::Approx(0.5));

    state.loads = {3, 1};
    state.gamma = 1.0;
    probs = urn_choice_probabilities(state);
    CHECK(probs[0] == doctest::Approx(0.75));

    state.gamma = 2.0;
    probs = urn_choice_probabilities(state);
    CHECK(probs[0] == doctest::Approx(0.9));

    state.gamma = 0.0;
    probs = urn_choice_probabilities(state);
    CHECK(probs[0] == doctest::Approx(0.5));
}

TEST_CASE("urn_step and run_urn draw identically") {
    const std::uint64_t seed = 321;
    const Trajectory traj = run_urn(3, 1.5, {2, 1, 4}, 50, seed);
    UrnState state;
    state.loads = {2, 1, 4};
    state.gamma = 1.5;
    Rng rng(seed);
    for (int t = 0; t < 50; ++t) urn_step(state, rng);
    CHECK(state.loads == traj.final_loads());
    CHECK(state.balls_thrown == 50);
}

TEST_CASE("urn errors") {
    UrnState empty;
    empty.loads = {0, 0};
    empty.gamma = 1.0;
    Rng rng(1);
    CHECK_THROWS_AS(urn_step(empty, rng), std::invalid_argument);
    CHECK_THROWS_AS(run_urn(2, -1.0, {}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_urn(2, 1.0, {1, 1, 1}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_urn(2, 200.0, {}, 100000, 1), std::invalid_argument);  // weight overflow
}

TEST_CASE("gamma=0 is uniform ball placement (4 sigma)") {
    const Trajectory traj = run_urn(2, 0.0, {}, 100000, 2718);
    const auto fractions = traj.final_fractions();
    const double sigma = std::sqrt(0.25 / 100000.0);
    CHECK(std::abs(fractions[0] - 0.5) <= 4.0 * sigma);
}

TEST_CASE("gamma>1 concentrates nearly all mass in one bin") {
    int concentrated = 0;
    const int seeds = 40;
    for (int seed = 0; seed < seeds; ++seed) {
        const Trajectory traj = run_urn(2, 2.0, {}, 20000, static_cast<std::uint64_t>(seed));
        if (dominance(traj.final_loads()).fraction > 0.95) ++concentrated;
    }
    CHECK(concentrated >= seeds * 8 / 10);
}

TEST_CASE("gamma=1 two-bin urn is exactly uniform over load splits") {
    // From (1,1), after t balls the load of bin 1 is uniform on {1..t+1}.
    const int t = 100;
    const int seeds = 4040;
    std::vector<double> observed(static_cast<std::size_t>(t) + 1, 0.0);
    for (int seed = 0; seed < seeds; ++seed) {
        const Trajectory traj = run_urn(2, 1.0, {}, t, derive_seed(5, 0, static_cast<std::uint64_t>(seed)));
        observed[static_cast<std::size_t>(traj.final_loads()[0] - 1)] += 1.0;
    }
    const std::vector<double> expected(static_cast<std::size_t>(t) + 1,
                                       static_cast<double>(seeds) / (t + 1));
    const double stat = chi_square_statistic(observed, expected);
    CHECK(chi_square_pvalue(stat, t) > 0.001);
}

TEST_CASE("restricting an urn to a bin pair behaves like a 2-bin urn") {
    // Condition on balls landing in bins {0,1} of a 4-bin urn: the chance it
    // is bin 0 must equal m0^g / (m0^g + m1^g). Aggregate z-test plus a
    // chi-square over probability deciles.
    const double gamma = 1.5;
    Rng rng(909);
    UrnState state;
    state.loads = {1, 1, 1, 1};
    state.gamma = gamma;
    double expected_sum = 0.0;
    double variance_sum = 0.0;
    double observed_sum = 0.0;
    std::vector<double> bucket_observed(10, 0.0);
    std::vector<double> bucket_expected(10, 0.0);
    std::vector<double> bucket_variance(10, 0.0);
    for (int step = 0; step < 200000; ++step) {
        const auto before = state.loads;
        urn_step(state, rng);
        int landed = -1;
        for (std::size_t i = 0; i < state.loads.size(); ++i)
            if (state.loads[i] != before[i]) landed = static_cast<int>(i);
        if (landed != 0 && landed != 1) continue;
        const double w0 = std::pow(static_cast<double>(before[0]), gamma);
        const double w1 = std::pow(static_cast<double>(before[1]), gamma);
        const double p0 = w0 / (w0 + w1);
        const double x = landed == 0 ? 1.0 : 0.0;
        expected_sum += p0;
        variance_sum += p0 * (1.0 - p0);
        observed_sum += x;
        const auto bucket = std::min<std::size_t>(9, static_cast<std::size_t>(p0 * 10.0));
        bucket_observed[bucket] += x;
        bucket_expected[bucket] += p0;
        bucket_variance[bucket] += p0 * (1.0 - p0);
    }
    CHECK(std::abs(observed_sum - expected_sum) <= 4.0 * std::sqrt(variance_sum));
    double stat = 0.0;
    int dof = 0;
    for (int b = 0; b < 10; ++b) {
        if (bucket_variance[static_cast<std::size_t>(b)] < 10.0) continue;  // skip sparse buckets
        const double diff =
            bucket_observed[static_cast<std::size_t>(b)] - bucket_expected[static_cast<std::size_t>(b)];
        stat += diff * diff / bucket_variance[static_cast<std::size_t>(b)];
        ++dof;
    }
    if (dof > 0) CHECK(chi_square_pvalue(stat, dof) > 0.001);
}

TEST_CASE("coupled process with p=0 balances exactly") {
    for (const auto variant : {CoupledVariant::kArgmax, CoupledVariant::kProportional}) {
        CoupledProcessConfig config;
        config.n = 10;
        config.p = 0.0;
        config.k = 2;
        config.variant = variant;
        config.rng_seed = 4;
        const Trajectory traj = run_coupled(config);
        CHECK(traj.final_loads() == std::vector<long long>{5, 5});
    }
}

TEST_CASE("coupled argmax with p=1 locks onto the first nonempty partition") {
    // E_i = load_i exactly, so after the first ball one partition wins every
    // later step: dominance grows linearly to the full stream.
    CoupledProcessConfig config;
    config.n = 500;
    config.p = 1.0;
    config.k = 2;
    config.variant = CoupledVariant::kArgmax;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        config.rng_seed = seed;
        const Trajectory traj = run_coupled(config);
        const auto loads = traj.final_loads();
        CHECK(*std::max_element(loads.begin(), loads.end()) == 500);
    }
}

TEST_CASE("coupled argmax concentrates at moderate p (small pilot)") {
    std::vector<double> fractions;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        CoupledProcessConfig config;
        config.n = 20000;
        config.p = 0.05;
        config.k = 2;
        config.variant = CoupledVariant::kArgmax;
        config.rng_seed = derive_seed(7, 0, seed);
        fractions.push_back(dominance(run_coupled(config).final_loads()).fraction);
    }
    std::sort(fractions.begin(), fractions.end());
    CHECK(fractions[fractions.size() / 2] >= 0.9);
}

TEST_CASE("coupled proportional never concentrates") {
    // 200 seeds of n=50000, p=0.01, k=4: min final fraction > 0.05 in >= 95%
    int ok = 0;
    const int seeds = 200;
    for (int seed = 0; seed < seeds; ++seed) {
        CoupledProcessConfig config;
        config.n = 50000;
        config.p = 0.01;
        config.k = 4;
        config.variant = CoupledVariant::kProportional;
        config.rng_seed = derive_seed(8, 1, static_cast<std::uint64_t>(seed));
        const auto loads = run_coupled(config).final_loads();
        const long long min_load = *std::min_element(loads.begin(), loads.end());
        if (static_cast<double>(min_load) / 50000.0 > 0.05) ++ok;
    }
    CHECK(ok >= seeds * 95 / 100);
}

TEST_CASE("dominance reports") {
    const std::vector<long long> clear = {10, 0, 0};
    auto report = dominance(clear);
    CHECK(report.dominant_bin == 1);
    CHECK(report.fraction == doctest::Approx(1.0));
    CHECK(report.delta == doctest::Approx(0.0));

    const std::vector<long long> tie = {5, 5};
    report = dominance(tie);
    CHECK(report.dominant_bin == 1);  // lowest index wins ties
    CHECK(report.fraction == doctest::Approx(0.5));
    CHECK(report.delta == doctest::Approx(0.5));

    const std::vector<long long> mixed = {90, 7, 3};
    report = dominance(mixed);
    CHECK(report.dominant_bin == 1);
    CHECK(report.fraction == doctest::Approx(0.9));
    CHECK(report.delta == doctest::Approx(0.1));
}

TEST_CASE("trajectories are strided with an exact final state") {
    const Trajectory traj = run_urn(2, 1.0, {}, 5000, 12);
    CHECK(traj.stride == 5);
    CHECK(traj.steps.front() == 0);
    CHECK(traj.steps.back() == 5000);
    CHECK(traj.steps.size() <= 1002);
    const auto& final_loads = traj.final_loads();
    CHECK(std::accumulate(final_loads.begin(), final_loads.end(), 0LL) == 5002);
    const std::string csv = traj.to_csv();
    CHECK(csv.rfind("step,load_1,load_2\n", 0) == 0);
}
