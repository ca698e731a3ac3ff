#include <doctest.h>

#include <cmath>
#include <vector>

#include "streampart/generators.hpp"
#include "streampart/metrics.hpp"
#include "streampart/rng.hpp"

using namespace streampart;

namespace {

PartitionState assigned_state(int k, int n, const std::vector<int>& assignment_zero_based) {
    PartitionState state(k, n, n);
    for (int v = 1; v <= n; ++v)
        state.place(v, assignment_zero_based[static_cast<std::size_t>(v) - 1]);
    return state;
}

// Independent recount from a scratch adjacency matrix; the oracle for small n.
long long brute_force_cut(const Graph& g, const PartitionState& state, bool weighted) {
    const int n = g.num_vertices();
    std::vector<std::vector<int>> mult(static_cast<std::size_t>(n) + 1,
                                       std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
    for (Vertex u = 1; u <= n; ++u)
        for (const auto& entry : g.neighbors(u)) mult[static_cast<std::size_t>(u)][static_cast<std::size_t>(entry.vertex)] = entry.multiplicity;
    long long cut = 0;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (mult[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] > 0 &&
                state.assignment[static_cast<std::size_t>(u)] != state.assignment[static_cast<std::size_t>(v)])
                cut += weighted ? mult[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] : 1;
    return cut;
}

}  // namespace

TEST_CASE("edges_cut on hand examples") {
    const Graph square = generate_cycle(4);
    CHECK(edges_cut(square, assigned_state(2, 4, {0, 0, 1, 1})) == 2);
    CHECK(edges_cut(square, assigned_state(2, 4, {0, 0, 0, 0})) == 0);
    const Graph triangle = generate_cycle(3);
    CHECK(edges_cut(triangle, assigned_state(2, 3, {0, 1, 1})) == 2);
}

TEST_CASE("edges_cut multiplicity mode") {
    const Graph g(3, {{1, 2}, {2, 3}}, {5, 1});
    const PartitionState state = assigned_state(2, 3, {0, 1, 1});
    CHECK(edges_cut(g, state, false) == 1);
    CHECK(edges_cut(g, state, true) == 5);
}

TEST_CASE("edges_cut rejects unassigned vertices") {
    const Graph triangle = generate_cycle(3);
    PartitionState state(2, 3, 3);
    state.place(1, 0);
    CHECK_THROWS_AS(edges_cut(triangle, state), std::invalid_argument);
}

TEST_CASE("edges_cut is invariant under partition relabeling") {
    const Graph g = generate_gnp(30, 0.2, false, 17);
    const PartitionState a = assigned_state(3, 30, [] {
        std::vector<int> parts;
        for (int v = 0; v < 30; ++v) parts.push_back(v % 3);
        return parts;
    }());
    const PartitionState b = assigned_state(3, 30, [] {
        std::vector<int> parts;
        for (int v = 0; v < 30; ++v) parts.push_back((v % 3 + 1) % 3);  // relabel 0->1->2->0
        return parts;
    }());
    CHECK(edges_cut(g, a) == edges_cut(g, b));
}

TEST_CASE("edges_cut agrees with the brute-force oracle on small graphs") {
    Rng rng(71);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 5 + static_cast<int>(seed % 8);
        const Graph g = generate_gnp(n, 0.4, false, seed);
        std::vector<int> parts;
        for (int v = 0; v < n; ++v) parts.push_back(static_cast<int>(rng.below(3)));
        const PartitionState state = assigned_state(3, n, parts);
        CHECK(edges_cut(g, state, false) == brute_force_cut(g, state, false));
        CHECK(edges_cut(g, state, true) == brute_force_cut(g, state, true));
    }
}

TEST_CASE("recovery vector and euclidean error") {
    // cluster of size 4 split (3,1) across k=2
    const Graph g = generate_planted(PlantedParams::equal_clusters(4, 1, 1.0, 0.0), 5);
    const PartitionState split = assigned_state(2, 4, {0, 0, 0, 1});
    const auto recovery = recovery_vector(g, split);
    REQUIRE(recovery.size() == 1);
    CHECK(recovery[0] == doctest::Approx(0.75));

    // perfect recovery
    const Graph two = generate_planted(PlantedParams::equal_clusters(8, 2, 1.0, 0.0), 5);
    const PartitionState perfect = assigned_state(2, 8, {0, 0, 0, 0, 1, 1, 1, 1});
    const auto r2 = recovery_vector(two, perfect);
    CHECK(euclidean_error(r2) == doctest::Approx(0.0));

    // half split
    const PartitionState half = assigned_state(2, 8, {0, 0, 1, 1, 0, 0, 1, 1});
    for (double r : recovery_vector(two, half)) CHECK(r == doctest::Approx(0.5));

    CHECK_THROWS_AS(recovery_vector(generate_cycle(4), assigned_state(2, 4, {0, 0, 1, 1})),
                    std::invalid_argument);
}

TEST_CASE("euclidean error arithmetic") {
    std::vector<double> r(100, 0.9);
    CHECK(euclidean_error(r) == doctest::Approx(1.0));
    std::vector<double> worst(64, 1.0 / 8.0);
    CHECK(euclidean_error(worst) == doctest::Approx(7.0));
    std::vector<double> ones(10, 1.0);
    CHECK(euclidean_error(ones) == doctest::Approx(0.0));
}

TEST_CASE("recovery is never below 1/k for clusters of size >= k") {
    Rng rng(3);
    const Graph g = generate_planted(PlantedParams::equal_clusters(40, 4, 0.3, 0.1), 77);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> parts;
        for (int v = 0; v < 40; ++v) parts.push_back(static_cast<int>(rng.below(4)));
        const auto recovery = recovery_vector(g, assigned_state(4, 40, parts));
        for (double r : recovery) {
            CHECK(r >= 1.0 / 4.0);
            CHECK(r <= 1.0);
        }
    }
}

TEST_CASE("full partition fraction") {
    PartitionState state(8, 2, 16);
    CHECK(full_partition_fraction(state) == doctest::Approx(0.0));
    state.place(1, 0);
    state.place(2, 0);
    state.place(3, 1);
    state.place(4, 1);
    CHECK(full_partition_fraction(state) == doctest::Approx(0.25));
    int v = 5;
    for (int part = 2; part < 8; ++part) {
        state.place(v++, part);
        state.place(v++, part);
    }
    CHECK(full_partition_fraction(state) == doctest::Approx(1.0));
}

TEST_CASE("metrics csv fields are stable") {
    const Graph square = generate_cycle(4);
    const RunMetrics metrics = compute_run_metrics(square, assigned_state(2, 4, {0, 0, 1, 1}));
    CHECK(metrics_csv_fields(metrics) == "2,0.5,,0");  // no labels -> empty error field

    const Graph labeled = generate_planted(PlantedParams::equal_clusters(4, 1, 1.0, 0.0), 5);
    const RunMetrics m2 = compute_run_metrics(labeled, assigned_state(2, 4, {0, 0, 0, 0}));
    CHECK(metrics_csv_fields(m2) == "0,0,0,0.5");  // partition 0 hit capacity n=4
}
