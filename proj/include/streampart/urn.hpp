#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "streampart/rng.hpp"

namespace streampart {

// Finite Polya urn: the next ball joins bin i with probability proportional
// to loads[i]^gamma. Empty bins have weight 0 for gamma > 0; gamma = 0 means
// uniform placement over all bins.
struct UrnState {
    std::vector<long long> loads;
    long long balls_thrown = 0;
    double gamma = 1.0;

    static UrnState one_ball_per_bin(int k, double gamma);
};

// Exact per-bin attachment probabilities for the current state.
std::vector<double> urn_choice_probabilities(const UrnState& state);

// Throw one ball.
void urn_step(UrnState& state, Rng& rng);

// Strided load trajectory. Records the initial state, every `stride` steps
// and always the final step exactly.
struct Trajectory {
    long long stride = 1;
    std::vector<long long> steps;
    std::vector<std::vector<long long>> loads;

    const std::vector<long long>& final_loads() const { return loads.back(); }
    std::vector<double> final_fractions() const;
    // CSV with columns step,load_1..load_k.
    std::string to_csv() const;
};

Trajectory run_urn(int k, double gamma, std::vector<long long> initial, long long steps,
                   std::uint64_t seed);

enum class CoupledVariant { kArgmax, kProportional };

// Generate-while-partitioning process on G(n, p): at each step draw
// E_i ~ Binomial(load_i, p) per partition, assign to the least loaded
// partition when all draws are zero, otherwise per the variant's rule.
struct CoupledProcessConfig {
    long long n = 0;
    double p = 0.0;
    int k = 2;
    CoupledVariant variant = CoupledVariant::kArgmax;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

Trajectory run_coupled(const CoupledProcessConfig& config);

// Largest bin share. Ties resolve to the lowest index (reporting only).
struct DominanceReport {
    int dominant_bin = 1;  // 1-indexed
    double fraction = 0.0;
    double delta = 0.0;    // 1 - fraction; the bin is all-but-delta dominant
};

DominanceReport dominance(std::span<const long long> loads);
DominanceReport dominance(const UrnState& state);

}  // namespace streampart
