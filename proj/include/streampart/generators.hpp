#pragma once

#include <cstdint>
#include <vector>

#include "streampart/graph.hpp"
#include "streampart/rng.hpp"
#include "streampart/stream.hpp"

namespace streampart {

// Parameters of the two-value planted-partition model: l clusters, edge
// probability p inside a cluster and q between clusters.
struct PlantedParams {
    int n = 0;
    int l = 0;
    double p = 0.0;
    double q = 0.0;
    std::vector<int> sizes;  // length l, sums to n

    static PlantedParams equal_clusters(int n, int l, double p, double q);
    void validate() const;
};

// Erdos-Renyi G(n, p). `multi_edge` only tags the instance as originating
// from the multi-edge convention used by the stream-coupled processes; the
// offline sample itself is always a simple graph.
Graph generate_gnp(int n, double p, bool multi_edge, std::uint64_t seed);

Graph generate_planted(const PlantedParams& params, std::uint64_t seed);

// Cycle 1-2-...-n-1.
Graph generate_cycle(int n);

// Uniform random permutation of 1..n (Fisher-Yates).
StreamOrder random_order(int n, std::uint64_t seed);

// Worst-case cycle ordering: all odd vertices ascending, then all even.
StreamOrder adversarial_cycle_order(int n);

namespace detail {

// Direct pair enumeration is used at p >= kSkipThreshold, geometric skip
// sampling below it.
inline constexpr double kSkipThreshold = 0.1;

// Map a linear index over the C(n,2) unordered pairs (u-major order) back to
// the pair (u, v), u < v, 1-based.
std::pair<Vertex, Vertex> pair_from_index(long long e, long long n);

enum class SampleMethod { kAuto, kDirect, kSkip };

// Append each of the C(n,2) local pairs independently with probability p,
// shifted by `base` (local vertex a maps to base + a). Exposed for tests that
// compare the two sampling methods.
void sample_pair_space(int n, double p, Vertex base, Rng& rng,
                       std::vector<std::pair<Vertex, Vertex>>& out,
                       SampleMethod method = SampleMethod::kAuto);

// Same over the rows x cols bipartite rectangle.
void sample_rectangle(int rows, int cols, double p, Vertex row_base, Vertex col_base,
                      Rng& rng, std::vector<std::pair<Vertex, Vertex>>& out,
                      SampleMethod method = SampleMethod::kAuto);

}  // namespace detail

}  // namespace streampart
