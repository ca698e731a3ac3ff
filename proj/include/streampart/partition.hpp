#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "streampart/graph.hpp"
#include "streampart/rng.hpp"
#include "streampart/stream.hpp"

namespace streampart {

enum class PartitionerKind {
    kArgmaxGreedy,          // pick uniformly among score maxima
    kProportionalGreedy,    // pick with probability S_i / sum S_j
    kGammaGreedy,           // pick with probability S_i^gamma / sum S_j^gamma
    kWeightedArgmax,        // LDG: scores weighted by (1 - load/C)
    kWeightedProportional,  // LRG
    kRandomBaseline,        // uniform among non-full partitions
};

PartitionerKind parse_partitioner_kind(const std::string& name);
std::string to_string(PartitionerKind kind);

struct PartitionerConfig {
    PartitionerKind kind = PartitionerKind::kArgmaxGreedy;
    int k = 2;
    double epsilon = 0.0;   // capacity slack, C = ceil((1+epsilon) n / k)
    double gamma = 1.0;     // kGammaGreedy only, must be > 0
    std::uint64_t rng_seed = 0;

    void validate() const;
    int capacity_for(int n) const;
};

// Evolving partitioning: k partitions, hard per-partition capacity, loads and
// the vertex -> partition assignment. Partitions are 0-indexed internally and
// 1-indexed in text exports.
struct PartitionState {
    int k = 0;
    int capacity = 0;
    std::vector<int> loads;
    std::vector<std::vector<Vertex>> members;
    std::vector<int> assignment;  // size n+1, -1 = unassigned
    int placed = 0;

    PartitionState(int k, int capacity, int n);

    bool is_full(int part) const { return loads[static_cast<std::size_t>(part)] >= capacity; }
    int num_full() const;
    void place(Vertex v, int part);
    double max_load_fraction() const;  // max load / placed
};

// Per-partition scores for one arrival. `counts` is the revealed-neighbor
// multiplicity per partition with full partitions zeroed; `values` applies
// the (1 - load/C) weighting for the weighted variants (which also reaches 0
// exactly at fullness, making the explicit zeroing redundant there).
struct ScoreVector {
    std::vector<long long> counts;
    std::vector<double> values;
};

ScoreVector compute_scores(const StreamEvent& event, const PartitionState& state,
                           const PartitionerConfig& config);

// Exact choice distribution for a score vector, for distribution-level tests.
// Weighted variants compare integer products count * (C - load), so ties are
// never subject to float rounding.
std::vector<double> choice_probabilities(const ScoreVector& scores, const PartitionState& state,
                                         const PartitionerConfig& config);

// Choose a partition for the event per the configured rule and update state.
int place_vertex(const StreamEvent& event, PartitionState& state,
                 const PartitionerConfig& config, Rng& rng);

PartitionState run_partitioner(const Graph& g, const StreamOrder& order,
                               const PartitionerConfig& config);

// The hashing baseline: every vertex goes to a uniformly random partition
// (capacity C = n, never binding).
PartitionState random_baseline(const Graph& g, const StreamOrder& order, int k,
                               std::uint64_t seed);

// Text export: summary line "k C load_1 .. load_k", then one "v partition"
// line per vertex (1-indexed partitions).
void save_partition(const PartitionState& state, std::ostream& out);

}  // namespace streampart
