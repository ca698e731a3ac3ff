#pragma once

#include <span>
#include <string>
#include <vector>

#include "streampart/graph.hpp"
#include "streampart/partition.hpp"

namespace streampart {

// Edges whose endpoints lie in different partitions. Unique undirected pairs
// by default; multiplicity-weighted when requested. All vertices must be
// assigned.
long long edges_cut(const Graph& g, const PartitionState& state,
                    bool count_multiplicity = false);

// Per-cluster recovery fractions r_i = max_j |C_i intersect P_j| / |C_i|.
std::vector<double> recovery_vector(const Graph& g, const PartitionState& state);

// Distance of the recovery vector to all-ones: sqrt(sum (1 - r_i)^2).
double euclidean_error(std::span<const double> recovery);

// Fraction of partitions at capacity.
double full_partition_fraction(const PartitionState& state);

struct RunMetrics {
    long long edges_cut = 0;
    double cut_fraction = 0.0;
    bool has_recovery = false;
    std::vector<double> recovery;
    double euclidean_error = 0.0;
    double full_fraction = 0.0;
    std::vector<int> loads;
};

RunMetrics compute_run_metrics(const Graph& g, const PartitionState& state);

// The metrics columns of a result row, in the fixed order
// edges_cut,cut_fraction,euclidean_error,full_fraction. The error field is
// empty when the graph has no labels.
std::string metrics_csv_fields(const RunMetrics& metrics);

}  // namespace streampart
