#include "streampart/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "streampart/format.hpp"

namespace streampart {

long long edges_cut(const Graph& g, const PartitionState& state, bool count_multiplicity) {
    const int n = g.num_vertices();
    for (Vertex v = 1; v <= n; ++v)
        if (state.assignment[static_cast<std::size_t>(v)] < 0)
            throw std::invalid_argument("edges_cut: vertex " + std::to_string(v) + " unassigned");
    long long cut = 0;
    for (Vertex v = 1; v <= n; ++v) {
        const int part = state.assignment[static_cast<std::size_t>(v)];
        for (const auto& entry : g.neighbors(v)) {
            if (entry.vertex <= v) continue;  // count each undirected edge once
            if (state.assignment[static_cast<std::size_t>(entry.vertex)] != part)
                cut += count_multiplicity ? entry.multiplicity : 1;
        }
    }
    return cut;
}

std::vector<double> recovery_vector(const Graph& g, const PartitionState& state) {
    if (!g.has_labels()) throw std::invalid_argument("recovery_vector: graph has no labels");
    const int l = g.num_clusters();
    const int k = state.k;
    std::vector<long long> counts(static_cast<std::size_t>(l) * k, 0);
    std::vector<long long> sizes(static_cast<std::size_t>(l), 0);
    for (Vertex v = 1; v <= g.num_vertices(); ++v) {
        const int part = state.assignment[static_cast<std::size_t>(v)];
        if (part < 0)
            throw std::invalid_argument("recovery_vector: vertex unassigned");
        const int cluster = g.label(v) - 1;
        ++counts[static_cast<std::size_t>(cluster) * k + static_cast<std::size_t>(part)];
        ++sizes[static_cast<std::size_t>(cluster)];
    }
    std::vector<double> recovery(static_cast<std::size_t>(l), 0.0);
    for (int c = 0; c < l; ++c) {
        long long best = 0;
        for (int j = 0; j < k; ++j)
            best = std::max(best, counts[static_cast<std::size_t>(c) * k + static_cast<std::size_t>(j)]);
        recovery[static_cast<std::size_t>(c)] =
            static_cast<double>(best) / static_cast<double>(sizes[static_cast<std::size_t>(c)]);
    }
    return recovery;
}

double euclidean_error(std::span<const double> recovery) {
    double sum = 0.0;
    for (double r : recovery) {
        const double gap = 1.0 - r;
        sum += gap * gap;
    }
    return std::sqrt(sum);
}

double full_partition_fraction(const PartitionState& state) {
    return static_cast<double>(state.num_full()) / static_cast<double>(state.k);
}

RunMetrics compute_run_metrics(const Graph& g, const PartitionState& state) {
    RunMetrics metrics;
    metrics.edges_cut = edges_cut(g, state);
    metrics.cut_fraction = g.num_edges() > 0
                               ? static_cast<double>(metrics.edges_cut) /
                                     static_cast<double>(g.num_edges())
                               : 0.0;
    if (g.has_labels()) {
        metrics.has_recovery = true;
        metrics.recovery = recovery_vector(g, state);
        metrics.euclidean_error = euclidean_error(metrics.recovery);
    }
    metrics.full_fraction = full_partition_fraction(state);
    metrics.loads = state.loads;
    return metrics;
}

std::string metrics_csv_fields(const RunMetrics& metrics) {
    std::string row = std::to_string(metrics.edges_cut);
    row += ',';
    row += format_double(metrics.cut_fraction);
    row += ',';
    if (metrics.has_recovery) row += format_double(metrics.euclidean_error);
    row += ',';
    row += format_double(metrics.full_fraction);
    return row;
}

}  // namespace streampart
