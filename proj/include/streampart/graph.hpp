#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace streampart {

using Vertex = int;

// Undirected graph with integer edge multiplicities and an optional cluster
// labeling. Vertices are 1-indexed, cluster ids are 1..l. Immutable after
// construction, safe to share across threads.
class Graph {
public:
    // `edges` are unordered pairs (u, v), u != v, 1-based. Duplicate pairs are
    // merged by summing multiplicities. `multiplicities` is either empty (all
    // edges count 1) or parallel to `edges`. `labels`, when present, maps
    // vertex v -> labels[v-1] in 1..l with every id in the range occupied.
    Graph(int n, std::vector<std::pair<Vertex, Vertex>> edges,
          std::vector<int> multiplicities = {}, std::vector<int> labels = {},
          bool allows_multi_edges = false);

    int num_vertices() const { return n_; }
    // Unique unordered pairs.
    long long num_edges() const { return num_edges_; }
    // Sum of multiplicities over unique pairs.
    long long total_multiplicity() const { return total_multiplicity_; }
    // Multiplicity-weighted degree.
    long long degree(Vertex v) const;

    struct NeighborEntry {
        Vertex vertex;
        int multiplicity;
    };
    // Neighbors of v sorted by vertex id.
    std::span<const NeighborEntry> neighbors(Vertex v) const;

    bool has_labels() const { return !labels_.empty(); }
    int num_clusters() const { return num_clusters_; }
    int label(Vertex v) const;
    std::vector<int> cluster_sizes() const;

    bool allows_multi_edges() const { return allows_multi_edges_; }

private:
    void check_vertex(Vertex v) const;

    int n_ = 0;
    long long num_edges_ = 0;
    long long total_multiplicity_ = 0;
    bool allows_multi_edges_ = false;
    std::vector<long long> offsets_;       // size n_ + 2, offsets_[v]..offsets_[v+1]
    std::vector<NeighborEntry> entries_;   // grouped by vertex, sorted
    std::vector<long long> degrees_;       // multiplicity-weighted
    std::vector<int> labels_;
    int num_clusters_ = 0;
};

}  // namespace streampart
