#include "streampart/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace streampart {

Graph::Graph(int n, std::vector<std::pair<Vertex, Vertex>> edges,
             std::vector<int> multiplicities, std::vector<int> labels,
             bool allows_multi_edges)
    : n_(n), allows_multi_edges_(allows_multi_edges) {
    if (n < 1) throw std::invalid_argument("Graph: need at least one vertex");
    if (!multiplicities.empty() && multiplicities.size() != edges.size())
        throw std::invalid_argument("Graph: multiplicities must parallel edges");

    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (u < 1 || u > n || v < 1 || v > n)
            throw std::invalid_argument("Graph: vertex id out of range");
        if (u == v) throw std::invalid_argument("Graph: self-loops are not allowed");
        if (!multiplicities.empty() && multiplicities[i] < 1)
            throw std::invalid_argument("Graph: edge multiplicity must be >= 1");
    }

    // CSR over both directions, then sort each vertex's slice and merge
    // duplicate neighbors by summing multiplicities.
    std::vector<long long> counts(static_cast<std::size_t>(n) + 2, 0);
    for (auto [u, v] : edges) {
        ++counts[static_cast<std::size_t>(u) + 1];
        ++counts[static_cast<std::size_t>(v) + 1];
    }
    offsets_.assign(static_cast<std::size_t>(n) + 2, 0);
    for (std::size_t i = 1; i < offsets_.size(); ++i)
        offsets_[i] = offsets_[i - 1] + counts[i];

    entries_.resize(static_cast<std::size_t>(offsets_.back()));
    std::vector<long long> cursor(offsets_.begin(), offsets_.end());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        const int mult = multiplicities.empty() ? 1 : multiplicities[i];
        entries_[static_cast<std::size_t>(cursor[u]++)] = {v, mult};
        entries_[static_cast<std::size_t>(cursor[v]++)] = {u, mult};
    }
    edges.clear();
    edges.shrink_to_fit();

    degrees_.assign(static_cast<std::size_t>(n) + 1, 0);
    std::vector<long long> new_offsets(static_cast<std::size_t>(n) + 2, 0);
    long long write = 0;
    for (int v = 1; v <= n; ++v) {
        const long long lo = offsets_[static_cast<std::size_t>(v)];
        const long long hi = offsets_[static_cast<std::size_t>(v) + 1];
        std::sort(entries_.begin() + lo, entries_.begin() + hi,
                  [](const NeighborEntry& a, const NeighborEntry& b) {
                      return a.vertex < b.vertex;
                  });
        new_offsets[static_cast<std::size_t>(v)] = write;
        for (long long i = lo; i < hi;) {
            NeighborEntry merged = entries_[static_cast<std::size_t>(i)];
            long long j = i + 1;
            while (j < hi && entries_[static_cast<std::size_t>(j)].vertex == merged.vertex) {
                merged.multiplicity += entries_[static_cast<std::size_t>(j)].multiplicity;
                ++j;
            }
            entries_[static_cast<std::size_t>(write++)] = merged;
            degrees_[static_cast<std::size_t>(v)] += merged.multiplicity;
            i = j;
        }
    }
    new_offsets[static_cast<std::size_t>(n) + 1] = write;
    offsets_ = std::move(new_offsets);
    entries_.resize(static_cast<std::size_t>(write));
    entries_.shrink_to_fit();

    long long directed_pairs = write;
    num_edges_ = directed_pairs / 2;
    total_multiplicity_ = 0;
    for (int v = 1; v <= n; ++v) total_multiplicity_ += degrees_[static_cast<std::size_t>(v)];
    total_multiplicity_ /= 2;

    if (!labels.empty()) {
        if (labels.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("Graph: labels must cover every vertex");
        int l = 0;
        for (int c : labels) {
            if (c < 1) throw std::invalid_argument("Graph: cluster ids start at 1");
            l = std::max(l, c);
        }
        std::vector<long long> occupancy(static_cast<std::size_t>(l), 0);
        for (int c : labels) ++occupancy[static_cast<std::size_t>(c) - 1];
        for (long long occ : occupancy)
            if (occ == 0)
                throw std::invalid_argument("Graph: cluster ids must form a contiguous range 1..l");
        labels_ = std::move(labels);
        num_clusters_ = l;
    }
}

void Graph::check_vertex(Vertex v) const {
    if (v < 1 || v > n_)
        throw std::invalid_argument("Graph: vertex id " + std::to_string(v) + " out of range");
}

long long Graph::degree(Vertex v) const {
    check_vertex(v);
    return degrees_[static_cast<std::size_t>(v)];
}

std::span<const Graph::NeighborEntry> Graph::neighbors(Vertex v) const {
    check_vertex(v);
    const long long lo = offsets_[static_cast<std::size_t>(v)];
    const long long hi = offsets_[static_cast<std::size_t>(v) + 1];
    return {entries_.data() + lo, static_cast<std::size_t>(hi - lo)};
}

int Graph::label(Vertex v) const {
    check_vertex(v);
    if (labels_.empty()) throw std::logic_error("Graph: no labels present");
    return labels_[static_cast<std::size_t>(v) - 1];
}

std::vector<int> Graph::cluster_sizes() const {
    if (labels_.empty()) throw std::logic_error("Graph: no labels present");
    std::vector<int> sizes(static_cast<std::size_t>(num_clusters_), 0);
    for (int c : labels_) ++sizes[static_cast<std::size_t>(c) - 1];
    return sizes;
}

}  // namespace streampart
