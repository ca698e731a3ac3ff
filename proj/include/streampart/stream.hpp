#pragma once

#include <utility>
#include <vector>

#include "streampart/graph.hpp"

namespace streampart {

// Arrival order: order[t] is the (t+1)-th vertex to arrive.
struct StreamOrder {
    std::vector<Vertex> order;

    int size() const { return static_cast<int>(order.size()); }
    // Throws unless the order is a permutation of 1..n.
    void validate(int n) const;
};

// One vertex arrival. `revealed` lists the (already arrived neighbor,
// multiplicity) pairs; each undirected edge is revealed exactly once, at its
// later endpoint. `full_degree` is the multiplicity-weighted degree in the
// whole graph.
struct StreamEvent {
    Vertex vertex = 0;
    long long full_degree = 0;
    std::vector<std::pair<Vertex, int>> revealed;
};

// Single-pass visitor over the stream. The event object is reused between
// calls; copy it if it must outlive the callback.
template <class F>
void for_each_stream_event(const Graph& g, const StreamOrder& order, F&& fn) {
    const int n = g.num_vertices();
    order.validate(n);
    std::vector<int> position(static_cast<std::size_t>(n) + 1, 0);
    for (int t = 0; t < n; ++t) position[static_cast<std::size_t>(order.order[t])] = t;

    StreamEvent event;
    for (int t = 0; t < n; ++t) {
        const Vertex v = order.order[t];
        event.vertex = v;
        event.full_degree = g.degree(v);
        event.revealed.clear();
        for (const auto& entry : g.neighbors(v)) {
            if (position[static_cast<std::size_t>(entry.vertex)] < t)
                event.revealed.emplace_back(entry.vertex, entry.multiplicity);
        }
        fn(static_cast<const StreamEvent&>(event));
    }
}

// Materialized event sequence; intended for small graphs and tests.
std::vector<StreamEvent> stream_events(const Graph& g, const StreamOrder& order);

}  // namespace streampart
