#include "streampart/stream.hpp"

#include <stdexcept>

namespace streampart {

void StreamOrder::validate(int n) const {
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("StreamOrder: length does not match vertex count");
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (Vertex v : order) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("StreamOrder: order must be a permutation of 1..n");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

std::vector<StreamEvent> stream_events(const Graph& g, const StreamOrder& order) {
    std::vector<StreamEvent> events;
    events.reserve(static_cast<std::size_t>(g.num_vertices()));
    for_each_stream_event(g, order, [&](const StreamEvent& event) { events.push_back(event); });
    return events;
}

}  // namespace streampart
