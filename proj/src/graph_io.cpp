#include "streampart/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace streampart {

void save_edge_list(const Graph& g, std::ostream& out) {
    const int n = g.num_vertices();
    out << n << ' ' << (g.has_labels() ? g.num_clusters() : 0) << '\n';
    for (Vertex u = 1; u <= n; ++u) {
        for (const auto& entry : g.neighbors(u)) {
            if (entry.vertex > u)
                out << u << ' ' << entry.vertex << ' ' << entry.multiplicity << '\n';
        }
    }
    if (g.has_labels()) {
        for (Vertex v = 1; v <= n; ++v) out << "label " << v << ' ' << g.label(v) << '\n';
    }
}

Graph load_edge_list(std::istream& in) {
    int n = 0;
    int l = 0;
    if (!(in >> n >> l)) throw std::invalid_argument("edge list: missing header");
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<int> mults;
    std::vector<int> labels;
    if (l > 0) labels.assign(static_cast<std::size_t>(n), 0);

    std::string tok;
    while (in >> tok) {
        if (tok == "label") {
            int v = 0;
            int c = 0;
            if (!(in >> v >> c)) throw std::invalid_argument("edge list: malformed label line");
            if (l == 0) throw std::invalid_argument("edge list: label line in unlabeled graph");
            if (v < 1 || v > n) throw std::invalid_argument("edge list: label vertex out of range");
            labels[static_cast<std::size_t>(v) - 1] = c;
        } else {
            int v = 0;
            int mult = 0;
            const int u = std::stoi(tok);
            if (!(in >> v >> mult)) throw std::invalid_argument("edge list: malformed edge line");
            edges.emplace_back(u, v);
            mults.push_back(mult);
        }
    }
    if (l > 0) {
        for (int c : labels)
            if (c == 0) throw std::invalid_argument("edge list: missing label line");
    }
    return Graph(n, std::move(edges), std::move(mults), std::move(labels));
}

void save_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    save_edge_list(g, out);
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_edge_list(in);
}

}  // namespace streampart
