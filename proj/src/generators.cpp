#include "streampart/generators.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "streampart/rng.hpp"

namespace streampart {

namespace detail {

std::pair<Vertex, Vertex> pair_from_index(long long e, long long n) {
    // offset(u) = (u-1)(2n-u)/2 is the index of pair (u, u+1)
    const auto offset = [n](long long u) { return (u - 1) * (2 * n - u) / 2; };
    const double nd = static_cast<double>(n);
    const double disc = (nd - 0.5) * (nd - 0.5) - 2.0 * static_cast<double>(e);
    long long u = static_cast<long long>(nd + 0.5 - std::sqrt(std::max(disc, 0.0)));
    if (u < 1) u = 1;
    if (u > n - 1) u = n - 1;
    while (u > 1 && offset(u) > e) --u;
    while (u < n - 1 && offset(u + 1) <= e) ++u;
    const long long v = u + 1 + (e - offset(u));
    return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

void sample_pair_space(int n, double p, Vertex base, Rng& rng,
                       std::vector<std::pair<Vertex, Vertex>>& out, SampleMethod method) {
    const long long total = static_cast<long long>(n) * (n - 1) / 2;
    if (total == 0 || p <= 0.0) return;
    if (p >= 1.0) {
        for (int u = 1; u < n; ++u)
            for (int v = u + 1; v <= n; ++v) out.emplace_back(base + u, base + v);
        return;
    }
    const bool skip = method == SampleMethod::kSkip ||
                      (method == SampleMethod::kAuto && p < kSkipThreshold);
    if (!skip) {
        for (int u = 1; u < n; ++u)
            for (int v = u + 1; v <= n; ++v)
                if (rng.bernoulli(p)) out.emplace_back(base + u, base + v);
        return;
    }
    long long e = rng.geometric_skip(p);
    while (e < total) {
        auto [u, v] = pair_from_index(e, n);
        out.emplace_back(base + u, base + v);
        e += 1 + rng.geometric_skip(p);
    }
}

void sample_rectangle(int rows, int cols, double p, Vertex row_base, Vertex col_base,
                      Rng& rng, std::vector<std::pair<Vertex, Vertex>>& out,
                      SampleMethod method) {
    const long long total = static_cast<long long>(rows) * cols;
    if (total == 0 || p <= 0.0) return;
    if (p >= 1.0) {
        for (int a = 1; a <= rows; ++a)
            for (int b = 1; b <= cols; ++b) out.emplace_back(row_base + a, col_base + b);
        return;
    }
    const bool skip = method == SampleMethod::kSkip ||
                      (method == SampleMethod::kAuto && p < kSkipThreshold);
    if (!skip) {
        for (int a = 1; a <= rows; ++a)
            for (int b = 1; b <= cols; ++b)
                if (rng.bernoulli(p)) out.emplace_back(row_base + a, col_base + b);
        return;
    }
    long long e = rng.geometric_skip(p);
    while (e < total) {
        const int a = static_cast<int>(e / cols);
        const int b = static_cast<int>(e % cols);
        out.emplace_back(row_base + a + 1, col_base + b + 1);
        e += 1 + rng.geometric_skip(p);
    }
}

}  // namespace detail

PlantedParams PlantedParams::equal_clusters(int n, int l, double p, double q) {
    if (l < 1 || n < 1 || n % l != 0)
        throw std::invalid_argument("PlantedParams: n must be divisible by l");
    PlantedParams params;
    params.n = n;
    params.l = l;
    params.p = p;
    params.q = q;
    params.sizes.assign(static_cast<std::size_t>(l), n / l);
    return params;
}

void PlantedParams::validate() const {
    if (n < 1) throw std::invalid_argument("PlantedParams: n must be >= 1");
    if (l < 1) throw std::invalid_argument("PlantedParams: l must be >= 1");
    if (sizes.size() != static_cast<std::size_t>(l))
        throw std::invalid_argument("PlantedParams: sizes must have length l");
    long long sum = 0;
    for (int s : sizes) {
        if (s < 1) throw std::invalid_argument("PlantedParams: cluster sizes must be >= 1");
        sum += s;
    }
    if (sum != n) throw std::invalid_argument("PlantedParams: cluster sizes must sum to n");
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("PlantedParams: probabilities must lie in [0, 1]");
}

Graph generate_gnp(int n, double p, bool multi_edge, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_gnp: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("generate_gnp: p must lie in [0, 1]");
    Rng rng(seed);
    std::vector<std::pair<Vertex, Vertex>> edges;
    if (p > 0.0 && n > 1)
        edges.reserve(static_cast<std::size_t>(p * static_cast<double>(n) * (n - 1) / 2 * 1.05) + 16);
    detail::sample_pair_space(n, p, 0, rng, edges);
    return Graph(n, std::move(edges), {}, {}, multi_edge);
}

Graph generate_planted(const PlantedParams& params, std::uint64_t seed) {
    params.validate();
    Rng rng(seed);

    // Clusters occupy contiguous vertex ranges in id order.
    std::vector<int> starts(params.sizes.size() + 1, 0);
    for (std::size_t i = 0; i < params.sizes.size(); ++i)
        starts[i + 1] = starts[i] + params.sizes[i];

    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < params.l; ++i)
        detail::sample_pair_space(params.sizes[static_cast<std::size_t>(i)], params.p,
                                  starts[static_cast<std::size_t>(i)], rng, edges);
    for (int i = 0; i < params.l; ++i)
        for (int j = i + 1; j < params.l; ++j)
            detail::sample_rectangle(params.sizes[static_cast<std::size_t>(i)],
                                     params.sizes[static_cast<std::size_t>(j)], params.q,
                                     starts[static_cast<std::size_t>(i)],
                                     starts[static_cast<std::size_t>(j)], rng, edges);

    std::vector<int> labels(static_cast<std::size_t>(params.n));
    for (int i = 0; i < params.l; ++i)
        for (int v = starts[static_cast<std::size_t>(i)]; v < starts[static_cast<std::size_t>(i) + 1]; ++v)
            labels[static_cast<std::size_t>(v)] = i + 1;

    return Graph(params.n, std::move(edges), {}, std::move(labels), false);
}

Graph generate_cycle(int n) {
    if (n < 3) throw std::invalid_argument("generate_cycle: n must be >= 3");
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(n, 1);
    return Graph(n, std::move(edges));
}

StreamOrder random_order(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_order: n must be >= 1");
    StreamOrder result;
    result.order.resize(static_cast<std::size_t>(n));
    std::iota(result.order.begin(), result.order.end(), 1);
    Rng rng(seed);
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(result.order[static_cast<std::size_t>(i)], result.order[j]);
    }
    return result;
}

StreamOrder adversarial_cycle_order(int n) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("adversarial_cycle_order: n must be even and >= 4");
    StreamOrder result;
    result.order.reserve(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; v += 2) result.order.push_back(v);
    for (int v = 2; v <= n; v += 2) result.order.push_back(v);
    return result;
}

}  // namespace streampart
