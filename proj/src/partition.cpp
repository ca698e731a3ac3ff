#include "streampart/partition.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace streampart {

namespace {

bool is_weighted(PartitionerKind kind) {
    return kind == PartitionerKind::kWeightedArgmax ||
           kind == PartitionerKind::kWeightedProportional;
}

bool is_argmax(PartitionerKind kind) {
    return kind == PartitionerKind::kArgmaxGreedy || kind == PartitionerKind::kWeightedArgmax;
}

// Integer comparison weights: raw counts, or count * (C - load) for the
// weighted variants. Not used for the gamma rule.
std::vector<long long> integer_weights(const ScoreVector& scores, const PartitionState& state,
                                       const PartitionerConfig& config) {
    std::vector<long long> weights(scores.counts.size(), 0);
    for (std::size_t i = 0; i < scores.counts.size(); ++i) {
        weights[i] = is_weighted(config.kind)
                         ? scores.counts[i] * (state.capacity - state.loads[i])
                         : scores.counts[i];
    }
    return weights;
}

std::vector<int> least_loaded_nonfull(const PartitionState& state) {
    int best = -1;
    std::vector<int> ties;
    for (int i = 0; i < state.k; ++i) {
        if (state.is_full(i)) continue;
        if (best < 0 || state.loads[static_cast<std::size_t>(i)] < best) {
            best = state.loads[static_cast<std::size_t>(i)];
            ties.clear();
        }
        if (state.loads[static_cast<std::size_t>(i)] == best) ties.push_back(i);
    }
    if (ties.empty()) throw std::runtime_error("all partitions are full; capacity law violated");
    return ties;
}

std::vector<int> nonfull_partitions(const PartitionState& state) {
    std::vector<int> open;
    for (int i = 0; i < state.k; ++i)
        if (!state.is_full(i)) open.push_back(i);
    if (open.empty()) throw std::runtime_error("all partitions are full; capacity law violated");
    return open;
}

int pick_uniform(const std::vector<int>& candidates, Rng& rng) {
    return candidates[static_cast<std::size_t>(rng.below(candidates.size()))];
}

// S_i^gamma weights; zero stays zero for any gamma > 0.
std::pair<std::vector<double>, double> gamma_weights(const ScoreVector& scores, double gamma) {
    std::vector<double> weights(scores.counts.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < scores.counts.size(); ++i) {
        if (scores.counts[i] > 0)
            weights[i] = std::pow(static_cast<double>(scores.counts[i]), gamma);
        total += weights[i];
    }
    return {std::move(weights), total};
}

}  // namespace

PartitionerKind parse_partitioner_kind(const std::string& name) {
    if (name == "argmax") return PartitionerKind::kArgmaxGreedy;
    if (name == "proportional") return PartitionerKind::kProportionalGreedy;
    if (name == "gamma") return PartitionerKind::kGammaGreedy;
    if (name == "weighted_argmax") return PartitionerKind::kWeightedArgmax;
    if (name == "weighted_proportional") return PartitionerKind::kWeightedProportional;
    if (name == "random_baseline") return PartitionerKind::kRandomBaseline;
    throw std::invalid_argument("unknown partitioner kind: " + name);
}

std::string to_string(PartitionerKind kind) {
    switch (kind) {
        case PartitionerKind::kArgmaxGreedy: return "argmax";
        case PartitionerKind::kProportionalGreedy: return "proportional";
        case PartitionerKind::kGammaGreedy: return "gamma";
        case PartitionerKind::kWeightedArgmax: return "weighted_argmax";
        case PartitionerKind::kWeightedProportional: return "weighted_proportional";
        case PartitionerKind::kRandomBaseline: return "random_baseline";
    }
    throw std::logic_error("unreachable");
}

void PartitionerConfig::validate() const {
    const int min_k = kind == PartitionerKind::kRandomBaseline ? 1 : 2;
    if (k < min_k) throw std::invalid_argument("PartitionerConfig: k too small");
    if (epsilon < 0.0) throw std::invalid_argument("PartitionerConfig: epsilon must be >= 0");
    if (kind == PartitionerKind::kGammaGreedy && !(gamma > 0.0))
        throw std::invalid_argument("PartitionerConfig: gamma rule requires gamma > 0");
}

int PartitionerConfig::capacity_for(int n) const {
    // Ceiling of (1+epsilon) n / k, snapping values that are integral up to
    // double rounding so e.g. epsilon=0.2, n=4000, k=8 gives exactly 600.
    const double target = (1.0 + epsilon) * static_cast<double>(n) / static_cast<double>(k);
    const double snapped = std::round(target);
    if (std::abs(target - snapped) < 1e-9 * std::max(1.0, target))
        return static_cast<int>(snapped);
    return static_cast<int>(std::ceil(target));
}

PartitionState::PartitionState(int k_, int capacity_, int n) : k(k_), capacity(capacity_) {
    if (k < 1) throw std::invalid_argument("PartitionState: k must be >= 1");
    if (capacity < 1) throw std::invalid_argument("PartitionState: capacity must be >= 1");
    loads.assign(static_cast<std::size_t>(k), 0);
    members.assign(static_cast<std::size_t>(k), {});
    assignment.assign(static_cast<std::size_t>(n) + 1, -1);
}

int PartitionState::num_full() const {
    int full = 0;
    for (int load : loads)
        if (load >= capacity) ++full;
    return full;
}

void PartitionState::place(Vertex v, int part) {
    if (part < 0 || part >= k) throw std::invalid_argument("PartitionState: bad partition id");
    if (assignment[static_cast<std::size_t>(v)] >= 0)
        throw std::logic_error("PartitionState: vertex already placed");
    if (is_full(part)) throw std::logic_error("PartitionState: partition is full");
    assignment[static_cast<std::size_t>(v)] = part;
    members[static_cast<std::size_t>(part)].push_back(v);
    ++loads[static_cast<std::size_t>(part)];
    ++placed;
}

double PartitionState::max_load_fraction() const {
    if (placed == 0) return 0.0;
    return static_cast<double>(*std::max_element(loads.begin(), loads.end())) /
           static_cast<double>(placed);
}

ScoreVector compute_scores(const StreamEvent& event, const PartitionState& state,
                           const PartitionerConfig& config) {
    ScoreVector scores;
    scores.counts.assign(static_cast<std::size_t>(state.k), 0);
    scores.values.assign(static_cast<std::size_t>(state.k), 0.0);
    for (const auto& [u, mult] : event.revealed) {
        const int part = state.assignment[static_cast<std::size_t>(u)];
        if (part < 0) throw std::logic_error("compute_scores: revealed neighbor not placed");
        scores.counts[static_cast<std::size_t>(part)] += mult;
    }
    for (int i = 0; i < state.k; ++i) {
        if (state.is_full(i)) {
            scores.counts[static_cast<std::size_t>(i)] = 0;
            continue;
        }
        const double raw = static_cast<double>(scores.counts[static_cast<std::size_t>(i)]);
        scores.values[static_cast<std::size_t>(i)] =
            is_weighted(config.kind)
                ? raw * (1.0 - static_cast<double>(state.loads[static_cast<std::size_t>(i)]) /
                                   static_cast<double>(state.capacity))
                : raw;
    }
    return scores;
}

std::vector<double> choice_probabilities(const ScoreVector& scores, const PartitionState& state,
                                         const PartitionerConfig& config) {
    std::vector<double> probs(static_cast<std::size_t>(state.k), 0.0);
    const auto uniform_over = [&probs](const std::vector<int>& candidates) {
        for (int i : candidates)
            probs[static_cast<std::size_t>(i)] = 1.0 / static_cast<double>(candidates.size());
    };

    if (config.kind == PartitionerKind::kRandomBaseline) {
        uniform_over(nonfull_partitions(state));
        return probs;
    }
    if (config.kind == PartitionerKind::kGammaGreedy) {
        const auto [weights, total] = gamma_weights(scores, config.gamma);
        if (total <= 0.0) {
            uniform_over(least_loaded_nonfull(state));
            return probs;
        }
        for (int i = 0; i < state.k; ++i)
            probs[static_cast<std::size_t>(i)] = weights[static_cast<std::size_t>(i)] / total;
        return probs;
    }

    const std::vector<long long> weights = integer_weights(scores, state, config);
    long long total = 0;
    long long best = 0;
    for (long long w : weights) {
        total += w;
        best = std::max(best, w);
    }
    if (total == 0) {
        uniform_over(least_loaded_nonfull(state));
        return probs;
    }
    if (is_argmax(config.kind)) {
        std::vector<int> maxima;
        for (int i = 0; i < state.k; ++i)
            if (weights[static_cast<std::size_t>(i)] == best) maxima.push_back(i);
        uniform_over(maxima);
        return probs;
    }
    for (int i = 0; i < state.k; ++i)
        probs[static_cast<std::size_t>(i)] = static_cast<double>(weights[static_cast<std::size_t>(i)]) /
                                             static_cast<double>(total);
    return probs;
}

int place_vertex(const StreamEvent& event, PartitionState& state,
                 const PartitionerConfig& config, Rng& rng) {
    if (state.assignment[static_cast<std::size_t>(event.vertex)] >= 0)
        throw std::logic_error("place_vertex: vertex already assigned");

    int choice = -1;
    if (config.kind == PartitionerKind::kRandomBaseline) {
        choice = pick_uniform(nonfull_partitions(state), rng);
    } else if (config.kind == PartitionerKind::kGammaGreedy) {
        const ScoreVector scores = compute_scores(event, state, config);
        const auto [weights, total] = gamma_weights(scores, config.gamma);
        if (total <= 0.0) {
            choice = pick_uniform(least_loaded_nonfull(state), rng);
        } else {
            const double r = rng.next_unit() * total;
            double acc = 0.0;
            int last_positive = -1;
            for (int i = 0; i < state.k && choice < 0; ++i) {
                const double w = weights[static_cast<std::size_t>(i)];
                if (w <= 0.0) continue;
                last_positive = i;
                acc += w;
                if (r < acc) choice = i;
            }
            if (choice < 0) choice = last_positive;  // guard float rounding at the top end
        }
    } else {
        const ScoreVector scores = compute_scores(event, state, config);
        const std::vector<long long> weights = integer_weights(scores, state, config);
        long long total = 0;
        long long best = 0;
        for (long long w : weights) {
            total += w;
            best = std::max(best, w);
        }
        if (total == 0) {
            choice = pick_uniform(least_loaded_nonfull(state), rng);
        } else if (is_argmax(config.kind)) {
            std::vector<int> maxima;
            for (int i = 0; i < state.k; ++i)
                if (weights[static_cast<std::size_t>(i)] == best) maxima.push_back(i);
            choice = pick_uniform(maxima, rng);
        } else {
            const auto r = static_cast<long long>(rng.below(static_cast<std::uint64_t>(total)));
            long long acc = 0;
            for (int i = 0; i < state.k; ++i) {
                acc += weights[static_cast<std::size_t>(i)];
                if (r < acc) {
                    choice = i;
                    break;
                }
            }
        }
    }
    state.place(event.vertex, choice);
    return choice;
}

PartitionState run_partitioner(const Graph& g, const StreamOrder& order,
                               const PartitionerConfig& config) {
    config.validate();
    const int n = g.num_vertices();
    PartitionState state(config.k, config.capacity_for(n), n);
    Rng rng(config.rng_seed);
    for_each_stream_event(g, order,
                          [&](const StreamEvent& event) { place_vertex(event, state, config, rng); });
    return state;
}

PartitionState random_baseline(const Graph& g, const StreamOrder& order, int k,
                               std::uint64_t seed) {
    PartitionerConfig config;
    config.kind = PartitionerKind::kRandomBaseline;
    config.k = k;
    config.epsilon = static_cast<double>(k - 1);  // C = n: capacity never binds
    config.rng_seed = seed;
    return run_partitioner(g, order, config);
}

void save_partition(const PartitionState& state, std::ostream& out) {
    out << state.k << ' ' << state.capacity;
    for (int load : state.loads) out << ' ' << load;
    out << '\n';
    for (std::size_t v = 1; v < state.assignment.size(); ++v) {
        if (state.assignment[v] >= 0) out << v << ' ' << state.assignment[v] + 1 << '\n';
    }
}

}  // namespace streampart
