#include "streampart/urn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace streampart {

namespace {

double bin_weight(long long load, double gamma) {
    if (gamma == 0.0) return 1.0;
    if (load <= 0) return 0.0;
    if (gamma == 1.0) return static_cast<double>(load);
    return std::pow(static_cast<double>(load), gamma);
}

// Bound keeping load^gamma finite: loads after `steps` throws cannot exceed
// initial + steps, so require (initial+steps)^gamma < 1e300.
void check_overflow(double gamma, long long max_load) {
    if (gamma > 0.0 && gamma * std::log10(static_cast<double>(std::max<long long>(max_load, 2))) > 300.0)
        throw std::invalid_argument("urn: gamma too large for this step count (weights overflow)");
}

int weighted_choice(std::span<const double> weights, double total, Rng& rng) {
    const double r = rng.next_unit() * total;
    double acc = 0.0;
    int last_positive = -1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        last_positive = static_cast<int>(i);
        acc += weights[i];
        if (r < acc) return static_cast<int>(i);
    }
    if (last_positive < 0) throw std::logic_error("weighted_choice: no positive weight");
    return last_positive;
}

struct Recorder {
    explicit Recorder(long long total_steps) {
        stride = std::max<long long>(1, (total_steps + 999) / 1000);
        traj.stride = stride;
    }
    void record(long long step, const std::vector<long long>& loads, bool force = false) {
        if (!force && step % stride != 0) return;
        if (!traj.steps.empty() && traj.steps.back() == step) return;
        traj.steps.push_back(step);
        traj.loads.push_back(loads);
    }
    long long stride = 1;
    Trajectory traj;
};

}  // namespace

UrnState UrnState::one_ball_per_bin(int k, double gamma) {
    if (k < 1) throw std::invalid_argument("UrnState: k must be >= 1");
    UrnState state;
    state.loads.assign(static_cast<std::size_t>(k), 1);
    state.gamma = gamma;
    return state;
}

std::vector<double> urn_choice_probabilities(const UrnState& state) {
    if (state.loads.empty()) throw std::invalid_argument("urn: no bins");
    const long long total_balls = std::accumulate(state.loads.begin(), state.loads.end(), 0LL);
    if (total_balls < 1 && state.gamma > 0.0)
        throw std::invalid_argument("urn: all bins empty and no seeding rule");
    check_overflow(state.gamma, *std::max_element(state.loads.begin(), state.loads.end()));
    std::vector<double> weights(state.loads.size());
    double total = 0.0;
    for (std::size_t i = 0; i < state.loads.size(); ++i) {
        weights[i] = bin_weight(state.loads[i], state.gamma);
        total += weights[i];
    }
    for (double& w : weights) w /= total;
    return weights;
}

void urn_step(UrnState& state, Rng& rng) {
    if (state.loads.empty()) throw std::invalid_argument("urn: no bins");
    const long long total_balls = std::accumulate(state.loads.begin(), state.loads.end(), 0LL);
    if (total_balls < 1 && state.gamma > 0.0)
        throw std::invalid_argument("urn: all bins empty and no seeding rule");
    check_overflow(state.gamma, *std::max_element(state.loads.begin(), state.loads.end()) + 1);
    std::vector<double> weights(state.loads.size());
    double total = 0.0;
    for (std::size_t i = 0; i < state.loads.size(); ++i) {
        weights[i] = bin_weight(state.loads[i], state.gamma);
        total += weights[i];
    }
    const int choice = weighted_choice(weights, total, rng);
    ++state.loads[static_cast<std::size_t>(choice)];
    ++state.balls_thrown;
}

std::vector<double> Trajectory::final_fractions() const {
    const auto& last = loads.back();
    const double total =
        static_cast<double>(std::accumulate(last.begin(), last.end(), 0LL));
    std::vector<double> fractions(last.size());
    for (std::size_t i = 0; i < last.size(); ++i)
        fractions[i] = total > 0.0 ? static_cast<double>(last[i]) / total : 0.0;
    return fractions;
}

std::string Trajectory::to_csv() const {
    std::ostringstream out;
    out << "step";
    for (std::size_t i = 0; i < loads.front().size(); ++i) out << ",load_" << i + 1;
    out << '\n';
    for (std::size_t row = 0; row < steps.size(); ++row) {
        out << steps[row];
        for (long long load : loads[row]) out << ',' << load;
        out << '\n';
    }
    return out.str();
}

Trajectory run_urn(int k, double gamma, std::vector<long long> initial, long long steps,
                   std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("run_urn: k must be >= 1");
    if (gamma < 0.0) throw std::invalid_argument("run_urn: gamma must be >= 0");
    if (steps < 0) throw std::invalid_argument("run_urn: steps must be >= 0");
    if (initial.empty()) initial.assign(static_cast<std::size_t>(k), 1);
    if (initial.size() != static_cast<std::size_t>(k))
        throw std::invalid_argument("run_urn: initial configuration size mismatch");
    long long total_balls = 0;
    for (long long load : initial) {
        if (load < 0) throw std::invalid_argument("run_urn: negative load");
        total_balls += load;
    }
    if (total_balls < 1 && gamma > 0.0)
        throw std::invalid_argument("run_urn: all bins empty and no seeding rule");
    check_overflow(gamma, total_balls + steps);

    Rng rng(seed);
    std::vector<long long> loads = std::move(initial);
    std::vector<double> weights(loads.size());
    for (std::size_t i = 0; i < loads.size(); ++i) weights[i] = bin_weight(loads[i], gamma);

    Recorder recorder(steps);
    recorder.record(0, loads, true);
    for (long long t = 1; t <= steps; ++t) {
        double total = 0.0;
        for (double w : weights) total += w;
        const int choice = weighted_choice(weights, total, rng);
        ++loads[static_cast<std::size_t>(choice)];
        weights[static_cast<std::size_t>(choice)] =
            bin_weight(loads[static_cast<std::size_t>(choice)], gamma);
        recorder.record(t, loads, t == steps);
    }
    return std::move(recorder.traj);
}

void CoupledProcessConfig::validate() const {
    if (n < 1) throw std::invalid_argument("CoupledProcessConfig: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("CoupledProcessConfig: p must lie in [0, 1]");
    if (k < 2) throw std::invalid_argument("CoupledProcessConfig: k must be >= 2");
}

Trajectory run_coupled(const CoupledProcessConfig& config) {
    config.validate();
    Rng rng(config.rng_seed);
    std::vector<long long> loads(static_cast<std::size_t>(config.k), 0);
    std::vector<long long> draws(static_cast<std::size_t>(config.k), 0);

    Recorder recorder(config.n);
    recorder.record(0, loads, true);
    for (long long t = 1; t <= config.n; ++t) {
        long long total = 0;
        long long best = 0;
        for (int i = 0; i < config.k; ++i) {
            draws[static_cast<std::size_t>(i)] =
                rng.binomial(loads[static_cast<std::size_t>(i)], config.p);
            total += draws[static_cast<std::size_t>(i)];
            best = std::max(best, draws[static_cast<std::size_t>(i)]);
        }
        int choice = -1;
        if (total == 0) {
            long long min_load = loads[0];
            for (long long load : loads) min_load = std::min(min_load, load);
            std::vector<int> ties;
            for (int i = 0; i < config.k; ++i)
                if (loads[static_cast<std::size_t>(i)] == min_load) ties.push_back(i);
            choice = ties[static_cast<std::size_t>(rng.below(ties.size()))];
        } else if (config.variant == CoupledVariant::kArgmax) {
            std::vector<int> maxima;
            for (int i = 0; i < config.k; ++i)
                if (draws[static_cast<std::size_t>(i)] == best) maxima.push_back(i);
            choice = maxima[static_cast<std::size_t>(rng.below(maxima.size()))];
        } else {
            const auto r = static_cast<long long>(rng.below(static_cast<std::uint64_t>(total)));
            long long acc = 0;
            for (int i = 0; i < config.k; ++i) {
                acc += draws[static_cast<std::size_t>(i)];
                if (r < acc) {
                    choice = i;
                    break;
                }
            }
        }
        ++loads[static_cast<std::size_t>(choice)];
        recorder.record(t, loads, t == config.n);
    }
    return std::move(recorder.traj);
}

DominanceReport dominance(std::span<const long long> loads) {
    if (loads.empty()) throw std::invalid_argument("dominance: no bins");
    long long total = 0;
    for (long long load : loads) total += load;
    if (total < 1) throw std::invalid_argument("dominance: no balls thrown");
    std::size_t best = 0;
    for (std::size_t i = 1; i < loads.size(); ++i)
        if (loads[i] > loads[best]) best = i;
    DominanceReport report;
    report.dominant_bin = static_cast<int>(best) + 1;
    report.fraction = static_cast<double>(loads[best]) / static_cast<double>(total);
    report.delta = 1.0 - report.fraction;
    return report;
}

DominanceReport dominance(const UrnState& state) {
    return dominance(std::span<const long long>(state.loads));
}

}  // namespace streampart
