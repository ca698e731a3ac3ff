#include "streampart/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "streampart/stats.hpp"

namespace streampart {

namespace {

double log_in_base(double x, double base) {
    return std::log(x) / std::log(base);
}

// Binomial tail sum_{i=floor(j/2)+1}^{j} C(j,i) a^i b^(j-i), log-space.
double binomial_tail(int j, double a, double b) {
    const int lo = j / 2 + 1;
    if (a <= 0.0) return 0.0;
    const double la = std::log(a);
    const double lb = b > 0.0 ? std::log(b) : -std::numeric_limits<double>::infinity();
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(j - lo) + 1);
    double max_log = -std::numeric_limits<double>::infinity();
    for (int i = lo; i <= j; ++i) {
        double lt = ln_choose(j, i) + i * la;
        if (j - i > 0)
            lt += (j - i) * lb;
        logs.push_back(lt);
        max_log = std::max(max_log, lt);
    }
    if (!std::isfinite(max_log)) return 0.0;
    double sum = 0.0;
    for (double lt : logs) sum += std::exp(lt - max_log);
    return std::exp(max_log) * sum;
}

}  // namespace

double expected_no_edge_arrivals(long long n) {
    if (n < 3) throw std::invalid_argument("expected_no_edge_arrivals: n must be >= 3");
    const double nd = static_cast<double>(n);
    double sum = 0.0;
    for (long long t = 1; t <= n; ++t) {
        const double td = static_cast<double>(t);
        sum += ((nd - td) / nd) * ((nd - td - 1.0) / (nd - 1.0));
    }
    return sum;
}

double majority_win_prob(int j, double delta) {
    if (j < 1) throw std::invalid_argument("majority_win_prob: j must be >= 1");
    if (!(delta >= 0.0 && delta < 0.5))
        throw std::invalid_argument("majority_win_prob: delta must lie in [0, 1/2)");
    return binomial_tail(j, 0.5 + delta, 0.5 - delta);
}

double majority_odds_bound(int j, double delta) {
    if (j < 1) throw std::invalid_argument("majority_odds_bound: j must be >= 1");
    if (!(delta >= 0.0 && delta < 0.5))
        throw std::invalid_argument("majority_odds_bound: delta must lie in [0, 1/2) (1/2 degenerates)");
    const int m = j / 2 + 1;
    // 1 / (1 + ((1/2-d)/(1/2+d))^m), stable for large m
    const double ratio = (0.5 - delta) / (0.5 + delta);
    return 1.0 / (1.0 + std::pow(ratio, m));
}

double majority_tie_excluded_odds(int j, double delta) {
    const double win = majority_win_prob(j, delta);
    const double lose = binomial_tail(j, 0.5 - delta, 0.5 + delta);
    return win / (win + lose);
}

RegimeCheck regime_check(long long n, int k, int l, double p, double q, double n0,
                         double log_base) {
    if (n < 1 || k < 2 || l < 1) throw std::invalid_argument("regime_check: bad n/k/l");
    if (n % l != 0)
        throw std::invalid_argument("regime_check: equal cluster sizes require l | n");
    RegimeCheck check;
    check.cluster_size = static_cast<double>(n) / static_cast<double>(l);
    check.n0 = n0;

    const auto greater = [](double lhs, double rhs) {
        RegimeCondition c;
        c.lhs = lhs;
        c.rhs = rhs;
        c.margin = lhs - rhs;
        c.ok = lhs > rhs;
        return c;
    };

    check.density = greater(p, 2.0 * log_in_base(static_cast<double>(n), log_base) /
                                   check.cluster_size);
    check.gap = greater(p, 3.0 * (k + std::sqrt(static_cast<double>(k)) + 1.0) * l * q);
    check.cluster_count =
        greater(static_cast<double>(l),
                static_cast<double>(k) * log_in_base(static_cast<double>(k), log_base));

    // q <= bound, margin = bound - q
    const double bound = inter_cluster_q_bound(k, l, n0, log_base);
    check.q_small.lhs = q;
    check.q_small.rhs = bound;
    check.q_small.margin = bound - q;
    check.q_small.ok = q <= bound;
    return check;
}

BallCount dominance_ball_count(double lambda, double eps0, double delta, double n0) {
    if (!(lambda > 1.0)) throw std::invalid_argument("dominance_ball_count: lambda must be > 1");
    if (!(eps0 > 0.0 && eps0 < 1.0))
        throw std::invalid_argument("dominance_ball_count: eps0 must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("dominance_ball_count: delta must lie in (0, 1)");
    BallCount result;
    const double base_x = 1.0 + (lambda - 1.0) / (5.0 + 4.0 * (lambda - 1.0));
    const double base_z = 2.0 * lambda / (lambda + 1.0);
    result.x = std::log(0.4 / eps0) / std::log(base_x);
    result.z = std::log(0.1 / delta) / std::log(base_z);
    result.balls = std::exp2(result.x + result.z) * n0;
    return result;
}

double dominance_ball_constant(double lambda) {
    if (!(lambda > 1.0)) throw std::invalid_argument("dominance_ball_constant: lambda must be > 1");
    return std::pow(2.0 * lambda, 1.0 / std::log2(5.0 * lambda / (1.0 + 4.0 * lambda)));
}

double dominance_ball_exponent(double lambda) {
    if (!(lambda > 1.0)) throw std::invalid_argument("dominance_ball_exponent: lambda must be > 1");
    return 1.0 / std::log2(2.0 * lambda / (lambda + 1.0));
}

double dominance_ball_count_kbins(double lambda, int k, int l, double n0, double log_base) {
    return dominance_ball_constant(lambda) *
           std::pow(0.1 * static_cast<double>(k), dominance_ball_exponent(lambda)) *
           adjusted_n0(k, l, n0, log_base);
}

double gamma_from_delta(double delta, int k) {
    if (k < 2) throw std::invalid_argument("gamma_from_delta: k must be >= 2");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("gamma_from_delta: delta must lie in (0, 1)");
    return delta / (delta + (1.0 - delta) / static_cast<double>(k - 1));
}

double delta_from_gamma(double gamma, int k) {
    if (k < 2) throw std::invalid_argument("delta_from_gamma: k must be >= 2");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("delta_from_gamma: gamma must lie in (0, 1)");
    const double denom = static_cast<double>(k - 1) - static_cast<double>(k - 2) * gamma;
    if (denom == 0.0) throw std::invalid_argument("delta_from_gamma: k-1 = (k-2) gamma");
    return gamma / denom;
}

double adjusted_n0(int k, int l, double n0, double log_base) {
    if (k < 2 || l < 2) throw std::invalid_argument("adjusted_n0: need k >= 2 and l >= 2");
    if (n0 < 1.0) throw std::invalid_argument("adjusted_n0: n0 must be >= 1");
    return n0 + 2.0 * log_in_base(static_cast<double>(k), log_base) +
           log_in_base(static_cast<double>(l), log_base);
}

double q_bound_from_adjusted_n0(int k, double adjusted) {
    if (k < 2) throw std::invalid_argument("q_bound_from_adjusted_n0: k must be >= 2");
    return 1.0 / (9127.0 * adjusted * std::pow(0.1 * static_cast<double>(k), 2.4));
}

double inter_cluster_q_bound(int k, int l, double n0, double log_base) {
    return q_bound_from_adjusted_n0(k, adjusted_n0(k, l, n0, log_base));
}

TThresholds edge_dominance_window(long long n, int k, double p, double q, int l,
                                  double cluster_size, double delta, double log_base) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("edge_dominance_window: delta must lie in (0, 1)");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("edge_dominance_window: p must lie in (0, 1]");
    if (q < 0.0 || q > 1.0)
        throw std::invalid_argument("edge_dominance_window: q must lie in [0, 1]");
    if (cluster_size <= 0.0)
        throw std::invalid_argument("edge_dominance_window: cluster size must be positive");
    const double big_l = log_in_base(1.0 / delta, log_base);
    TThresholds result;
    result.t_good = static_cast<double>(n) / (p * cluster_size) *
                    (k + big_l / 2.0 + std::sqrt(k * big_l + big_l * big_l / 4.0));
    result.t_bad =
        q <= 0.0 ? std::numeric_limits<double>::infinity()
                 : static_cast<double>(n) / (q * static_cast<double>(l) * cluster_size) *
                       (1.0 + big_l / 2.0 - std::sqrt(big_l + big_l * big_l / 4.0));
    result.feasible = result.t_good < result.t_bad;
    return result;
}

Separation required_separation(double p, double q, double l) {
    if (!(p > 0.0) || !(q > 0.0) || !(l > 0.0))
        throw std::invalid_argument("required_separation: p, q, l must be positive");
    const double r = p / (q * l);
    const double radicand = (2.0 * r * r * r - r * r * r * r) / (4.0 * r * r * r * r);
    Separation result;
    if (radicand < 0.0) {
        result.vacuous = true;
        return result;
    }
    result.x = std::sqrt(radicand);
    return result;
}

MaxLoadPrediction max_load_prediction(double balls, double bins, double log_base) {
    if (balls < 1.0 || bins < 1.0)
        throw std::invalid_argument("max_load_prediction: need balls, bins >= 1");
    MaxLoadPrediction result;
    const double mean = balls / bins;
    const double log_bins = log_in_base(bins, log_base);
    result.value = mean + std::sqrt(2.0 * mean * std::max(log_bins, 0.0));
    result.sparse_regime = balls < bins * log_bins;
    return result;
}

}  // namespace streampart
