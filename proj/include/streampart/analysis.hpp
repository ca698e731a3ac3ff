#pragma once

#include <numbers>

namespace streampart {

// All thresholds below use logarithms to `log_base` (default: natural log,
// recorded in CLI output metadata). The base only rescales log terms; it is a
// sensitivity knob, not a model parameter.
inline constexpr double kNaturalLogBase = std::numbers::e;

// Exact expected number of vertices arriving with no revealed edges when a
// cycle of n vertices is streamed in uniformly random order:
// sum_{t=1}^{n} ((n-t)/n) ((n-t-1)/(n-1)), which equals (n-2)/3.
double expected_no_edge_arrivals(long long n);

// Pr[A^j > B^j] for A^j + B^j = j edges split with head probability 1/2+delta:
// the exact binomial tail sum_{i=floor(j/2)+1}^{j} C(j,i)(1/2+delta)^i (1/2-delta)^(j-i).
// Computed in log space; valid for j up to ~10^4.
double majority_win_prob(int j, double delta);

// Closed-form lower bound (1/2+d)^m / ((1/2+d)^m + (1/2-d)^m), m = floor(j/2)+1.
// It bounds the tie-excluded odds Pr[A>B] / (Pr[A>B] + Pr[B>A]).
double majority_odds_bound(int j, double delta);

// Pr[A^j > B^j] / (Pr[A^j > B^j] + Pr[B^j > A^j]).
double majority_tie_excluded_odds(int j, double delta);

struct RegimeCondition {
    bool ok = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // positive iff ok
};

// The four recoverability conditions for the two-value planted model with
// equal cluster sizes |C_i| = n/l:
//   density:        p > 2 log(n) / |C_i|
//   gap:            p > 3 (k + sqrt(k) + 1) l q
//   cluster_count:  l > k log k
//   q_small:        q <= 1 / (9127 n'_0 (0.1 k)^2.4)
struct RegimeCheck {
    double cluster_size = 0.0;
    double n0 = 1.0;
    RegimeCondition density;
    RegimeCondition gap;
    RegimeCondition cluster_count;
    RegimeCondition q_small;

    bool all_ok() const { return density.ok && gap.ok && cluster_count.ok && q_small.ok; }
};

RegimeCheck regime_check(long long n, int k, int l, double p, double q, double n0 = 1.0,
                         double log_base = kNaturalLogBase);

// Ball count until one bin of a feedback-lambda pair is all-but-delta
// dominant: 2^(x+z) n0 with x = log_{1+(lambda-1)/(5+4(lambda-1))}(0.4/eps0)
// and z = log_{2 lambda/(lambda+1)}(0.1/delta).
struct BallCount {
    double x = 0.0;
    double z = 0.0;
    double balls = 0.0;
};

BallCount dominance_ball_count(double lambda, double eps0, double delta, double n0);

// The specialization behind the q bound: eps0 = 1/(5 lambda), delta = 1/k,
// n'_0 = n0 + 2 log k + log l, giving
// (2 lambda)^(1/log2(5 lambda/(1+4 lambda))) (0.1 k)^(1/log2(2 lambda/(lambda+1))) n'_0.
double dominance_ball_constant(double lambda);  // ~9127 at lambda = 2
double dominance_ball_exponent(double lambda);  // ~2.41 at lambda = 2
double dominance_ball_count_kbins(double lambda, int k, int l, double n0,
                      double log_base = kNaturalLogBase);

// gamma = delta / (delta + (1-delta)/(k-1)) and its inverse
// delta = gamma / (k-1 - (k-2) gamma).
double gamma_from_delta(double delta, int k);
double delta_from_gamma(double gamma, int k);

double adjusted_n0(int k, int l, double n0, double log_base = kNaturalLogBase);
double q_bound_from_adjusted_n0(int k, double adjusted);
// q = 1 / (9127 n'_0 (0.1 k)^2.4), the rounded constants as published.
double inter_cluster_q_bound(int k, int l, double n0, double log_base = kNaturalLogBase);

// Arrival-count window inside which good edges dominate bad ones, each side
// holding with probability 1 - delta:
//   t_good = n/(p c) (k + L/2 + sqrt(k L + L^2/4)),   L = log(1/delta)
//   t_bad  = n/(q l c) (1 + L/2 - sqrt(L + L^2/4))
// At delta = 1/e the t_bad constant reduces exactly to (3-sqrt(5))/2.
struct TThresholds {
    double t_good = 0.0;
    double t_bad = 0.0;
    bool feasible = false;  // t_good < t_bad
};

TThresholds edge_dominance_window(long long n, int k, double p, double q, int l,
                                  double cluster_size, double delta,
                                  double log_base = kNaturalLogBase);

// Positive root of x = sqrt((2 R^3 - R^4) / (4 R^4)) with R = p/(q l).
// Vacuous (radicand < 0) means the majority partition already dominates.
struct Separation {
    bool vacuous = false;
    double x = 0.0;
};

Separation required_separation(double p, double q, double l);

// Expected maximum load of throwing `balls` balls uniformly into `bins` bins:
// balls/bins + sqrt(2 (balls/bins) log bins), valid for balls >= bins log bins.
// Below that the log k / log log k law applies instead and the estimate is
// flagged as out of regime.
struct MaxLoadPrediction {
    double value = 0.0;
    bool sparse_regime = false;
};

MaxLoadPrediction max_load_prediction(double balls, double bins,
                                      double log_base = kNaturalLogBase);

}  // namespace streampart
