#include "streampart/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace streampart {

double ln_choose(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) throw std::invalid_argument("ln_choose: need 0 <= k <= n");
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

double ks_statistic_uniform(std::vector<double> sample) {
    if (sample.empty()) throw std::invalid_argument("ks: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double cdf = sample[i];  // Uniform[0,1] CDF
        d = std::max(d, static_cast<double>(i + 1) / n - cdf);
        d = std::max(d, cdf - static_cast<double>(i) / n);
    }
    return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_pvalue(double d, double n_eff) {
    if (d <= 0.0) return 1.0;
    const double sqrt_n = std::sqrt(n_eff);
    const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12 * std::abs(sum)) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

bool ks_uniform_reject(std::vector<double> sample, double alpha) {
    const double n = static_cast<double>(sample.size());
    const double d = ks_statistic_uniform(std::move(sample));
    return ks_pvalue(d, n) < alpha;
}

bool ks_two_sample_reject(std::vector<double> a, std::vector<double> b, double alpha) {
    const double n_eff = static_cast<double>(a.size()) * static_cast<double>(b.size()) /
                         static_cast<double>(a.size() + b.size());
    const double d = ks_statistic_two_sample(std::move(a), std::move(b));
    return ks_pvalue(d, n_eff) < alpha;
}

double chi_square_statistic(std::span<const double> observed, std::span<const double> expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi_square: size mismatch");
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0) throw std::invalid_argument("chi_square: nonpositive expected count");
        const double diff = observed[i] - expected[i];
        stat += diff * diff / expected[i];
    }
    return stat;
}

namespace {

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int i = 1; i < 1000; ++i) {
        term *= x / (a + i);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("regularized_gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

double chi_square_pvalue(double statistic, int dof) {
    if (dof < 1) throw std::invalid_argument("chi_square_pvalue: dof must be >= 1");
    if (statistic <= 0.0) return 1.0;
    return regularized_gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

}  // namespace streampart
