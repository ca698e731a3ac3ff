#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace streampart {

// Identifier written into CSV headers so result files can be traced back to
// the exact generator. Bump the version suffix if any draw sequence changes.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+splitmix64/v1";

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed-mixing function for independent streams: three chained splitmix64
// rounds over (master, a, b). Used for (master_seed, cell, run) derivation.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0) noexcept {
    std::uint64_t h = splitmix64(master ^ 0x5bf0363570935ad1ULL);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    return h;
}

// Deterministic random source. The engine (mt19937_64) is fully specified by
// the standard and all distributions below are implemented here rather than
// taken from <random>, so identical seeds give identical streams on every
// platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform double in [0, 1) with 53 bits of precision.
    double next_unit() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound), unbiased (mask rejection).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        std::uint64_t mask = bound - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        std::uint64_t r;
        do {
            r = eng_() & mask;
        } while (r >= bound);
        return r;
    }

    bool bernoulli(double p) { return next_unit() < p; }

    // Exact Binomial(n, p) sample via CDF inversion. Large n is split in half
    // (a sum of independent binomials) until the leading pmf term (1-p)^n is
    // representable, so no normal approximation is ever used.
    long long binomial(long long n, double p) {
        if (n <= 0 || p <= 0.0) return 0;
        if (p >= 1.0) return n;
        if (p > 0.5) return n - binomial(n, 1.0 - p);
        if (static_cast<double>(n) * -std::log1p(-p) > 500.0) {
            const long long half = n / 2;
            return binomial(half, p) + binomial(n - half, p);
        }
        return binomial_inversion(n, p);
    }

    // Number of failures before the next success in Bernoulli(p) trials.
    // Backbone of the geometric-skip edge sampler for sparse graphs.
    long long geometric_skip(double p) {
        if (p >= 1.0) return 0;
        if (p <= 0.0) throw std::invalid_argument("Rng::geometric_skip: p must be positive");
        const double u = next_unit();
        return static_cast<long long>(std::floor(std::log1p(-u) / std::log1p(-p)));
    }

private:
    long long binomial_inversion(long long n, double p) {
        const double ratio = p / (1.0 - p);
        double pmf = std::exp(static_cast<double>(n) * std::log1p(-p));
        double cdf = pmf;
        const double u = next_unit();
        long long x = 0;
        while (u > cdf && x < n) {
            pmf *= ratio * static_cast<double>(n - x) / static_cast<double>(x + 1);
            ++x;
            cdf += pmf;
        }
        return x;
    }

    std::mt19937_64 eng_;
};

}  // namespace streampart
