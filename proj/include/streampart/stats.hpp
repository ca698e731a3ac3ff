#pragma once

#include <span>
#include <vector>

namespace streampart {

double ln_choose(long long n, long long k);

// Kolmogorov-Smirnov statistic of a sample against Uniform[0,1].
double ks_statistic_uniform(std::vector<double> sample);

// Two-sample KS statistic.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic KS p-value for statistic d at effective sample size n_eff
// (n for one sample, nm/(n+m) for two).
double ks_pvalue(double d, double n_eff);

bool ks_uniform_reject(std::vector<double> sample, double alpha);
bool ks_two_sample_reject(std::vector<double> a, std::vector<double> b, double alpha);

double chi_square_statistic(std::span<const double> observed, std::span<const double> expected);

// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_pvalue(double statistic, int dof);

// Regularized upper incomplete gamma Q(a, x).
double regularized_gamma_q(double a, double x);

}  // namespace streampart
