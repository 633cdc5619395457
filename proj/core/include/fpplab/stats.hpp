#pragma once

#include <cstddef>
#include <vector>

namespace fpplab {

// Two-sample Kolmogorov-Smirnov statistic sup|F_a - F_b|.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

// One-sample statistic against the uniform law on (0,1); feed
// probability-integral-transformed samples.
double ks_statistic_uniform(std::vector<double> u);

// Asymptotic critical values: c(alpha) = sqrt(-ln(alpha/2)/2), scaled by the
// effective sample size. The test rejects when the statistic exceeds them.
double ks_critical_two_sample(std::size_t n1, std::size_t n2, double alpha);
double ks_critical_one_sample(std::size_t n, double alpha);

struct SampleStats {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;   // unbiased
    double std_error = 0.0;  // of the mean
};

SampleStats summarize(const std::vector<double>& sample);

}  // namespace fpplab
