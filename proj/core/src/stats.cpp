#include "fpplab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "fpplab/errors.hpp"

namespace fpplab {

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw ConfigError("empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double best = 0.0;
    while (ia < a.size() && ib < b.size()) {
        // Advance past ties together so the gap is evaluated between jumps.
        const double x = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] == x) ++ia;
        while (ib < b.size() && b[ib] == x) ++ib;
        best = std::max(best, std::abs(static_cast<double>(ia) / na -
                                       static_cast<double>(ib) / nb));
    }
    return best;
}

double ks_statistic_uniform(std::vector<double> u) {
    if (u.empty()) throw ConfigError("empty sample");
    std::sort(u.begin(), u.end());
    const double n = static_cast<double>(u.size());
    double best = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        best = std::max(best, (static_cast<double>(i) + 1.0) / n - u[i]);
        best = std::max(best, u[i] - static_cast<double>(i) / n);
    }
    return best;
}

namespace {
double ks_c(double alpha) { return std::sqrt(-0.5 * std::log(alpha / 2.0)); }
}  // namespace

double ks_critical_two_sample(std::size_t n1, std::size_t n2, double alpha) {
    const double m = static_cast<double>(n1) * static_cast<double>(n2) /
                     static_cast<double>(n1 + n2);
    return ks_c(alpha) / std::sqrt(m);
}

double ks_critical_one_sample(std::size_t n, double alpha) {
    return ks_c(alpha) / std::sqrt(static_cast<double>(n));
}

SampleStats summarize(const std::vector<double>& sample) {
    SampleStats out;
    out.count = sample.size();
    if (sample.empty()) return out;
    double sum = 0.0;
    for (double x : sample) sum += x;
    out.mean = sum / static_cast<double>(sample.size());
    if (sample.size() > 1) {
        double ss = 0.0;
        for (double x : sample) ss += (x - out.mean) * (x - out.mean);
        out.variance = ss / static_cast<double>(sample.size() - 1);
        out.std_error = std::sqrt(out.variance / static_cast<double>(sample.size()));
    }
    return out;
}

}  // namespace fpplab
