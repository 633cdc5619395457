#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fpplab {

inline constexpr double kProbabilityTolerance = 1e-12;

// Degree probability mass function together with its mean. Immutable after
// construction; construction validates normalization.
class DegreeDistribution {
public:
    // pmf maps degree r >= 0 to p_r. Probabilities must be nonnegative and
    // sum to 1 within kProbabilityTolerance; zero entries are dropped.
    explicit DegreeDistribution(std::map<int, double> pmf);

    static DegreeDistribution regular(int r);

    // Text format: one "r probability" pair per line, or a single
    // "regular r" shorthand line. Blank lines and '#' comments are skipped.
    static DegreeDistribution parse(std::istream& in);

    // Compact one-line form used on the command line and in sweep configs:
    // "regular 3" or "3:0.5,4:0.5".
    static DegreeDistribution parse_compact(const std::string& text);

    const std::map<int, double>& pmf() const { return pmf_; }
    double probability(int r) const;
    double lambda() const { return lambda_; }
    int support_min() const { return support_min_; }

    // True when the minimum-degree condition the flooding/diameter laws
    // require (d_min >= 3) holds for this distribution.
    bool flooding_valid() const { return support_min_ >= 3; }

private:
    std::map<int, double> pmf_;
    double lambda_ = 0.0;
    int support_min_ = 0;
};

// Size-biased offspring law: q_r = (r+1) p_{r+1} / lambda, with mean nu.
class SizeBiasedDistribution {
public:
    SizeBiasedDistribution(std::map<int, double> pmf, double nu);

    const std::map<int, double>& pmf() const { return pmf_; }
    double probability(int r) const;
    double nu() const { return nu_; }

private:
    std::map<int, double> pmf_;
    double nu_ = 0.0;
};

SizeBiasedDistribution size_biased(const DegreeDistribution& p);

// Dimensionless prefactors of log n for the four asymptotic laws.
struct TheoreticalConstants {
    double typical;     // 1/(nu-1): typical weighted distance
    double flood;       // 1/(nu-1) + 1/d_min: weighted flooding time
    double diam;        // 1/(nu-1) + 2/d_min: weighted diameter
    double unweighted;  // 1/log(nu): hop distance and hop diameter
};

// Requires support_min >= 3 and nu > 1; throws TheoremScopeError otherwise.
TheoreticalConstants theoretical_constants(const DegreeDistribution& p);

struct DegreeSequence {
    std::vector<std::uint32_t> degrees;
    std::uint64_t total_degree = 0;  // m, always even
    std::uint32_t d_min = 0;
    std::uint32_t delta_max = 0;

    std::uint32_t n() const { return static_cast<std::uint32_t>(degrees.size()); }
    bool flooding_valid() const { return d_min >= 3; }
};

// Fills the derived fields; throws ParityError when the total degree is odd.
DegreeSequence make_degree_sequence(std::vector<std::uint32_t> degrees);

// Draws n degrees i.i.d. from p by inverse CDF on the support truncated at
// ceil(n^0.4) (larger degrees are resampled, i.e. the law is conditioned on
// the cap). If the total is odd, one uniformly chosen vertex has its degree
// incremented by 1; this keeps d_min intact and perturbs the empirical
// distribution by O(1/n). Pure function of (p, n, seed).
DegreeSequence sample_degree_sequence(const DegreeDistribution& p, std::uint32_t n,
                                      std::uint64_t seed);

}  // namespace fpplab
