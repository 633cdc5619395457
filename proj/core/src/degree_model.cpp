#include "fpplab/degree_model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "fpplab/errors.hpp"
#include "fpplab/rng.hpp"

namespace fpplab {

DegreeDistribution::DegreeDistribution(std::map<int, double> pmf) {
    double sum = 0.0;
    for (auto it = pmf.begin(); it != pmf.end();) {
        if (it->first < 0) throw ConfigError("negative degree in distribution");
        if (it->second < 0.0) throw ConfigError("negative probability in distribution");
        if (it->second == 0.0) {
            it = pmf.erase(it);
            continue;
        }
        sum += it->second;
        ++it;
    }
    if (pmf.empty()) throw ConfigError("empty degree distribution");
    if (std::abs(sum - 1.0) > kProbabilityTolerance)
        throw ConfigError("degree probabilities sum to " + std::to_string(sum) + ", not 1");
    double mean = 0.0;
    for (const auto& [r, p] : pmf) mean += static_cast<double>(r) * p;
    if (!(mean > 0.0) || !std::isfinite(mean))
        throw DegenerateDistributionError("degree distribution has mean zero");
    pmf_ = std::move(pmf);
    lambda_ = mean;
    support_min_ = pmf_.begin()->first;
}

DegreeDistribution DegreeDistribution::regular(int r) {
    return DegreeDistribution({{r, 1.0}});
}

double DegreeDistribution::probability(int r) const {
    auto it = pmf_.find(r);
    return it == pmf_.end() ? 0.0 : it->second;
}

DegreeDistribution DegreeDistribution::parse(std::istream& in) {
    std::map<int, double> pmf;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "regular") {
            int r;
            if (!(ls >> r)) throw ConfigError("'regular' requires a degree");
            pmf[r] += 1.0;
            continue;
        }
        int r;
        double p;
        try {
            r = std::stoi(first);
        } catch (const std::exception&) {
            throw ConfigError("bad degree token '" + first + "'");
        }
        if (!(ls >> p)) throw ConfigError("missing probability for degree " + first);
        pmf[r] += p;
    }
    return DegreeDistribution(std::move(pmf));
}

DegreeDistribution DegreeDistribution::parse_compact(const std::string& text) {
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    std::string tok;
    std::map<int, double> pmf;
    while (in >> tok) {
        if (tok == "regular") {
            int r;
            if (!(in >> r)) throw ConfigError("'regular' requires a degree");
            pmf[r] += 1.0;
            continue;
        }
        auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw ConfigError("expected 'degree:probability', got '" + tok + "'");
        try {
            pmf[std::stoi(tok.substr(0, colon))] += std::stod(tok.substr(colon + 1));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("bad distribution token '" + tok + "'");
        }
    }
    return DegreeDistribution(std::move(pmf));
}

SizeBiasedDistribution::SizeBiasedDistribution(std::map<int, double> pmf, double nu)
    : pmf_(std::move(pmf)), nu_(nu) {}

double SizeBiasedDistribution::probability(int r) const {
    auto it = pmf_.find(r);
    return it == pmf_.end() ? 0.0 : it->second;
}

SizeBiasedDistribution size_biased(const DegreeDistribution& p) {
    std::map<int, double> q;
    double nu = 0.0;
    for (const auto& [r, pr] : p.pmf()) {
        if (r == 0) continue;  // degree-0 vertices own no half-edges
        double qr = static_cast<double>(r) * pr / p.lambda();
        q[r - 1] = qr;
        nu += static_cast<double>(r - 1) * qr;
    }
    return SizeBiasedDistribution(std::move(q), nu);
}

TheoreticalConstants theoretical_constants(const DegreeDistribution& p) {
    if (p.support_min() < 3)
        throw TheoremScopeError("minimum degree " + std::to_string(p.support_min()) +
                                " is below 3; constants are not defined");
    const double nu = size_biased(p).nu();
    if (!(nu > 1.0)) throw TheoremScopeError("offspring mean must exceed 1");
    const double d_min = p.support_min();
    TheoreticalConstants c;
    c.typical = 1.0 / (nu - 1.0);
    c.flood = c.typical + 1.0 / d_min;
    c.diam = c.typical + 2.0 / d_min;
    c.unweighted = 1.0 / std::log(nu);
    return c;
}

DegreeSequence make_degree_sequence(std::vector<std::uint32_t> degrees) {
    if (degrees.empty()) throw ConfigError("empty degree sequence");
    DegreeSequence seq;
    seq.degrees = std::move(degrees);
    seq.d_min = seq.degrees.front();
    for (std::uint32_t d : seq.degrees) {
        seq.total_degree += d;
        seq.d_min = std::min(seq.d_min, d);
        seq.delta_max = std::max(seq.delta_max, d);
    }
    if (seq.total_degree % 2 != 0)
        throw ParityError("total degree " + std::to_string(seq.total_degree) + " is odd");
    return seq;
}

DegreeSequence sample_degree_sequence(const DegreeDistribution& p, std::uint32_t n,
                                      std::uint64_t seed) {
    if (n < 2) throw ConfigError("need at least 2 vertices");
    const auto cap =
        static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(n), 0.4)));

    // Inverse CDF over the capped support.
    std::vector<int> support;
    std::vector<double> cumulative;
    double total = 0.0;
    for (const auto& [r, pr] : p.pmf()) {
        if (static_cast<std::uint64_t>(r) > cap) continue;
        total += pr;
        support.push_back(r);
        cumulative.push_back(total);
    }
    if (support.empty())
        throw ConfigError("degree cap " + std::to_string(cap) + " leaves no support");

    Rng rng(seed);
    std::vector<std::uint32_t> degrees(n);
    std::uint64_t sum = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        const double u = rng.uniform01() * total;
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t idx =
            std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                  support.size() - 1);
        degrees[i] = static_cast<std::uint32_t>(support[idx]);
        sum += degrees[i];
    }
    if (sum % 2 != 0) degrees[rng.below(n)] += 1;
    return make_degree_sequence(std::move(degrees));
}

}  // namespace fpplab
