#include "fpplab/branching.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "fpplab/errors.hpp"
#include "fpplab/rng.hpp"

namespace fpplab {
namespace {

// Inverse-CDF sampler over a finite pmf, support in ascending order.
class PmfSampler {
public:
    explicit PmfSampler(const std::map<int, double>& pmf) {
        double total = 0.0;
        for (const auto& [r, pr] : pmf) {
            total += pr;
            support_.push_back(r);
            cumulative_.push_back(total);
        }
        total_ = total;
    }

    int draw(Rng& rng) const {
        const double u = rng.uniform01() * total_;
        const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
        const std::size_t idx = std::min<std::size_t>(
            static_cast<std::size_t>(it - cumulative_.begin()), support_.size() - 1);
        return support_[idx];
    }

private:
    std::vector<int> support_;
    std::vector<double> cumulative_;
    double total_ = 0.0;
};

}  // namespace

BranchingTrace simulate_branching(const DegreeDistribution& p, const SizeBiasedDistribution& q,
                                  std::int64_t target_pop, std::uint64_t seed) {
    if (p.support_min() < 3)
        throw TheoremScopeError("branching process needs minimum degree 3");
    if (target_pop < 1) throw ConfigError("target population must be positive");
    if (target_pop > kMaxTargetPopulation)
        throw ConfigError("target population exceeds cap " +
                          std::to_string(kMaxTargetPopulation));

    const PmfSampler root_sampler(p.pmf());
    const PmfSampler offspring_sampler(q.pmf());
    Rng rng(seed);

    BranchingTrace trace;
    trace.root_degree = root_sampler.draw(rng);

    std::int64_t population = trace.root_degree;
    double now = 0.0;
    std::size_t step = 0;
    trace.split_times.push_back(now);
    trace.populations.push_back(population);

    while (population < target_pop) {
        const double e = rng.exponential(1.0);
        now += e / static_cast<double>(population);
        population += offspring_sampler.draw(rng) - 1;
        ++step;
        if (step <= BranchingTrace::kDenseSteps) {
            trace.exp_draws.push_back(e);
            trace.split_times.push_back(now);
            trace.populations.push_back(population);
        } else if (step % BranchingTrace::kCheckpointStride == 0) {
            trace.checkpoint_times.push_back(now);
            trace.checkpoint_populations.push_back(population);
        }
    }

    trace.total_steps = step;
    trace.final_split_time = now;
    trace.final_population = population;
    return trace;
}

std::int64_t population_at_time(const BranchingTrace& trace, double t) {
    if (t < 0.0) throw ConfigError("time must be nonnegative");
    if (t >= trace.final_split_time) return trace.final_population;

    if (!trace.checkpoint_times.empty() && t >= trace.checkpoint_times.front()) {
        const auto it = std::upper_bound(trace.checkpoint_times.begin(),
                                         trace.checkpoint_times.end(), t);
        if (it != trace.checkpoint_times.begin()) {
            const std::size_t idx = static_cast<std::size_t>(it - trace.checkpoint_times.begin());
            return trace.checkpoint_populations[idx - 1];
        }
    }

    const auto it =
        std::upper_bound(trace.split_times.begin(), trace.split_times.end(), t);
    const std::size_t idx = static_cast<std::size_t>(it - trace.split_times.begin());
    return trace.populations[idx - 1];  // T_0 = 0 <= t, so idx >= 1
}

void write_branching_csv(std::ostream& out, const BranchingTrace& trace) {
    out << "i,T_i,Sigma_i\n";
    char buf[64];
    for (std::size_t i = 0; i < trace.split_times.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", trace.split_times[i]);
        out << i << ',' << buf << ',' << trace.populations[i] << '\n';
    }
}

}  // namespace fpplab
