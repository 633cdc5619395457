#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fpplab/degree_model.hpp"

namespace fpplab {

// Continuous-time Markov branching process observed at its split times.
// The population starts at a root degree D drawn from p; split i replaces
// one particle by an offspring draw from q, so
//
//   Sigma_i = D + Dhat_1 + ... + Dhat_i - i,
//   T_i     = T_{i-1} + E_{i-1} / Sigma_{i-1},   E_j i.i.d. Exp(1), T_0 = 0.
//
// The dense arrays hold the first kDenseSteps steps; past that the trace
// keeps every kCheckpointStride-th step plus the final state, which bounds
// memory on long runs.
struct BranchingTrace {
    static constexpr std::size_t kDenseSteps = 100000;
    static constexpr std::size_t kCheckpointStride = 64;

    int root_degree = 0;
    std::vector<double> split_times;       // T_0 = 0, T_1, ...
    std::vector<std::int64_t> populations; // Sigma_0 = D, Sigma_1, ...
    std::vector<double> exp_draws;         // E_0, E_1, ... (dense prefix only)
    std::vector<double> checkpoint_times;
    std::vector<std::int64_t> checkpoint_populations;

    std::size_t total_steps = 0;
    double final_split_time = 0.0;
    std::int64_t final_population = 0;
};

inline constexpr std::int64_t kMaxTargetPopulation = 10000000;

// Runs until the population reaches target_pop. Requires support_min >= 3 so
// every offspring draw is at least 2 and the population never shrinks.
BranchingTrace simulate_branching(const DegreeDistribution& p, const SizeBiasedDistribution& q,
                                  std::int64_t target_pop, std::uint64_t seed);

// Population alive at time t: Sigma_i for the largest recorded i with
// T_i <= t. Within the dense prefix this is exact; in the checkpointed tail
// it is the value at the latest stored split not after t.
std::int64_t population_at_time(const BranchingTrace& trace, double t);

// CSV "i,T_i,Sigma_i" over the dense prefix.
void write_branching_csv(std::ostream& out, const BranchingTrace& trace);

}  // namespace fpplab
