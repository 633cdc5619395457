#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fpplab/degree_model.hpp"

namespace fpplab {

enum class ExperimentKind { flood, diam, hop_diam, abt, sync, branching };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_from_string(const std::string& name);

// Flat key=value sweep description, e.g.
//
//   experiment=flood
//   dist=regular 3
//   n=1024,4096,16384,65536
//   reps=200
//   seed=42
//
// Optional keys: graph=simple|multigraph (default simple), rate (default 1),
// max_attempts (default 1000). Unknown keys are rejected.
struct SweepConfig {
    ExperimentKind experiment = ExperimentKind::flood;
    DegreeDistribution dist;
    std::vector<std::uint32_t> n_grid;
    int replicates = 0;
    std::uint64_t base_seed = 0;
    bool simple_graph = true;
    double rate = 1.0;
    int max_attempts = 1000;

    SweepConfig() : dist(DegreeDistribution::regular(3)) {}

    static SweepConfig parse(std::istream& in);
};

struct ExperimentRecord {
    std::string experiment;
    std::uint32_t n = 0;
    int replicate = 0;
    std::uint64_t seed = 0;
    std::string metric;
    double value = 0.0;
    double duration_ms = 0.0;
};

// Runs replicates over the n-grid. Replicate seeds are
// mix_seed(base_seed, n, replicate), so any record can be reproduced in
// isolation. Records come back sorted by (n, replicate) regardless of
// worker completion order. threads = 0 picks a default; the FPPLAB_THREADS
// environment variable overrides any request.
std::vector<ExperimentRecord> run_sweep(const SweepConfig& config, unsigned threads = 0);

// One replicate of the sweep, exposed for reproducing single records.
ExperimentRecord run_replicate(const SweepConfig& config, std::uint32_t n, int replicate);

unsigned resolve_threads(unsigned requested);

// CSV "experiment,n,replicate,seed,metric,value,duration_ms".
void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_records_csv(std::istream& in);

enum class FitMethod { least_squares, pairwise_difference };

struct PrefactorFit {
    double slope = 0.0;
    double intercept = 0.0;
    double std_error = 0.0;
    FitMethod method = FitMethod::pairwise_difference;
};

// Estimates the slope of mean(metric) against log n. The pairwise-difference
// estimator averages (m2-m1)/(log n2 - log n1) over consecutive grid points,
// which cancels additive constants and is the default for slowly converging
// laws. Requires at least 3 distinct n values.
PrefactorFit fit_prefactor(const std::vector<ExperimentRecord>& records,
                           FitMethod method = FitMethod::pairwise_difference);

// Self-contained SVG of metric/log n against log n with an optional
// theoretical horizontal line.
void write_plot_svg(std::ostream& out, const std::vector<ExperimentRecord>& records,
                    std::optional<double> theoretical, const std::string& title);

}  // namespace fpplab
