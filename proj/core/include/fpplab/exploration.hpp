#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fpplab/config_graph.hpp"
#include "fpplab/degree_model.hpp"

namespace fpplab {

// Per-step record of the continuous-time ball-growing process. Step i adds
// the i-th vertex after the source; the companion arrays are indexed i-1.
//
//   shat_i = d_a + dhat_1 + ... + dhat_i - i   (upper process, recurrence)
//   s_i    = live list size |L| after step i
//   x_i    = tree excess of the explored ball
//
// s_i == shat_i - 2*x_i holds exactly for every i up to the exhaustion index
// i*; past i* the list is empty and s is 0 by convention.
struct ExplorationTrace {
    std::uint32_t source = 0;
    std::uint32_t source_degree = 0;

    // State after revealing the matchings internal to the source.
    std::int64_t s0 = 0;
    std::int64_t x0 = 0;

    std::vector<double> tau;        // absolute time of step i, strictly increasing
    std::vector<std::uint32_t> dhat;
    std::vector<std::int64_t> shat;
    std::vector<std::int64_t> s;
    std::vector<std::int64_t> x;

    // First i with s_i == 0 (0 when the source's half-edges pair among
    // themselves); empty if the run stopped at max_steps with a live list.
    std::optional<std::size_t> i_star;

    // Revealed ball, in discovery order. ball_vertices starts at the source;
    // ball_edges holds every revealed edge including self-loops. edge_count
    // gives the ball_edges prefix length after each step (edge_count0 after
    // the initial reveal), so the tree excess can be recomputed from the
    // edge set alone.
    std::vector<std::uint32_t> ball_vertices;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ball_edges;
    std::size_t edge_count0 = 0;
    std::vector<std::size_t> edge_count;

    std::size_t steps() const { return tau.size(); }
};

// Runs the exploration on a fresh lazy uniform matching of the half-edges of
// seq: waits Exp(list size), fires a uniform list half-edge, matches it to a
// uniform unmatched half-edge outside the list, then resolves each further
// half-edge of the new vertex into the list or against it with probability
// list/(unmatched-1). Stops at list exhaustion or after max_steps.
ExplorationTrace explore(const DegreeSequence& seq, std::uint32_t source,
                         std::size_t max_steps, std::uint64_t seed);

struct BuiltGraph {
    ExplorationTrace trace;
    Multigraph graph;
};

// Runs to exhaustion and completes the remaining half-edges with a uniform
// matching, so the returned multigraph is a full configuration-model sample
// whose degree array equals seq.
BuiltGraph explore_and_build(const DegreeSequence& seq, std::uint32_t source,
                             std::uint64_t seed);

struct FixedExploration {
    ExplorationTrace trace;
    // Edge weights constructed from the clock of the process; i.i.d. Exp(1)
    // in law, and single-source shortest distances under them reproduce the
    // arrival times below.
    std::vector<double> weights;
    std::vector<double> arrival;  // kUnreachable-style +inf where never reached
};

// Same process run against an already-paired multigraph: firing a list
// half-edge reveals its predetermined partner instead of sampling one.
FixedExploration explore_fixed(const Multigraph& g, std::uint32_t source,
                               std::size_t max_steps, std::uint64_t seed);

// T_a(k): first time the ball holds k vertices. T_a(1) = 0, T_a(k) = tau_{k-1}.
double hitting_time(const ExplorationTrace& trace, std::size_t k);

struct GrowthConstants {
    double alpha;  // log^3 n
    double beta;   // 3 sqrt(lambda/(nu-1) * n log n)
};

GrowthConstants growth_constants(double n, const DegreeDistribution& p);

struct EventFrequencies {
    double r = 0.0;        // fraction with s_k >= d_min + (d_min-2)k for all k <= window
    double r_prime = 0.0;  // fraction with s_k >= 1 + (d_min-2)k for all k <= window
};

EventFrequencies event_frequencies(std::span<const ExplorationTrace> traces, int d_min,
                                   std::size_t window);

// CSV "step,tau,dhat,Shat,S,X".
void write_trace_csv(std::ostream& out, const ExplorationTrace& trace);

}  // namespace fpplab
