#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fpplab/config_graph.hpp"
#include "fpplab/fpp.hpp"

namespace fpplab {

struct Transmission {
    double time = 0.0;
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    bool newly_informed = false;
};

struct BroadcastTrace {
    std::uint32_t source = 0;
    // Inform time per vertex: clock time for the asynchronous models,
    // whole round numbers for the synchronized one. 0 at the source.
    std::vector<double> inform_time;
    std::vector<Transmission> log;  // filled only when requested

    double completion() const;  // max inform time (ABT / rounds)
};

// Asynchronous push: informed nodes tick at rate 1 and push to a uniformly
// chosen neighbor slot regardless of its state. Only informed nodes' clocks
// are simulated; uninformed clocks are irrelevant by memorylessness.
// Throws DisconnectedGraphError when some vertex can never be informed.
BroadcastTrace async_push(const Multigraph& g, std::uint32_t source, std::uint64_t seed,
                          bool record_log = false);

// Equivalent-in-law construction for r-regular graphs: i.i.d. exponential
// weights with mean r on the edges, inform times = weighted distances from
// the source. Throws RegularityError when the graph is not regular.
BroadcastTrace coupled_async(const Multigraph& g, std::uint32_t source, std::uint64_t seed);

// Synchronized push: in each round every node informed at the round start
// pushes to one uniformly chosen neighbor slot.
BroadcastTrace sync_push(const Multigraph& g, std::uint32_t source, std::uint64_t seed,
                         bool record_log = false);

// Synchronized push on the complete graph K_n without materializing it;
// sanity baseline for the log2(n) + ln(n) round count.
std::int64_t sync_rounds_complete_graph(std::uint32_t n, std::uint32_t source,
                                        std::uint64_t seed);

// Prefactors of log n for broadcast completion on random r-regular graphs.
struct BroadcastConstants {
    double async_prefactor;  // 2(r-1)/(r-2)
    double sync_prefactor;   // 1/log(2(1-1/r)) - 1/(r log(1-1/r))
    double sync_lower;       // 1/log(2-1/r)   - 1/(r log(1-1/r))
};

BroadcastConstants broadcast_constants(int r);

// CSV "time,from,to,newly_informed" from a recorded log.
void write_broadcast_csv(std::ostream& out, const BroadcastTrace& trace);

// One summary line "n,r,seed,metric,value" (r = -1 when not regular).
void write_broadcast_summary(std::ostream& out, const Multigraph& g, std::uint64_t seed,
                             const std::string& metric, double value);

}  // namespace fpplab
