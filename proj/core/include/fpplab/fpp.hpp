#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "fpplab/config_graph.hpp"

namespace fpplab {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();
inline constexpr std::uint32_t kNoVertex = std::numeric_limits<std::uint32_t>::max();

struct WeightedGraph {
    Multigraph base;
    std::vector<double> weights;  // one positive weight per edge, in time units
    double rate = 1.0;            // exponential rate used at assignment
};

// i.i.d. exponential weights with the given rate, sampled as -ln(U)/rate.
WeightedGraph assign_weights(Multigraph g, double rate, std::uint64_t seed);

struct DistanceProfile {
    std::uint32_t source = 0;
    std::vector<double> dist;       // kUnreachable where no path exists
    std::vector<std::uint32_t> parent;  // predecessor on a shortest path, kNoVertex at source

    bool reachable(std::uint32_t v) const { return dist[v] != kUnreachable; }
};

// Exact single-source weighted shortest distances (label-setting with a
// binary heap; ties broken by vertex index).
DistanceProfile shortest_weighted_distances(const WeightedGraph& wg, std::uint32_t source);

// Max distance from the source; throws DisconnectedGraphError naming an
// unreachable vertex.
double flood_time(const WeightedGraph& wg, std::uint32_t source);

// Max distance over all ordered pairs, via n single-source runs. Sources fan
// out over `threads` workers when threads > 1.
double weighted_diameter(const WeightedGraph& wg, unsigned threads = 1);

struct HopProfile {
    std::uint32_t source = 0;
    std::vector<std::int64_t> hops;  // -1 where unreachable
};

HopProfile hop_distances(const Multigraph& g, std::uint32_t source);
std::int64_t hop_diameter(const Multigraph& g, unsigned threads = 1);

// Number of minimum-degree vertices all of whose incident edge weights
// exceed the threshold.
std::int64_t count_bad_vertices(const WeightedGraph& wg, double threshold);

// Distances in ascending order; element k-1 is the time at which the source
// ball reaches size k.
std::vector<double> sorted_distances(const DistanceProfile& profile);

// CSV "source,vertex,dist".
void write_distance_csv(std::ostream& out, const DistanceProfile& profile);

// Edge list with a third weight column, 17 significant digits.
void write_weighted_edge_list(std::ostream& out, const WeightedGraph& wg);
WeightedGraph read_weighted_edge_list(std::istream& in);

}  // namespace fpplab
