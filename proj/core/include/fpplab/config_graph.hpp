#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "fpplab/degree_model.hpp"

namespace fpplab {

// Multigraph stored as an edge list plus CSR adjacency. Self-loops are kept
// once in the edge list and contribute two adjacency slots (and 2 to the
// degree) at their endpoint. Immutable once built; safe to share across
// threads.
struct Multigraph {
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

    std::vector<std::uint32_t> adj_offset;  // size n+1
    std::vector<std::uint32_t> adj_vertex;  // 2*edges slots
    std::vector<std::uint32_t> adj_edge;    // edge id per slot

    static Multigraph from_edges(std::uint32_t n,
                                 std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

    std::uint32_t degree(std::uint32_t v) const { return adj_offset[v + 1] - adj_offset[v]; }
    std::uint64_t edge_count() const { return edges.size(); }
    std::vector<std::uint32_t> degree_array() const;
};

// Uniform random matching of the half-edges: a seeded shuffle of the stub
// array followed by consecutive pairing, O(m). Throws ParityError on odd
// total degree.
Multigraph pair_half_edges(const DegreeSequence& seq, std::uint64_t seed);

// True iff the graph has no self-loops and no repeated edges.
bool is_simple(const Multigraph& g);

struct SimpleSample {
    Multigraph graph;
    int attempts = 0;
};

// Rejection sampling: re-pairs the whole matching until the result is simple,
// which makes the output uniform over simple graphs with this degree
// sequence. Throws RejectionFailureError after max_attempts failures.
SimpleSample sample_simple(const DegreeSequence& seq, std::uint64_t seed,
                           int max_attempts = 1000);

// Vertex sets of the connected components, discovered by breadth-first
// traversal from the lowest unvisited vertex.
std::vector<std::vector<std::uint32_t>> connected_components(const Multigraph& g);

bool is_connected(const Multigraph& g);

// Plain text edge list: header "n m", then one "u v" line per edge,
// 0-indexed, self-loops written as "u u".
void write_edge_list(std::ostream& out, const Multigraph& g);
Multigraph read_edge_list(std::istream& in);

}  // namespace fpplab
