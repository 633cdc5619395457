#include "fpplab/config_graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>

#include "fpplab/errors.hpp"
#include "fpplab/rng.hpp"

namespace fpplab {

Multigraph Multigraph::from_edges(
    std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
    Multigraph g;
    g.n = n;
    g.edges = std::move(edges);

    g.adj_offset.assign(n + 1, 0);
    for (const auto& [u, v] : g.edges) {
        if (u >= n || v >= n) throw ConfigError("edge endpoint out of range");
        g.adj_offset[u + 1] += 1;
        g.adj_offset[v + 1] += 1;
    }
    for (std::uint32_t v = 0; v < n; ++v) g.adj_offset[v + 1] += g.adj_offset[v];

    g.adj_vertex.resize(2 * g.edges.size());
    g.adj_edge.resize(2 * g.edges.size());
    std::vector<std::uint32_t> cursor(g.adj_offset.begin(), g.adj_offset.end() - 1);
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        const auto [u, v] = g.edges[e];
        g.adj_vertex[cursor[u]] = v;
        g.adj_edge[cursor[u]++] = e;
        g.adj_vertex[cursor[v]] = u;
        g.adj_edge[cursor[v]++] = e;
    }
    return g;
}

std::vector<std::uint32_t> Multigraph::degree_array() const {
    std::vector<std::uint32_t> deg(n);
    for (std::uint32_t v = 0; v < n; ++v) deg[v] = degree(v);
    return deg;
}

Multigraph pair_half_edges(const DegreeSequence& seq, std::uint64_t seed) {
    if (seq.total_degree % 2 != 0)
        throw ParityError("cannot match an odd number of half-edges");

    std::vector<std::uint32_t> stubs;
    stubs.reserve(seq.total_degree);
    for (std::uint32_t v = 0; v < seq.n(); ++v)
        stubs.insert(stubs.end(), seq.degrees[v], v);

    Rng rng(seed);
    for (std::size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[rng.below(i)]);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
        edges.emplace_back(std::min(stubs[i], stubs[i + 1]),
                           std::max(stubs[i], stubs[i + 1]));
    return Multigraph::from_edges(seq.n(), std::move(edges));
}

bool is_simple(const Multigraph& g) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(g.edges.size() * 2);
    for (const auto& [u, v] : g.edges) {
        if (u == v) return false;
        const std::uint64_t key = static_cast<std::uint64_t>(u) * g.n + v;
        if (!seen.insert(key).second) return false;
    }
    return true;
}

SimpleSample sample_simple(const DegreeSequence& seq, std::uint64_t seed, int max_attempts) {
    if (max_attempts < 1) throw ConfigError("max_attempts must be at least 1");
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        Multigraph g = pair_half_edges(seq, mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        if (is_simple(g)) return SimpleSample{std::move(g), attempt};
    }
    throw RejectionFailureError("no simple graph found in " + std::to_string(max_attempts) +
                                    " matchings",
                                max_attempts);
}

std::vector<std::vector<std::uint32_t>> connected_components(const Multigraph& g) {
    std::vector<std::vector<std::uint32_t>> components;
    std::vector<bool> visited(g.n, false);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t start = 0; start < g.n; ++start) {
        if (visited[start]) continue;
        visited[start] = true;
        queue.assign(1, start);
        std::vector<std::uint32_t> component;
        while (!queue.empty()) {
            const std::uint32_t u = queue.back();
            queue.pop_back();
            component.push_back(u);
            for (std::uint32_t s = g.adj_offset[u]; s < g.adj_offset[u + 1]; ++s) {
                const std::uint32_t w = g.adj_vertex[s];
                if (!visited[w]) {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    return components;
}

bool is_connected(const Multigraph& g) {
    if (g.n == 0) return true;
    return connected_components(g).size() == 1;
}

void write_edge_list(std::ostream& out, const Multigraph& g) {
    out << g.n << ' ' << g.edges.size() << '\n';
    for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

Multigraph read_edge_list(std::istream& in) {
    std::uint32_t n = 0;
    std::uint64_t m = 0;
    if (!(in >> n >> m)) throw ConfigError("edge list: missing 'n m' header");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint32_t u, v;
        if (!(in >> u >> v))
            throw ConfigError("edge list: expected " + std::to_string(m) + " edges, got " +
                              std::to_string(i));
        edges.emplace_back(u, v);
    }
    return Multigraph::from_edges(n, std::move(edges));
}

}  // namespace fpplab
