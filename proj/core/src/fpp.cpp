#include "fpplab/fpp.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <istream>
#include <ostream>
#include <queue>
#include <string>
#include <thread>

#include "fpplab/errors.hpp"
#include "fpplab/rng.hpp"

namespace fpplab {
namespace {

using HeapItem = std::pair<double, std::uint32_t>;
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>>;

// Shared by the single-source entry point and the diameter fan-out so the
// latter can reuse its distance buffer across sources.
void dijkstra_into(const WeightedGraph& wg, std::uint32_t source, std::vector<double>& dist,
                   std::vector<std::uint32_t>* parent) {
    const Multigraph& g = wg.base;
    dist.assign(g.n, kUnreachable);
    if (parent) parent->assign(g.n, kNoVertex);
    MinHeap heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;  // stale entry
        for (std::uint32_t s = g.adj_offset[u]; s < g.adj_offset[u + 1]; ++s) {
            const std::uint32_t v = g.adj_vertex[s];
            if (v == u) continue;  // self-loop relaxation is a no-op
            const double cand = d + wg.weights[g.adj_edge[s]];
            if (cand < dist[v]) {
                dist[v] = cand;
                if (parent) (*parent)[v] = u;
                heap.emplace(cand, v);
            }
        }
    }
}

std::uint32_t first_unreachable(const std::vector<double>& dist) {
    for (std::uint32_t v = 0; v < dist.size(); ++v)
        if (dist[v] == kUnreachable) return v;
    return kNoVertex;
}

unsigned clamp_threads(unsigned threads, std::size_t work_items) {
    if (threads == 0) threads = 1;
    return static_cast<unsigned>(std::min<std::size_t>(threads, work_items));
}

}  // namespace

WeightedGraph assign_weights(Multigraph g, double rate, std::uint64_t seed) {
    if (!(rate > 0.0)) throw ConfigError("exponential rate must be positive");
    Rng rng(seed);
    std::vector<double> weights(g.edges.size());
    for (double& w : weights) w = rng.exponential(rate);
    return WeightedGraph{std::move(g), std::move(weights), rate};
}

DistanceProfile shortest_weighted_distances(const WeightedGraph& wg, std::uint32_t source) {
    if (source >= wg.base.n) throw ConfigError("source vertex out of range");
    DistanceProfile profile;
    profile.source = source;
    dijkstra_into(wg, source, profile.dist, &profile.parent);
    return profile;
}

double flood_time(const WeightedGraph& wg, std::uint32_t source) {
    std::vector<double> dist;
    dijkstra_into(wg, source, dist, nullptr);
    const std::uint32_t bad = first_unreachable(dist);
    if (bad != kNoVertex)
        throw DisconnectedGraphError("vertex " + std::to_string(bad) +
                                         " unreachable from source " + std::to_string(source),
                                     bad);
    return *std::max_element(dist.begin(), dist.end());
}

double weighted_diameter(const WeightedGraph& wg, unsigned threads) {
    const std::uint32_t n = wg.base.n;
    if (n == 0) throw ConfigError("empty graph");
    threads = clamp_threads(threads, n);

    std::atomic<std::uint32_t> next{0};
    std::vector<double> partial(threads, 0.0);
    std::vector<std::uint32_t> unreachable(threads, kNoVertex);

    auto worker = [&](unsigned tid) {
        std::vector<double> dist;
        double best = 0.0;
        for (;;) {
            const std::uint32_t source = next.fetch_add(1);
            if (source >= n) break;
            dijkstra_into(wg, source, dist, nullptr);
            const std::uint32_t bad = first_unreachable(dist);
            if (bad != kNoVertex) {
                unreachable[tid] = bad;
                break;
            }
            best = std::max(best, *std::max_element(dist.begin(), dist.end()));
        }
        partial[tid] = best;
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
    }
    for (std::uint32_t bad : unreachable)
        if (bad != kNoVertex)
            throw DisconnectedGraphError("vertex " + std::to_string(bad) + " unreachable", bad);
    return *std::max_element(partial.begin(), partial.end());
}

HopProfile hop_distances(const Multigraph& g, std::uint32_t source) {
    if (source >= g.n) throw ConfigError("source vertex out of range");
    HopProfile profile;
    profile.source = source;
    profile.hops.assign(g.n, -1);
    profile.hops[source] = 0;
    std::vector<std::uint32_t> frontier{source}, next_frontier;
    std::int64_t depth = 0;
    while (!frontier.empty()) {
        ++depth;
        next_frontier.clear();
        for (std::uint32_t u : frontier) {
            for (std::uint32_t s = g.adj_offset[u]; s < g.adj_offset[u + 1]; ++s) {
                const std::uint32_t v = g.adj_vertex[s];
                if (profile.hops[v] < 0) {
                    profile.hops[v] = depth;
                    next_frontier.push_back(v);
                }
            }
        }
        frontier.swap(next_frontier);
    }
    return profile;
}

std::int64_t hop_diameter(const Multigraph& g, unsigned threads) {
    if (g.n == 0) throw ConfigError("empty graph");
    threads = clamp_threads(threads, g.n);

    std::atomic<std::uint32_t> next{0};
    std::vector<std::int64_t> partial(threads, 0);
    std::vector<std::uint32_t> unreachable(threads, kNoVertex);

    auto worker = [&](unsigned tid) {
        std::int64_t best = 0;
        for (;;) {
            const std::uint32_t source = next.fetch_add(1);
            if (source >= g.n) break;
            const HopProfile profile = hop_distances(g, source);
            for (std::uint32_t v = 0; v < g.n; ++v) {
                if (profile.hops[v] < 0) {
                    unreachable[tid] = v;
                    break;
                }
                best = std::max(best, profile.hops[v]);
            }
            if (unreachable[tid] != kNoVertex) break;
        }
        partial[tid] = best;
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
    }
    for (std::uint32_t bad : unreachable)
        if (bad != kNoVertex)
            throw DisconnectedGraphError("vertex " + std::to_string(bad) + " unreachable", bad);
    return *std::max_element(partial.begin(), partial.end());
}

std::int64_t count_bad_vertices(const WeightedGraph& wg, double threshold) {
    const Multigraph& g = wg.base;
    if (g.n == 0) return 0;
    std::uint32_t d_min = g.degree(0);
    for (std::uint32_t v = 1; v < g.n; ++v) d_min = std::min(d_min, g.degree(v));

    std::int64_t count = 0;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        if (g.degree(v) != d_min) continue;
        bool all_above = true;
        for (std::uint32_t s = g.adj_offset[v]; s < g.adj_offset[v + 1] && all_above; ++s)
            all_above = wg.weights[g.adj_edge[s]] > threshold;
        if (all_above) ++count;
    }
    return count;
}

std::vector<double> sorted_distances(const DistanceProfile& profile) {
    std::vector<double> out;
    out.reserve(profile.dist.size());
    for (double d : profile.dist)
        if (d != kUnreachable) out.push_back(d);
    std::sort(out.begin(), out.end());
    return out;
}

void write_distance_csv(std::ostream& out, const DistanceProfile& profile) {
    out << "source,vertex,dist\n";
    char buf[64];
    for (std::uint32_t v = 0; v < profile.dist.size(); ++v) {
        if (profile.reachable(v))
            std::snprintf(buf, sizeof(buf), "%.17g", profile.dist[v]);
        else
            std::snprintf(buf, sizeof(buf), "inf");
        out << profile.source << ',' << v << ',' << buf << '\n';
    }
}

void write_weighted_edge_list(std::ostream& out, const WeightedGraph& wg) {
    out << wg.base.n << ' ' << wg.base.edges.size() << '\n';
    char buf[64];
    for (std::size_t e = 0; e < wg.base.edges.size(); ++e) {
        std::snprintf(buf, sizeof(buf), "%.17g", wg.weights[e]);
        out << wg.base.edges[e].first << ' ' << wg.base.edges[e].second << ' ' << buf << '\n';
    }
}

WeightedGraph read_weighted_edge_list(std::istream& in) {
    std::uint32_t n = 0;
    std::uint64_t m = 0;
    if (!(in >> n >> m)) throw ConfigError("weighted edge list: missing 'n m' header");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<double> weights;
    edges.reserve(m);
    weights.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint32_t u, v;
        double w;
        if (!(in >> u >> v >> w)) throw ConfigError("weighted edge list: truncated");
        if (!(w > 0.0)) throw ConfigError("weights must be positive");
        edges.emplace_back(u, v);
        weights.push_back(w);
    }
    return WeightedGraph{Multigraph::from_edges(n, std::move(edges)), std::move(weights), 0.0};
}

}  // namespace fpplab
