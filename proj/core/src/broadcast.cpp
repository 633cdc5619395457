#include "fpplab/broadcast.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <queue>
#include <string>

#include "fpplab/errors.hpp"
#include "fpplab/rng.hpp"

namespace fpplab {
namespace {

void require_reachable(const Multigraph& g, std::uint32_t source) {
    std::vector<bool> seen(g.n, false);
    seen[source] = true;
    std::vector<std::uint32_t> stack{source};
    std::uint32_t count = 1;
    while (!stack.empty()) {
        const std::uint32_t u = stack.back();
        stack.pop_back();
        for (std::uint32_t s = g.adj_offset[u]; s < g.adj_offset[u + 1]; ++s) {
            const std::uint32_t v = g.adj_vertex[s];
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                stack.push_back(v);
            }
        }
    }
    if (count == g.n) return;
    for (std::uint32_t v = 0; v < g.n; ++v)
        if (!seen[v])
            throw DisconnectedGraphError(
                "vertex " + std::to_string(v) + " can never be informed", v);
}

int regular_degree(const Multigraph& g) {
    if (g.n == 0) return -1;
    const std::uint32_t r = g.degree(0);
    for (std::uint32_t v = 1; v < g.n; ++v)
        if (g.degree(v) != r) return -1;
    return static_cast<int>(r);
}

}  // namespace

double BroadcastTrace::completion() const {
    return inform_time.empty() ? 0.0
                               : *std::max_element(inform_time.begin(), inform_time.end());
}

BroadcastTrace async_push(const Multigraph& g, std::uint32_t source, std::uint64_t seed,
                          bool record_log) {
    if (source >= g.n) throw ConfigError("source vertex out of range");
    require_reachable(g, source);

    Rng rng(seed);
    BroadcastTrace trace;
    trace.source = source;
    trace.inform_time.assign(g.n, 0.0);

    // (next tick, node) for informed nodes only; pair ordering breaks time
    // ties by node index.
    using Tick = std::pair<double, std::uint32_t>;
    std::priority_queue<Tick, std::vector<Tick>, std::greater<Tick>> clock;
    std::vector<bool> informed(g.n, false);
    informed[source] = true;
    std::uint32_t informed_count = 1;
    clock.emplace(rng.exponential(1.0), source);

    while (informed_count < g.n) {
        const auto [now, u] = clock.top();
        clock.pop();
        const std::uint32_t deg = g.degree(u);
        const std::uint32_t v = g.adj_vertex[g.adj_offset[u] + rng.below(deg)];
        const bool fresh = !informed[v];
        if (fresh) {
            informed[v] = true;
            trace.inform_time[v] = now;
            ++informed_count;
            clock.emplace(now + rng.exponential(1.0), v);
        }
        if (record_log) trace.log.push_back({now, u, v, fresh});
        clock.emplace(now + rng.exponential(1.0), u);
    }
    return trace;
}

BroadcastTrace coupled_async(const Multigraph& g, std::uint32_t source, std::uint64_t seed) {
    const int r = regular_degree(g);
    if (r <= 0) throw RegularityError("coupled broadcast requires a regular graph");
    require_reachable(g, source);

    const WeightedGraph wg = assign_weights(g, 1.0 / static_cast<double>(r), seed);
    DistanceProfile profile = shortest_weighted_distances(wg, source);

    BroadcastTrace trace;
    trace.source = source;
    trace.inform_time = std::move(profile.dist);
    return trace;
}

BroadcastTrace sync_push(const Multigraph& g, std::uint32_t source, std::uint64_t seed,
                         bool record_log) {
    if (source >= g.n) throw ConfigError("source vertex out of range");
    require_reachable(g, source);

    Rng rng(seed);
    BroadcastTrace trace;
    trace.source = source;
    trace.inform_time.assign(g.n, 0.0);

    std::vector<bool> informed(g.n, false);
    informed[source] = true;
    std::uint32_t informed_count = 1;
    std::vector<std::uint32_t> senders{source};

    double round = 0.0;
    while (informed_count < g.n) {
        round += 1.0;
        // All pushes in a round go out from the round-start informed set.
        for (const std::uint32_t u : senders) {
            const std::uint32_t v = g.adj_vertex[g.adj_offset[u] + rng.below(g.degree(u))];
            const bool fresh = !informed[v];
            if (fresh) {
                informed[v] = true;
                trace.inform_time[v] = round;
                ++informed_count;
            }
            if (record_log) trace.log.push_back({round, u, v, fresh});
        }
        senders.clear();
        for (std::uint32_t v = 0; v < g.n; ++v)
            if (informed[v]) senders.push_back(v);
    }
    return trace;
}

std::int64_t sync_rounds_complete_graph(std::uint32_t n, std::uint32_t source,
                                        std::uint64_t seed) {
    if (n < 2) throw ConfigError("need at least 2 vertices");
    if (source >= n) throw ConfigError("source vertex out of range");

    Rng rng(seed);
    std::vector<bool> informed(n, false);
    informed[source] = true;
    std::uint64_t informed_count = 1;
    std::vector<std::uint32_t> senders{source};
    std::int64_t rounds = 0;

    while (informed_count < n) {
        ++rounds;
        for (const std::uint32_t u : senders) {
            // Uniform over the n-1 non-u vertices.
            std::uint32_t v = static_cast<std::uint32_t>(rng.below(n - 1));
            if (v >= u) ++v;
            if (!informed[v]) {
                informed[v] = true;
                ++informed_count;
            }
        }
        senders.clear();
        for (std::uint32_t v = 0; v < n; ++v)
            if (informed[v]) senders.push_back(v);
    }
    return rounds;
}

BroadcastConstants broadcast_constants(int r) {
    if (r < 3) throw TheoremScopeError("broadcast constants require degree at least 3");
    const double rd = r;
    BroadcastConstants c;
    c.async_prefactor = 2.0 * (rd - 1.0) / (rd - 2.0);
    const double push_term = -1.0 / (rd * std::log(1.0 - 1.0 / rd));
    c.sync_prefactor = 1.0 / std::log(2.0 * (1.0 - 1.0 / rd)) + push_term;
    c.sync_lower = 1.0 / std::log(2.0 - 1.0 / rd) + push_term;
    return c;
}

void write_broadcast_csv(std::ostream& out, const BroadcastTrace& trace) {
    out << "time,from,to,newly_informed\n";
    char buf[64];
    for (const Transmission& t : trace.log) {
        std::snprintf(buf, sizeof(buf), "%.17g", t.time);
        out << buf << ',' << t.from << ',' << t.to << ',' << (t.newly_informed ? 1 : 0)
            << '\n';
    }
}

void write_broadcast_summary(std::ostream& out, const Multigraph& g, std::uint64_t seed,
                             const std::string& metric, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    out << g.n << ',' << regular_degree(g) << ',' << seed << ',' << metric << ',' << buf
        << '\n';
}

}  // namespace fpplab
