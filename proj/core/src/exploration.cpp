#include "fpplab/exploration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "fpplab/errors.hpp"
#include "fpplab/fpp.hpp"
#include "fpplab/rng.hpp"

namespace fpplab {
namespace {

enum class Slot : std::uint8_t { Outside, InList, Matched };

// Live list L with O(1) uniform removal (swap-remove keyed by slot id).
class HalfEdgeList {
public:
    explicit HalfEdgeList(std::size_t m) : position_(m, kAbsent) {}

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    std::uint32_t at(std::size_t i) const { return items_[i]; }

    void push(std::uint32_t h) {
        position_[h] = items_.size();
        items_.push_back(h);
    }

    void remove(std::uint32_t h) { remove_at(position_[h]); }

    std::uint32_t remove_at(std::size_t i) {
        const std::uint32_t h = items_[i];
        items_[i] = items_.back();
        position_[items_[i]] = i;
        items_.pop_back();
        position_[h] = kAbsent;
        return h;
    }

private:
    static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
    std::vector<std::uint32_t> items_;
    std::vector<std::size_t> position_;
};

struct StepRecorder {
    ExplorationTrace trace;
    std::int64_t shat = 0;
    std::int64_t excess = 0;
    double now = 0.0;

    void record_step(std::uint32_t forward_degree, std::int64_t list_size) {
        shat += static_cast<std::int64_t>(forward_degree) - 1;
        trace.tau.push_back(now);
        trace.dhat.push_back(forward_degree);
        trace.shat.push_back(shat);
        trace.s.push_back(list_size);
        trace.x.push_back(excess);
        trace.edge_count.push_back(trace.ball_edges.size());
    }
};

}  // namespace

ExplorationTrace explore(const DegreeSequence& seq, std::uint32_t source,
                         std::size_t max_steps, std::uint64_t seed) {
    if (source >= seq.n()) throw ConfigError("source vertex out of range");
    if (max_steps < 1) throw ConfigError("max_steps must be at least 1");
    if (seq.total_degree % 2 != 0) throw ParityError("odd total degree");

    const std::uint64_t m = seq.total_degree;
    std::vector<std::uint32_t> owner(m);
    std::vector<std::uint64_t> first_slot(seq.n() + 1, 0);
    for (std::uint32_t v = 0; v < seq.n(); ++v)
        first_slot[v + 1] = first_slot[v] + seq.degrees[v];
    for (std::uint32_t v = 0; v < seq.n(); ++v)
        std::fill(owner.begin() + first_slot[v], owner.begin() + first_slot[v + 1], v);

    Rng rng(seed);
    std::vector<Slot> status(m, Slot::Outside);
    HalfEdgeList list(m);
    std::uint64_t unmatched = m;

    StepRecorder rec;
    rec.trace.source = source;
    rec.trace.source_degree = seq.degrees[source];
    rec.trace.ball_vertices.push_back(source);
    rec.shat = seq.degrees[source];

    // Resolves the not-yet-consumed half-edges of a newly added vertex: each
    // one hits the live list (closing a cycle) or joins it. Also used for the
    // source's own half-edges, where a hit is a self-loop.
    //
    // The hit probability is list/outside, the exact conditional of the
    // uniform matching given everything revealed so far: pairs of list
    // members were already ruled out when the later one resolved, which is
    // also why the probability reaches 1 as outside half-edges run out. The
    // crude count list/(unmatched-1) agrees to O(list/unmatched) but is not a
    // valid sampler near exhaustion.
    auto resolve_vertex = [&](std::uint32_t v) {
        for (std::uint64_t h = first_slot[v]; h < first_slot[v + 1]; ++h) {
            if (status[h] != Slot::Outside) continue;
            const auto hid = static_cast<std::uint32_t>(h);
            const std::size_t len = list.size();
            const std::uint64_t outside = unmatched - len;  // includes this half-edge
            if (len > 0 &&
                rng.bernoulli(static_cast<double>(len) / static_cast<double>(outside))) {
                const std::uint32_t other = list.remove_at(rng.below(len));
                status[hid] = Slot::Matched;
                status[other] = Slot::Matched;
                unmatched -= 2;
                rec.excess += 1;
                rec.trace.ball_edges.emplace_back(v, owner[other]);
            } else {
                status[hid] = Slot::InList;
                list.push(hid);
            }
        }
    };

    resolve_vertex(source);
    rec.trace.s0 = static_cast<std::int64_t>(list.size());
    rec.trace.x0 = rec.excess;
    rec.trace.edge_count0 = rec.trace.ball_edges.size();
    if (list.empty()) {
        rec.trace.i_star = 0;
        return std::move(rec.trace);
    }

    for (std::size_t step = 1; step <= max_steps; ++step) {
        const std::size_t len = list.size();
        rec.now += rng.exponential(static_cast<double>(len));

        const std::uint32_t fired = list.remove_at(rng.below(len));
        status[fired] = Slot::Matched;
        --unmatched;

        // A live list member always has a partner outside the list: pairs of
        // list half-edges were ruled out when the later one resolved, and the
        // resolution probability becomes 1 as outside half-edges run out.
        if (unmatched == list.size())
            throw SimulationError("no half-edge available outside the list");

        // Uniform over unmatched half-edges outside the list, by rejection.
        std::uint32_t partner;
        do {
            partner = static_cast<std::uint32_t>(rng.below(m));
        } while (status[partner] != Slot::Outside);
        status[partner] = Slot::Matched;
        --unmatched;

        const std::uint32_t v = owner[partner];
        rec.trace.ball_vertices.push_back(v);
        rec.trace.ball_edges.emplace_back(owner[fired], v);
        resolve_vertex(v);

        rec.record_step(seq.degrees[v] - 1, static_cast<std::int64_t>(list.size()));
        if (list.empty()) {
            rec.trace.i_star = step;
            break;
        }
    }
    return std::move(rec.trace);
}

BuiltGraph explore_and_build(const DegreeSequence& seq, std::uint32_t source,
                             std::uint64_t seed) {
    // Reuse the sampling explorer, then match the leftover half-edges
    // uniformly. The trace only describes the source's component; the
    // completed matching is still a configuration-model sample.
    ExplorationTrace trace =
        explore(seq, source, static_cast<std::size_t>(seq.n()) + 1, seed);

    std::vector<std::uint32_t> remaining;
    {
        // Recover which half-edges stayed untouched by replaying degrees of
        // unexplored vertices.
        std::vector<bool> in_ball(seq.n(), false);
        for (std::uint32_t v : trace.ball_vertices) in_ball[v] = true;
        for (std::uint32_t v = 0; v < seq.n(); ++v)
            if (!in_ball[v]) remaining.insert(remaining.end(), seq.degrees[v], v);
    }

    Rng rng(mix_seed(seed, 0x636f6d70ull));  // completion stream
    for (std::size_t i = remaining.size(); i > 1; --i)
        std::swap(remaining[i - 1], remaining[rng.below(i)]);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges = trace.ball_edges;
    for (std::size_t i = 0; i + 1 < remaining.size(); i += 2)
        edges.emplace_back(remaining[i], remaining[i + 1]);

    return BuiltGraph{std::move(trace), Multigraph::from_edges(seq.n(), std::move(edges))};
}

FixedExploration explore_fixed(const Multigraph& g, std::uint32_t source,
                               std::size_t max_steps, std::uint64_t seed) {
    if (source >= g.n) throw ConfigError("source vertex out of range");
    if (max_steps < 1) throw ConfigError("max_steps must be at least 1");

    // Slots are the CSR adjacency positions; pair up the two slots of each
    // edge to get the predetermined matching.
    const std::size_t m = g.adj_vertex.size();
    std::vector<std::uint32_t> partner(m);
    std::vector<std::uint32_t> owner(m);
    {
        std::vector<std::uint32_t> first_of_edge(g.edges.size(),
                                                 static_cast<std::uint32_t>(m));
        for (std::uint32_t v = 0; v < g.n; ++v) {
            for (std::uint32_t slot = g.adj_offset[v]; slot < g.adj_offset[v + 1]; ++slot) {
                owner[slot] = v;
                const std::uint32_t e = g.adj_edge[slot];
                if (first_of_edge[e] == m) {
                    first_of_edge[e] = slot;
                } else {
                    partner[first_of_edge[e]] = slot;
                    partner[slot] = first_of_edge[e];
                }
            }
        }
    }

    Rng rng(seed);
    std::vector<Slot> status(m, Slot::Outside);
    HalfEdgeList list(m);
    FixedExploration out;
    out.weights.assign(g.edges.size(), -1.0);
    out.arrival.assign(g.n, kUnreachable);
    out.arrival[source] = 0.0;

    StepRecorder rec;
    rec.trace.source = source;
    rec.trace.source_degree = g.degree(source);
    rec.trace.ball_vertices.push_back(source);
    rec.shat = g.degree(source);

    // Reveal the predetermined matchings of a new vertex's remaining slots:
    // self-loops and edges back into the ball close immediately (their
    // weights have been burning since the ball reached the other endpoint),
    // the rest join the list.
    auto resolve_vertex = [&](std::uint32_t v) {
        for (std::uint32_t h = g.adj_offset[v]; h < g.adj_offset[v + 1]; ++h) {
            if (status[h] != Slot::Outside) continue;
            const std::uint32_t q = partner[h];
            if (owner[q] == v) {
                status[h] = Slot::Matched;
                status[q] = Slot::Matched;
                out.weights[g.adj_edge[h]] = rng.exponential(1.0);
                rec.excess += 1;
                rec.trace.ball_edges.emplace_back(v, v);
            } else if (status[q] == Slot::InList) {
                list.remove(q);
                status[h] = Slot::Matched;
                status[q] = Slot::Matched;
                out.weights[g.adj_edge[h]] =
                    (rec.now - out.arrival[owner[q]]) + rng.exponential(1.0);
                rec.excess += 1;
                rec.trace.ball_edges.emplace_back(v, owner[q]);
            } else {
                status[h] = Slot::InList;
                list.push(h);
            }
        }
    };

    resolve_vertex(source);
    rec.trace.s0 = static_cast<std::int64_t>(list.size());
    rec.trace.x0 = rec.excess;
    rec.trace.edge_count0 = rec.trace.ball_edges.size();

    if (!list.empty()) {
        for (std::size_t step = 1; step <= max_steps; ++step) {
            const std::size_t len = list.size();
            rec.now += rng.exponential(static_cast<double>(len));

            const std::uint32_t fired = list.remove_at(rng.below(len));
            const std::uint32_t q = partner[fired];
            const std::uint32_t v = owner[q];
            status[fired] = Slot::Matched;
            status[q] = Slot::Matched;
            out.weights[g.adj_edge[fired]] = rec.now - out.arrival[owner[fired]];
            out.arrival[v] = rec.now;
            rec.trace.ball_vertices.push_back(v);
            rec.trace.ball_edges.emplace_back(owner[fired], v);
            resolve_vertex(v);

            rec.record_step(g.degree(v) - 1, static_cast<std::int64_t>(list.size()));
            if (list.empty()) {
                rec.trace.i_star = step;
                break;
            }
        }
    } else {
        rec.trace.i_star = 0;
    }

    // Weights never revealed: boundary edges keep their elapsed burn plus a
    // fresh draw, untouched edges are fresh. Edge-id order keeps this
    // deterministic.
    std::vector<double> burn(g.edges.size(), 0.0);
    for (std::uint32_t slot = 0; slot < m; ++slot)
        if (status[slot] == Slot::InList)
            burn[g.adj_edge[slot]] = rec.now - out.arrival[owner[slot]];
    for (std::uint32_t e = 0; e < g.edges.size(); ++e)
        if (out.weights[e] < 0.0) out.weights[e] = burn[e] + rng.exponential(1.0);

    out.trace = std::move(rec.trace);
    return out;
}

double hitting_time(const ExplorationTrace& trace, std::size_t k) {
    if (k < 1) throw ConfigError("ball size must be at least 1");
    if (k == 1) return 0.0;
    if (k - 1 > trace.steps())
        throw ConfigError("ball never reached size " + std::to_string(k));
    return trace.tau[k - 2];
}

GrowthConstants growth_constants(double n, const DegreeDistribution& p) {
    if (!(n >= 2.0)) throw ConfigError("n must be at least 2");
    const double nu = size_biased(p).nu();
    if (!(nu > 1.0)) throw TheoremScopeError("offspring mean must exceed 1");
    const double log_n = std::log(n);
    GrowthConstants c;
    c.alpha = log_n * log_n * log_n;
    c.beta = 3.0 * std::sqrt(p.lambda() / (nu - 1.0) * n * log_n);
    return c;
}

EventFrequencies event_frequencies(std::span<const ExplorationTrace> traces, int d_min,
                                   std::size_t window) {
    if (traces.empty()) throw ConfigError("no traces");
    std::size_t hold_r = 0, hold_r_prime = 0;
    for (const ExplorationTrace& trace : traces) {
        if (trace.steps() < window && !trace.i_star)
            throw ConfigError("trace stopped before the event window without exhausting");
        bool r = true, r_prime = true;
        for (std::size_t k = 1; k <= window && r_prime; ++k) {
            // Past i* the list is empty and s_k is 0 by convention.
            const std::int64_t sk = k <= trace.steps() ? trace.s[k - 1] : 0;
            const auto slope = static_cast<std::int64_t>(d_min - 2) * static_cast<std::int64_t>(k);
            if (sk < d_min + slope) r = false;
            if (sk < 1 + slope) r_prime = false;
        }
        hold_r += r && r_prime;
        hold_r_prime += r_prime;
    }
    EventFrequencies out;
    out.r = static_cast<double>(hold_r) / static_cast<double>(traces.size());
    out.r_prime = static_cast<double>(hold_r_prime) / static_cast<double>(traces.size());
    return out;
}

void write_trace_csv(std::ostream& out, const ExplorationTrace& trace) {
    out << "step,tau,dhat,Shat,S,X\n";
    char buf[64];
    for (std::size_t i = 0; i < trace.steps(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", trace.tau[i]);
        out << (i + 1) << ',' << buf << ',' << trace.dhat[i] << ',' << trace.shat[i] << ','
            << trace.s[i] << ',' << trace.x[i] << '\n';
    }
}

}  // namespace fpplab
