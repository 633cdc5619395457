#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "fpplab/broadcast.hpp"
#include "fpplab/config_graph.hpp"
#include "fpplab/degree_model.hpp"
#include "fpplab/errors.hpp"
#include "fpplab/fpp.hpp"
#include "fpplab/rng.hpp"
#include "fpplab/stats.hpp"

using namespace fpplab;

namespace {

// Exact expected completion time of the asynchronous push process by
// first-step analysis over informed subsets. Exponential in n; for oracle
// use on graphs of a handful of vertices.
double exact_mean_completion(const Multigraph& g, std::uint32_t source) {
    REQUIRE(g.n <= 16);
    const std::uint32_t full = (1u << g.n) - 1;
    std::vector<double> expect(full + 1, 0.0);

    std::vector<std::uint32_t> states;
    for (std::uint32_t s = 0; s <= full; ++s)
        if (s & (1u << source)) states.push_back(s);
    std::sort(states.begin(), states.end(), [](std::uint32_t a, std::uint32_t b) {
        return __builtin_popcount(a) > __builtin_popcount(b);
    });

    for (std::uint32_t s : states) {
        if (s == full) continue;
        double total_rate = 0.0;
        std::map<std::uint32_t, double> jump_rate;
        for (std::uint32_t u = 0; u < g.n; ++u) {
            if (!(s & (1u << u))) continue;
            const double slot_rate = 1.0 / g.degree(u);
            for (std::uint32_t k = g.adj_offset[u]; k < g.adj_offset[u + 1]; ++k) {
                const std::uint32_t v = g.adj_vertex[k];
                if (s & (1u << v)) continue;  // wasted push
                jump_rate[s | (1u << v)] += slot_rate;
                total_rate += slot_rate;
            }
        }
        REQUIRE(total_rate > 0.0);
        double e = 1.0 / total_rate;
        for (const auto& [next, rate] : jump_rate) e += rate / total_rate * expect[next];
        expect[s] = e;
    }
    return expect[1u << source];
}

// Exact distribution of the synchronized round count by enumerating every
// joint choice of push targets, round by round.
std::vector<double> exact_sync_round_distribution(const Multigraph& g, std::uint32_t source,
                                                  std::size_t max_rounds) {
    REQUIRE(g.n <= 8);
    const std::uint32_t full = (1u << g.n) - 1;
    std::vector<double> mass(full + 1, 0.0);
    mass[1u << source] = 1.0;
    std::vector<double> by_round(max_rounds + 1, 0.0);
    by_round[0] = mass[full];

    for (std::size_t round = 1; round <= max_rounds; ++round) {
        std::vector<double> next_mass(full + 1, 0.0);
        next_mass[full] = mass[full];  // absorbed
        for (std::uint32_t s = 0; s < full; ++s) {
            if (mass[s] == 0.0) continue;
            std::vector<std::uint32_t> informed;
            for (std::uint32_t u = 0; u < g.n; ++u)
                if (s & (1u << u)) informed.push_back(u);
            // enumerate the product of per-sender choices
            std::vector<std::uint32_t> choice(informed.size(), 0);
            for (;;) {
                double prob = mass[s];
                std::uint32_t target_set = s;
                for (std::size_t i = 0; i < informed.size(); ++i) {
                    const std::uint32_t u = informed[i];
                    prob /= g.degree(u);
                    target_set |= 1u << g.adj_vertex[g.adj_offset[u] + choice[i]];
                }
                next_mass[target_set] += prob;
                std::size_t bump = 0;
                while (bump < choice.size()) {
                    if (++choice[bump] < g.degree(informed[bump])) break;
                    choice[bump] = 0;
                    ++bump;
                }
                if (bump == choice.size()) break;
            }
        }
        mass = std::move(next_mass);
        by_round[round] = mass[full];
    }
    // convert cumulative absorption to per-round probabilities
    std::vector<double> dist(max_rounds + 1, 0.0);
    for (std::size_t k = 1; k <= max_rounds; ++k) dist[k] = by_round[k] - by_round[k - 1];
    return dist;
}

Multigraph triangle() { return Multigraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }

Multigraph cubic_graph(std::uint32_t n, std::uint64_t seed) {
    const auto seq = sample_degree_sequence(DegreeDistribution::regular(3), n, seed);
    return sample_simple(seq, mix_seed(seed, 1)).graph;
}

}  // namespace

TEST_CASE("one edge: the inform time is the first tick of the source clock") {
    const auto g = Multigraph::from_edges(2, {{0, 1}});
    double sum = 0.0;
    const int reps = 100000;
    for (int rep = 0; rep < reps; ++rep) {
        const auto trace = async_push(g, 0, mix_seed(3, 0, rep));
        CHECK(trace.inform_time[0] == 0.0);
        sum += trace.inform_time[1];
    }
    CHECK(std::abs(sum / reps - 1.0) < 0.02);
}

TEST_CASE("triangle mean completion matches the exact chain analysis") {
    const auto g = triangle();
    const double exact = exact_mean_completion(g, 0);
    CHECK(exact == doctest::Approx(2.0).epsilon(1e-12));  // 1 + 1 by symmetry

    std::vector<double> samples;
    for (int rep = 0; rep < 20000; ++rep)
        samples.push_back(async_push(g, 0, mix_seed(4, 1, rep)).completion());
    const auto stats = summarize(samples);
    CHECK(std::abs(stats.mean - exact) < 3.0 * stats.std_error);
}

TEST_CASE("a lopsided four-vertex graph also matches the chain analysis") {
    // path with a pendant triangle; mixed degrees exercise the slot rates
    const auto g = Multigraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {1, 3}});
    const double exact = exact_mean_completion(g, 0);
    std::vector<double> samples;
    for (int rep = 0; rep < 20000; ++rep)
        samples.push_back(async_push(g, 0, mix_seed(5, 2, rep)).completion());
    const auto stats = summarize(samples);
    CHECK(std::abs(stats.mean - exact) < 3.0 * stats.std_error);
}

TEST_CASE("async push is pure in (g, source, seed) and logs consistently") {
    const auto g = cubic_graph(60, 17);
    const auto a = async_push(g, 3, 999, true);
    const auto b = async_push(g, 3, 999, true);
    CHECK(a.inform_time == b.inform_time);
    REQUIRE(!a.log.empty());

    // informed set grows monotonically; every newly informed vertex hears
    // from an already informed neighbor at its inform time
    std::vector<bool> informed(g.n, false);
    informed[3] = true;
    double prev = 0.0;
    for (const auto& t : a.log) {
        CHECK(t.time >= prev);
        prev = t.time;
        CHECK(informed[t.from]);
        if (t.newly_informed) {
            CHECK_FALSE(informed[t.to]);
            informed[t.to] = true;
            CHECK(a.inform_time[t.to] == t.time);
        }
    }
    CHECK(std::count(informed.begin(), informed.end(), false) == 0);
}

TEST_CASE("coupled broadcast rejects irregular graphs") {
    const auto g = Multigraph::from_edges(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(coupled_async(g, 0, 1), RegularityError);
}

TEST_CASE("coupled broadcast on a single edge is a unit exponential") {
    const auto g = Multigraph::from_edges(2, {{0, 1}});
    double sum = 0.0;
    const int reps = 50000;
    for (int rep = 0; rep < reps; ++rep)
        sum += coupled_async(g, 0, mix_seed(6, 3, rep)).completion();
    CHECK(std::abs(sum / reps - 1.0) < 0.03);
}

TEST_CASE("async and coupled completion times agree in law") {
    const auto g = cubic_graph(200, 23);
    std::vector<double> direct, coupled;
    for (int rep = 0; rep < 300; ++rep) {
        direct.push_back(async_push(g, 0, mix_seed(7, 4, rep)).completion());
        coupled.push_back(coupled_async(g, 0, mix_seed(8, 5, rep)).completion());
    }
    const double stat = ks_statistic_two_sample(direct, coupled);
    CHECK(stat < ks_critical_two_sample(direct.size(), coupled.size(), 0.01));
}

// coupled_async with rate 1/r is the flood time under rate-1 weights scaled
// by r, on the same seed-derived uniform draws. Scaling by 4 is exact in
// floating point; scaling by 3 rounds in the last ulp.
TEST_CASE("inverse-CDF scaling identity against the rate-1 flood time") {
    const auto seq4 = sample_degree_sequence(DegreeDistribution::regular(4), 100, 31);
    const auto g4 = sample_simple(seq4, 32).graph;
    const auto unit = assign_weights(g4, 1.0, 500);
    CHECK(coupled_async(g4, 2, 500).completion() == 4.0 * flood_time(unit, 2));

    const auto g3 = cubic_graph(100, 33);
    const auto unit3 = assign_weights(g3, 1.0, 501);
    const double lhs = coupled_async(g3, 2, 501).completion();
    const double rhs = 3.0 * flood_time(unit3, 2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("synchronized push informs a single edge in one round") {
    const auto g = Multigraph::from_edges(2, {{0, 1}});
    const auto trace = sync_push(g, 0, 77);
    CHECK(trace.completion() == 1.0);
    CHECK(trace.inform_time[1] == 1.0);
}

TEST_CASE("triangle round distribution matches exhaustive enumeration") {
    const auto g = triangle();
    const auto dist = exact_sync_round_distribution(g, 0, 8);
    // closed form: round 1 always informs one more, then each round finishes
    // with probability 3/4
    CHECK(dist[1] == doctest::Approx(0.0));
    for (std::size_t k = 2; k <= 6; ++k)
        CHECK(dist[k] ==
              doctest::Approx(0.75 * std::pow(0.25, static_cast<double>(k - 2))).epsilon(1e-12));

    const int reps = 20000;
    std::map<std::int64_t, int> counts;
    for (int rep = 0; rep < reps; ++rep)
        counts[static_cast<std::int64_t>(sync_push(g, 0, mix_seed(9, 6, rep)).completion())] += 1;
    for (std::int64_t k = 2; k <= 4; ++k) {
        const double expected = dist[static_cast<std::size_t>(k)];
        const double observed = static_cast<double>(counts[k]) / reps;
        const double sigma = std::sqrt(expected * (1.0 - expected) / reps);
        CHECK(std::abs(observed - expected) < 4.0 * sigma);
    }
}

TEST_CASE("generic and dedicated complete-graph sync rounds agree in law") {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    const std::uint32_t n = 16;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    const auto k16 = Multigraph::from_edges(n, std::move(edges));

    std::vector<double> generic, dedicated;
    for (int rep = 0; rep < 2000; ++rep) {
        generic.push_back(sync_push(k16, 0, mix_seed(10, 7, rep)).completion());
        dedicated.push_back(
            static_cast<double>(sync_rounds_complete_graph(n, 0, mix_seed(11, 8, rep))));
    }
    const double stat = ks_statistic_two_sample(generic, dedicated);
    CHECK(stat < ks_critical_two_sample(generic.size(), dedicated.size(), 0.01));
}

TEST_CASE("complete-graph rounds scale as log2 n + ln n") {
    const std::uint32_t n = 1 << 13;
    const double predicted = std::log2(static_cast<double>(n)) + std::log(static_cast<double>(n));
    double sum = 0.0;
    const int reps = 20;
    for (int rep = 0; rep < reps; ++rep)
        sum += static_cast<double>(sync_rounds_complete_graph(n, 0, mix_seed(12, 9, rep)));
    CHECK(std::abs(sum / reps / predicted - 1.0) < 0.1);
}

TEST_CASE("closed-form broadcast prefactors") {
    const auto c3 = broadcast_constants(3);
    CHECK(c3.async_prefactor == doctest::Approx(4.0).epsilon(1e-12));
    const double sync3 = 1.0 / std::log(4.0 / 3.0) + 1.0 / (3.0 * std::log(1.5));
    CHECK(c3.sync_prefactor == doctest::Approx(sync3).epsilon(1e-12));
    CHECK(c3.sync_prefactor == doctest::Approx(4.2982).epsilon(1e-4));
    CHECK(c3.sync_lower < c3.sync_prefactor);

    // the asynchronous protocol is faster for every tabulated degree
    for (int r = 3; r <= 64; ++r) {
        const auto c = broadcast_constants(r);
        CHECK(c.async_prefactor < c.sync_prefactor);
    }
    CHECK_THROWS_AS(broadcast_constants(2), TheoremScopeError);
}

TEST_CASE("broadcast on a disconnected graph is an error") {
    const auto g = Multigraph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(async_push(g, 0, 1), DisconnectedGraphError);
    CHECK_THROWS_AS(sync_push(g, 0, 1), DisconnectedGraphError);
}

TEST_CASE("broadcast CSV and summary shapes") {
    const auto g = triangle();
    const auto trace = async_push(g, 0, 5, true);
    std::stringstream csv;
    write_broadcast_csv(csv, trace);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "time,from,to,newly_informed");

    std::stringstream summary;
    write_broadcast_summary(summary, g, 5, "abt", trace.completion());
    std::string line;
    std::getline(summary, line);
    CHECK(line.substr(0, 4) == "3,2,");
}
