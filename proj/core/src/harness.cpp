#include "fpplab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "fpplab/branching.hpp"
#include "fpplab/broadcast.hpp"
#include "fpplab/config_graph.hpp"
#include "fpplab/errors.hpp"
#include "fpplab/fpp.hpp"
#include "fpplab/rng.hpp"
#include "fpplab/stats.hpp"

namespace fpplab {

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::flood: return "flood";
        case ExperimentKind::diam: return "diam";
        case ExperimentKind::hop_diam: return "hop_diam";
        case ExperimentKind::abt: return "abt";
        case ExperimentKind::sync: return "sync";
        case ExperimentKind::branching: return "branching";
    }
    return "?";
}

ExperimentKind experiment_from_string(const std::string& name) {
    if (name == "flood") return ExperimentKind::flood;
    if (name == "diam") return ExperimentKind::diam;
    if (name == "hop_diam") return ExperimentKind::hop_diam;
    if (name == "abt") return ExperimentKind::abt;
    if (name == "sync") return ExperimentKind::sync;
    if (name == "branching") return ExperimentKind::branching;
    throw ConfigError("unknown experiment '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

SweepConfig SweepConfig::parse(std::istream& in) {
    SweepConfig config;
    bool saw_experiment = false, saw_dist = false, saw_n = false, saw_reps = false;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "experiment") {
                config.experiment = experiment_from_string(value);
                saw_experiment = true;
            } else if (key == "dist") {
                config.dist = DegreeDistribution::parse_compact(value);
                saw_dist = true;
            } else if (key == "n") {
                config.n_grid.clear();
                std::string normalized = value;
                std::replace(normalized.begin(), normalized.end(), ',', ' ');
                std::istringstream ns(normalized);
                std::uint64_t n;
                while (ns >> n) config.n_grid.push_back(static_cast<std::uint32_t>(n));
                saw_n = !config.n_grid.empty();
            } else if (key == "reps") {
                config.replicates = std::stoi(value);
                saw_reps = true;
            } else if (key == "seed") {
                config.base_seed = std::stoull(value);
            } else if (key == "graph") {
                if (value == "simple") config.simple_graph = true;
                else if (value == "multigraph") config.simple_graph = false;
                else throw ConfigError("graph must be simple or multigraph");
            } else if (key == "rate") {
                config.rate = std::stod(value);
            } else if (key == "max_attempts") {
                config.max_attempts = std::stoi(value);
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("bad value for '" + key + "': '" + value + "'");
        }
    }
    if (!saw_experiment) throw ConfigError("config is missing 'experiment'");
    if (!saw_dist) throw ConfigError("config is missing 'dist'");
    if (!saw_n) throw ConfigError("config is missing 'n'");
    if (!saw_reps) throw ConfigError("config is missing 'reps'");
    if (config.replicates < 0) throw ConfigError("reps must be nonnegative");
    if (!(config.rate > 0.0)) throw ConfigError("rate must be positive");
    return config;
}

namespace {

Multigraph build_graph(const SweepConfig& config, std::uint32_t n, std::uint64_t seed) {
    const DegreeSequence seq =
        sample_degree_sequence(config.dist, n, mix_seed(seed, 0x5eull));
    if (config.simple_graph)
        return sample_simple(seq, mix_seed(seed, 0x51ull), config.max_attempts).graph;
    return pair_half_edges(seq, mix_seed(seed, 0x51ull));
}

std::uint32_t uniform_source(std::uint32_t n, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0x50ull));
    return static_cast<std::uint32_t>(rng.below(n));
}

}  // namespace

ExperimentRecord run_replicate(const SweepConfig& config, std::uint32_t n, int replicate) {
    const std::uint64_t seed = mix_seed(config.base_seed, n, static_cast<std::uint64_t>(replicate));
    ExperimentRecord record;
    record.experiment = to_string(config.experiment);
    record.n = n;
    record.replicate = replicate;
    record.seed = seed;

    const auto start = std::chrono::steady_clock::now();
    try {
        switch (config.experiment) {
            case ExperimentKind::flood: {
                const WeightedGraph wg =
                    assign_weights(build_graph(config, n, seed), config.rate, mix_seed(seed, 0x77ull));
                record.metric = "flood_w";
                record.value = flood_time(wg, uniform_source(n, seed));
                break;
            }
            case ExperimentKind::diam: {
                const WeightedGraph wg =
                    assign_weights(build_graph(config, n, seed), config.rate, mix_seed(seed, 0x77ull));
                record.metric = "diam_w";
                record.value = weighted_diameter(wg);
                break;
            }
            case ExperimentKind::hop_diam: {
                record.metric = "hop_diam";
                record.value =
                    static_cast<double>(hop_diameter(build_graph(config, n, seed)));
                break;
            }
            case ExperimentKind::abt: {
                const Multigraph g = build_graph(config, n, seed);
                record.metric = "abt";
                record.value =
                    async_push(g, uniform_source(n, seed), mix_seed(seed, 0xb7ull)).completion();
                break;
            }
            case ExperimentKind::sync: {
                const Multigraph g = build_graph(config, n, seed);
                record.metric = "sync_rounds";
                record.value =
                    sync_push(g, uniform_source(n, seed), mix_seed(seed, 0xb7ull)).completion();
                break;
            }
            case ExperimentKind::branching: {
                record.metric = "t_last";
                record.value = simulate_branching(config.dist, size_biased(config.dist),
                                                  static_cast<std::int64_t>(n), seed)
                                   .final_split_time;
                break;
            }
        }
    } catch (const SimulationError& e) {
        throw SimulationError(std::string(e.what()) + " [" + record.experiment +
                              ", n=" + std::to_string(n) +
                              ", replicate=" + std::to_string(replicate) + "]");
    }
    const auto stop = std::chrono::steady_clock::now();
    record.duration_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(stop - start)
            .count();
    return record;
}

unsigned resolve_threads(unsigned requested) {
    if (const char* env = std::getenv("FPPLAB_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || value < 1)
            throw ConfigError("FPPLAB_THREADS must be a positive integer");
        return static_cast<unsigned>(value);
    }
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::vector<ExperimentRecord> run_sweep(const SweepConfig& config, unsigned threads) {
    if (config.n_grid.empty()) throw ConfigError("empty n grid");
    for (std::uint32_t n : config.n_grid)
        if (n < 2) throw ConfigError("grid sizes must be at least 2");

    const std::size_t reps = static_cast<std::size_t>(std::max(config.replicates, 0));
    const std::size_t tasks = config.n_grid.size() * reps;
    std::vector<ExperimentRecord> records(tasks);
    if (tasks == 0) return records;

    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), tasks));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks || failed.load()) break;
            const std::uint32_t n = config.n_grid[i / reps];
            const int replicate = static_cast<int>(i % reps);
            try {
                records[i] = run_replicate(config, n, replicate);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) error = std::current_exception();
                break;
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) std::rethrow_exception(error);
    return records;  // task index order is (n, replicate) order
}

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    out << "experiment,n,replicate,seed,metric,value,duration_ms\n";
    char value_buf[64], duration_buf[64];
    for (const ExperimentRecord& r : records) {
        std::snprintf(value_buf, sizeof(value_buf), "%.17g", r.value);
        std::snprintf(duration_buf, sizeof(duration_buf), "%.3f", r.duration_ms);
        out << r.experiment << ',' << r.n << ',' << r.replicate << ',' << r.seed << ','
            << r.metric << ',' << value_buf << ',' << duration_buf << '\n';
    }
}

std::vector<ExperimentRecord> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) ||
        trim(line) != "experiment,n,replicate,seed,metric,value,duration_ms")
        throw ConfigError("records CSV: bad or missing header");
    std::vector<ExperimentRecord> records;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 7) throw ConfigError("records CSV: bad row '" + line + "'");
        ExperimentRecord r;
        try {
            r.experiment = fields[0];
            r.n = static_cast<std::uint32_t>(std::stoul(fields[1]));
            r.replicate = std::stoi(fields[2]);
            r.seed = std::stoull(fields[3]);
            r.metric = fields[4];
            r.value = std::stod(fields[5]);
            r.duration_ms = std::stod(fields[6]);
        } catch (const std::exception&) {
            throw ConfigError("records CSV: bad row '" + line + "'");
        }
        if (!std::isfinite(r.value)) throw ConfigError("records CSV: non-finite value");
        records.push_back(std::move(r));
    }
    return records;
}

namespace {

// Per-n means keyed by n, plus a metric-consistency check. Values are
// sorted before summing so the result does not depend on record order.
std::map<std::uint32_t, double> group_means(const std::vector<ExperimentRecord>& records) {
    if (records.empty()) throw ConfigError("no records to fit");
    const std::string& metric = records.front().metric;
    std::map<std::uint32_t, std::vector<double>> groups;
    for (const ExperimentRecord& r : records) {
        if (r.metric != metric)
            throw ConfigError("records mix metrics '" + metric + "' and '" + r.metric + "'");
        groups[r.n].push_back(r.value);
    }
    std::map<std::uint32_t, double> means;
    for (auto& [n, values] : groups) {
        std::sort(values.begin(), values.end());
        double sum = 0.0;
        for (double v : values) sum += v;
        means[n] = sum / static_cast<double>(values.size());
    }
    return means;
}

}  // namespace

PrefactorFit fit_prefactor(const std::vector<ExperimentRecord>& records, FitMethod method) {
    const auto means = group_means(records);
    if (means.size() < 3)
        throw ConfigError("need at least 3 grid sizes, got " + std::to_string(means.size()));

    std::vector<double> xs, ys;
    for (const auto& [n, mean] : means) {
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(mean);
    }
    const std::size_t k = xs.size();
    double x_bar = 0.0, y_bar = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        x_bar += xs[i];
        y_bar += ys[i];
    }
    x_bar /= static_cast<double>(k);
    y_bar /= static_cast<double>(k);

    PrefactorFit fit;
    fit.method = method;
    if (method == FitMethod::least_squares) {
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            sxx += (xs[i] - x_bar) * (xs[i] - x_bar);
            sxy += (xs[i] - x_bar) * (ys[i] - y_bar);
        }
        fit.slope = sxy / sxx;
        fit.intercept = y_bar - fit.slope * x_bar;
        if (k > 2) {
            double ss_res = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
                ss_res += r * r;
            }
            fit.std_error = std::sqrt(ss_res / static_cast<double>(k - 2) / sxx);
        }
    } else {
        std::vector<double> diffs;
        for (std::size_t i = 0; i + 1 < k; ++i)
            diffs.push_back((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]));
        const SampleStats stats = summarize(diffs);
        fit.slope = stats.mean;
        fit.std_error = stats.std_error;
        fit.intercept = y_bar - fit.slope * x_bar;
    }
    return fit;
}

void write_plot_svg(std::ostream& out, const std::vector<ExperimentRecord>& records,
                    std::optional<double> theoretical, const std::string& title) {
    const auto means = group_means(records);
    std::vector<std::pair<double, double>> points;  // (log n, mean/log n)
    for (const auto& [n, mean] : means) {
        const double x = std::log(static_cast<double>(n));
        points.emplace_back(x, mean / x);
    }

    double x_min = points.front().first, x_max = points.back().first;
    double y_min = points.front().second, y_max = points.front().second;
    for (const auto& [x, y] : points) {
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
    }
    if (theoretical) {
        y_min = std::min(y_min, *theoretical);
        y_max = std::max(y_max, *theoretical);
    }
    const double x_pad = std::max(0.05 * (x_max - x_min), 0.1);
    const double y_pad = std::max(0.1 * (y_max - y_min), 0.05 * std::abs(y_max) + 1e-9);
    x_min -= x_pad;
    x_max += x_pad;
    y_min -= y_pad;
    y_max += y_pad;

    const double width = 640, height = 420, left = 70, right = 20, top = 40, bottom = 50;
    auto px = [&](double x) {
        return left + (x - x_min) / (x_max - x_min) * (width - left - right);
    };
    auto py = [&](double y) {
        return height - bottom - (y - y_min) / (y_max - y_min) * (height - top - bottom);
    };

    char buf[256];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"14\">"
        << title << "</text>\n";

    // axes
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  left, height - bottom, width - right, height - bottom);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  left, top, left, height - bottom);
    out << buf;
    for (int t = 0; t <= 4; ++t) {
        const double fx = x_min + (x_max - x_min) * t / 4.0;
        const double fy = y_min + (y_max - y_min) * t / 4.0;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" "
                      "font-family=\"sans-serif\" font-size=\"11\">%.2f</text>\n",
                      px(fx), height - bottom + 18, fx);
        out << buf;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" "
                      "font-family=\"sans-serif\" font-size=\"11\">%.3f</text>\n",
                      left - 6, py(fy) + 4, fy);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" "
                  "font-family=\"sans-serif\" font-size=\"12\">log n</text>\n",
                  (left + width - right) / 2, height - 12);
    out << buf;

    if (theoretical) {
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                      "stroke=\"firebrick\" stroke-dasharray=\"6 4\"/>\n",
                      left, py(*theoretical), width - right, py(*theoretical));
        out << buf;
    }

    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : points) {
        std::snprintf(buf, sizeof(buf), "%.1f,%.1f ", px(x), py(y));
        out << buf;
    }
    out << "\"/>\n";
    for (const auto& [x, y] : points) {
        std::snprintf(buf, sizeof(buf),
                      "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\" fill=\"steelblue\"/>\n", px(x),
                      py(y));
        out << buf;
    }
    out << "</svg>\n";
}

}  // namespace fpplab
