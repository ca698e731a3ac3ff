#include "streampart/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "streampart/analysis.hpp"
#include "streampart/format.hpp"
#include "streampart/generators.hpp"
#include "streampart/graph_io.hpp"
#include "streampart/metrics.hpp"
#include "streampart/urn.hpp"

namespace streampart {

namespace {

constexpr const char* kGridHeader =
    "experiment,n,k,l,p,q,epsilon,algorithm,gamma,run,seed,edges_cut,cut_fraction,"
    "euclidean_error,full_fraction,regime_ok,wall_ms";
constexpr const char* kLowerBoundHeader =
    "experiment,n,runs,mean_no_edge_arrivals,expected_no_edge_arrivals,no_edge_sample_sigma,"
    "mean_adversarial_cut,cut_per_n,optimal_cut";
constexpr const char* kUrnHeader =
    "experiment,gamma,k,steps,run,seed,max_fraction,min_fraction,dominant_bin";

struct GridCell {
    long long index = 0;
    long long n = 0;
    int k = 0;
    int l = 0;
    double p = 0.0;
    double q = 0.0;
    double epsilon = 0.0;
    PartitionerKind algorithm = PartitionerKind::kArgmaxGreedy;
    double gamma = 1.0;
};

std::vector<GridCell> expand_grid(const ExperimentSpec& spec) {
    std::vector<GridCell> cells;
    long long index = 0;
    for (long long n : spec.n)
        for (int k : spec.k)
            for (int l : spec.l)
                for (double p : spec.p)
                    for (double q : spec.q)
                        for (double epsilon : spec.epsilon)
                            for (PartitionerKind algorithm : spec.algorithm)
                                for (double gamma : spec.gamma) {
                                    GridCell cell;
                                    cell.index = index++;
                                    cell.n = n;
                                    cell.k = k;
                                    cell.l = l;
                                    cell.p = p;
                                    cell.q = q;
                                    cell.epsilon = epsilon;
                                    cell.algorithm = algorithm;
                                    cell.gamma = gamma;
                                    cells.push_back(cell);
                                }
    return cells;
}

std::string spec_metadata(const ExperimentSpec& spec) {
    std::ostringstream out;
    out << "# name=" << spec.name << " mode=" << to_string(spec.mode)
        << " rng=" << kRngAlgorithm << " master_seed=" << spec.master_seed
        << " runs_per_cell=" << spec.runs_per_cell
        << " shared_graph=" << (spec.shared_graph ? 1 : 0) << '\n';
    const auto list_line = [&out](const char* key, const auto& values) {
        out << "# " << key << '=';
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i > 0) out << ',';
            if constexpr (std::is_same_v<std::decay_t<decltype(values[i])>, double>)
                out << format_double(values[i]);
            else
                out << values[i];
        }
        out << '\n';
    };
    if (spec.mode == ExperimentMode::kGrid) {
        out << "# graph=" << to_string(spec.graph) << " order=" << to_string(spec.order) << '\n';
        list_line("n", spec.n);
        list_line("k", spec.k);
        list_line("l", spec.l);
        list_line("p", spec.p);
        list_line("q", spec.q);
        list_line("epsilon", spec.epsilon);
        out << "# algorithm=";
        for (std::size_t i = 0; i < spec.algorithm.size(); ++i)
            out << (i > 0 ? "," : "") << to_string(spec.algorithm[i]);
        out << '\n';
        list_line("gamma", spec.gamma);
    } else if (spec.mode == ExperimentMode::kUrnSuite) {
        list_line("steps", spec.n);
        list_line("k", spec.k);
        list_line("gamma", spec.gamma);
    } else {
        list_line("n", spec.n);
    }
    return out.str();
}

Graph build_graph(const ExperimentSpec& spec, const GridCell& cell, std::uint64_t seed) {
    switch (spec.graph) {
        case GraphKind::kPlanted:
            return generate_planted(
                PlantedParams::equal_clusters(static_cast<int>(cell.n), cell.l, cell.p, cell.q),
                seed);
        case GraphKind::kGnp:
            return generate_gnp(static_cast<int>(cell.n), cell.p, false, seed);
        case GraphKind::kCycle:
            return generate_cycle(static_cast<int>(cell.n));
    }
    throw std::logic_error("unreachable");
}

// One CSV data row for (cell, run). The graph pointer is the shared per-cell
// instance or null for per-run generation.
std::string run_grid_row(const ExperimentSpec& spec, const GridCell& cell, int run,
                         const Graph* shared, bool regime_ok) {
    const std::uint64_t base = run_base_seed(spec.master_seed, cell.index, run);
    const std::uint64_t order_seed = derive_seed(base, 1);
    const std::uint64_t alg_seed = derive_seed(base, 2);

    const auto started = std::chrono::steady_clock::now();
    std::optional<Graph> own;
    if (shared == nullptr) own.emplace(build_graph(spec, cell, derive_seed(base, 3)));
    const Graph& graph = shared != nullptr ? *shared : *own;

    StreamOrder order = spec.order == OrderKind::kRandom
                            ? random_order(static_cast<int>(cell.n), order_seed)
                            : adversarial_cycle_order(static_cast<int>(cell.n));

    PartitionerConfig config;
    config.kind = cell.algorithm;
    config.k = cell.k;
    config.epsilon = cell.epsilon;
    config.gamma = cell.gamma;
    config.rng_seed = alg_seed;
    const PartitionState state = run_partitioner(graph, order, config);
    const RunMetrics metrics = compute_run_metrics(graph, state);
    const auto elapsed = std::chrono::steady_clock::now() - started;

    std::string row = spec.name;
    row += ',';
    row += std::to_string(cell.n);
    row += ',';
    row += std::to_string(cell.k);
    row += ',';
    row += std::to_string(cell.l);
    row += ',';
    row += format_double(cell.p);
    row += ',';
    row += format_double(cell.q);
    row += ',';
    row += format_double(cell.epsilon);
    row += ',';
    row += to_string(cell.algorithm);
    row += ',';
    row += format_double(cell.gamma);
    row += ',';
    row += std::to_string(run);
    row += ',';
    row += std::to_string(base);
    row += ',';
    row += metrics_csv_fields(metrics);
    row += ',';
    row += regime_ok ? '1' : '0';
    row += ',';
    row += std::to_string(
        spec.timing
            ? std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()
            : 0LL);
    return row;
}

// Parallel loop over cells; rows land at fixed indices so output order never
// depends on scheduling.
template <class CellFn>
void for_each_cell_parallel(std::size_t cell_count, int jobs, CellFn&& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || cell_count <= 1) {
        for (std::size_t i = 0; i < cell_count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::size_t worker_count =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), cell_count);
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
        workers.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cell_count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& worker : workers) worker.join();
    if (error) std::rethrow_exception(error);
}

ExperimentResult run_grid(const ExperimentSpec& spec, int jobs, std::ostream* log) {
    const std::vector<GridCell> cells = expand_grid(spec);
    std::vector<std::string> rows(cells.size() * static_cast<std::size_t>(spec.runs_per_cell));
    std::mutex log_mutex;

    for_each_cell_parallel(cells.size(), jobs, [&](std::size_t ci) {
        const GridCell& cell = cells[ci];
        bool regime_ok = false;
        if (spec.graph == GraphKind::kPlanted) {
            const RegimeCheck check =
                regime_check(cell.n, cell.k, cell.l, cell.p, cell.q);
            regime_ok = check.all_ok();
            if (!regime_ok && log != nullptr) {
                std::scoped_lock lock(log_mutex);
                *log << "warning: cell " << cell.index << " (n=" << cell.n << " k=" << cell.k
                     << " l=" << cell.l << " p=" << format_double(cell.p)
                     << " q=" << format_double(cell.q)
                     << ") is outside the recoverability regime\n";
            }
        }
        std::optional<Graph> shared;
        if (spec.shared_graph && spec.graph != GraphKind::kCycle)
            shared.emplace(build_graph(spec, cell, cell_graph_seed(spec.master_seed, cell.index)));
        else if (spec.graph == GraphKind::kCycle)
            shared.emplace(build_graph(spec, cell, 0));  // deterministic anyway
        for (int run = 0; run < spec.runs_per_cell; ++run) {
            rows[ci * static_cast<std::size_t>(spec.runs_per_cell) + static_cast<std::size_t>(run)] =
                run_grid_row(spec, cell, run, shared ? &*shared : nullptr, regime_ok);
        }
    });

    ExperimentResult result;
    result.rows = rows.size();
    std::string csv = spec_metadata(spec);
    csv += kGridHeader;
    csv += '\n';
    for (const std::string& row : rows) {
        csv += row;
        csv += '\n';
    }
    result.csv = std::move(csv);
    return result;
}

ExperimentResult run_lower_bound(const ExperimentSpec& spec, int jobs, std::ostream*) {
    std::vector<std::string> rows(spec.n.size());
    for_each_cell_parallel(spec.n.size(), jobs, [&](std::size_t i) {
        const long long n = spec.n[i];
        const LowerBoundReport report =
            lower_bound_demo(n, spec.runs_per_cell,
                             run_base_seed(spec.master_seed, static_cast<long long>(i), 0));
        std::string row = spec.name;
        row += ',';
        row += std::to_string(report.n);
        row += ',';
        row += std::to_string(report.runs);
        row += ',';
        row += format_double(report.mean_no_edge);
        row += ',';
        row += format_double(report.exact_no_edge);
        row += ',';
        row += format_double(report.no_edge_sample_sigma);
        row += ',';
        row += format_double(report.mean_adversarial_cut);
        row += ',';
        row += format_double(report.cut_per_n);
        row += ',';
        row += std::to_string(report.optimal_cut);
        rows[i] = std::move(row);
    });
    ExperimentResult result;
    result.rows = rows.size();
    result.csv = spec_metadata(spec);
    result.csv += kLowerBoundHeader;
    result.csv += '\n';
    for (const std::string& row : rows) {
        result.csv += row;
        result.csv += '\n';
    }
    return result;
}

ExperimentResult run_urn_suite(const ExperimentSpec& spec, int jobs, std::ostream*) {
    struct UrnCell {
        long long index;
        double gamma;
        int k;
        long long steps;
    };
    std::vector<UrnCell> cells;
    long long index = 0;
    for (long long steps : spec.n)
        for (int k : spec.k)
            for (double gamma : spec.gamma) cells.push_back({index++, gamma, k, steps});

    std::vector<std::string> blocks(cells.size());
    for_each_cell_parallel(cells.size(), jobs, [&](std::size_t ci) {
        const UrnCell& cell = cells[ci];
        std::string block;
        for (int run = 0; run < spec.runs_per_cell; ++run) {
            const std::uint64_t seed = run_base_seed(spec.master_seed, cell.index, run);
            const Trajectory traj = run_urn(cell.k, cell.gamma, {}, cell.steps, seed);
            const std::vector<double> fractions = traj.final_fractions();
            const DominanceReport report = dominance(traj.final_loads());
            double min_fraction = fractions.front();
            for (double f : fractions) min_fraction = std::min(min_fraction, f);
            block += spec.name;
            block += ',';
            block += format_double(cell.gamma);
            block += ',';
            block += std::to_string(cell.k);
            block += ',';
            block += std::to_string(cell.steps);
            block += ',';
            block += std::to_string(run);
            block += ',';
            block += std::to_string(seed);
            block += ',';
            block += format_double(report.fraction);
            block += ',';
            block += format_double(min_fraction);
            block += ',';
            block += std::to_string(report.dominant_bin);
            block += '\n';
        }
        blocks[ci] = std::move(block);
    });
    ExperimentResult result;
    result.csv = spec_metadata(spec);
    result.csv += kUrnHeader;
    result.csv += '\n';
    for (const std::string& block : blocks) result.csv += block;
    result.rows = cells.size() * static_cast<std::size_t>(spec.runs_per_cell);
    return result;
}

}  // namespace

GraphKind parse_graph_kind(const std::string& name) {
    if (name == "planted") return GraphKind::kPlanted;
    if (name == "gnp") return GraphKind::kGnp;
    if (name == "cycle") return GraphKind::kCycle;
    throw SpecError("unknown graph kind: " + name);
}

OrderKind parse_order_kind(const std::string& name) {
    if (name == "random") return OrderKind::kRandom;
    if (name == "adversarial") return OrderKind::kAdversarialCycle;
    throw SpecError("unknown order kind: " + name);
}

ExperimentMode parse_experiment_mode(const std::string& name) {
    if (name == "grid") return ExperimentMode::kGrid;
    if (name == "lower_bound") return ExperimentMode::kLowerBound;
    if (name == "urn_suite") return ExperimentMode::kUrnSuite;
    throw SpecError("unknown experiment mode: " + name);
}

std::string to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::kPlanted: return "planted";
        case GraphKind::kGnp: return "gnp";
        case GraphKind::kCycle: return "cycle";
    }
    throw std::logic_error("unreachable");
}

std::string to_string(OrderKind kind) {
    switch (kind) {
        case OrderKind::kRandom: return "random";
        case OrderKind::kAdversarialCycle: return "adversarial";
    }
    throw std::logic_error("unreachable");
}

std::string to_string(ExperimentMode mode) {
    switch (mode) {
        case ExperimentMode::kGrid: return "grid";
        case ExperimentMode::kLowerBound: return "lower_bound";
        case ExperimentMode::kUrnSuite: return "urn_suite";
    }
    throw std::logic_error("unreachable");
}

void ExperimentSpec::validate() const {
    if (runs_per_cell < 1) throw SpecError("spec: runs_per_cell must be >= 1");
    if (n.empty()) throw SpecError("spec: n grid must be nonempty");
    if (mode == ExperimentMode::kGrid) {
        if (k.empty() || l.empty() || p.empty() || q.empty() || epsilon.empty() ||
            algorithm.empty() || gamma.empty())
            throw SpecError("spec: empty grid dimension");
        for (long long size : n)
            if (size < 1) throw SpecError("spec: n must be >= 1");
        if (graph == GraphKind::kPlanted) {
            for (long long size : n)
                for (int clusters : l)
                    if (clusters < 1 || size % clusters != 0)
                        throw SpecError("spec: planted graphs need l | n");
        }
        if (order == OrderKind::kAdversarialCycle && graph != GraphKind::kCycle)
            throw SpecError("spec: adversarial order only applies to cycle graphs");
        for (double eps : epsilon)
            if (eps < 0.0) throw SpecError("spec: epsilon must be >= 0");
    } else if (mode == ExperimentMode::kLowerBound) {
        for (long long size : n)
            if (size < 100 || size % 2 != 0)
                throw SpecError("spec: lower_bound needs even n >= 100");
    } else {
        for (long long steps : n)
            if (steps < 1) throw SpecError("spec: urn_suite needs steps >= 1");
        for (double g : gamma)
            if (g < 0.0) throw SpecError("spec: urn gamma must be >= 0");
        for (int bins : k)
            if (bins < 1) throw SpecError("spec: urn k must be >= 1");
    }
}

std::uint64_t run_base_seed(std::uint64_t master, long long cell, int run) {
    return derive_seed(master, 2 * static_cast<std::uint64_t>(cell),
                       static_cast<std::uint64_t>(run));
}

std::uint64_t cell_graph_seed(std::uint64_t master, long long cell) {
    return derive_seed(master, 2 * static_cast<std::uint64_t>(cell) + 1, 0);
}

ExperimentResult run_experiment(const ExperimentSpec& spec, int jobs, std::ostream* log) {
    spec.validate();
    switch (spec.mode) {
        case ExperimentMode::kGrid: return run_grid(spec, jobs, log);
        case ExperimentMode::kLowerBound: return run_lower_bound(spec, jobs, log);
        case ExperimentMode::kUrnSuite: return run_urn_suite(spec, jobs, log);
    }
    throw std::logic_error("unreachable");
}

LowerBoundReport lower_bound_demo(long long n, int runs, std::uint64_t seed) {
    if (n < 100 || n % 2 != 0)
        throw std::invalid_argument("lower_bound_demo: n must be even and >= 100");
    if (runs < 1) throw std::invalid_argument("lower_bound_demo: runs must be >= 1");

    const Graph cycle = generate_cycle(static_cast<int>(n));
    LowerBoundReport report;
    report.n = n;
    report.runs = runs;
    report.exact_no_edge = expected_no_edge_arrivals(n);

    // (a) zero-edge arrivals under random orders
    std::vector<double> counts(static_cast<std::size_t>(runs), 0.0);
    for (int run = 0; run < runs; ++run) {
        const StreamOrder order =
            random_order(static_cast<int>(n), derive_seed(seed, 0, static_cast<std::uint64_t>(run)));
        long long zero_arrivals = 0;
        for_each_stream_event(cycle, order, [&](const StreamEvent& event) {
            if (event.revealed.empty()) ++zero_arrivals;
        });
        counts[static_cast<std::size_t>(run)] = static_cast<double>(zero_arrivals);
    }
    const double mean =
        std::accumulate(counts.begin(), counts.end(), 0.0) / static_cast<double>(runs);
    double var = 0.0;
    for (double c : counts) var += (c - mean) * (c - mean);
    var = runs > 1 ? var / static_cast<double>(runs - 1) : 0.0;
    report.mean_no_edge = mean;
    report.no_edge_sample_sigma = std::sqrt(var);

    // (b) argmax greedy under the odd-even adversarial order, strict balance
    const StreamOrder adversarial = adversarial_cycle_order(static_cast<int>(n));
    double total_cut = 0.0;
    for (int run = 0; run < runs; ++run) {
        PartitionerConfig config;
        config.kind = PartitionerKind::kArgmaxGreedy;
        config.k = 2;
        config.epsilon = 0.0;
        config.rng_seed = derive_seed(seed, 1, static_cast<std::uint64_t>(run));
        const PartitionState state = run_partitioner(cycle, adversarial, config);
        total_cut += static_cast<double>(edges_cut(cycle, state));
    }
    report.mean_adversarial_cut = total_cut / static_cast<double>(runs);
    report.cut_per_n = report.mean_adversarial_cut / static_cast<double>(n);
    return report;
}

ExperimentSpec parse_spec_file(std::istream& in) {
    ExperimentSpec spec;
    std::string line;
    int line_no = 0;
    const auto split_list = [](const std::string& text) {
        std::vector<std::string> items;
        std::string item;
        for (char c : text) {
            if (c == ',' || c == ' ' || c == '\t') {
                if (!item.empty()) items.push_back(std::exchange(item, {}));
            } else {
                item += c;
            }
        }
        if (!item.empty()) items.push_back(item);
        return items;
    };
    const auto parse_doubles = [&](const std::string& text) {
        std::vector<double> values;
        for (const std::string& item : split_list(text)) values.push_back(std::stod(item));
        return values;
    };
    const auto parse_ints = [&](const std::string& text) {
        std::vector<int> values;
        for (const std::string& item : split_list(text)) values.push_back(std::stoi(item));
        return values;
    };
    const auto parse_bool = [](const std::string& text) {
        if (text == "true" || text == "1") return true;
        if (text == "false" || text == "0") return false;
        throw SpecError("spec: bad boolean value: " + text);
    };

    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = true;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
            if (blank) continue;
            throw SpecError("spec line " + std::to_string(line_no) + ": expected key=value");
        }
        const auto trim = [](std::string text) {
            const auto first = text.find_first_not_of(" \t\r");
            const auto last = text.find_last_not_of(" \t\r");
            if (first == std::string::npos) return std::string();
            return text.substr(first, last - first + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "name") spec.name = value;
            else if (key == "mode") spec.mode = parse_experiment_mode(value);
            else if (key == "graph") spec.graph = parse_graph_kind(value);
            else if (key == "order") spec.order = parse_order_kind(value);
            else if (key == "n") {
                spec.n.clear();
                for (const std::string& item : split_list(value)) spec.n.push_back(std::stoll(item));
            }
            else if (key == "k") spec.k = parse_ints(value);
            else if (key == "l") spec.l = parse_ints(value);
            else if (key == "p") spec.p = parse_doubles(value);
            else if (key == "q") spec.q = parse_doubles(value);
            else if (key == "epsilon") spec.epsilon = parse_doubles(value);
            else if (key == "gamma") spec.gamma = parse_doubles(value);
            else if (key == "algorithm") {
                spec.algorithm.clear();
                for (const std::string& item : split_list(value))
                    spec.algorithm.push_back(parse_partitioner_kind(item));
            }
            else if (key == "runs") spec.runs_per_cell = std::stoi(value);
            else if (key == "master_seed") spec.master_seed = std::stoull(value);
            else if (key == "shared_graph") spec.shared_graph = parse_bool(value);
            else if (key == "timing") spec.timing = parse_bool(value);
            else if (key == "out") spec.out = value;
            else throw SpecError("spec line " + std::to_string(line_no) + ": unknown key " + key);
        } catch (const SpecError&) {
            throw;
        } catch (const std::exception& error) {
            throw SpecError("spec line " + std::to_string(line_no) + ": " + error.what());
        }
    }
    spec.validate();
    return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file: " + path);
    return parse_spec_file(in);
}

}  // namespace streampart
