#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "streampart/analysis.hpp"
#include "streampart/experiment.hpp"
#include "streampart/format.hpp"
#include "streampart/generators.hpp"
#include "streampart/graph_io.hpp"
#include "streampart/metrics.hpp"
#include "streampart/urn.hpp"

namespace {

using nlohmann::json;
using namespace streampart;

constexpr int kExitOk = 0;
constexpr int kExitSpecError = 2;
constexpr int kExitRuntimeFault = 3;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

struct GenOptions {
    std::string type = "gnp";
    int n = 0;
    int l = 1;
    double p = 0.0;
    double q = 0.0;
    std::vector<int> sizes;
    bool multi_edge = false;
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const GenOptions& opt) {
    std::optional<Graph> graph;
    if (opt.type == "gnp") graph.emplace(generate_gnp(opt.n, opt.p, opt.multi_edge, opt.seed));
    else if (opt.type == "planted") {
        PlantedParams params;
        if (opt.sizes.empty()) {
            params = PlantedParams::equal_clusters(opt.n, opt.l, opt.p, opt.q);
        } else {
            params.n = opt.n;
            params.l = static_cast<int>(opt.sizes.size());
            params.p = opt.p;
            params.q = opt.q;
            params.sizes = opt.sizes;
        }
        graph.emplace(generate_planted(params, opt.seed));
    } else if (opt.type == "cycle") graph.emplace(generate_cycle(opt.n));
    else throw CLI::ValidationError("--type must be gnp, planted or cycle");

    if (opt.out.empty() || opt.out == "-") save_edge_list(*graph, std::cout);
    else save_edge_list_file(*graph, opt.out);
    std::cerr << "generated " << to_string(opt.type == "gnp" ? GraphKind::kGnp
                                           : opt.type == "cycle" ? GraphKind::kCycle
                                                                 : GraphKind::kPlanted)
              << " graph: n=" << graph->num_vertices() << " m=" << graph->num_edges()
              << " rng=" << kRngAlgorithm << '\n';
    return kExitOk;
}

struct PartitionOptions {
    std::string graph_path;
    std::string algorithm = "argmax";
    int k = 2;
    double epsilon = 0.0;
    double gamma = 1.0;
    std::uint64_t seed = 0;
    std::string order = "random";
    std::uint64_t order_seed = 0;
    std::string out;
};

int run_partition(const PartitionOptions& opt) {
    const Graph graph = load_edge_list_file(opt.graph_path);
    const StreamOrder order = opt.order == "adversarial"
                                  ? adversarial_cycle_order(graph.num_vertices())
                                  : random_order(graph.num_vertices(), opt.order_seed);
    PartitionerConfig config;
    config.kind = parse_partitioner_kind(opt.algorithm);
    config.k = opt.k;
    config.epsilon = opt.epsilon;
    config.gamma = opt.gamma;
    config.rng_seed = opt.seed;
    const PartitionState state = run_partitioner(graph, order, config);
    if (!opt.out.empty()) {
        std::ofstream out(opt.out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + opt.out + " for writing");
        save_partition(state, out);
    }
    const RunMetrics metrics = compute_run_metrics(graph, state);
    json report = {
        {"algorithm", opt.algorithm},
        {"k", state.k},
        {"capacity", state.capacity},
        {"loads", state.loads},
        {"edges_cut", metrics.edges_cut},
        {"cut_fraction", metrics.cut_fraction},
        {"full_fraction", metrics.full_fraction},
        {"rng", std::string(kRngAlgorithm)},
    };
    if (metrics.has_recovery) report["euclidean_error"] = metrics.euclidean_error;
    std::cout << report.dump(2) << '\n';
    return kExitOk;
}

struct UrnOptions {
    std::string process = "finite";  // finite | coupled
    int k = 2;
    double gamma = 1.0;
    long long steps = 0;
    std::vector<long long> initial;
    long long n = 0;
    double p = 0.0;
    std::string variant = "argmax";
    std::uint64_t seed = 0;
    std::string out;
};

int run_urn_cmd(const UrnOptions& opt) {
    Trajectory traj;
    if (opt.process == "finite") {
        traj = run_urn(opt.k, opt.gamma, opt.initial, opt.steps, opt.seed);
    } else if (opt.process == "coupled") {
        CoupledProcessConfig config;
        config.n = opt.n;
        config.p = opt.p;
        config.k = opt.k;
        config.variant = opt.variant == "proportional" ? CoupledVariant::kProportional
                                                       : CoupledVariant::kArgmax;
        config.rng_seed = opt.seed;
        traj = run_coupled(config);
    } else {
        throw CLI::ValidationError("--process must be finite or coupled");
    }
    write_text(opt.out, traj.to_csv());
    const DominanceReport report = dominance(traj.final_loads());
    std::cerr << "final dominant bin " << report.dominant_bin << " fraction "
              << format_double(report.fraction) << " delta " << format_double(report.delta)
              << '\n';
    return kExitOk;
}

json condition_json(const RegimeCondition& c) {
    return {{"ok", c.ok}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin}};
}

void print_calc(const char* op, json inputs, json result) {
    json doc = {{"op", op}, {"inputs", std::move(inputs)}, {"result", std::move(result)}};
    std::cout << doc.dump(2) << '\n';
}

void add_calc_subcommands(CLI::App& calc) {
    calc.require_subcommand(1);

    {
        auto* cmd = calc.add_subcommand("no-edge-expectation",
                                        "Expected zero-edge arrivals on a random-order cycle");
        auto n = std::make_shared<long long>(0);
        cmd->add_option("--n", *n)->required();
        cmd->callback([n]() {
            const double value = expected_no_edge_arrivals(*n);
            print_calc("no_edge_expectation", {{"n", *n}},
                       {{"expectation", value}, {"per_vertex", value / static_cast<double>(*n)}});
        });
    }
    {
        auto* cmd = calc.add_subcommand("majority-exact", "Exact majority probability of a biased split");
        auto j = std::make_shared<int>(0);
        auto delta = std::make_shared<double>(0.0);
        cmd->add_option("--j", *j)->required();
        cmd->add_option("--delta", *delta)->required();
        cmd->callback([j, delta]() {
            print_calc("majority_win_prob", {{"j", *j}, {"delta", *delta}},
                       {{"probability", majority_win_prob(*j, *delta)},
                        {"tie_excluded_odds", majority_tie_excluded_odds(*j, *delta)}});
        });
    }
    {
        auto* cmd = calc.add_subcommand("majority-bound", "Closed-form lower bound on the majority odds");
        auto j = std::make_shared<int>(0);
        auto delta = std::make_shared<double>(0.0);
        cmd->add_option("--j", *j)->required();
        cmd->add_option("--delta", *delta)->required();
        cmd->callback([j, delta]() {
            print_calc("majority_odds_bound", {{"j", *j}, {"delta", *delta}},
                       {{"bound", majority_odds_bound(*j, *delta)}});
        });
    }
    {
        auto* cmd = calc.add_subcommand("regime", "Recoverability conditions for the planted model");
        auto n = std::make_shared<long long>(0);
        auto k = std::make_shared<int>(0);
        auto l = std::make_shared<int>(0);
        auto p = std::make_shared<double>(0.0);
        auto q = std::make_shared<double>(0.0);
        auto n0 = std::make_shared<double>(1.0);
        cmd->add_option("--n", *n)->required();
        cmd->add_option("--k", *k)->required();
        cmd->add_option("--l", *l)->required();
        cmd->add_option("--p", *p)->required();
        cmd->add_option("--q", *q)->required();
        cmd->add_option("--n0", *n0);
        cmd->callback([n, k, l, p, q, n0]() {
            const RegimeCheck check = regime_check(*n, *k, *l, *p, *q, *n0);
            print_calc("regime_check",
                       {{"n", *n}, {"k", *k}, {"l", *l}, {"p", *p}, {"q", *q}, {"n0", *n0},
                        {"log_base", "e"}},
                       {{"cluster_size", check.cluster_size},
                        {"density", condition_json(check.density)},
                        {"gap", condition_json(check.gap)},
                        {"cluster_count", condition_json(check.cluster_count)},
                        {"q_small", condition_json(check.q_small)},
                        {"all_ok", check.all_ok()}});
        });
    }
    {
        auto* cmd = calc.add_subcommand("convergence-balls", "Balls until all-but-delta dominance");
        auto lambda = std::make_shared<double>(0.0);
        auto eps0 = std::make_shared<double>(0.0);
        auto delta = std::make_shared<double>(0.0);
        auto n0 = std::make_shared<double>(1.0);
        cmd->add_option("--lambda", *lambda)->required();
        cmd->add_option("--eps0", *eps0)->required();
        cmd->add_option("--delta", *delta)->required();
        cmd->add_option("--n0", *n0);
        cmd->callback([lambda, eps0, delta, n0]() {
            const BallCount balls = dominance_ball_count(*lambda, *eps0, *delta, *n0);
            print_calc("convergence_balls",
                       {{"lambda", *lambda}, {"eps0", *eps0}, {"delta", *delta}, {"n0", *n0}},
                       {{"x", balls.x}, {"z", balls.z}, {"balls", balls.balls}});
        });
    }
    {
        auto* cmd = calc.add_subcommand("convergence-balls-kbins", "Ball count specialized to k bins (eps0=1/(5 lambda), delta=1/k)");
        auto lambda = std::make_shared<double>(2.0);
        auto k = std::make_shared<int>(0);
        auto l = std::make_shared<int>(0);
        auto n0 = std::make_shared<double>(1.0);
        cmd->add_option("--lambda", *lambda);
        cmd->add_option("--k", *k)->required();
        cmd->add_option("--l", *l)->required();
        cmd->add_option("--n0", *n0);
        cmd->callback([lambda, k, l, n0]() {
            print_calc("dominance_ball_count_kbins",
                       {{"lambda", *lambda}, {"k", *k}, {"l", *l}, {"n0", *n0}, {"log_base", "e"}},
                       {{"constant", dominance_ball_constant(*lambda)},
                        {"exponent", dominance_ball_exponent(*lambda)},
                        {"balls", dominance_ball_count_kbins(*lambda, *k, *l, *n0)}});
        });
    }
    {
        auto* cmd = calc.add_subcommand("gamma-delta", "Dominance-gap conversion between 2 and k bins");
        auto value = std::make_shared<double>(0.0);
        auto k = std::make_shared<int>(0);
        auto direction = std::make_shared<std::string>("delta_to_gamma");
        cmd->add_option("--value", *value)->required();
        cmd->add_option("--k", *k)->required();
        cmd->add_option("--direction", *direction)
            ->check(CLI::IsMember({"delta_to_gamma", "gamma_to_delta"}));
        cmd->callback([value, k, direction]() {
            const double converted = *direction == "delta_to_gamma"
                                         ? gamma_from_delta(*value, *k)
                                         : delta_from_gamma(*value, *k);
            print_calc("gamma_delta_convert",
                       {{"value", *value}, {"k", *k}, {"direction", *direction}},
                       {{"converted", converted}});
        });
    }
    {
        auto* cmd = calc.add_subcommand("q-bound", "Inter-cluster probability bound");
        auto k = std::make_shared<int>(0);
        auto l = std::make_shared<int>(0);
        auto n0 = std::make_shared<double>(1.0);
        cmd->add_option("--k", *k)->required();
        cmd->add_option("--l", *l)->required();
        cmd->add_option("--n0", *n0);
        cmd->callback([k, l, n0]() {
            print_calc("q_bound", {{"k", *k}, {"l", *l}, {"n0", *n0}, {"log_base", "e"}},
                       {{"adjusted_n0", adjusted_n0(*k, *l, *n0)}, {"q_bound", inter_cluster_q_bound(*k, *l, *n0)}});
        });
    }
    {
        auto* cmd = calc.add_subcommand("t-thresholds", "Good/bad edge dominance window");
        auto n = std::make_shared<long long>(0);
        auto k = std::make_shared<int>(0);
        auto p = std::make_shared<double>(0.0);
        auto q = std::make_shared<double>(0.0);
        auto l = std::make_shared<int>(0);
        auto cluster = std::make_shared<double>(0.0);
        auto delta = std::make_shared<double>(0.0);
        cmd->add_option("--n", *n)->required();
        cmd->add_option("--k", *k)->required();
        cmd->add_option("--p", *p)->required();
        cmd->add_option("--q", *q)->required();
        cmd->add_option("--l", *l)->required();
        cmd->add_option("--cluster-size", *cluster)->required();
        cmd->add_option("--delta", *delta)->required();
        cmd->callback([n, k, p, q, l, cluster, delta]() {
            const TThresholds t = edge_dominance_window(*n, *k, *p, *q, *l, *cluster, *delta);
            print_calc("t_thresholds",
                       {{"n", *n}, {"k", *k}, {"p", *p}, {"q", *q}, {"l", *l},
                        {"cluster_size", *cluster}, {"delta", *delta}, {"log_base", "e"}},
                       {{"t_good", t.t_good}, {"t_bad", t.t_bad}, {"feasible", t.feasible}});
        });
    }
    {
        auto* cmd = calc.add_subcommand("x-separation", "Required majority margin when bad edges start");
        auto p = std::make_shared<double>(0.0);
        auto q = std::make_shared<double>(0.0);
        auto l = std::make_shared<double>(0.0);
        cmd->add_option("--p", *p)->required();
        cmd->add_option("--q", *q)->required();
        cmd->add_option("--l", *l)->required();
        cmd->callback([p, q, l]() {
            const Separation sep = required_separation(*p, *q, *l);
            print_calc("x_separation", {{"p", *p}, {"q", *q}, {"l", *l}},
                       {{"vacuous", sep.vacuous}, {"x", sep.x}});
        });
    }
    {
        auto* cmd = calc.add_subcommand("max-load", "Balls-into-bins maximum load estimate");
        auto balls = std::make_shared<double>(0.0);
        auto bins = std::make_shared<double>(0.0);
        cmd->add_option("--balls", *balls)->required();
        cmd->add_option("--bins", *bins)->required();
        cmd->callback([balls, bins]() {
            const MaxLoadPrediction pred = max_load_prediction(*balls, *bins);
            print_calc("max_load", {{"balls", *balls}, {"bins", *bins}, {"log_base", "e"}},
                       {{"value", pred.value}, {"sparse_regime", pred.sparse_regime}});
        });
    }
}

struct ExperimentOptions {
    std::string preset_name;
    std::string spec_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    int jobs = 1;
    bool timing = false;
};

int run_experiment_cmd(const ExperimentOptions& opt) {
    ExperimentSpec spec;
    if (!opt.preset_name.empty()) spec = preset(opt.preset_name);
    else if (!opt.spec_path.empty()) spec = parse_spec_file(opt.spec_path);
    else throw SpecError("experiment: need --preset or --spec");
    if (opt.seed) spec.master_seed = *opt.seed;
    if (!opt.out.empty()) spec.out = opt.out;
    if (opt.timing) spec.timing = true;
    if (spec.out.empty()) throw SpecError("experiment: no output path (--out)");

    const ExperimentResult result = run_experiment(spec, opt.jobs, &std::cerr);
    write_text(spec.out, result.csv);
    std::cerr << "wrote " << result.rows << " rows to " << spec.out << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streampart: streaming balanced graph partitioning simulator"};
    app.require_subcommand(1);

    GenOptions gen_opt;
    auto* gen = app.add_subcommand("gen", "Generate a graph and write it as an edge list");
    gen->add_option("--type", gen_opt.type, "gnp | planted | cycle")
        ->check(CLI::IsMember({"gnp", "planted", "cycle"}));
    gen->add_option("--n", gen_opt.n, "vertex count")->required();
    gen->add_option("--l", gen_opt.l, "cluster count (planted)");
    gen->add_option("--p", gen_opt.p, "edge probability (gnp) / intra-cluster (planted)");
    gen->add_option("--q", gen_opt.q, "inter-cluster probability (planted)");
    gen->add_option("--sizes", gen_opt.sizes, "explicit cluster sizes (planted; overrides --l)")
        ->delimiter(',');
    gen->add_flag("--multi-edge", gen_opt.multi_edge, "tag as multi-edge convention");
    gen->add_option("--seed", gen_opt.seed, "rng seed");
    gen->add_option("--out", gen_opt.out, "output path (default stdout)");

    PartitionOptions part_opt;
    auto* part = app.add_subcommand("partition", "Stream a graph file through a partitioner");
    part->add_option("--graph", part_opt.graph_path, "edge-list file")->required();
    part->add_option("--algorithm", part_opt.algorithm,
                     "argmax | proportional | gamma | weighted_argmax | weighted_proportional | "
                     "random_baseline");
    part->add_option("--k", part_opt.k, "partition count");
    part->add_option("--epsilon", part_opt.epsilon, "capacity slack");
    part->add_option("--gamma", part_opt.gamma, "exponent for the gamma rule");
    part->add_option("--seed", part_opt.seed, "algorithm rng seed");
    part->add_option("--order", part_opt.order, "random | adversarial")
        ->check(CLI::IsMember({"random", "adversarial"}));
    part->add_option("--order-seed", part_opt.order_seed, "stream order seed");
    part->add_option("--out", part_opt.out, "partition output path");

    UrnOptions urn_opt;
    auto* urn = app.add_subcommand("urn", "Run an urn or coupled process, write the trajectory CSV");
    urn->add_option("--process", urn_opt.process, "finite | coupled")
        ->check(CLI::IsMember({"finite", "coupled"}));
    urn->add_option("--k", urn_opt.k, "bin / partition count");
    urn->add_option("--gamma", urn_opt.gamma, "urn exponent (finite)");
    urn->add_option("--steps", urn_opt.steps, "balls to throw (finite)");
    urn->add_option("--initial", urn_opt.initial, "initial loads (finite; default one per bin)");
    urn->add_option("--n", urn_opt.n, "steps (coupled)");
    urn->add_option("--p", urn_opt.p, "edge probability (coupled)");
    urn->add_option("--variant", urn_opt.variant, "argmax | proportional (coupled)")
        ->check(CLI::IsMember({"argmax", "proportional"}));
    urn->add_option("--seed", urn_opt.seed, "rng seed");
    urn->add_option("--out", urn_opt.out, "trajectory CSV path (default stdout)");

    auto* calc = app.add_subcommand("calc", "Closed-form bound calculators (JSON output)");
    add_calc_subcommands(*calc);

    ExperimentOptions exp_opt;
    auto* experiment = app.add_subcommand("experiment", "Run an experiment grid, write CSV");
    experiment->add_option("--preset", exp_opt.preset_name, "fig1..fig6, lower_bound, urn_suite");
    experiment->add_option("--spec", exp_opt.spec_path, "key=value spec file");
    std::uint64_t seed_value = 0;
    auto* seed_option = experiment->add_option("--seed", seed_value, "master seed override");
    experiment->add_option("--out", exp_opt.out, "output CSV path override");
    experiment->add_option("--jobs", exp_opt.jobs, "worker threads (0 = hardware)");
    experiment->add_flag("--timing", exp_opt.timing,
                         "record wall times in wall_ms (breaks byte determinism)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? kExitOk : kExitSpecError;
    }

    try {
        if (gen->parsed()) return run_gen(gen_opt);
        if (part->parsed()) return run_partition(part_opt);
        if (urn->parsed()) return run_urn_cmd(urn_opt);
        if (calc->parsed()) return kExitOk;  // callbacks already ran
        if (experiment->parsed()) {
            if (seed_option->count() > 0) exp_opt.seed = seed_value;
            if (exp_opt.jobs == 0)
                exp_opt.jobs = static_cast<int>(std::thread::hardware_concurrency());
            return run_experiment_cmd(exp_opt);
        }
    } catch (const SpecError& error) {
        std::cerr << "spec error: " << error.what() << '\n';
        return kExitSpecError;
    } catch (const std::invalid_argument& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitSpecError;
    } catch (const std::exception& error) {
        std::cerr << "runtime fault: " << error.what() << '\n';
        return kExitRuntimeFault;
    }
    return kExitOk;
}
