#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "streampart/partition.hpp"

namespace streampart {

enum class GraphKind { kPlanted, kGnp, kCycle };
enum class OrderKind { kRandom, kAdversarialCycle };
enum class ExperimentMode { kGrid, kLowerBound, kUrnSuite };

GraphKind parse_graph_kind(const std::string& name);
OrderKind parse_order_kind(const std::string& name);
ExperimentMode parse_experiment_mode(const std::string& name);
std::string to_string(GraphKind kind);
std::string to_string(OrderKind kind);
std::string to_string(ExperimentMode mode);

// Raised for malformed specs / unknown presets; the CLI maps it to exit 2.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter grid plus replication plan. Grid cells are all combinations of
// the list-valued fields, expanded n -> k -> l -> p -> q -> epsilon ->
// algorithm -> gamma (rightmost fastest). In kUrnSuite mode `n` holds the
// step counts and `gamma` the urn exponents.
struct ExperimentSpec {
    std::string name = "experiment";
    ExperimentMode mode = ExperimentMode::kGrid;
    GraphKind graph = GraphKind::kPlanted;
    OrderKind order = OrderKind::kRandom;
    std::vector<long long> n;
    std::vector<int> k{2};
    std::vector<int> l{1};
    std::vector<double> p{0.0};
    std::vector<double> q{0.0};
    std::vector<double> epsilon{0.0};
    std::vector<PartitionerKind> algorithm{PartitionerKind::kArgmaxGreedy};
    std::vector<double> gamma{1.0};
    int runs_per_cell = 25;
    std::uint64_t master_seed = 0;
    bool shared_graph = false;  // one graph per cell instead of per run
    bool timing = false;        // populate wall_ms (breaks byte-determinism)
    std::string out;

    void validate() const;
};

// Built-in experiment definitions reproducing the published plots plus the
// lower-bound and urn suites. Unknown names raise SpecError.
ExperimentSpec preset(const std::string& name);
std::vector<std::string> preset_names();

// Flat key=value spec format ('#' comments, lists comma separated).
ExperimentSpec parse_spec_file(std::istream& in);
ExperimentSpec parse_spec_file(const std::string& path);

struct ExperimentResult {
    std::string csv;       // complete file: metadata comments, header, rows
    std::size_t rows = 0;
};

// Runs every (cell, run) and assembles the CSV. Deterministic given the spec
// (including the worker count). Warnings (e.g. regime violations) go to
// `log` when provided.
ExperimentResult run_experiment(const ExperimentSpec& spec, int jobs = 1,
                                std::ostream* log = nullptr);

// Cycle lower-bound demonstration: mean zero-edge arrivals under random
// orders against the exact expectation, and the adversarial-order cut of the
// argmax rule against the optimal cut of 2.
struct LowerBoundReport {
    long long n = 0;
    int runs = 0;
    double mean_no_edge = 0.0;
    double exact_no_edge = 0.0;
    double no_edge_sample_sigma = 0.0;  // std deviation of per-run counts
    double mean_adversarial_cut = 0.0;
    double cut_per_n = 0.0;
    long long optimal_cut = 2;
};

LowerBoundReport lower_bound_demo(long long n, int runs, std::uint64_t seed);

// Seed derivation used by the harness, exposed so results can be reproduced
// row by row: run_base = derive_seed(master, 2*cell, run); the shared graph
// seed of a cell is derive_seed(master, 2*cell+1, 0).
std::uint64_t run_base_seed(std::uint64_t master, long long cell, int run);
std::uint64_t cell_graph_seed(std::uint64_t master, long long cell);

}  // namespace streampart
