#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "streampart/analysis.hpp"
#include "streampart/experiment.hpp"

using namespace streampart;

namespace {

ExperimentSpec tiny_gnp_spec() {
    ExperimentSpec spec;
    spec.name = "tiny";
    spec.graph = GraphKind::kGnp;
    spec.n = {100};
    spec.k = {2};
    spec.p = {0.05};
    spec.epsilon = {0.1};
    spec.algorithm = {PartitionerKind::kArgmaxGreedy};
    spec.runs_per_cell = 2;
    spec.master_seed = 99;
    return spec;
}

std::vector<std::string> data_rows(const std::string& csv) {
    std::vector<std::string> rows;
    std::istringstream in(csv);
    std::string line;
    bool past_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!past_header) {
            past_header = true;  // column header
            continue;
        }
        rows.push_back(line);
    }
    return rows;
}

std::vector<std::string> split_csv(const std::string& row) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : row) {
        if (c == ',') {
            fields.push_back(std::exchange(field, {}));
        } else {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

}  // namespace

TEST_CASE("experiment reruns are byte identical, independent of jobs") {
    const ExperimentSpec spec = tiny_gnp_spec();
    const ExperimentResult a = run_experiment(spec, 1);
    const ExperimentResult b = run_experiment(spec, 1);
    const ExperimentResult c = run_experiment(spec, 4);
    CHECK(a.csv == b.csv);
    CHECK(a.csv == c.csv);
    CHECK(a.rows == 2);
}

TEST_CASE("csv has the documented schema") {
    const ExperimentResult result = run_experiment(tiny_gnp_spec(), 1);
    std::istringstream in(result.csv);
    std::string line;
    bool found_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        CHECK(line ==
              "experiment,n,k,l,p,q,epsilon,algorithm,gamma,run,seed,edges_cut,cut_fraction,"
              "euclidean_error,full_fraction,regime_ok,wall_ms");
        found_header = true;
        break;
    }
    CHECK(found_header);
    const auto rows = data_rows(result.csv);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        const auto fields = split_csv(row);
        CHECK(fields.size() == 17);
        CHECK(fields[0] == "tiny");
        CHECK(fields[16] == "0");  // wall_ms deterministic by default
    }
}

TEST_CASE("extending runs_per_cell preserves earlier run seeds") {
    ExperimentSpec spec = tiny_gnp_spec();
    const ExperimentResult two = run_experiment(spec, 1);
    spec.runs_per_cell = 3;
    const ExperimentResult three = run_experiment(spec, 1);
    const auto rows2 = data_rows(two.csv);
    const auto rows3 = data_rows(three.csv);
    REQUIRE(rows3.size() == 3);
    CHECK(rows2[0] == rows3[0]);
    CHECK(rows2[1] == rows3[1]);
}

TEST_CASE("shared graphs change per cell, orders per run") {
    ExperimentSpec spec = tiny_gnp_spec();
    spec.shared_graph = true;
    spec.runs_per_cell = 3;
    const auto rows = data_rows(run_experiment(spec, 1).csv);
    REQUIRE(rows.size() == 3);
    // same graph, different orders: rows differ in run and seed fields
    CHECK(split_csv(rows[0])[10] != split_csv(rows[1])[10]);
}

TEST_CASE("regime_ok flags out-of-regime planted cells") {
    ExperimentSpec spec;
    spec.name = "regime";
    spec.graph = GraphKind::kPlanted;
    spec.n = {400};
    spec.k = {2};
    spec.l = {20};
    spec.p = {0.9};
    spec.q = {0.0, 0.4};  // q=0 inside; q=0.4 breaks the gap condition
    spec.epsilon = {0.5};
    spec.algorithm = {PartitionerKind::kArgmaxGreedy};
    spec.runs_per_cell = 1;
    std::ostringstream log;
    const auto rows = data_rows(run_experiment(spec, 1, &log).csv);
    REQUIRE(rows.size() == 2);
    CHECK(split_csv(rows[0])[15] == "1");
    CHECK(split_csv(rows[1])[15] == "0");
    CHECK(log.str().find("outside the recoverability regime") != std::string::npos);
}

TEST_CASE("presets carry the published parameters") {
    const ExperimentSpec fig5 = preset("fig5");
    CHECK(fig5.p == std::vector<double>{0.75});
    CHECK(fig5.q[0] == doctest::Approx(0.00015625));
    CHECK(fig5.k == std::vector<int>{8});
    CHECK(fig5.l == std::vector<int>{100});
    CHECK(fig5.n.front() == 400);
    CHECK(fig5.n.back() == 51200);
    CHECK(fig5.runs_per_cell == 25);
    CHECK(fig5.shared_graph);

    const ExperimentSpec fig1 = preset("fig1");
    CHECK(fig1.epsilon.front() == doctest::Approx(0.01));
    CHECK(fig1.epsilon.back() == doctest::Approx(0.5));
    CHECK(fig1.n == std::vector<long long>{4000, 8000, 16000});

    const ExperimentSpec fig4 = preset("fig4");
    CHECK(fig4.l == std::vector<int>{64});
    bool has_q02 = false;
    for (double q : fig4.q) has_q02 = has_q02 || q == 0.02;
    CHECK(has_q02);

    CHECK(preset("lower_bound").mode == ExperimentMode::kLowerBound);
    CHECK(preset("urn_suite").mode == ExperimentMode::kUrnSuite);
    CHECK_THROWS_AS(preset("fig7"), SpecError);
}

TEST_CASE("spec file parsing") {
    std::istringstream in(
        "# comment\n"
        "name = parsed\n"
        "graph = planted\n"
        "n = 400, 800\n"
        "k = 2\n"
        "l = 20\n"
        "p = 0.9\n"
        "q = 0.0\n"
        "epsilon = 0.2, 0.4\n"
        "algorithm = argmax, weighted_argmax\n"
        "runs = 3\n"
        "master_seed = 17\n"
        "shared_graph = true\n");
    const ExperimentSpec spec = parse_spec_file(in);
    CHECK(spec.name == "parsed");
    CHECK(spec.n == std::vector<long long>{400, 800});
    CHECK(spec.epsilon == std::vector<double>{0.2, 0.4});
    CHECK(spec.algorithm.size() == 2);
    CHECK(spec.master_seed == 17);
    CHECK(spec.shared_graph);

    std::istringstream bad_key("nonsense = 3\n");
    CHECK_THROWS_AS(parse_spec_file(bad_key), SpecError);
    std::istringstream bad_line("name\n");
    CHECK_THROWS_AS(parse_spec_file(bad_line), SpecError);
    std::istringstream bad_combo(
        "graph = planted\nn = 100\nl = 3\norder = adversarial\n");
    CHECK_THROWS_AS(parse_spec_file(bad_combo), SpecError);
}

TEST_CASE("lower bound demo matches the exact expectation") {
    const LowerBoundReport report = lower_bound_demo(1000, 20, 5);
    CHECK(report.exact_no_edge == doctest::Approx(expected_no_edge_arrivals(1000)));
    // loose 6-sigma band; the acceptance suite pins the 4-sigma version
    const double sigma_mean = report.no_edge_sample_sigma / std::sqrt(20.0);
    CHECK(std::abs(report.mean_no_edge - report.exact_no_edge) <= 6.0 * sigma_mean);
    CHECK(report.mean_adversarial_cut > 2.0);
    CHECK(report.optimal_cut == 2);
    CHECK_THROWS_AS(lower_bound_demo(999, 10, 1), std::invalid_argument);
}

TEST_CASE("urn suite emits one row per run") {
    ExperimentSpec spec;
    spec.name = "urn_mini";
    spec.mode = ExperimentMode::kUrnSuite;
    spec.n = {1000};
    spec.k = {2};
    spec.gamma = {0.5, 2.0};
    spec.runs_per_cell = 4;
    const ExperimentResult result = run_experiment(spec, 2);
    const auto rows = data_rows(result.csv);
    CHECK(rows.size() == 8);
    CHECK(split_csv(rows[0]).size() == 9);
}

TEST_CASE("validation rejects malformed grids") {
    ExperimentSpec spec = tiny_gnp_spec();
    spec.runs_per_cell = 0;
    CHECK_THROWS_AS(spec.validate(), SpecError);
    spec = tiny_gnp_spec();
    spec.n = {};
    CHECK_THROWS_AS(spec.validate(), SpecError);
    spec = tiny_gnp_spec();
    spec.graph = GraphKind::kPlanted;
    spec.l = {3};  // 3 does not divide 100
    CHECK_THROWS_AS(spec.validate(), SpecError);
}
