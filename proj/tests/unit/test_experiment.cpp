#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "mlgs/exact_oracle.hpp"
#include "mlgs/experiment.hpp"
#include "mlgs/json_io.hpp"
#include "support/random_graphs.hpp"

using namespace mlgs;

namespace {

TwoLayerGraph blue_triangle() {
    GraphBuilder b(3);
    b.add_blue_edge(0, 1);
    b.add_blue_edge(1, 2);
    b.add_blue_edge(0, 2);
    return b.build();
}

// runner that ignores the walk entirely and reports weights proportional to
// the exact counts, so every defined metric cell must come out (near) zero
TrialRunner truth_echo_runner(const GroundTruth& truth, bool count_mode) {
    return [truth, count_mode](WalkModel algo, const TwoLayerGraph& g, std::uint64_t,
                               std::span<const std::uint64_t> checkpoints, std::uint64_t,
                               std::uint64_t) -> std::vector<std::array<double, kNumGraphletTypes>> {
        const double m_const = count_mode ? compute_M(g, algo) : 1.0;
        std::vector<std::array<double, kNumGraphletTypes>> snaps;
        for (std::uint64_t cp : checkpoints) {
            std::array<double, kNumGraphletTypes> w{};
            for (int i = 0; i < 14; ++i)
                w[i] = count_mode ? double(truth.counts[i]) * double(cp) / m_const : double(truth.counts[i]);
            snaps.push_back(w);
        }
        return snaps;
    };
}

bool same_cell(const MetricCell& a, const MetricCell& b) {
    auto eq = [](double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; };
    return a.algo == b.algo && a.type == b.type && a.checkpoint == b.checkpoint && eq(a.mre, b.mre) &&
           eq(a.nrmse, b.nrmse);
}

const MetricCell& cell_at(const MetricSeries& s, WalkModel algo, int type, std::uint64_t cp) {
    for (const MetricCell& c : s.cells)
        if (c.algo == algo && c.type == type && c.checkpoint == cp) return c;
    throw std::logic_error("cell not found");
}

} // namespace

TEST_SUITE("experiment") {

TEST_CASE("checkpoint grid covers the final step") {
    ExperimentPlan plan;
    plan.trials = 1;
    plan.steps = 1000;
    plan.checkpoint_stride = 300;
    plan.threads = 1;
    const TwoLayerGraph g = blue_triangle();
    const GroundTruth truth = count_exact(g, 1);
    const MetricSeries s = run_experiment(g, truth, plan, truth_echo_runner(truth, false));
    CHECK(s.checkpoints == std::vector<std::uint64_t>{300, 600, 900, 1000});

    ExperimentPlan even = plan;
    even.steps = 800;
    even.checkpoint_stride = 400;
    const MetricSeries s2 = run_experiment(g, truth, even, truth_echo_runner(truth, false));
    CHECK(s2.checkpoints == std::vector<std::uint64_t>{400, 800});
}

TEST_CASE("truth-echo runner scores zero error, absent types score nan") {
    const TwoLayerGraph g = testsupport::random_connected_two_layer(3, 12, 6, 8);
    const GroundTruth truth = count_exact(g, 1);
    ExperimentPlan plan;
    plan.trials = 4;
    plan.steps = 600;
    plan.checkpoint_stride = 200;
    plan.threads = 2;

    for (bool count_mode : {false, true}) {
        CAPTURE(count_mode);
        plan.count_mode = count_mode;
        const MetricSeries s = run_experiment(g, truth, plan, truth_echo_runner(truth, count_mode));
        CHECK(s.cells.size() == plan.algos.size() * 14 * s.checkpoints.size());
        std::size_t defined = 0, absent = 0;
        for (const MetricCell& c : s.cells) {
            if (truth.counts[c.type - 1] == 0) {
                CHECK(std::isnan(c.mre));
                CHECK(std::isnan(c.nrmse));
                ++absent;
            } else {
                CHECK(c.mre <= 1e-12);
                CHECK(c.nrmse <= 1e-12);
                ++defined;
            }
        }
        CHECK(defined > 0);
        CHECK(absent > 0); // a 12-identity graph cannot host all 14 types
    }
}

TEST_CASE("csv layout") {
    const TwoLayerGraph g = blue_triangle(); // only type 6 present: 13 nan types
    const GroundTruth truth = count_exact(g, 1);
    ExperimentPlan plan;
    plan.algos = {WalkModel::rwnbn, WalkModel::rwnr};
    plan.trials = 2;
    plan.steps = 400;
    plan.checkpoint_stride = 200;
    plan.threads = 1;
    const MetricSeries s = run_experiment(g, truth, plan, truth_echo_runner(truth, false));

    const std::string path = "experiment_test_results.csv";
    write_results_csv(s, path);
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);
    CHECK(line == "algo,type,checkpoint,metric,value");
    std::size_t rows = 0, nan_rows = 0;
    while (std::getline(f, line)) {
        ++rows;
        if (line.find(",nan") != std::string::npos) ++nan_rows;
    }
    f.close();
    std::filesystem::remove(path);
    CHECK(rows == 2 * 14 * 2 * 2); // algos * types * checkpoints * metrics
    CHECK(nan_rows == 2 * 13 * 2 * 2);
}

TEST_CASE("results json round trip") {
    const TwoLayerGraph g = testsupport::random_connected_two_layer(8, 10, 5, 6);
    const GroundTruth truth = count_exact(g, 1);
    ExperimentPlan plan;
    plan.algos = {WalkModel::rwomrn, WalkModel::rwebe};
    plan.trials = 3;
    plan.steps = 500;
    plan.checkpoint_stride = 250;
    plan.base_seed = 77;
    plan.burn_in = 10;
    plan.threads = 1;
    const MetricSeries s = run_experiment(g, truth, plan, default_trial_runner());

    const std::string path = "experiment_test_results.json";
    write_results_json(s, path);
    const MetricSeries r = load_results_json(path);
    std::filesystem::remove(path);

    CHECK(r.plan.algos == s.plan.algos);
    CHECK(r.plan.trials == s.plan.trials);
    CHECK(r.plan.steps == s.plan.steps);
    CHECK(r.plan.checkpoint_stride == s.plan.checkpoint_stride);
    CHECK(r.plan.base_seed == s.plan.base_seed);
    CHECK(r.plan.burn_in == s.plan.burn_in);
    CHECK(r.plan.count_mode == s.plan.count_mode);
    CHECK(r.checkpoints == s.checkpoints);
    CHECK(r.truth_counts == s.truth_counts);
    for (int i = 0; i < kNumGraphletTypes; ++i) {
        if (std::isnan(s.truth_d[i])) CHECK(std::isnan(r.truth_d[i]));
        else CHECK(r.truth_d[i] == s.truth_d[i]);
    }
    CHECK(r.graph_identities == s.graph_identities);
    CHECK(r.graph_blue_edges == s.graph_blue_edges);
    CHECK(r.graph_red_edges == s.graph_red_edges);
    CHECK(r.m_by_algo == s.m_by_algo);
    REQUIRE(r.cells.size() == s.cells.size());
    for (std::size_t i = 0; i < s.cells.size(); ++i) CHECK(same_cell(r.cells[i], s.cells[i]));
}

TEST_CASE("thread count does not change the results") {
    const TwoLayerGraph g = testsupport::random_connected_two_layer(5, 14, 8, 10);
    const GroundTruth truth = count_exact(g, 1);
    ExperimentPlan plan;
    plan.algos = {WalkModel::rwnbn, WalkModel::rwmix};
    plan.trials = 6;
    plan.steps = 400;
    plan.checkpoint_stride = 200;
    plan.base_seed = 4;

    plan.threads = 1;
    const MetricSeries a = run_experiment(g, truth, plan, default_trial_runner());
    plan.threads = 3;
    const MetricSeries b = run_experiment(g, truth, plan, default_trial_runner());
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) CHECK(same_cell(a.cells[i], b.cells[i]));
}

TEST_CASE("nrmse dominates mre") {
    const TwoLayerGraph g = testsupport::random_connected_two_layer(5, 14, 8, 10);
    const GroundTruth truth = count_exact(g, 1);
    ExperimentPlan plan;
    plan.trials = 8;
    plan.steps = 600;
    plan.checkpoint_stride = 300;
    plan.threads = 2;
    plan.base_seed = 12;
    const MetricSeries s = run_experiment(g, truth, plan, default_trial_runner());
    std::size_t checked = 0;
    for (const MetricCell& c : s.cells) {
        if (std::isnan(c.mre)) continue;
        CHECK(c.nrmse >= c.mre - 1e-12); // root-mean-square dominates the mean
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("error shrinks roughly like the square root of the walk length") {
    const TwoLayerGraph g = testsupport::random_connected_two_layer(21, 24, 20, 16);
    const GroundTruth truth = count_exact(g, 1);
    ExperimentPlan plan;
    plan.algos = {WalkModel::rwnbn};
    plan.trials = 24;
    plan.steps = 1600;
    plan.checkpoint_stride = 100;
    plan.threads = 2;
    plan.base_seed = 9;
    const MetricSeries s = run_experiment(g, truth, plan, default_trial_runner());

    // type 1 (blue path) is plentiful, so its MRE curve is stable enough to
    // see the 1/sqrt(T) trend: 16x the steps, about 4x less error
    const double early = cell_at(s, WalkModel::rwnbn, 1, 100).mre;
    const double late = cell_at(s, WalkModel::rwnbn, 1, 1600).mre;
    REQUIRE(!std::isnan(early));
    REQUIRE(!std::isnan(late));
    CHECK(late > 0);
    const double ratio = early / late;
    CHECK(ratio > 1.8);
    CHECK(ratio < 11.0);
}

TEST_CASE("plan validation and runner failure") {
    const TwoLayerGraph g = blue_triangle();
    const GroundTruth truth = count_exact(g, 1);
    ExperimentPlan plan;
    plan.trials = 1;
    plan.steps = 100;
    plan.checkpoint_stride = 50;
    plan.threads = 1;

    ExperimentPlan bad = plan;
    bad.algos.clear();
    CHECK_THROWS_AS(run_experiment(g, truth, bad), std::invalid_argument);
    bad = plan;
    bad.trials = 0;
    CHECK_THROWS_AS(run_experiment(g, truth, bad), std::invalid_argument);
    bad = plan;
    bad.checkpoint_stride = 0;
    CHECK_THROWS_AS(run_experiment(g, truth, bad), std::invalid_argument);

    const TrialRunner broken = [](WalkModel, const TwoLayerGraph&, std::uint64_t,
                                  std::span<const std::uint64_t>, std::uint64_t,
                                  std::uint64_t) -> std::vector<std::array<double, kNumGraphletTypes>> {
        throw std::runtime_error("boom");
    };
    CHECK_THROWS_WITH_AS(run_experiment(g, truth, plan, broken), "experiment trial failed: boom",
                         std::runtime_error);

    const TrialRunner short_runner = [](WalkModel, const TwoLayerGraph&, std::uint64_t,
                                        std::span<const std::uint64_t>, std::uint64_t,
                                        std::uint64_t) -> std::vector<std::array<double, kNumGraphletTypes>> {
        return {};
    };
    CHECK_THROWS_AS(run_experiment(g, truth, plan, short_runner), std::runtime_error);
}

TEST_CASE("emit_report writes the full bundle") {
    const TwoLayerGraph g = testsupport::random_connected_two_layer(8, 10, 5, 6);
    const GroundTruth truth = count_exact(g, 1);
    ExperimentPlan plan;
    plan.algos = {WalkModel::rwnbn, WalkModel::rwnr};
    plan.trials = 2;
    plan.steps = 300;
    plan.checkpoint_stride = 150;
    plan.threads = 1;
    const MetricSeries s = run_experiment(g, truth, plan, default_trial_runner());

    const std::string dir = "experiment_report_dir";
    emit_report(s, dir);
    namespace fs = std::filesystem;
    CHECK(fs::exists(dir + "/results.csv"));
    CHECK(fs::exists(dir + "/results.json"));
    for (const char* algo : {"rwnbn", "rwnr"})
        for (const char* kind : {"_mre.svg", "_nrmse.svg", "_scatter.svg"}) {
            const std::string p = dir + "/" + algo + kind;
            REQUIRE(fs::exists(p));
            std::ifstream f(p);
            std::string head;
            std::getline(f, head);
            CHECK(head.find("<svg") != std::string::npos);
        }
    fs::remove_all(dir);
}

} // TEST_SUITE

TEST_SUITE("jsonio") {

TEST_CASE("estimate round trip") {
    ConcentrationEstimate e;
    e.algo = WalkModel::rwmix;
    e.steps = 1234;
    e.seed = 99;
    for (int i = 0; i < kNumGraphletTypes; ++i) {
        e.weight[i] = 0.5 * i;
        e.d_hat[i] = i / 120.0;
    }
    e.degenerate_states = 17;
    e.unweighted_states = 3;
    e.query_stats.blue_neighbor_queries = 10;
    e.query_stats.red_of_blue_queries = 20;
    e.query_stats.red_of_red_queries = 30;
    e.query_stats.pair_probe_queries = 40;

    const nlohmann::json j = to_json(e);
    CHECK(j.at("algo") == "rwmix");
    CHECK(j.at("query_stats").at("total") == 100);

    const ConcentrationEstimate r = estimate_from_json(j);
    CHECK(r.algo == e.algo);
    CHECK(r.steps == e.steps);
    CHECK(r.seed == e.seed);
    CHECK(r.weight == e.weight);
    CHECK(r.d_hat == e.d_hat);
    CHECK(r.degenerate_states == e.degenerate_states);
    CHECK(r.unweighted_states == e.unweighted_states);
    CHECK(r.query_stats.total() == 100);
    CHECK(r.query_stats.red_of_red_queries == 30);
}

TEST_CASE("ground truth json carries the derived vectors") {
    GroundTruth t;
    t.counts[0] = 6; // type 1
    t.counts[5] = 3; // type 6
    t.counts[14] = 1; // type 15, excluded from the restricted family
    const nlohmann::json j = to_json(t);
    CHECK(j.at("total") == 10);
    CHECK(j.at("total_restricted") == 9);
    CHECK(j.at("concentrations").at(0).get<double>() == doctest::Approx(0.6));
    CHECK(j.at("concentrations_restricted").at(0).get<double>() == doctest::Approx(6.0 / 9.0));
    CHECK(ground_truth_from_json(j).counts == t.counts);
}

TEST_CASE("bound diagnostics emit null for infinities") {
    BoundDiagnostics d;
    d.M = 12.5;
    d.H = 100.0;
    d.alpha_min = 1.0;
    for (int i = 0; i < kNumGraphletTypes; ++i) {
        d.lambda[i] = i == 3 ? 0.0 : 2.0;
        d.h_over_lambda[i] = i == 3 ? std::numeric_limits<double>::infinity() : 50.0;
    }
    const nlohmann::json j = to_json(d);
    CHECK(j.at("M") == 12.5);
    CHECK(j.at("h_over_lambda").at(3).is_null());
    CHECK(j.at("h_over_lambda").at(4).get<double>() == 50.0);
    CHECK(j.at("lambda").at(3).get<double>() == 0.0);
}

TEST_CASE("json file round trip") {
    const nlohmann::json j = {{"a", 1}, {"nested", {{"b", "text"}, {"c", nullptr}}}};
    const std::string path = "jsonio_test_file.json";
    write_json_file(j, path);
    const nlohmann::json r = read_json_file(path);
    std::filesystem::remove(path);
    CHECK(r == j);
    CHECK_THROWS_AS(read_json_file("definitely_not_there.json"), std::runtime_error);
}

} // TEST_SUITE
