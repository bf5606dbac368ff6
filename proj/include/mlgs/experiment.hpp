#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mlgs/exact_oracle.hpp"
#include "mlgs/multiplex_graph.hpp"
#include "mlgs/samplers.hpp"

namespace mlgs {

struct ExperimentPlan {
    std::vector<WalkModel> algos{WalkModel::rwnbn, WalkModel::rwebe, WalkModel::rwomrn, WalkModel::rwmix,
                                 WalkModel::rwnr};
    std::uint32_t trials = 1000;
    std::uint64_t steps = 20000;
    std::uint64_t checkpoint_stride = 2000;
    std::uint64_t base_seed = 0;
    std::uint64_t burn_in = 0;
    int threads = 0;        // <= 0: hardware concurrency
    bool count_mode = false; // estimate |C_i| via M instead of concentrations
};

// error of one (algo, type, checkpoint) cell across trials; NaN when the type
// is absent from the ground truth (relative error undefined)
struct MetricCell {
    WalkModel algo;
    int type = 0; // 1..14
    std::uint64_t checkpoint = 0;
    double mre = 0;
    double nrmse = 0;
};

struct MetricSeries {
    ExperimentPlan plan;
    std::vector<std::uint64_t> checkpoints;
    std::array<std::uint64_t, kNumGraphletTypes> truth_counts{};
    std::array<double, kNumGraphletTypes> truth_d{}; // denominator over types 1..14
    double graph_identities = 0;
    double graph_blue_edges = 0;
    double graph_red_edges = 0;
    std::array<double, 5> m_by_algo{}; // compute_M per WalkModel index (count mode)
    std::vector<MetricCell> cells;     // algo-major, then type, then checkpoint
};

// One trial = one walk; its weight accumulator is snapshotted at every
// checkpoint. Tests inject stub runners through this hook.
using TrialRunner = std::function<std::vector<std::array<double, kNumGraphletTypes>>(
    WalkModel algo, const TwoLayerGraph& g, std::uint64_t steps, std::span<const std::uint64_t> checkpoints,
    std::uint64_t seed, std::uint64_t burn_in)>;

TrialRunner default_trial_runner();

// MRE_i  = mean over trials of |d_hat_i - d_i| / d_i
// NRMSE_i = sqrt(mean over trials of (d_hat_i - d_i)^2) / d_i
// evaluated at every checkpoint for types 1..14 (every walker's d_hat is
// renormalized over 1..14 so the baselines are comparable); count mode swaps
// in C_hat_i = weight_i * M / step against |C_i|. Trials run in parallel with
// per-trial derived seeds; results do not depend on the thread count.
MetricSeries run_experiment(const TwoLayerGraph& g, const GroundTruth& truth, const ExperimentPlan& plan,
                            const TrialRunner& runner = default_trial_runner());

// results.csv (long format: algo,type,checkpoint,metric,value), results.json,
// and per-algo SVG charts ({algo}_mre.svg bar chart at the last checkpoint,
// {algo}_nrmse.svg error-vs-steps lines, {algo}_scatter.svg log-log
// concentration-vs-MRE). Creates outdir if needed.
void emit_report(const MetricSeries& series, const std::string& outdir);

void write_results_csv(const MetricSeries& series, const std::string& path);
void write_results_json(const MetricSeries& series, const std::string& path);
MetricSeries load_results_json(const std::string& path);

} // namespace mlgs
