#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "mlgs/access.hpp"
#include "mlgs/iso_coefficients.hpp"
#include "mlgs/walk_state.hpp"

namespace mlgs {

struct EstimatorOptions {
    std::uint64_t burn_in = 0;            // transitions before accumulation starts
    std::optional<int> red_hop_budget;    // override; default 1 (rwnbn/rwebe) or 2 (rwomrn/rwmix)
};

// One estimation run. weight[i-1] accumulates sum over visited states of
// 1/(alpha_i * pi_tilde); d_hat is that vector normalized over the model's
// estimand (types 1..14 for the restricted walkers, 1..16 for rwnr; the
// excluded slots stay 0). degenerate_states counts windows with repeated
// identities, unweighted_states counts non-degenerate windows whose type the
// model does not estimate (all-red triples under rwomrn/rwmix).
struct ConcentrationEstimate {
    WalkModel algo;
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    std::array<double, kNumGraphletTypes> weight{};
    std::array<double, kNumGraphletTypes> d_hat{};
    std::uint64_t degenerate_states = 0;
    std::uint64_t unweighted_states = 0;
    QueryStats query_stats;
};

// weight vector -> concentrations over the model's estimand; all-zero input
// stays all-zero (walk too short to see any complete graphlet)
std::array<double, kNumGraphletTypes> normalize_weights(WalkModel m,
                                                        const std::array<double, kNumGraphletTypes>& w);

// Walk `steps` transitions from a uniformly chosen ordered blue wedge and
// accumulate after every transition. Deterministic given (m, g, steps, seed).
// Throws std::runtime_error if the blue layer has no wedge (no valid initial
// state) and std::invalid_argument on zero-identity graphs.
ConcentrationEstimate run_estimator(WalkModel m, const TwoLayerGraph& g, std::uint64_t steps, std::uint64_t seed,
                                    const EstimatorOptions& opts = {});

// Same walk, plus a snapshot callback after each checkpoint (ascending step
// counts; each <= steps). Snapshots see the weight accumulator so far.
using CheckpointFn =
    std::function<void(std::uint64_t step, const std::array<double, kNumGraphletTypes>& weight)>;
ConcentrationEstimate run_estimator_checkpointed(WalkModel m, const TwoLayerGraph& g, std::uint64_t steps,
                                                 std::uint64_t seed, std::span<const std::uint64_t> checkpoints,
                                                 const CheckpointFn& on_checkpoint,
                                                 const EstimatorOptions& opts = {});

// Uniform sampler over ordered blue wedges (a,v,c), a != c, a and c blue
// neighbors of v. Walkers start here; rwebe maps the wedge to its edge pair.
class WedgeSampler {
public:
    explicit WedgeSampler(const TwoLayerGraph& g);
    bool empty() const { return total_ == 0; }
    std::uint64_t total() const { return total_; }
    NodeWalkState sample(Rng& rng) const;

private:
    const TwoLayerGraph& g_;
    std::vector<std::uint64_t> cum_; // cumulative ordered-wedge counts per center
    std::uint64_t total_;
};

} // namespace mlgs
