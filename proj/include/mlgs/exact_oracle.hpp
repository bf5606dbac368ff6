#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "mlgs/graphlets.hpp"
#include "mlgs/multiplex_graph.hpp"
#include "mlgs/walk_state.hpp"

namespace mlgs {

// Exact per-type counts of connected 3-identity subgraphs.
struct GroundTruth {
    std::array<std::uint64_t, kNumGraphletTypes> counts{};

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }
    std::uint64_t total_restricted() const { // types 1..14
        return total() - counts[14] - counts[15];
    }

    // d_i over the full 16-type family
    std::array<double, kNumGraphletTypes> concentrations() const;
    // d_i with the denominator over 1..14, what the restricted walkers estimate
    std::array<double, kNumGraphletTypes> concentrations_restricted() const;
};

// Center-based enumeration over the union adjacency: every wedge once per
// center, triangles deduplicated at their smallest identity. Runs on
// `threads` workers (<= 0 picks hardware concurrency); the result does not
// depend on the thread count.
GroundTruth count_exact(const TwoLayerGraph& g, int threads = 0);

// Normalization constant: sum of pi-tilde over the model's state space.
// rwnbn/rwomrn/rwmix use the published closed forms (see the rwomrn note in
// chain tests: its closed form undercounts the true state-space sum by one
// per walkable identity because it drops backtrack windows the transition
// rule can produce); rwebe/rwnr sum their state spaces directly:
//   rwnbn : 2|E_B| + sum_v b_v r_v / (b_v + r_v)
//   rwomrn: sum_v (b_v^2 - b_v - r_v + 3 b_v r_v) / (b_v + r_v)
//   rwmix : rwnbn's value + sum_v sum_{u in R(v)} b_v r_u / ((b_v+r_v)(r_u+b_v))
//   rwebe : sum_{e in E_B} [ b(e) + r(e) b(e) / (b(e)+r(e)) ]
//   rwnr  : 2(|E_B| + |E_R|)
double compute_M(const TwoLayerGraph& g, WalkModel m);

// Ingredients of the concentration bound: H = max_S 1/pi(S) over reachable
// states, alpha_min over the types expressible with the layers present in g,
// Lambda_i = min(alpha_i C_i, alpha_min C) and the sample-size driver
// H / Lambda_i (infinity where Lambda_i = 0, i.e. the type is absent or not
// estimated).
struct BoundDiagnostics {
    double M = 0;
    double H = 0;
    double alpha_min = 0;
    std::array<double, kNumGraphletTypes> lambda{};
    std::array<double, kNumGraphletTypes> h_over_lambda{};
};

BoundDiagnostics bound_diagnostics(const TwoLayerGraph& g, WalkModel m, const GroundTruth& truth);

} // namespace mlgs
