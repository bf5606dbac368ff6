#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "mlgs/graphlets.hpp"
#include "mlgs/multiplex_graph.hpp"

namespace mlgs {

enum class WalkModel : std::uint8_t { rwnbn, rwebe, rwomrn, rwmix, rwnr };

constexpr std::array<WalkModel, 5> kAllModels = {WalkModel::rwnbn, WalkModel::rwebe, WalkModel::rwomrn,
                                                 WalkModel::rwmix, WalkModel::rwnr};
constexpr std::array<WalkModel, 4> kRestrictedModels = {WalkModel::rwnbn, WalkModel::rwebe, WalkModel::rwomrn,
                                                        WalkModel::rwmix};

std::string to_string(WalkModel m);
WalkModel walk_model_from_string(const std::string& name); // throws std::invalid_argument

enum class LinkLayer : std::uint8_t { blue = 0, red = 1 };

// Sliding window of a node walk: three identity slots plus the layer of each
// traversed link. Which (link[0], link[1]) patterns occur depends on the
// model: rwnbn uses (B,B) and (B,R); rwomrn/rwmix also (R,R); rwnr all four.
// Repeated identities are legal (backtracks); such states induce the
// degenerate class and carry no estimator weight.
struct NodeWalkState {
    std::array<IdentityId, 3> node;
    std::array<LinkLayer, 2> link;

    bool operator==(const NodeWalkState&) const = default;
    auto operator<=>(const NodeWalkState&) const = default;
};

// Sliding window of the edge walk: two adjacent edges sharing exactly one
// endpoint. first is always blue; second is blue or red. A red edge parallel
// to first (same endpoints) is never a neighbor, so the union of endpoints
// always has exactly three distinct identities.
struct EdgeWalkState {
    // endpoints stored with u < v per edge
    std::array<IdentityId, 2> first;
    std::array<IdentityId, 2> second;
    LinkLayer second_layer;

    bool operator==(const EdgeWalkState&) const = default;
    auto operator<=>(const EdgeWalkState&) const = default;
};

GraphletType induced_type(const TwoLayerGraph& g, const NodeWalkState& s);
GraphletType induced_type(const TwoLayerGraph& g, const EdgeWalkState& s);

// Unnormalized stationary weight of a state (the solved stationary
// probability is this divided by the model's normalization constant).
// Derived from the balance equations of each chain:
//   rwnbn  all-blue (a,v,c):      1 / b_v
//          (a,v,y) blue,red:      1 / (b_v + r_v)
//   rwomrn additionally (x,y,y'): b_x / ((b_x + r_x) * r_y)
//   rwmix  (x,y,y') instead:      b_x / ((b_x + r_x) * (r_y + b_x))
//   rwnr   any (a,v,c):           1 / (b_v + r_v)
//   rwebe  (e1,e2) both blue:     1
//          (e, f) blue,red:       b(e) / (b(e) + r(e))
double stationary_weight(const TwoLayerGraph& g, WalkModel m, const NodeWalkState& s);
double stationary_weight(const TwoLayerGraph& g, const EdgeWalkState& s);

} // namespace mlgs
