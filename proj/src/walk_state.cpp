#include "mlgs/walk_state.hpp"

#include <stdexcept>

namespace mlgs {

std::string to_string(WalkModel m) {
    switch (m) {
        case WalkModel::rwnbn: return "rwnbn";
        case WalkModel::rwebe: return "rwebe";
        case WalkModel::rwomrn: return "rwomrn";
        case WalkModel::rwmix: return "rwmix";
        case WalkModel::rwnr: return "rwnr";
    }
    throw std::logic_error("bad WalkModel");
}

WalkModel walk_model_from_string(const std::string& name) {
    for (WalkModel m : kAllModels)
        if (to_string(m) == name) return m;
    throw std::invalid_argument("unknown walk model '" + name + "' (expected one of rwnbn, rwebe, rwomrn, rwmix, rwnr)");
}

GraphletType induced_type(const TwoLayerGraph& g, const NodeWalkState& s) {
    return classify_triple(g, s.node[0], s.node[1], s.node[2]);
}

GraphletType induced_type(const TwoLayerGraph& g, const EdgeWalkState& s) {
    // the shared endpoint appears in both edges; pick the three distinct ids
    IdentityId a = s.first[0], b = s.first[1];
    IdentityId c = (s.second[0] == a || s.second[0] == b) ? s.second[1] : s.second[0];
    return classify_triple(g, a, b, c);
}

double stationary_weight(const TwoLayerGraph& g, WalkModel m, const NodeWalkState& s) {
    const IdentityId mid = s.node[1];
    const double b_mid = g.blue_degree(mid);
    const double r_mid = g.red_degree(mid);
    switch (m) {
        case WalkModel::rwnr:
            return 1.0 / (b_mid + r_mid);
        case WalkModel::rwnbn:
        case WalkModel::rwomrn:
        case WalkModel::rwmix: {
            if (s.link[0] == LinkLayer::blue && s.link[1] == LinkLayer::blue) return 1.0 / b_mid;
            if (s.link[0] == LinkLayer::blue && s.link[1] == LinkLayer::red) return 1.0 / (b_mid + r_mid);
            if (s.link[0] == LinkLayer::red && s.link[1] == LinkLayer::red) {
                if (m == WalkModel::rwnbn) throw std::invalid_argument("rwnbn has no (red,red) states");
                const IdentityId x = s.node[0];
                const double b_x = g.blue_degree(x);
                const double r_x = g.red_degree(x);
                if (m == WalkModel::rwomrn) return b_x / ((b_x + r_x) * r_mid);
                return b_x / ((b_x + r_x) * (r_mid + b_x)); // rwmix
            }
            throw std::invalid_argument("(red,blue) link pattern is not a state of this model");
        }
        case WalkModel::rwebe:
            throw std::invalid_argument("rwebe uses edge states");
    }
    throw std::logic_error("bad WalkModel");
}

double stationary_weight(const TwoLayerGraph& g, const EdgeWalkState& s) {
    if (s.second_layer == LinkLayer::blue) return 1.0;
    const double be = g.blue_edge_neighbors(s.first[0], s.first[1]);
    const double re = g.red_edge_neighbors(s.first[0], s.first[1]);
    return be / (be + re);
}

} // namespace mlgs
