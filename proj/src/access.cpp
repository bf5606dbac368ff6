#include "mlgs/access.hpp"

#include <algorithm>
#include <string>

namespace mlgs {

RestrictedAccess::RestrictedAccess(const TwoLayerGraph& g, int budget, bool unrestricted)
    : g_(g), budget_(budget), unrestricted_(unrestricted), discovered_(g.num_identities(), 0),
      blue_visited_(g.num_identities(), 0), red_depth_(g.num_identities(), 0) {}

RestrictedAccess::RestrictedAccess(const TwoLayerGraph& g, int red_hop_budget)
    : RestrictedAccess(g, red_hop_budget, false) {
    if (red_hop_budget != 1 && red_hop_budget != 2)
        throw std::invalid_argument("red_hop_budget must be 1 or 2, got " + std::to_string(red_hop_budget));
}

RestrictedAccess RestrictedAccess::unrestricted(const TwoLayerGraph& g) { return {g, 2, true}; }

void RestrictedAccess::require_discovered(IdentityId u, const char* what) const {
    if (unrestricted_) return;
    if (u >= g_.num_identities() || !discovered_[u])
        throw AccessViolation(std::string(what) + ": identity " + std::to_string(u) + " was never legally discovered");
}

void RestrictedAccess::seed(IdentityId u) {
    if (u >= g_.num_identities()) throw std::invalid_argument("seed identity out of range");
    if (!unrestricted_ && !g_.in_blue(u))
        throw AccessViolation("seed " + std::to_string(u) + " is not in the blue layer");
    discover(u);
    blue_visited_[u] = 1;
}

RestrictedAccess::BlueView RestrictedAccess::blue_neighbors(IdentityId u) {
    require_discovered(u, "blue_neighbors");
    if (!unrestricted_ && !g_.in_blue(u))
        throw AccessViolation("blue_neighbors on identity " + std::to_string(u) + " which is not in the blue layer");
    ++stats_.blue_neighbor_queries;
    blue_visited_[u] = 1;
    auto nb = g_.blue_neighbors(u);
    for (IdentityId v : nb) discover(v);
    return {nb, g_.blue_degree(u), g_.red_degree(u)};
}

IdentityId RestrictedAccess::sample_red_neighbor(IdentityId u, Rng& rng) {
    if (!unrestricted_ && (u >= g_.num_identities() || !blue_visited_[u]))
        throw AccessViolation("sample_red_neighbor: identity " + std::to_string(u) +
                              " was not visited by the blue walk");
    auto reds = g_.red_neighbors(u);
    if (reds.empty())
        throw std::invalid_argument("sample_red_neighbor: identity " + std::to_string(u) + " has no red neighbors");
    ++stats_.red_of_blue_queries;
    IdentityId y = reds[rng.next_index(reds.size())];
    discover(y);
    red_depth_[y] = 1; // a fresh sample upgrades any stale depth-2 label
    return y;
}

RestrictedAccess::RedView RestrictedAccess::red_neighbors_of_red(IdentityId y) {
    if (!unrestricted_) {
        if (budget_ < 2)
            throw AccessViolation("red_neighbors_of_red needs red_hop_budget 2, this walker has budget 1");
        if (y >= g_.num_identities() || red_depth_[y] == 0)
            throw AccessViolation("red_neighbors_of_red: identity " + std::to_string(y) +
                                  " was not obtained as a red sample");
        if (red_depth_[y] != 1)
            throw AccessViolation("red_neighbors_of_red: identity " + std::to_string(y) + " sits at red hop depth " +
                                  std::to_string(int(red_depth_[y])) + ", beyond the two-hop budget");
    }
    ++stats_.red_of_red_queries;
    auto reds = g_.red_neighbors(y);
    for (IdentityId z : reds) {
        discover(z);
        if (red_depth_[z] == 0) red_depth_[z] = 2;
    }
    return {reds};
}

std::pair<IdentityId, IdentityId> RestrictedAccess::sample_red_edge_neighbor(IdentityId u, IdentityId v, Rng& rng) {
    if (!unrestricted_ && (!blue_visited_[u] || !blue_visited_[v]))
        throw AccessViolation("sample_red_edge_neighbor: both endpoints must be blue-visited");
    const bool parallel = g_.has_red_edge(u, v);
    const std::uint32_t from_u = g_.red_degree(u) - (parallel ? 1 : 0);
    const std::uint32_t from_v = g_.red_degree(v) - (parallel ? 1 : 0);
    if (from_u + from_v == 0)
        throw std::invalid_argument("sample_red_edge_neighbor: blue edge (" + std::to_string(u) + "," +
                                    std::to_string(v) + ") has no adjacent red edges");
    ++stats_.red_of_blue_queries;
    std::uint32_t k = static_cast<std::uint32_t>(rng.next_below(from_u + from_v));
    auto pick = [this](IdentityId anchor, IdentityId skip, bool has_skip, std::uint32_t idx) {
        auto reds = g_.red_neighbors(anchor);
        if (has_skip) {
            // neighbor lists are sorted; bump the index past the excluded entry
            auto it = std::lower_bound(reds.begin(), reds.end(), skip);
            if (idx >= static_cast<std::uint32_t>(it - reds.begin())) ++idx;
        }
        return reds[idx];
    };
    IdentityId anchor, other;
    if (k < from_u) {
        anchor = u;
        other = pick(u, v, parallel, k);
    } else {
        anchor = v;
        other = pick(v, u, parallel, k - from_u);
    }
    discover(other);
    red_depth_[other] = 1;
    return {anchor, other};
}

bool RestrictedAccess::red_edge_between(IdentityId u, IdentityId v) {
    require_discovered(u, "red_edge_between");
    require_discovered(v, "red_edge_between");
    ++stats_.pair_probe_queries;
    return g_.has_red_edge(u, v);
}

bool RestrictedAccess::in_blue(IdentityId u) const {
    require_discovered(u, "in_blue");
    return g_.in_blue(u);
}

bool RestrictedAccess::blue_edge_between(IdentityId u, IdentityId v) {
    require_discovered(u, "blue_edge_between");
    require_discovered(v, "blue_edge_between");
    if (!g_.in_blue(u) || !g_.in_blue(v)) return false;
    if (!blue_visited_[u] && !blue_visited_[v]) blue_neighbors(u); // fetch one list, counted
    return g_.has_blue_edge(u, v);
}

RestrictedAccess::UnionView RestrictedAccess::union_neighbors(IdentityId u) {
    if (!unrestricted_)
        throw AccessViolation("union_neighbors is only available to the unrestricted baseline");
    // reads both lists: bill one query against each layer's counter
    ++stats_.blue_neighbor_queries;
    ++stats_.red_of_blue_queries;
    blue_visited_[u] = 1;
    auto blues = g_.blue_neighbors(u);
    auto reds = g_.red_neighbors(u);
    for (IdentityId v : blues) discover(v);
    for (IdentityId v : reds) discover(v);
    return {blues, reds};
}

} // namespace mlgs
