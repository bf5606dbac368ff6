#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mlgs/multiplex_graph.hpp"
#include "mlgs/rng.hpp"

namespace mlgs {

// Counts of every probe a walker issued. Counters only grow; serialized into
// result JSON so query cost can be compared across samplers.
struct QueryStats {
    std::uint64_t blue_neighbor_queries = 0; // blue list + degrees of a discovered blue identity
    std::uint64_t red_of_blue_queries = 0;   // red sample anchored at visited blue identities
    std::uint64_t red_of_red_queries = 0;    // red list of a depth-1 red identity (budget 2 only)
    std::uint64_t pair_probe_queries = 0;    // "is there a red edge between these two known identities"

    std::uint64_t total() const {
        return blue_neighbor_queries + red_of_blue_queries + red_of_red_queries + pair_probe_queries;
    }
};

class AccessViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Crawler's-eye view of the graph. The blue layer is walkable: the full blue
// neighbor list (and both degree counts) of any discovered blue identity can
// be fetched. The red layer only leaks through it:
//   budget 1: a uniform red neighbor of a blue-visited identity (depth 1)
//   budget 2: additionally the red list of a depth-1 identity (depth 2)
// Anything deeper, or red queries on identities that were never legally
// discovered, throws AccessViolation. Every answer is counted in QueryStats.
//
// "Discovered" means: a seed, a member of a returned neighbor list, or a
// returned red sample. Blue adjacency between two identities is free to test
// once one of them is blue-visited (its full list is already in hand); red
// adjacency between two discovered identities is a counted pair probe, which
// is what lets a walker classify the triple it is standing on.
class RestrictedAccess {
public:
    RestrictedAccess(const TwoLayerGraph& g, int red_hop_budget);

    // rwnr baseline: no restriction checks, same counters
    static RestrictedAccess unrestricted(const TwoLayerGraph& g);

    void seed(IdentityId u);

    struct BlueView {
        std::span<const IdentityId> neighbors;
        std::uint32_t blue_degree;
        std::uint32_t red_degree;
    };
    // u must be discovered and in the blue layer; marks u blue-visited and
    // everything returned discovered
    BlueView blue_neighbors(IdentityId u);

    // uniform over the r_u red neighbors of blue-visited u; result is a
    // depth-1 red discovery
    IdentityId sample_red_neighbor(IdentityId u, Rng& rng);

    struct RedView {
        std::span<const IdentityId> neighbors;
    };
    // full red list of a depth-1 red identity; needs budget 2; results are
    // depth-2 discoveries (dead ends for further red expansion)
    RedView red_neighbors_of_red(IdentityId y);

    // uniform over the red edges adjacent to blue edge (u,v), i.e. touching
    // exactly one endpoint; both endpoints must be blue-visited. Returns the
    // red edge as (anchor, other); other is a depth-1 red discovery.
    std::pair<IdentityId, IdentityId> sample_red_edge_neighbor(IdentityId u, IdentityId v, Rng& rng);

    // layer presence of a discovered identity; free metadata
    bool in_blue(IdentityId u) const;

    bool red_edge_between(IdentityId u, IdentityId v); // both discovered; counted
    // Blue adjacency of two discovered identities. Free when either one's
    // blue list is already in hand; otherwise fetches one list (counted as a
    // blue neighbor query). Identities outside the blue layer are never
    // adjacent there.
    bool blue_edge_between(IdentityId u, IdentityId v);

    // rwnr only: both adjacency lists of a discovered identity
    struct UnionView {
        std::span<const IdentityId> blue;
        std::span<const IdentityId> red;
    };
    UnionView union_neighbors(IdentityId u);

    const QueryStats& stats() const { return stats_; }
    const TwoLayerGraph& graph() const { return g_; }
    int red_hop_budget() const { return budget_; }
    bool unrestricted_mode() const { return unrestricted_; }

private:
    RestrictedAccess(const TwoLayerGraph& g, int budget, bool unrestricted);

    void require_discovered(IdentityId u, const char* what) const;
    void discover(IdentityId u) { discovered_[u] = 1; }

    const TwoLayerGraph& g_;
    int budget_;
    bool unrestricted_;
    std::vector<std::uint8_t> discovered_;
    std::vector<std::uint8_t> blue_visited_;
    std::vector<std::uint8_t> red_depth_; // 0: not red-discovered, else hop depth 1 or 2
    QueryStats stats_;
};

} // namespace mlgs
