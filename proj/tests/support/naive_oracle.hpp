#pragma once

// Independent reference oracle for the exact counter: cubic scan over all
// identity triples with its own from-scratch type classifier. Shares only the
// graph accessors with the library, none of the catalog or counting code.

#include <array>
#include <cstdint>

#include "mlgs/multiplex_graph.hpp"

namespace mlgs::testsupport {

// pair kind: 0 none, 1 blue only, 2 red only, 3 both
inline int pair_kind(const TwoLayerGraph& g, IdentityId u, IdentityId v) {
    const bool b = g.has_blue_edge(u, v);
    const bool r = g.has_red_edge(u, v);
    return (b ? 1 : 0) + (r ? 2 : 0);
}

// canonical type 1..16 of a connected triple, 0 when disconnected
inline int naive_classify(int k01, int k02, int k12) {
    int kinds[3] = {k01, k02, k12};
    int colored = 0;
    for (int k : kinds) colored += k != 0;
    if (colored < 2) return 0;
    // sort ascending, zeros first
    if (kinds[0] > kinds[1]) std::swap(kinds[0], kinds[1]);
    if (kinds[1] > kinds[2]) std::swap(kinds[1], kinds[2]);
    if (kinds[0] > kinds[1]) std::swap(kinds[0], kinds[1]);
    if (colored == 2) {
        const int x = kinds[1], y = kinds[2];
        if (x == 1 && y == 1) return 1;
        if (x == 1 && y == 2) return 2;
        if (x == 1 && y == 3) return 3;
        if (x == 2 && y == 3) return 4;
        if (x == 3 && y == 3) return 5;
        return 15; // x == 2 && y == 2
    }
    const int a = kinds[0], b = kinds[1], c = kinds[2];
    if (a == 1 && b == 1 && c == 1) return 6;
    if (a == 1 && b == 1 && c == 2) return 7;
    if (a == 1 && b == 2 && c == 2) return 8;
    if (a == 1 && b == 1 && c == 3) return 9;
    if (a == 2 && b == 2 && c == 3) return 10;
    if (a == 1 && b == 2 && c == 3) return 11;
    if (a == 1 && b == 3 && c == 3) return 12;
    if (a == 2 && b == 3 && c == 3) return 13;
    if (a == 3 && b == 3 && c == 3) return 14;
    return 16; // a == 2 && b == 2 && c == 2
}

inline std::array<std::uint64_t, 16> naive_count(const TwoLayerGraph& g) {
    std::array<std::uint64_t, 16> counts{};
    const IdentityId n = g.num_identities();
    for (IdentityId a = 0; a < n; ++a)
        for (IdentityId b = a + 1; b < n; ++b)
            for (IdentityId c = b + 1; c < n; ++c) {
                const int t = naive_classify(pair_kind(g, a, b), pair_kind(g, a, c), pair_kind(g, b, c));
                if (t > 0) ++counts[std::size_t(t - 1)];
            }
    return counts;
}

} // namespace mlgs::testsupport
