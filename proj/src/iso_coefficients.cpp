#include "mlgs/iso_coefficients.hpp"

#include <algorithm>
#include <mutex>
#include <vector>

namespace mlgs {

namespace {

struct Scaffold {
    // pair colors between the three identities, indexed by the pair (i,j)
    PairColor c[3][3];

    explicit Scaffold(const GraphletInfo& gi) {
        for (auto& row : c) std::fill(std::begin(row), std::end(row), PairColor::none);
        auto set = [&](int i, int j, PairColor col) { c[i][j] = c[j][i] = col; };
        if (gi.triangle) {
            set(0, 1, gi.colors[0]);
            set(0, 2, gi.colors[1]);
            set(1, 2, gi.colors[2]);
        } else {
            // path: slot 1 is the center
            set(0, 1, gi.colors[0]);
            set(1, 2, gi.colors[1]);
        }
    }

    bool linked(int i, int j, LinkLayer l) const {
        return l == LinkLayer::blue ? pair_has_blue(c[i][j]) : pair_has_red(c[i][j]);
    }
};

bool pattern_allowed(WalkModel m, LinkLayer t1, LinkLayer t2) {
    switch (m) {
        case WalkModel::rwnbn: return t1 == LinkLayer::blue; // (B,B) or (B,R)
        case WalkModel::rwomrn:
        case WalkModel::rwmix:
            return t1 == LinkLayer::blue || (t1 == LinkLayer::red && t2 == LinkLayer::red);
        case WalkModel::rwnr: return true;
        case WalkModel::rwebe: break;
    }
    throw std::logic_error("node pattern query on edge model");
}

std::uint32_t count_node_states(WalkModel m, const Scaffold& sc) {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::uint32_t n = 0;
    for (const auto& p : perms)
        for (LinkLayer t1 : {LinkLayer::blue, LinkLayer::red})
            for (LinkLayer t2 : {LinkLayer::blue, LinkLayer::red}) {
                if (!pattern_allowed(m, t1, t2)) continue;
                if (sc.linked(p[0], p[1], t1) && sc.linked(p[1], p[2], t2)) ++n;
            }
    return n;
}

std::uint32_t count_edge_states(const Scaffold& sc) {
    // scaffold edges as (i, j, layer), i < j
    struct E {
        int i, j;
        LinkLayer l;
    };
    std::vector<E> edges;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            if (pair_has_blue(sc.c[i][j])) edges.push_back({i, j, LinkLayer::blue});
            if (pair_has_red(sc.c[i][j])) edges.push_back({i, j, LinkLayer::red});
        }
    auto shared_endpoints = [](const E& a, const E& b) {
        return (a.i == b.i) + (a.i == b.j) + (a.j == b.i) + (a.j == b.j);
    };
    std::uint32_t n = 0;
    for (const E& e1 : edges) {
        if (e1.l != LinkLayer::blue) continue;
        for (const E& e2 : edges) {
            if (&e1 == &e2) continue;
            if (shared_endpoints(e1, e2) != 1) continue; // parallel or disjoint
            ++n;
        }
    }
    return n;
}

} // namespace

IsoCoefficientTable compute_iso_coefficients(WalkModel m) {
    IsoCoefficientTable out{};
    const bool restricted = m != WalkModel::rwnr;
    for (const GraphletInfo& gi : graphlet_catalog()) {
        if (restricted && (gi.index == 15 || gi.index == 16)) {
            out[gi.index - 1] = 0; // not part of the restricted estimand
            continue;
        }
        Scaffold sc(gi);
        out[gi.index - 1] = m == WalkModel::rwebe ? count_edge_states(sc) : count_node_states(m, sc);
    }
    return out;
}

const IsoCoefficientTable& iso_coefficients(WalkModel m) {
    static std::array<IsoCoefficientTable, 5> cache;
    static std::once_flag once;
    std::call_once(once, [] {
        for (WalkModel mm : kAllModels) cache[static_cast<int>(mm)] = compute_iso_coefficients(mm);
    });
    return cache[static_cast<int>(m)];
}

} // namespace mlgs
