#include "mlgs/graphlets.hpp"

#include <algorithm>

namespace mlgs {

namespace {

// path type from the two colored pair colors, unordered
GraphletType path_type(PairColor x, PairColor y) {
    auto lo = std::min(static_cast<int>(x), static_cast<int>(y));
    auto hi = std::max(static_cast<int>(x), static_cast<int>(y));
    // (blue=1, red=2, blue_red=3)
    if (lo == 1 && hi == 1) return GraphletType(1);
    if (lo == 1 && hi == 2) return GraphletType(2);
    if (lo == 1 && hi == 3) return GraphletType(3);
    if (lo == 2 && hi == 3) return GraphletType(4);
    if (lo == 3 && hi == 3) return GraphletType(5);
    return GraphletType(15); // {red, red}
}

GraphletType triangle_type(PairColor a, PairColor b, PairColor c) {
    int v[3] = {static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)};
    std::sort(v, v + 3);
    const int key = v[0] * 16 + v[1] * 4 + v[2];
    switch (key) {
        case 0x15: return GraphletType(6);  // B,B,B
        case 0x16: return GraphletType(7);  // B,B,R
        case 0x1a: return GraphletType(8);  // B,R,R
        case 0x17: return GraphletType(9);  // B,B,BR
        case 0x2b: return GraphletType(10); // R,R,BR
        case 0x1b: return GraphletType(11); // B,R,BR
        case 0x1f: return GraphletType(12); // B,BR,BR
        case 0x2f: return GraphletType(13); // R,BR,BR
        case 0x3f: return GraphletType(14); // BR,BR,BR
        case 0x2a: return GraphletType(16); // R,R,R
    }
    return GraphletType::degenerate_type(); // unreachable for 3 colored pairs
}

} // namespace

GraphletType classify_pair_colors(PairColor c01, PairColor c02, PairColor c12) {
    const int colored = (c01 != PairColor::none) + (c02 != PairColor::none) + (c12 != PairColor::none);
    if (colored < 2) return GraphletType::degenerate_type(); // disconnected
    if (colored == 3) return triangle_type(c01, c02, c12);
    // exactly two colored pairs; in a triple any two distinct pairs share a
    // node, so this is always a connected 2-edge path
    if (c01 == PairColor::none) return path_type(c02, c12);
    if (c02 == PairColor::none) return path_type(c01, c12);
    return path_type(c01, c02);
}

GraphletType classify_triple(const TwoLayerGraph& g, IdentityId a, IdentityId b, IdentityId c) {
    if (a == b || a == c || b == c) return GraphletType::degenerate_type();
    auto color = [&g](IdentityId u, IdentityId v) {
        int bits = (g.has_blue_edge(u, v) ? 1 : 0) | (g.has_red_edge(u, v) ? 2 : 0);
        return static_cast<PairColor>(bits);
    };
    return classify_pair_colors(color(a, b), color(a, c), color(b, c));
}

namespace {

constexpr PairColor B = PairColor::blue;
constexpr PairColor R = PairColor::red;
constexpr PairColor BR = PairColor::blue_red;
constexpr PairColor NO = PairColor::none;

int count_red(std::array<PairColor, 3> cs, bool triangle) {
    int n = 0;
    for (int i = 0; i < (triangle ? 3 : 2); ++i) n += pair_has_red(cs[i]) ? 1 : 0;
    return n;
}
int count_pure_blue(std::array<PairColor, 3> cs, bool triangle) {
    int n = 0;
    for (int i = 0; i < (triangle ? 3 : 2); ++i) n += cs[i] == B ? 1 : 0;
    return n;
}

GraphletInfo info(std::uint8_t idx, bool tri, std::array<PairColor, 3> cs, const char* label) {
    return {idx, tri, cs, label, count_red(cs, tri), count_pure_blue(cs, tri)};
}

} // namespace

const std::array<GraphletInfo, kNumGraphletTypes>& graphlet_catalog() {
    static const std::array<GraphletInfo, kNumGraphletTypes> table = {
        info(1, false, {B, B, NO}, "path B-B"),
        info(2, false, {B, R, NO}, "path B-R"),
        info(3, false, {B, BR, NO}, "path B-BR"),
        info(4, false, {R, BR, NO}, "path R-BR"),
        info(5, false, {BR, BR, NO}, "path BR-BR"),
        info(6, true, {B, B, B}, "triangle {B,B,B}"),
        info(7, true, {B, B, R}, "triangle {B,B,R}"),
        info(8, true, {B, R, R}, "triangle {B,R,R}"),
        info(9, true, {B, B, BR}, "triangle {B,B,BR}"),
        info(10, true, {R, R, BR}, "triangle {R,R,BR}"),
        info(11, true, {B, R, BR}, "triangle {B,R,BR}"),
        info(12, true, {B, BR, BR}, "triangle {B,BR,BR}"),
        info(13, true, {R, BR, BR}, "triangle {R,BR,BR}"),
        info(14, true, {BR, BR, BR}, "triangle {BR,BR,BR}"),
        info(15, false, {R, R, NO}, "path R-R"),
        info(16, true, {R, R, R}, "triangle {R,R,R}"),
    };
    return table;
}

std::string to_string(GraphletType t) {
    if (t.degenerate()) return "degenerate";
    return graphlet_catalog()[t.index() - 1].label;
}

} // namespace mlgs
