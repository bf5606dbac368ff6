#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "mlgs/multiplex_graph.hpp"

namespace mlgs {

// Color of an identity pair inside a 3-identity subgraph: which layers
// contain an edge between the two.
enum class PairColor : std::uint8_t { none = 0, blue = 1, red = 2, blue_red = 3 };

inline bool pair_has_blue(PairColor c) { return c == PairColor::blue || c == PairColor::blue_red; }
inline bool pair_has_red(PairColor c) { return c == PairColor::red || c == PairColor::blue_red; }

constexpr int kNumGraphletTypes = 16;

// Canonical 3-node graphlet type. 0 is the degenerate class (fewer than three
// distinct identities, or fewer than two colored pairs so the triple is
// disconnected). 1..16 are the connected types:
//   paths, by {end-center, center-end} colors:
//     1 {B,B}   2 {B,R}   3 {B,BR}   4 {R,BR}   5 {BR,BR}   15 {R,R}
//   triangles, by color multiset:
//     6 {B,B,B}   7 {B,B,R}   8 {B,R,R}    9 {B,B,BR}  10 {R,R,BR}
//    11 {B,R,BR} 12 {B,BR,BR} 13 {R,BR,BR} 14 {BR,BR,BR} 16 {R,R,R}
class GraphletType {
public:
    constexpr GraphletType() = default;
    constexpr explicit GraphletType(std::uint8_t index) : index_(index) {}

    constexpr std::uint8_t index() const { return index_; }
    constexpr bool degenerate() const { return index_ == 0; }

    constexpr bool operator==(const GraphletType&) const = default;

    static constexpr GraphletType degenerate_type() { return GraphletType(0); }

private:
    std::uint8_t index_ = 0;
};

// Classify from the three pair colors; order is (0,1),(0,2),(1,2) over the
// triple's slots but any order gives the same type (tested).
GraphletType classify_pair_colors(PairColor c01, PairColor c02, PairColor c12);

// Induced type of three identity slots in g. Repeated identities are the
// degenerate class.
GraphletType classify_triple(const TwoLayerGraph& g, IdentityId a, IdentityId b, IdentityId c);

// Static facts about a canonical type, for the catalog listing and reports.
struct GraphletInfo {
    std::uint8_t index;
    bool triangle;                   // false: 2-edge path
    std::array<PairColor, 3> colors; // path: {end-center, center-end, none}
    const char* label;               // e.g. "path B-BR", "triangle {B,R,BR}"
    int red_colored_pairs;           // pairs whose color contains red
    int pure_blue_pairs;             // pairs colored exactly blue
};

const std::array<GraphletInfo, kNumGraphletTypes>& graphlet_catalog();

std::string to_string(GraphletType t);

} // namespace mlgs
