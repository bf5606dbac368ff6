#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mlgs/multiplex_graph.hpp"
#include "mlgs/rng.hpp"

namespace mlgs {

enum class LayerModel : std::uint8_t { er, sw, ba };

// blue layer: "er:n=10000,m=95000" | "er:n=1000,p=0.02" |
// "sw:n=1000,k=10,rewire_p=0.1" | "ba:n=1000,attach_m=3"
struct BlueSpec {
    LayerModel model = LayerModel::er;
    std::uint32_t n = 0;
    std::optional<std::uint64_t> m; // er
    std::optional<double> p;        // er alternative; converted to a target count
    std::uint32_t k = 10;           // sw ring degree (even)
    double rewire_p = 0.1;          // sw
    std::uint32_t attach_m = 3;     // ba
};

// red layer over the red-present identities:
// "er:ratio=0.4,rho=0.3" (|E_R| = ratio * |E_B|; rho = fraction of red edges
// copied onto blue edges, the layer-correlation knob) | "er:p=...,rho=..." |
// "sw:k=6,rewire_p=0.1" | "ba:attach_m=2"
struct RedSpec {
    LayerModel model = LayerModel::er;
    std::optional<double> ratio = 0.4;
    std::optional<double> p;
    double rho = 0.0;
    std::uint32_t k = 6;
    double rewire_p = 0.1;
    std::uint32_t attach_m = 2;
};

// how the two layers share identities:
//   one_to_one:   every blue identity is also red
//   half_overlap: red layer same size as blue; half of it coincides with a
//                 uniform half of the blue identities, the rest are fresh
//                 red-only identities
//   blue_double:  red layer is half the blue size, all red identities are a
//                 uniform half of the blue ones
enum class Coupling : std::uint8_t { one_to_one, half_overlap, blue_double };

struct GeneratorSpec {
    BlueSpec blue;
    RedSpec red;
    Coupling coupling = Coupling::one_to_one;
    std::uint64_t seed = 0;
};

BlueSpec parse_blue_spec(const std::string& text);
RedSpec parse_red_spec(const std::string& text);
Coupling coupling_from_string(const std::string& name);
std::string to_string(Coupling c);
std::string to_string(LayerModel m);

// Deterministic in the spec (same spec -> byte-identical mlx). The blue layer
// is restricted to its largest connected component and relabeled densely
// before the red layer is attached.
TwoLayerGraph generate(const GeneratorSpec& spec);

// Blue layer from a whitespace edge list (one "u v" pair per line, arbitrary
// non-negative integer ids; '#' comments allowed). Ids are relabeled densely
// in first-appearance order, self loops and duplicate pairs are dropped, then
// the same giant-component restriction and red synthesis as generate().
TwoLayerGraph ingest_edge_list(const std::string& path, const RedSpec& red, Coupling coupling, std::uint64_t seed);

} // namespace mlgs
