#pragma once

#include <array>
#include <cstdint>

#include "mlgs/walk_state.hpp"

namespace mlgs {

// alpha_i: how many distinct walker states induce one fixed instance of
// canonical type i. Slot [i-1] holds alpha_i. For the four restricted models
// alpha_15 = alpha_16 = 0: those types carry no blue pair at all, the method
// does not estimate them and the concentration denominator runs over 1..14.
using IsoCoefficientTable = std::array<std::uint32_t, kNumGraphletTypes>;

// Counts states on a 3-identity scaffold carrying exactly the type's pair
// colors (identities present in both layers):
//  - node models: ordered identity sequences (s0,s1,s2) covering the scaffold
//    with a link-layer pattern the model can hold; a blue link needs a blue
//    edge between consecutive slots, a red link a red edge. The first slot of
//    a (red,red) state has no scaffold-internal requirement (its blue anchor
//    may lie outside the triple).
//  - rwebe: ordered pairs of scaffold edges sharing exactly one endpoint,
//    first blue, second blue or red.
IsoCoefficientTable compute_iso_coefficients(WalkModel m);

// Same tables, computed once and cached.
const IsoCoefficientTable& iso_coefficients(WalkModel m);

} // namespace mlgs
