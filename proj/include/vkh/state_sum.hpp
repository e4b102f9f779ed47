#pragma once

#include "vkh/invariants.hpp"
#include "vkh/pd.hpp"
#include "vkh/polynomial.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace vkh {

// Which tuple positions the two smoothings join. standard: A joins {a,b},{c,d}
// and B joins {a,d},{b,c}. swapped exchanges the two.
enum class SmoothingConvention { standard, swapped };

using EndPairs = std::array<std::pair<int, int>, 2>;
EndPairs smoothing_pairs(bool b_smoothing, SmoothingConvention conv = SmoothingConvention::standard);

// Bit k of a smoothing vector is set iff crossing k gets the B-smoothing.
using Smoothing = std::uint64_t;

constexpr int kMaxCrossings = 30;

// Arc labels of a diagram renumbered 0..2n-1, per tuple entry.
struct ArcIndex {
    std::vector<std::array<int, 4>> at;  // at[k][p]
    int arcs = 0;
    explicit ArcIndex(const Diagram& d);
};

int count_circles(const ArcIndex& idx, Smoothing s, SmoothingConvention conv = SmoothingConvention::standard);

// counts[nB][c] = number of states with nB B-smoothings and c circles.
std::vector<std::vector<std::uint64_t>> state_census(const Diagram& d, int jobs = 1,
                                                     SmoothingConvention conv = SmoothingConvention::standard);

LaurentPoly kauffman_bracket(const Diagram& d, int jobs = 1,
                             SmoothingConvention conv = SmoothingConvention::standard);
GaussInt bracket_at_one(const Diagram& d, int jobs = 1);

LaurentPoly jones(const Diagram& d, int jobs = 1);
// Multi-core scheme result is checked to be real.
LaurentPoly unoriented_jones(const Diagram& d, ParityScheme scheme, int jobs = 1);

// Normalizations applied to the bracket, as (unit, doubled q-shift).
std::pair<GaussInt, int> jones_normalization(const Diagram& d);
std::pair<GaussInt, int> unoriented_normalization(const Diagram& d, ParityScheme scheme);

} // namespace vkh
