#pragma once

#include "vkh/cube.hpp"
#include "vkh/polynomial.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vkh {

enum class Ring { z, q, f2 };

Ring parse_ring(const std::string& name);
std::string ring_name(Ring r);

struct HomologyGroup {
    std::size_t free_rank = 0;
    std::vector<BigInt> torsion;  // divisibility order; Z only
    bool operator==(const HomologyGroup&) const = default;
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
};

struct HomologyTable {
    std::string theory;
    Ring ring = Ring::z;
    bool bigraded = true;
    int shift_h2 = 0;  // already applied to the keys below
    int shift_q2 = 0;
    std::map<std::pair<int, int>, HomologyGroup> entries;  // (2i, 2j); bigraded theories
    std::map<int, HomologyGroup> by_degree;                // 2i; Lee
    // Lee: dimension of the associated graded piece at filtration level 2j, over Q
    // (over F2 when the ring is f2).
    std::map<std::pair<int, int>, std::size_t> filtration;

    std::size_t total_rank() const;
    // Equality of the isomorphism type: theory-independent comparison of groups.
    bool same_groups(const HomologyTable& o) const;

    nlohmann::json to_json() const;
    static HomologyTable from_json(const nlohmann::json& j);
    std::string to_text() const;
};

// Homology of the complex, with the complex's own shift applied.
HomologyTable homology_of(const BigradedComplex& c, Ring ring, int jobs = 1);

// Moves (2i, 2j) to (2i + a2, 2j + b2).
HomologyTable shift(const HomologyTable& t, int a2, int b2);
BigradedComplex shift(BigradedComplex c, int a2, int b2);

LaurentPoly graded_euler(const HomologyTable& t);
// Chain-level Euler characteristic sum (-1)^i q^j dim C^{i,j}, shift included.
LaurentPoly chain_euler(const BigradedComplex& c);

struct HomologyOptions {
    Ring ring = Ring::z;
    int jobs = 1;
    bool verify = false;            // check d^2 = 0 and gradings while building
    bool incorporate_sign = false;  // add l~ to the homological shift of the unoriented theories
    CubeOptions cube;
};

HomologyTable bracket_homology(const Diagram& d, const HomologyOptions& opt = {});
HomologyTable kh_oriented(const Diagram& d, const HomologyOptions& opt = {});
HomologyTable kh_unoriented(const Diagram& d, const HomologyOptions& opt = {});
HomologyTable lee_unoriented(const Diagram& d, const HomologyOptions& opt = {});

// Shifts (doubled) used by the theories above.
std::pair<int, int> oriented_shift(const Diagram& d);
std::pair<int, int> unoriented_shift(const Diagram& d, bool incorporate_sign);

} // namespace vkh
