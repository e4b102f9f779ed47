#pragma once

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vkh {

// (a,b,c,d): arcs counterclockwise from the incoming under-arc a.
// The under-strand runs a->c; the over-strand occupies b and d.
using Crossing = std::array<int, 4>;
using PDCode = std::vector<Crossing>;

enum class CrossingKind { self, mixed };

struct CrossingInfo {
    int sign = 0;  // +1 iff the over-strand runs d->b
    CrossingKind kind = CrossingKind::self;
    int under_component = 0;
    int over_component = 0;
};

// Arc labels of a component form the block lo..hi, traversed in increasing order.
struct Component {
    int lo = 0;
    int hi = 0;
    int size() const { return hi - lo + 1; }
    std::vector<int> arcs() const;
};

struct CrossingCounts {
    int s_plus = 0;
    int s_minus = 0;
    int m = 0;
    int n_plus = 0;
    int n_minus = 0;
    bool operator==(const CrossingCounts&) const = default;
};

class Diagram {
public:
    PDCode pd;
    std::vector<Component> components;  // sorted by lo
    std::vector<CrossingInfo> crossings;

    int num_crossings() const { return static_cast<int>(pd.size()); }
    int num_components() const { return static_cast<int>(components.size()); }
    int component_of(int arc) const;
    int successor(int arc) const;
    int predecessor(int arc) const;
    // Over-strand arcs at crossing k in traversal order.
    int over_in(int k) const;
    int over_out(int k) const;
};

// Accepts PD[X[a,b,c,d],...] or [[a,b,c,d],...]. Whitespace-insensitive.
PDCode parse_pd(std::string_view text);
// Replaces '#' comments by blanks so parse positions still refer to the original text.
std::string strip_comments(std::string_view text);
std::string render_pd(const PDCode& pd);
std::string render_pd_json(const PDCode& pd);

Diagram validate(const PDCode& pd);
Diagram parse_diagram(std::string_view text);

CrossingCounts crossing_counts(const Diagram& d);

Diagram reverse_component(const Diagram& d, int k);
Diagram delete_components(const Diagram& d, const std::set<int>& drop);
Diagram r1_stabilize(const Diagram& d, int arc, int sign);

// Swap over and under at crossing k, keeping the incoming-under-first convention.
Diagram crossing_change(const Diagram& d, int k);
// Cyclically shift the labels of component k by r within its block.
Diagram rotate_labels(const Diagram& d, int k, int r);

// Builds a diagram from components given as cyclic lists of passages.
// A passage is (crossing index, is_over); signs[x] is the sign of crossing x.
// Arc j of a component is the arc entering its j-th passage; labels count up from 1.
struct Passage {
    int crossing;
    bool over;
};
Diagram build_from_passages(const std::vector<std::vector<Passage>>& comps, const std::vector<int>& signs);

} // namespace vkh
