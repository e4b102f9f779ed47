#pragma once

#include "vkh/pd.hpp"
#include "vkh/smith.hpp"
#include "vkh/state_sum.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vkh {

enum class Algebra { khovanov, lee };

// Where the two cut points of a crossing sit, as tuple positions.
//   under_in_over_out: incoming under end (a) and outgoing over end.
//   under_out_over_in: outgoing under end (c) and incoming over end.
//   over_ends: both over-strand ends (b and d). Gives odd loops; kept for testing.
enum class CutRule { under_in_over_out, under_out_over_in, over_ends };

struct CubeOptions {
    CutRule cut_rule = CutRule::under_in_over_out;
    // Local order at a site: merge inputs (circle at a, circle at c) and split
    // outputs (circle at a, circle at b); the flags swap each pair.
    bool transpose_merge = false;
    bool transpose_split = false;
};

bool is_cut(const Diagram& d, int crossing, int position, CutRule rule);

enum class TokenKind { base, arc, cut, port };

struct Token {
    TokenKind kind;
    int crossing = -1;  // cut, port
    int position = -1;  // cut, port
    int arc = 0;        // arc
};

// Tokens in traversal order starting at the base point, which sits halfway
// along the circle's smallest arc.
struct Circle {
    int label = 0;
    std::vector<Token> tokens;
};

struct ResolvedState {
    Smoothing smoothing = 0;
    std::vector<Circle> circles;          // ascending label
    std::vector<int> end_circle;          // [4k+p] -> circle index
    std::vector<std::uint8_t> end_parity; // [4k+p] -> cut points between base point and that end, mod 2
    std::vector<int> end_token;           // [4k+p] -> index of its port token

    int index_of_label(int label) const;
};

ResolvedState resolve(const Diagram& d, Smoothing s, const CubeOptions& opt = {});

// Cut points strictly between two tokens of a circle, walking forward, mod 2.
int transport_parity(const Circle& c, std::size_t from, std::size_t to);
// Cut points on the whole circle, mod 2. Zero on every well-formed state.
int loop_parity(const Circle& c);

enum class EdgeKind { merge, split, single_cycle };

struct LabelTerm {
    std::uint64_t labels;  // bit c set iff circle c carries x
    int coef;
};

// Everything needed to evaluate one edge of the cube on any enhanced state.
struct EdgePlan {
    EdgeKind kind = EdgeKind::single_cycle;
    Algebra alg = Algebra::khovanov;
    int tau = 0;
    Smoothing source = 0, target = 0;
    int in1 = -1, in2 = -1;      // source circles (merge: first, second in local order; split: in1 only)
    int out1 = -1, out2 = -1;    // target circles (split: first, second in local order; merge: out1 only)
    int p_in1 = 0, p_in2 = 0;    // transport parities base point <-> site
    int p_out1 = 0, p_out2 = 0;
    int wedge_sign = 1;
    std::vector<std::pair<int, int>> rest;  // untouched circles: (source index, target index)

    // Writes up to two terms; returns how many.
    int apply(std::uint64_t labels, LabelTerm out[2]) const;
};

EdgePlan plan_edge(const ResolvedState& src, const ResolvedState& dst, int tau, Algebra alg,
                   const CubeOptions& opt = {});

struct EdgeMap {
    EdgePlan plan;
    std::vector<std::vector<LabelTerm>> images;  // indexed by source label vector
};

EdgeMap edge_map(const Diagram& d, const ResolvedState& st, int tau, Algebra alg, const CubeOptions& opt = {});

struct BigradedComplex {
    int crossings = 0;
    Algebra alg = Algebra::khovanov;
    std::vector<ResolvedState> states;                 // indexed by smoothing
    std::vector<std::vector<Smoothing>> degree_states; // per homological degree, ascending
    std::vector<std::size_t> state_offset;             // per smoothing, offset within its degree
    std::vector<std::size_t> dims;                     // per degree
    std::vector<SparseIntMatrix> boundary;             // boundary[i]: C^i -> C^{i+1}
    int shift_h2 = 0;
    int shift_q2 = 0;

    std::size_t generator(Smoothing s, std::uint64_t labels) const { return state_offset[s] + labels; }
    // (smoothing, labels) of generator g in degree i
    std::pair<Smoothing, std::uint64_t> decode(int i, std::size_t g) const;
    // unshifted doubled quantum grading: 2(n_B + #1 - #x)
    int qgrade2(int i, std::size_t g) const;
};

struct Face {
    Smoothing source;
    int tau1, tau2;
    std::string describe() const;
};

BigradedComplex build_complex(const Diagram& d, Algebra alg, const CubeOptions& opt = {}, int jobs = 1,
                              bool verify = false);

// First face whose two composites do not cancel, found from the matrices (d^2).
std::optional<Face> find_nonzero_square(const BigradedComplex& c);
// Face-by-face check through edge_map, independent of the assembled matrices.
bool face_anticommutes(const Diagram& d, const std::vector<ResolvedState>& states, Smoothing s, int tau1, int tau2,
                       Algebra alg, const CubeOptions& opt = {});
std::optional<Face> check_all_faces(const Diagram& d, Algebra alg, const CubeOptions& opt = {}, int jobs = 1);

// Line-oriented description of states, tokens and edge maps.
void dump_cube(std::ostream& os, const Diagram& d, const BigradedComplex& c, const CubeOptions& opt = {});

std::string label_string(std::uint64_t labels, std::size_t circles);

} // namespace vkh
