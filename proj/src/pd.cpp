#include "vkh/pd.hpp"

#include "vkh/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace vkh {

std::vector<int> Component::arcs() const {
    std::vector<int> out(size());
    std::iota(out.begin(), out.end(), lo);
    return out;
}

int Diagram::component_of(int arc) const {
    auto it = std::upper_bound(components.begin(), components.end(), arc,
                               [](int x, const Component& c) { return x < c.lo; });
    if (it == components.begin()) throw InputError("arc " + std::to_string(arc) + " does not exist");
    --it;
    if (arc > it->hi) throw InputError("arc " + std::to_string(arc) + " does not exist");
    return static_cast<int>(it - components.begin());
}

int Diagram::successor(int arc) const {
    const Component& c = components[component_of(arc)];
    return arc == c.hi ? c.lo : arc + 1;
}

int Diagram::predecessor(int arc) const {
    const Component& c = components[component_of(arc)];
    return arc == c.lo ? c.hi : arc - 1;
}

int Diagram::over_in(int k) const {
    return crossings[k].sign > 0 ? pd[k][3] : pd[k][1];
}

int Diagram::over_out(int k) const {
    return crossings[k].sign > 0 ? pd[k][1] : pd[k][3];
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    PDCode parse_bracket() {
        PDCode out;
        skip_ws();
        expect_word("PD");
        skip_ws();
        expect('[');
        skip_ws();
        if (peek() == ']') {
            ++pos_;
        } else {
            for (;;) {
                skip_ws();
                out.push_back(parse_x());
                skip_ws();
                if (peek() == ',') { ++pos_; continue; }
                expect(']');
                break;
            }
        }
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return out;
    }

private:
    Crossing parse_x() {
        expect_word("X");
        skip_ws();
        std::size_t open = pos_;
        expect('[');
        std::vector<int> vals;
        skip_ws();
        if (peek() != ']') {
            for (;;) {
                skip_ws();
                vals.push_back(parse_label());
                skip_ws();
                if (peek() == ',') { ++pos_; continue; }
                break;
            }
        }
        expect(']');
        if (vals.size() != 4)
            fail_at(open, "crossing has " + std::to_string(vals.size()) + " entries, expected 4");
        return {vals[0], vals[1], vals[2], vals[3]};
    }

    int parse_label() {
        std::size_t start = pos_;
        bool neg = false;
        if (peek() == '-' || peek() == '+') { neg = peek() == '-'; ++pos_; }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer arc label");
        long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > std::numeric_limits<int>::max()) fail_at(start, "arc label out of range");
            ++pos_;
        }
        if (neg) v = -v;
        if (v <= 0) fail_at(start, "arc label must be positive, got " + std::to_string(v));
        return static_cast<int>(v);
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void expect(char c) {
        if (peek() != c) {
            std::string got = pos_ < s_.size() ? std::string("'") + s_[pos_] + "'" : "end of input";
            fail(std::string("expected '") + c + "', got " + got);
        }
        ++pos_;
    }

    void expect_word(std::string_view w) {
        if (s_.substr(pos_, w.size()) != w) fail("expected '" + std::string(w) + "'");
        pos_ += w.size();
    }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
            if (s_[i] == '\n') { ++line; col = 1; } else { ++col; }
        }
        throw ParseError(msg, at, line, col);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

PDCode parse_json_pd(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < text.size(); ++i) {
            if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
        }
        throw ParseError("invalid JSON", at, line, col);
    }
    if (!j.is_array()) throw InputError("JSON PD code must be an array of 4-element arrays");
    PDCode out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto& t = j[k];
        if (!t.is_array()) throw InputError("crossing " + std::to_string(k) + " is not an array");
        if (t.size() != 4)
            throw InputError("crossing " + std::to_string(k) + " has " + std::to_string(t.size()) +
                             " entries, expected 4");
        Crossing c{};
        for (int p = 0; p < 4; ++p) {
            if (!t[p].is_number_integer())
                throw InputError("crossing " + std::to_string(k) + " has a non-integer entry");
            long long v = t[p].get<long long>();
            if (v <= 0 || v > std::numeric_limits<int>::max())
                throw InputError("crossing " + std::to_string(k) + ": arc label must be positive, got " +
                                 std::to_string(v));
            c[p] = static_cast<int>(v);
        }
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string strip_comments(std::string_view text) {
    std::string out(text);
    bool in_comment = false;
    for (char& ch : out) {
        if (ch == '\n') { in_comment = false; continue; }
        if (ch == '#') in_comment = true;
        if (in_comment) ch = ' ';
    }
    return out;
}

PDCode parse_pd(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '[') return parse_json_pd(text);
    return Parser(text).parse_bracket();
}

std::string render_pd(const PDCode& pd) {
    std::ostringstream os;
    os << "PD[";
    for (std::size_t k = 0; k < pd.size(); ++k) {
        if (k) os << ',';
        os << "X[" << pd[k][0] << ',' << pd[k][1] << ',' << pd[k][2] << ',' << pd[k][3] << ']';
    }
    os << ']';
    return os.str();
}

std::string render_pd_json(const PDCode& pd) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : pd) j.push_back({c[0], c[1], c[2], c[3]});
    return j.dump();
}

// ------------------------------------------------------------- validation

Diagram validate(const PDCode& pd) {
    Diagram d;
    d.pd = pd;
    std::map<int, int> count;
    for (const auto& c : pd)
        for (int x : c) ++count[x];
    for (auto [label, n] : count)
        if (n != 2)
            throw InputError("arc " + std::to_string(label) + " appears " + std::to_string(n) +
                             " times, expected 2");

    // components: arcs joined through a->c and b->d
    std::vector<int> labels;
    for (auto& kv : count) labels.push_back(kv.first);
    std::map<int, int> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) idx[labels[i]] = static_cast<int>(i);
    std::vector<int> parent(labels.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& c : pd) {
        parent[find(idx[c[0]])] = find(idx[c[2]]);
        parent[find(idx[c[1]])] = find(idx[c[3]]);
    }
    std::map<int, std::vector<int>> groups;
    for (std::size_t i = 0; i < labels.size(); ++i) groups[find(static_cast<int>(i))].push_back(labels[i]);
    for (auto& [root, g] : groups) {
        int lo = g.front(), hi = g.back();
        if (hi - lo + 1 != static_cast<int>(g.size()))
            throw InputError("component containing arc " + std::to_string(lo) +
                             " does not have contiguous labels");
        if (g.size() < 3)
            throw InputError("component containing arc " + std::to_string(lo) + " has " +
                             std::to_string(g.size()) + " arcs; stabilize it to at least 3");
        d.components.push_back({lo, hi});
    }
    std::sort(d.components.begin(), d.components.end(),
              [](const Component& a, const Component& b) { return a.lo < b.lo; });

    // Every passage x -> successor(x) is used exactly once.
    std::map<int, int> passage_uses;
    for (std::size_t k = 0; k < pd.size(); ++k) {
        const auto& c = pd[k];
        std::string where = "crossing " + std::to_string(k) + " " + render_pd({c}).substr(3);
        where.pop_back();
        if (d.successor(c[0]) != c[2])
            throw InputError(where + ": under-strand does not run from a to c");
        CrossingInfo info;
        if (d.successor(c[3]) == c[1]) {
            info.sign = 1;
            ++passage_uses[c[3]];
        } else if (d.successor(c[1]) == c[3]) {
            info.sign = -1;
            ++passage_uses[c[1]];
        } else {
            throw InputError(where + ": over-strand arcs b and d are not consecutive");
        }
        ++passage_uses[c[0]];
        info.under_component = d.component_of(c[0]);
        info.over_component = d.component_of(c[1]);
        info.kind = info.under_component == info.over_component ? CrossingKind::self : CrossingKind::mixed;
        d.crossings.push_back(info);
    }
    for (auto [arc, n] : passage_uses)
        if (n != 1)
            throw InputError("the passage from arc " + std::to_string(arc) + " to arc " +
                             std::to_string(d.successor(arc)) + " occurs at " + std::to_string(n) +
                             " crossings");
    return d;
}

Diagram parse_diagram(std::string_view text) {
    return validate(parse_pd(strip_comments(text)));
}

CrossingCounts crossing_counts(const Diagram& d) {
    CrossingCounts c;
    for (const auto& x : d.crossings) {
        if (x.kind == CrossingKind::self)
            (x.sign > 0 ? c.s_plus : c.s_minus)++;
        else
            ++c.m;
        (x.sign > 0 ? c.n_plus : c.n_minus)++;
    }
    return c;
}

// ----------------------------------------------------------- manipulation

Diagram reverse_component(const Diagram& d, int k) {
    const Component comp = d.components.at(k);
    auto flip = [&](int x) { return x >= comp.lo && x <= comp.hi ? comp.lo + comp.hi - x : x; };
    PDCode out;
    for (std::size_t i = 0; i < d.pd.size(); ++i) {
        Crossing c = d.pd[i];
        if (d.crossings[i].under_component == k) c = {c[2], c[3], c[0], c[1]};
        for (int& x : c) x = flip(x);
        out.push_back(c);
    }
    return validate(out);
}

Diagram build_from_passages(const std::vector<std::vector<Passage>>& comps, const std::vector<int>& signs) {
    const std::size_t n = signs.size();
    std::vector<int> under_in(n, 0), under_out(n, 0), over_in(n, 0), over_out(n, 0);
    std::vector<int> seen_under(n, 0), seen_over(n, 0);
    int base = 1;
    for (const auto& comp : comps) {
        const int m = static_cast<int>(comp.size());
        for (int j = 0; j < m; ++j) {
            const Passage& p = comp[j];
            if (p.crossing < 0 || static_cast<std::size_t>(p.crossing) >= n)
                throw InputError("passage refers to unknown crossing");
            int in = base + j, out = base + (j + 1) % m;
            if (p.over) {
                over_in[p.crossing] = in;
                over_out[p.crossing] = out;
                ++seen_over[p.crossing];
            } else {
                under_in[p.crossing] = in;
                under_out[p.crossing] = out;
                ++seen_under[p.crossing];
            }
        }
        base += m;
    }
    PDCode pd;
    for (std::size_t x = 0; x < n; ++x) {
        if (seen_under[x] != 1 || seen_over[x] != 1)
            throw InputError("crossing " + std::to_string(x) + " needs exactly one under and one over passage");
        if (signs[x] > 0)
            pd.push_back({under_in[x], over_out[x], under_out[x], over_in[x]});
        else
            pd.push_back({under_in[x], over_in[x], under_out[x], over_out[x]});
    }
    return validate(pd);
}

namespace {

// Passages of each component in traversal order: the j-th entry is where arc lo+j ends.
std::vector<std::vector<Passage>> passages_of(const Diagram& d) {
    std::map<int, Passage> ends_at;
    for (int k = 0; k < d.num_crossings(); ++k) {
        ends_at[d.pd[k][0]] = {k, false};
        ends_at[d.over_in(k)] = {k, true};
    }
    std::vector<std::vector<Passage>> out;
    for (const auto& c : d.components) {
        std::vector<Passage> ps;
        for (int x = c.lo; x <= c.hi; ++x) ps.push_back(ends_at.at(x));
        out.push_back(ps);
    }
    return out;
}

} // namespace

Diagram delete_components(const Diagram& d, const std::set<int>& drop) {
    if (drop.empty()) return d;
    for (int k : drop)
        if (k < 0 || k >= d.num_components()) throw InputError("component index out of range");
    auto all = passages_of(d);
    std::vector<int> new_index(d.num_crossings(), -1);
    std::vector<int> signs;
    for (int k = 0; k < d.num_crossings(); ++k) {
        const auto& ci = d.crossings[k];
        if (drop.count(ci.under_component) || drop.count(ci.over_component)) continue;
        new_index[k] = static_cast<int>(signs.size());
        signs.push_back(ci.sign);
    }
    std::vector<std::vector<Passage>> comps;
    for (int c = 0; c < d.num_components(); ++c) {
        if (drop.count(c)) continue;
        std::vector<Passage> ps;
        for (const Passage& p : all[c])
            if (new_index[p.crossing] >= 0) ps.push_back({new_index[p.crossing], p.over});
        while (ps.size() < 3) {
            int x = static_cast<int>(signs.size());
            signs.push_back(1);
            ps.push_back({x, false});
            ps.push_back({x, true});
        }
        comps.push_back(ps);
    }
    return build_from_passages(comps, signs);
}

Diagram r1_stabilize(const Diagram& d, int arc, int sign) {
    d.component_of(arc);  // throws if missing
    if (sign != 1 && sign != -1) throw InputError("kink sign must be +1 or -1");
    auto shift = [&](int y) { return y > arc ? y + 2 : y; };
    PDCode out;
    for (int k = 0; k < d.num_crossings(); ++k) {
        Crossing c = d.pd[k];
        const int over_in_pos = d.crossings[k].sign > 0 ? 3 : 1;
        for (int p = 0; p < 4; ++p) {
            if (c[p] == arc && (p == 0 || p == over_in_pos))
                c[p] = arc + 2;  // the end where the arc arrives now belongs to the piece after the kink
            else
                c[p] = shift(c[p]);
        }
        out.push_back(c);
    }
    if (sign > 0)
        out.push_back({arc, arc + 2, arc + 1, arc + 1});
    else
        out.push_back({arc, arc + 1, arc + 1, arc + 2});
    return validate(out);
}

Diagram crossing_change(const Diagram& d, int k) {
    PDCode out = d.pd;
    const Crossing c = d.pd.at(k);
    if (d.crossings[k].sign > 0)
        out[k] = {c[3], c[0], c[1], c[2]};
    else
        out[k] = {c[1], c[2], c[3], c[0]};
    return validate(out);
}

Diagram rotate_labels(const Diagram& d, int k, int r) {
    const Component comp = d.components.at(k);
    const int m = comp.size();
    const int shift = ((r % m) + m) % m;
    PDCode out = d.pd;
    for (auto& c : out)
        for (int& x : c)
            if (x >= comp.lo && x <= comp.hi) x = comp.lo + (x - comp.lo + shift) % m;
    return validate(out);
}

} // namespace vkh
