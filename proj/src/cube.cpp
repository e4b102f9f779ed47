#include "vkh/cube.hpp"

#include "vkh/errors.hpp"
#include "vkh/parallel.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <ostream>

namespace vkh {

namespace {

constexpr int kMaxCubeCrossings = 20;

int perm_parity(const std::vector<int>& seq) {
    int inv = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) ++inv;
    return inv & 1;
}

int bit(std::uint64_t labels, int c) { return static_cast<int>((labels >> c) & 1); }

std::string smoothing_string(Smoothing s, int n) {
    std::string out;
    for (int k = 0; k < n; ++k) out += ((s >> k) & 1) ? 'B' : 'A';
    return n ? out : "-";
}

} // namespace

bool is_cut(const Diagram& d, int crossing, int position, CutRule rule) {
    const int sign = d.crossings[crossing].sign;
    const int over_in = sign > 0 ? 3 : 1;
    const int over_out = sign > 0 ? 1 : 3;
    switch (rule) {
    case CutRule::under_in_over_out: return position == 0 || position == over_out;
    case CutRule::under_out_over_in: return position == 2 || position == over_in;
    case CutRule::over_ends: return position == 1 || position == 3;
    }
    return false;
}

int ResolvedState::index_of_label(int label) const {
    auto it = std::lower_bound(circles.begin(), circles.end(), label,
                               [](const Circle& c, int l) { return c.label < l; });
    if (it == circles.end() || it->label != label) throw ConsistencyError("no circle with label " + std::to_string(label));
    return static_cast<int>(it - circles.begin());
}

ResolvedState resolve(const Diagram& d, Smoothing s, const CubeOptions& opt) {
    const int n = d.num_crossings();
    const int ends = 4 * n;
    std::vector<int> other_end(ends, -1), partner(ends, -1);
    std::map<int, int> first_end;
    for (int e = 0; e < ends; ++e) {
        int label = d.pd[e / 4][e % 4];
        auto [it, fresh] = first_end.emplace(label, e);
        if (!fresh) {
            other_end[e] = it->second;
            other_end[it->second] = e;
        }
    }
    for (int k = 0; k < n; ++k)
        for (auto [p, q] : smoothing_pairs((s >> k) & 1)) {
            partner[4 * k + p] = 4 * k + q;
            partner[4 * k + q] = 4 * k + p;
        }

    ResolvedState st;
    st.smoothing = s;
    st.end_circle.assign(ends, -1);
    st.end_parity.assign(ends, 0);
    st.end_token.assign(ends, -1);
    std::vector<char> seen(ends, 0);
    struct Raw {
        Circle circle;
        std::vector<std::pair<int, int>> port_parity;  // (end, token index)
    };
    std::vector<Raw> raw;
    for (int start = 0; start < ends; ++start) {
        if (seen[start]) continue;
        std::vector<std::pair<int, int>> seq;  // arcs walked from end e to end oe
        int e = start;
        do {
            int oe = other_end[e];
            seen[e] = seen[oe] = 1;
            seq.emplace_back(e, oe);
            e = partner[oe];
        } while (e != start);
        const int len = static_cast<int>(seq.size());
        int kmin = 0;
        auto label_of = [&](int end) { return d.pd[end / 4][end % 4]; };
        for (int i = 1; i < len; ++i)
            if (label_of(seq[i].first) < label_of(seq[kmin].first)) kmin = i;

        Raw r;
        Circle& c = r.circle;
        c.label = label_of(seq[kmin].first);
        auto cut = [&](int end) {
            if (is_cut(d, end / 4, end % 4, opt.cut_rule)) c.tokens.push_back({TokenKind::cut, end / 4, end % 4, 0});
        };
        auto port = [&](int end) {
            r.port_parity.emplace_back(end, static_cast<int>(c.tokens.size()));
            c.tokens.push_back({TokenKind::port, end / 4, end % 4, 0});
        };
        c.tokens.push_back({TokenKind::base, -1, -1, c.label});
        c.tokens.push_back({TokenKind::arc, -1, -1, c.label});
        cut(seq[kmin].second);
        port(seq[kmin].second);
        for (int i = 1; i < len; ++i) {
            auto [a, b] = seq[(kmin + i) % len];
            port(a);
            cut(a);
            c.tokens.push_back({TokenKind::arc, -1, -1, label_of(a)});
            cut(b);
            port(b);
        }
        port(seq[kmin].first);
        cut(seq[kmin].first);
        raw.push_back(std::move(r));
    }
    std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.circle.label < b.circle.label; });
    for (std::size_t ci = 0; ci < raw.size(); ++ci) {
        const Circle& c = raw[ci].circle;
        if (loop_parity(c) != 0)
            throw ConsistencyError("circle " + std::to_string(c.label) + " in state " +
                                   smoothing_string(s, n) + " passes an odd number of cut points");
        for (auto [end, tok] : raw[ci].port_parity) {
            st.end_circle[end] = static_cast<int>(ci);
            st.end_token[end] = tok;
            st.end_parity[end] = static_cast<std::uint8_t>(transport_parity(c, 0, tok));
        }
        st.circles.push_back(c);
    }
    return st;
}

int transport_parity(const Circle& c, std::size_t from, std::size_t to) {
    const std::size_t len = c.tokens.size();
    if (from >= len || to >= len) throw std::out_of_range("token not on circle");
    int cuts = 0;
    for (std::size_t i = (from + 1) % len; from != to && i != to; i = (i + 1) % len)
        if (c.tokens[i].kind == TokenKind::cut) ++cuts;
    return cuts & 1;
}

int loop_parity(const Circle& c) {
    int cuts = 0;
    for (const Token& t : c.tokens)
        if (t.kind == TokenKind::cut) ++cuts;
    return cuts & 1;
}

EdgePlan plan_edge(const ResolvedState& src, const ResolvedState& dst, int tau, Algebra alg, const CubeOptions& opt) {
    if ((src.smoothing >> tau) & 1) throw std::invalid_argument("edge map needs an A-smoothing at the site");
    EdgePlan e;
    e.alg = alg;
    e.tau = tau;
    e.source = src.smoothing;
    e.target = dst.smoothing;
    const int a = 4 * tau, b = 4 * tau + 1, c = 4 * tau + 2;
    const int P = src.end_circle[a], Q = src.end_circle[c];
    const int k = static_cast<int>(src.circles.size());
    std::vector<int> rest_src, rest_dst;
    auto collect_rest = [&](std::initializer_list<int> skip) {
        for (int i = 0; i < k; ++i) {
            if (std::find(skip.begin(), skip.end(), i) != skip.end()) continue;
            int j = dst.index_of_label(src.circles[i].label);
            e.rest.emplace_back(i, j);
            rest_src.push_back(i);
            rest_dst.push_back(j);
        }
    };
    if (P != Q) {
        e.kind = EdgeKind::merge;
        int first = P, second = Q, pf = src.end_parity[a], ps = src.end_parity[c];
        if (opt.transpose_merge) {
            std::swap(first, second);
            std::swap(pf, ps);
        }
        e.in1 = first;
        e.in2 = second;
        e.p_in1 = pf;
        e.p_in2 = ps;
        e.out1 = dst.end_circle[a];
        e.p_out1 = dst.end_parity[a];
        collect_rest({P, Q});
        std::vector<int> before{first, second}, after{e.out1};
        before.insert(before.end(), rest_src.begin(), rest_src.end());
        after.insert(after.end(), rest_dst.begin(), rest_dst.end());
        e.wedge_sign = (perm_parity(before) ^ perm_parity(after)) ? -1 : 1;
        return e;
    }
    if (dst.circles.size() == src.circles.size()) {
        e.kind = EdgeKind::single_cycle;
        e.in1 = P;
        e.out1 = dst.end_circle[a];
        return e;
    }
    e.kind = EdgeKind::split;
    e.in1 = P;
    e.p_in1 = src.end_parity[a];
    int first = dst.end_circle[a], second = dst.end_circle[b];
    int pf = dst.end_parity[a], ps = dst.end_parity[b];
    if (opt.transpose_split) {
        std::swap(first, second);
        std::swap(pf, ps);
    }
    e.out1 = first;
    e.out2 = second;
    e.p_out1 = pf;
    e.p_out2 = ps;
    collect_rest({P});
    std::vector<int> before{P}, after{first, second};
    before.insert(before.end(), rest_src.begin(), rest_src.end());
    after.insert(after.end(), rest_dst.begin(), rest_dst.end());
    e.wedge_sign = (perm_parity(before) ^ perm_parity(after)) ? -1 : 1;
    return e;
}

int EdgePlan::apply(std::uint64_t labels, LabelTerm out[2]) const {
    if (kind == EdgeKind::single_cycle) return 0;
    std::uint64_t base = 0;
    for (auto [i, j] : rest) base |= std::uint64_t(bit(labels, i)) << j;
    auto sgn = [](int parity) { return (parity & 1) ? -1 : 1; };
    int n = 0;
    if (kind == EdgeKind::merge) {
        const int u = bit(labels, in1), v = bit(labels, in2);
        const int s = wedge_sign * sgn(u * p_in1 + v * p_in2);
        int w;
        if (u + v == 0) w = 0;
        else if (u + v == 1) w = 1;
        else if (alg == Algebra::lee) w = 0;
        else return 0;
        out[n++] = {base | (std::uint64_t(w) << out1), s * sgn(w * p_out1)};
        return n;
    }
    const int u = bit(labels, in1);
    const int s = wedge_sign * sgn(u * p_in1);
    auto emit = [&](int w1, int w2) {
        out[n++] = {base | (std::uint64_t(w1) << out1) | (std::uint64_t(w2) << out2),
                    s * sgn(w1 * p_out1 + w2 * p_out2)};
    };
    if (u == 0) {
        emit(0, 1);
        emit(1, 0);
    } else {
        emit(1, 1);
        if (alg == Algebra::lee) emit(0, 0);
    }
    return n;
}

EdgeMap edge_map(const Diagram& d, const ResolvedState& st, int tau, Algebra alg, const CubeOptions& opt) {
    if (tau < 0 || tau >= d.num_crossings()) throw std::out_of_range("no such crossing");
    if ((st.smoothing >> tau) & 1) throw std::invalid_argument("edge map needs an A-smoothing at the site");
    const ResolvedState dst = resolve(d, st.smoothing | (Smoothing(1) << tau), opt);
    EdgeMap m;
    m.plan = plan_edge(st, dst, tau, alg, opt);
    const std::uint64_t count = std::uint64_t(1) << st.circles.size();
    m.images.resize(count);
    LabelTerm buf[2];
    for (std::uint64_t l = 0; l < count; ++l) {
        int t = m.plan.apply(l, buf);
        m.images[l].assign(buf, buf + t);
    }
    return m;
}

std::pair<Smoothing, std::uint64_t> BigradedComplex::decode(int i, std::size_t g) const {
    const auto& list = degree_states.at(i);
    auto it = std::upper_bound(list.begin(), list.end(), g,
                               [&](std::size_t x, Smoothing s) { return x < state_offset[s]; });
    if (it == list.begin()) throw std::out_of_range("generator out of range");
    Smoothing s = *(it - 1);
    return {s, g - state_offset[s]};
}

int BigradedComplex::qgrade2(int i, std::size_t g) const {
    auto [s, labels] = decode(i, g);
    const int k = static_cast<int>(states[s].circles.size());
    return 2 * (i + k - 2 * std::popcount(labels));
}

std::string Face::describe() const {
    return "face at state " + std::to_string(source) + " with crossings " + std::to_string(tau1) + " and " +
           std::to_string(tau2);
}

BigradedComplex build_complex(const Diagram& d, Algebra alg, const CubeOptions& opt, int jobs, bool verify) {
    const int n = d.num_crossings();
    if (n > kMaxCubeCrossings)
        throw InputError("diagram has " + std::to_string(n) + " crossings; the cube is limited to " +
                         std::to_string(kMaxCubeCrossings));
    BigradedComplex cx;
    cx.crossings = n;
    cx.alg = alg;
    const std::size_t nstates = std::size_t(1) << n;
    cx.states.resize(nstates);
    parallel_for(nstates, jobs, [&](std::size_t s) { cx.states[s] = resolve(d, s, opt); }, 16);

    cx.degree_states.assign(n + 1, {});
    cx.state_offset.assign(nstates, 0);
    cx.dims.assign(n + 1, 0);
    for (Smoothing s = 0; s < nstates; ++s) {
        const int i = std::popcount(s);
        cx.degree_states[i].push_back(s);
        cx.state_offset[s] = cx.dims[i];
        cx.dims[i] += std::size_t(1) << cx.states[s].circles.size();
        if (cx.dims[i] > std::numeric_limits<std::uint32_t>::max())
            throw InputError("chain group too large");
    }
    cx.boundary.resize(n);
    for (int i = 0; i < n; ++i) {
        SparseIntMatrix& m = cx.boundary[i];
        m = SparseIntMatrix(cx.dims[i + 1], cx.dims[i]);
        const auto& list = cx.degree_states[i];
        parallel_for(list.size(), jobs, [&](std::size_t idx) {
            const Smoothing s = list[idx];
            const ResolvedState& src = cx.states[s];
            const std::uint64_t count = std::uint64_t(1) << src.circles.size();
            LabelTerm buf[2];
            for (int tau = 0; tau < n; ++tau) {
                if ((s >> tau) & 1) continue;
                const Smoothing t = s | (Smoothing(1) << tau);
                const EdgePlan plan = plan_edge(src, cx.states[t], tau, alg, opt);
                if (plan.kind == EdgeKind::single_cycle) continue;
                for (std::uint64_t l = 0; l < count; ++l) {
                    int terms = plan.apply(l, buf);
                    auto& col = m.columns[cx.state_offset[s] + l];
                    for (int r = 0; r < terms; ++r)
                        col.emplace_back(static_cast<std::uint32_t>(cx.state_offset[t] + buf[r].labels), buf[r].coef);
                }
            }
            for (std::uint64_t l = 0; l < count; ++l) {
                auto& col = m.columns[cx.state_offset[s] + l];
                std::sort(col.begin(), col.end());
            }
        });
    }
    if (verify) {
        if (auto f = find_nonzero_square(cx)) throw ConsistencyError("d^2 != 0 on " + f->describe());
        for (int i = 0; i < n; ++i)
            for (std::size_t g = 0; g < cx.dims[i]; ++g) {
                const int q = cx.qgrade2(i, g);
                for (auto [r, v] : cx.boundary[i].columns[g]) {
                    const int q2 = cx.qgrade2(i + 1, r);
                    const bool ok = alg == Algebra::khovanov ? q2 == q : (q2 >= q && (q2 - q) % 8 == 0);
                    if (!ok)
                        throw ConsistencyError("differential moves quantum grading " + std::to_string(q) +
                                               " to " + std::to_string(q2));
                }
            }
    }
    return cx;
}

std::optional<Face> find_nonzero_square(const BigradedComplex& c) {
    for (int i = 0; i + 1 < c.crossings; ++i) {
        const SparseIntMatrix sq = multiply(c.boundary[i + 1], c.boundary[i]);
        for (std::size_t g = 0; g < sq.cols; ++g) {
            if (sq.columns[g].empty()) continue;
            auto [s, l] = c.decode(i, g);
            auto [t, l2] = c.decode(i + 2, sq.columns[g].front().first);
            Smoothing diff = s ^ t;
            int t1 = std::countr_zero(diff);
            int t2 = std::countr_zero(diff & (diff - 1));
            return Face{s, t1, t2};
        }
    }
    return std::nullopt;
}

bool face_anticommutes(const Diagram& d, const std::vector<ResolvedState>& states, Smoothing s, int tau1, int tau2,
                       Algebra alg, const CubeOptions& opt) {
    (void)d;
    const Smoothing s1 = s | (Smoothing(1) << tau1), s2 = s | (Smoothing(1) << tau2), s12 = s1 | s2;
    const EdgePlan e1 = plan_edge(states[s], states[s1], tau1, alg, opt);
    const EdgePlan e12 = plan_edge(states[s1], states[s12], tau2, alg, opt);
    const EdgePlan e2 = plan_edge(states[s], states[s2], tau2, alg, opt);
    const EdgePlan e21 = plan_edge(states[s2], states[s12], tau1, alg, opt);
    const std::uint64_t count = std::uint64_t(1) << states[s].circles.size();
    LabelTerm b1[2], b2[2];
    std::map<std::uint64_t, long long> acc;
    for (std::uint64_t l = 0; l < count; ++l) {
        acc.clear();
        int n1 = e1.apply(l, b1);
        for (int x = 0; x < n1; ++x) {
            int n2 = e12.apply(b1[x].labels, b2);
            for (int y = 0; y < n2; ++y) acc[b2[y].labels] += b1[x].coef * b2[y].coef;
        }
        n1 = e2.apply(l, b1);
        for (int x = 0; x < n1; ++x) {
            int n2 = e21.apply(b1[x].labels, b2);
            for (int y = 0; y < n2; ++y) acc[b2[y].labels] += b1[x].coef * b2[y].coef;
        }
        for (auto& kv : acc)
            if (kv.second != 0) return false;
    }
    return true;
}

std::optional<Face> check_all_faces(const Diagram& d, Algebra alg, const CubeOptions& opt, int jobs) {
    const int n = d.num_crossings();
    if (n > kMaxCubeCrossings) throw InputError("too many crossings");
    const std::size_t nstates = std::size_t(1) << n;
    std::vector<ResolvedState> states(nstates);
    parallel_for(nstates, jobs, [&](std::size_t s) { states[s] = resolve(d, s, opt); }, 16);
    std::vector<std::optional<Face>> bad(nstates);
    parallel_for(nstates, jobs, [&](std::size_t s) {
        for (int t1 = 0; t1 < n && !bad[s]; ++t1)
            for (int t2 = t1 + 1; t2 < n && !bad[s]; ++t2) {
                if (((s >> t1) & 1) || ((s >> t2) & 1)) continue;
                if (!face_anticommutes(d, states, s, t1, t2, alg, opt)) bad[s] = Face{s, t1, t2};
            }
    }, 16);
    for (auto& f : bad)
        if (f) return f;
    return std::nullopt;
}

std::string label_string(std::uint64_t labels, std::size_t circles) {
    std::string out;
    for (std::size_t c = 0; c < circles; ++c) out += ((labels >> c) & 1) ? 'x' : '1';
    return circles ? out : "()";
}

void dump_cube(std::ostream& os, const Diagram& d, const BigradedComplex& c, const CubeOptions& opt) {
    const int n = c.crossings;
    for (Smoothing s = 0; s < c.states.size(); ++s) {
        const ResolvedState& st = c.states[s];
        os << "state " << smoothing_string(s, n) << " nB=" << std::popcount(s) << " circles=" << st.circles.size() << '\n';
        for (const Circle& ci : st.circles) {
            os << "  circle " << ci.label << ':';
            for (const Token& t : ci.tokens) {
                switch (t.kind) {
                case TokenKind::base: os << " base"; break;
                case TokenKind::arc: os << " arc" << t.arc; break;
                case TokenKind::cut: os << " cut(" << t.crossing << ',' << t.position << ')'; break;
                case TokenKind::port: os << " port(" << t.crossing << ',' << t.position << ')'; break;
                }
            }
            os << '\n';
        }
        for (int tau = 0; tau < n; ++tau) {
            if ((s >> tau) & 1) continue;
            const Smoothing t = s | (Smoothing(1) << tau);
            const EdgePlan p = plan_edge(st, c.states[t], tau, c.alg, opt);
            const char* kind = p.kind == EdgeKind::merge ? "merge" : p.kind == EdgeKind::split ? "split" : "eta";
            os << "  edge " << tau << " -> " << smoothing_string(t, n) << ' ' << kind << " wedge="
               << (p.wedge_sign > 0 ? '+' : '-') << '\n';
            const std::uint64_t count = std::uint64_t(1) << st.circles.size();
            LabelTerm buf[2];
            for (std::uint64_t l = 0; l < count; ++l) {
                int k = p.apply(l, buf);
                os << "    " << label_string(l, st.circles.size()) << " ->";
                if (k == 0) os << " 0";
                for (int r = 0; r < k; ++r)
                    os << ' ' << (buf[r].coef < 0 ? '-' : '+') << label_string(buf[r].labels, c.states[t].circles.size());
                os << '\n';
            }
        }
    }
    (void)d;
}

} // namespace vkh
