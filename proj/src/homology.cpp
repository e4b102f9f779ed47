#include "vkh/homology.hpp"

#include "vkh/errors.hpp"
#include "vkh/half.hpp"
#include "vkh/invariants.hpp"
#include "vkh/parallel.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <sstream>

namespace vkh {

Ring parse_ring(const std::string& name) {
    if (name == "z") return Ring::z;
    if (name == "q") return Ring::q;
    if (name == "f2") return Ring::f2;
    throw InputError("unknown ring '" + name + "'");
}

std::string ring_name(Ring r) {
    switch (r) {
    case Ring::z: return "z";
    case Ring::q: return "q";
    case Ring::f2: return "f2";
    }
    return "?";
}

std::size_t HomologyTable::total_rank() const {
    std::size_t n = 0;
    for (const auto& kv : entries) n += kv.second.free_rank;
    for (const auto& kv : by_degree) n += kv.second.free_rank;
    return n;
}

bool HomologyTable::same_groups(const HomologyTable& o) const {
    return bigraded == o.bigraded && ring == o.ring && entries == o.entries && by_degree == o.by_degree;
}

namespace {

// Generators of each degree grouped by quantum grading.
struct Grading {
    std::vector<std::vector<int>> q2;                          // [i][g]
    std::vector<std::vector<std::uint32_t>> local;             // [i][g] index inside its q-block
    std::vector<std::map<int, std::vector<std::uint32_t>>> blocks;  // [i][q2] -> generators
};

Grading grade(const BigradedComplex& c) {
    Grading gr;
    const int n = c.crossings;
    gr.q2.resize(n + 1);
    gr.local.resize(n + 1);
    gr.blocks.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        gr.q2[i].resize(c.dims[i]);
        gr.local[i].resize(c.dims[i]);
        for (Smoothing s : c.degree_states[i]) {
            const int k = static_cast<int>(c.states[s].circles.size());
            const std::uint64_t count = std::uint64_t(1) << k;
            for (std::uint64_t l = 0; l < count; ++l) {
                const std::size_t g = c.state_offset[s] + l;
                const int q = 2 * (i + k - 2 * std::popcount(l));
                gr.q2[i][g] = q;
                auto& blk = gr.blocks[i][q];
                gr.local[i][g] = static_cast<std::uint32_t>(blk.size());
                blk.push_back(static_cast<std::uint32_t>(g));
            }
        }
    }
    return gr;
}

struct BlockResult {
    std::size_t rank = 0;
    std::vector<BigInt> torsion;
};

BlockResult reduce(const SparseIntMatrix& m, Ring ring) {
    BlockResult r;
    if (m.cols == 0 || m.rows == 0) return r;
    switch (ring) {
    case Ring::z: {
        InvariantFactors f = invariant_factors(m);
        r.rank = f.rank();
        r.torsion = std::move(f.torsion);
        break;
    }
    case Ring::q: r.rank = rank_q(m); break;
    case Ring::f2: r.rank = rank_mod2(m); break;
    }
    return r;
}

std::string theory_for(Algebra a) { return a == Algebra::khovanov ? "bracket" : "lee"; }

HomologyTable khovanov_homology(const BigradedComplex& c, Ring ring, int jobs) {
    const int n = c.crossings;
    const Grading gr = grade(c);
    std::set<int> qs;
    for (int i = 0; i <= n; ++i)
        for (const auto& kv : gr.blocks[i]) qs.insert(kv.first);
    const std::vector<int> qlist(qs.begin(), qs.end());
    // results[qi][i] = reduction of the block C^{i,q} -> C^{i+1,q}
    std::vector<std::vector<BlockResult>> results(qlist.size(), std::vector<BlockResult>(n + 1));
    parallel_for(qlist.size(), jobs, [&](std::size_t qi) {
        const int q = qlist[qi];
        for (int i = 0; i < n; ++i) {
            auto src = gr.blocks[i].find(q);
            auto dst = gr.blocks[i + 1].find(q);
            if (src == gr.blocks[i].end()) continue;
            const std::size_t rows = dst == gr.blocks[i + 1].end() ? 0 : dst->second.size();
            SparseIntMatrix m(rows, src->second.size());
            for (std::size_t col = 0; col < src->second.size(); ++col) {
                for (auto [r, v] : c.boundary[i].columns[src->second[col]]) {
                    if (gr.q2[i + 1][r] != q)
                        throw ConsistencyError("differential does not preserve the quantum grading");
                    m.columns[col].emplace_back(gr.local[i + 1][r], v);
                }
                std::sort(m.columns[col].begin(), m.columns[col].end());
            }
            results[qi][i] = reduce(m, ring);
        }
    });
    HomologyTable t;
    t.theory = theory_for(c.alg);
    t.ring = ring;
    t.shift_h2 = c.shift_h2;
    t.shift_q2 = c.shift_q2;
    for (std::size_t qi = 0; qi < qlist.size(); ++qi) {
        for (int i = 0; i <= n; ++i) {
            auto src = gr.blocks[i].find(qlist[qi]);
            if (src == gr.blocks[i].end()) continue;
            HomologyGroup h;
            const std::size_t out = results[qi][i].rank;
            const std::size_t in = i > 0 ? results[qi][i - 1].rank : 0;
            h.free_rank = src->second.size() - out - in;
            if (ring == Ring::z && i > 0) h.torsion = results[qi][i - 1].torsion;
            if (!h.is_zero()) t.entries[{2 * i + c.shift_h2, qlist[qi] + c.shift_q2}] = std::move(h);
        }
    }
    return t;
}

std::size_t field_rank(const SparseIntMatrix& m, Ring ring) {
    if (m.rows == 0 || m.cols == 0) return 0;
    return ring == Ring::f2 ? rank_mod2(m) : rank_q(m);
}

HomologyTable lee_homology(const BigradedComplex& c, Ring ring, int jobs) {
    const int n = c.crossings;
    const Grading gr = grade(c);
    std::vector<BlockResult> res(n + 1);
    parallel_for(static_cast<std::size_t>(n), jobs, [&](std::size_t i) { res[i] = reduce(c.boundary[i], ring); });
    std::vector<std::size_t> frank(n + 1);  // ranks over the field used for the filtration
    for (int i = 0; i < n; ++i) frank[i] = res[i].rank;

    HomologyTable t;
    t.theory = "lee";
    t.ring = ring;
    t.bigraded = false;
    t.shift_h2 = c.shift_h2;
    t.shift_q2 = c.shift_q2;
    std::vector<std::size_t> free(n + 1);
    for (int i = 0; i <= n; ++i) {
        HomologyGroup h;
        h.free_rank = c.dims[i] - (i < n ? res[i].rank : 0) - (i > 0 ? res[i - 1].rank : 0);
        if (ring == Ring::z && i > 0) h.torsion = res[i - 1].torsion;
        free[i] = h.free_rank;
        if (!h.is_zero()) t.by_degree[2 * i + c.shift_h2] = std::move(h);
    }

    // Associated graded of the quantum filtration F_j = span{q >= j}.
    std::vector<std::map<int, std::size_t>> gr_dims(n + 1);
    parallel_for(static_cast<std::size_t>(n + 1), jobs, [&](std::size_t ii) {
        const int i = static_cast<int>(ii);
        if (free[i] == 0) return;
        std::vector<int> levels;
        for (const auto& kv : gr.blocks[i]) levels.push_back(kv.first);
        std::map<int, std::size_t> image_dim;  // dim of im(H(F_j) -> H) at each level
        std::size_t in_rank = i > 0 ? frank[i - 1] : 0;
        for (int j : levels) {
            std::size_t fdim = 0;
            SparseIntMatrix out(i < n ? c.dims[i + 1] : 0, 0);
            for (const auto& kv : gr.blocks[i]) {
                if (kv.first < j) continue;
                fdim += kv.second.size();
                if (i < n)
                    for (auto g : kv.second) out.columns.push_back(c.boundary[i].columns[g]);
            }
            out.cols = out.columns.size();
            const std::size_t cycles = fdim - (i < n ? field_rank(out, ring) : 0);
            std::size_t boundaries_in_f = 0;
            if (i > 0) {
                SparseIntMatrix low(c.dims[i], c.dims[i - 1]);
                for (std::size_t g = 0; g < c.dims[i - 1]; ++g)
                    for (auto [r, v] : c.boundary[i - 1].columns[g])
                        if (gr.q2[i][r] < j) low.columns[g].emplace_back(r, v);
                boundaries_in_f = in_rank - field_rank(low, ring);
            }
            image_dim[j] = cycles - boundaries_in_f;
        }
        for (std::size_t k = 0; k < levels.size(); ++k) {
            std::size_t here = image_dim[levels[k]];
            std::size_t above = k + 1 < levels.size() ? image_dim[levels[k + 1]] : 0;
            if (here > above) gr_dims[i][levels[k]] = here - above;
        }
    });
    for (int i = 0; i <= n; ++i)
        for (auto [j, dim] : gr_dims[i]) t.filtration[{2 * i + c.shift_h2, j + c.shift_q2}] = dim;
    return t;
}

std::string group_text(const HomologyGroup& g, Ring ring) {
    std::string base = ring == Ring::z ? "Z" : ring == Ring::q ? "Q" : "F2";
    std::string out;
    if (g.free_rank == 1) out = base;
    else if (g.free_rank > 1) out = base + "^" + std::to_string(g.free_rank);
    for (const auto& t : g.torsion) out += (out.empty() ? "" : "+") + std::string("Z/") + t.str();
    return out.empty() ? "0" : out;
}

nlohmann::json big_json(const BigInt& v) {
    if (v <= std::numeric_limits<long long>::max()) return static_cast<long long>(v);
    return v.str();
}

BigInt json_big(const nlohmann::json& j) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    return BigInt(j.get<std::string>());
}

} // namespace

HomologyTable homology_of(const BigradedComplex& c, Ring ring, int jobs) {
    return c.alg == Algebra::khovanov ? khovanov_homology(c, ring, jobs) : lee_homology(c, ring, jobs);
}

HomologyTable shift(const HomologyTable& t, int a2, int b2) {
    HomologyTable s = t;
    s.shift_h2 += a2;
    s.shift_q2 += b2;
    s.entries.clear();
    s.by_degree.clear();
    s.filtration.clear();
    for (const auto& [k, v] : t.entries) s.entries[{k.first + a2, k.second + b2}] = v;
    for (const auto& [k, v] : t.by_degree) s.by_degree[k + a2] = v;
    for (const auto& [k, v] : t.filtration) s.filtration[{k.first + a2, k.second + b2}] = v;
    return s;
}

BigradedComplex shift(BigradedComplex c, int a2, int b2) {
    c.shift_h2 += a2;
    c.shift_q2 += b2;
    return c;
}

LaurentPoly graded_euler(const HomologyTable& t) {
    LaurentPoly p;
    for (const auto& [k, g] : t.entries)
        p.add_term(k.second, i_pow(k.first) * GaussInt(static_cast<long long>(g.free_rank)));
    for (const auto& [k, g] : t.by_degree) p.add_term(0, i_pow(k) * GaussInt(static_cast<long long>(g.free_rank)));
    return p;
}

LaurentPoly chain_euler(const BigradedComplex& c) {
    LaurentPoly p;
    for (int i = 0; i <= c.crossings; ++i)
        for (Smoothing s : c.degree_states[i]) {
            const int k = static_cast<int>(c.states[s].circles.size());
            long long binom = 1;
            for (int t = 0; t <= k; ++t) {
                // t circles labelled x
                const int q2 = 2 * (i + k - 2 * t) + c.shift_q2;
                if (c.alg == Algebra::khovanov)
                    p.add_term(q2, i_pow(2 * i + c.shift_h2) * GaussInt(binom));
                else
                    p.add_term(0, i_pow(2 * i + c.shift_h2) * GaussInt(binom));
                binom = binom * (k - t) / (t + 1);
            }
        }
    return p;
}

std::pair<int, int> oriented_shift(const Diagram& d) {
    const CrossingCounts c = crossing_counts(d);
    return {-2 * c.n_minus, 2 * c.n_plus - 4 * c.n_minus};
}

std::pair<int, int> unoriented_shift(const Diagram& d, bool incorporate_sign) {
    const CrossingCounts c = crossing_counts(d);
    int a2 = -2 * c.s_minus - c.m;
    if (incorporate_sign) a2 += l_tilde2(lambda_tilde2(d, ParityScheme::multi_core));
    return {a2, 2 * c.s_plus - 4 * c.s_minus - c.m};
}

namespace {

HomologyTable compute(const Diagram& d, Algebra alg, std::pair<int, int> sh, const std::string& theory,
                      const HomologyOptions& opt) {
    BigradedComplex c = build_complex(d, alg, opt.cube, opt.jobs, opt.verify);
    c.shift_h2 = sh.first;
    c.shift_q2 = sh.second;
    HomologyTable t = homology_of(c, opt.ring, opt.jobs);
    t.theory = theory;
    return t;
}

} // namespace

HomologyTable bracket_homology(const Diagram& d, const HomologyOptions& opt) {
    return compute(d, Algebra::khovanov, {0, 0}, "bracket", opt);
}

HomologyTable kh_oriented(const Diagram& d, const HomologyOptions& opt) {
    return compute(d, Algebra::khovanov, oriented_shift(d), "kh", opt);
}

HomologyTable kh_unoriented(const Diagram& d, const HomologyOptions& opt) {
    return compute(d, Algebra::khovanov, unoriented_shift(d, opt.incorporate_sign), "ukh", opt);
}

HomologyTable lee_unoriented(const Diagram& d, const HomologyOptions& opt) {
    return compute(d, Algebra::lee, unoriented_shift(d, false), "lee", opt);
}

// ------------------------------------------------------------------ output

nlohmann::json HomologyTable::to_json() const {
    nlohmann::json j;
    j["theory"] = theory;
    j["ring"] = ring_name(ring);
    j["shift"] = {shift_h2, shift_q2};
    nlohmann::json entries_j = nlohmann::json::array();
    auto torsion_j = [](const HomologyGroup& g) {
        nlohmann::json t = nlohmann::json::array();
        for (const auto& x : g.torsion) t.push_back(big_json(x));
        return t;
    };
    if (bigraded) {
        for (const auto& [k, g] : entries) entries_j.push_back({k.first, k.second, g.free_rank, torsion_j(g)});
    } else {
        for (const auto& [k, g] : by_degree) entries_j.push_back({k, g.free_rank, torsion_j(g)});
        nlohmann::json f = nlohmann::json::array();
        for (const auto& [k, dim] : filtration) f.push_back({k.first, k.second, dim});
        j["filtration"] = f;
    }
    j["entries"] = entries_j;
    j["euler"] = graded_euler(*this).to_json();
    return j;
}

HomologyTable HomologyTable::from_json(const nlohmann::json& j) {
    HomologyTable t;
    t.theory = j.at("theory").get<std::string>();
    t.ring = parse_ring(j.at("ring").get<std::string>());
    t.shift_h2 = j.at("shift").at(0).get<int>();
    t.shift_q2 = j.at("shift").at(1).get<int>();
    t.bigraded = !j.contains("filtration");
    for (const auto& e : j.at("entries")) {
        HomologyGroup g;
        std::size_t base = t.bigraded ? 2 : 1;
        g.free_rank = e.at(base).get<std::size_t>();
        for (const auto& x : e.at(base + 1)) g.torsion.push_back(json_big(x));
        if (t.bigraded)
            t.entries[{e.at(0).get<int>(), e.at(1).get<int>()}] = g;
        else
            t.by_degree[e.at(0).get<int>()] = g;
    }
    if (!t.bigraded)
        for (const auto& f : j.at("filtration"))
            t.filtration[{f.at(0).get<int>(), f.at(1).get<int>()}] = f.at(2).get<std::size_t>();
    return t;
}

std::string HomologyTable::to_text() const {
    std::ostringstream os;
    const char* ring_label = ring == Ring::z ? "Z" : ring == Ring::q ? "Q" : "F2";
    os << theory << " homology over " << ring_label << ", shift [" << format_half(shift_h2) << ", "
       << format_half(shift_q2) << "]\n";
    if (bigraded) {
        std::set<int> is, js;
        for (const auto& kv : entries) {
            is.insert(kv.first.first);
            js.insert(kv.first.second);
        }
        if (entries.empty()) os << "(zero)\n";
        std::vector<std::string> header{""};
        for (int i : is) header.push_back("i=" + format_half(i));
        std::vector<std::vector<std::string>> rows{header};
        for (auto it = js.rbegin(); it != js.rend(); ++it) {
            std::vector<std::string> row{"j=" + format_half(*it)};
            for (int i : is) {
                auto e = entries.find({i, *it});
                row.push_back(e == entries.end() ? "." : group_text(e->second, ring));
            }
            rows.push_back(row);
        }
        std::vector<std::size_t> width(header.size(), 0);
        for (const auto& r : rows)
            for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
        if (!entries.empty())
            for (const auto& r : rows) {
                std::string line;
                for (std::size_t c = 0; c < r.size(); ++c) {
                    line += r[c] + std::string(width[c] - r[c].size() + 2, ' ');
                }
                while (!line.empty() && line.back() == ' ') line.pop_back();
                os << line << '\n';
            }
    } else {
        for (const auto& [k, g] : by_degree) os << "i=" << format_half(k) << ": " << group_text(g, ring) << '\n';
        if (!filtration.empty()) {
            os << "filtration (associated graded dimensions):\n";
            for (const auto& [k, dim] : filtration)
                os << "  i=" << format_half(k.first) << " j=" << format_half(k.second) << ": " << dim << '\n';
        }
    }
    os << "euler: " << graded_euler(*this).to_text() << '\n';
    return os.str();
}

} // namespace vkh
