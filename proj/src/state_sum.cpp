#include "vkh/state_sum.hpp"

#include "vkh/errors.hpp"
#include "vkh/parallel.hpp"

#include <bit>
#include <map>
#include <numeric>

namespace vkh {

EndPairs smoothing_pairs(bool b_smoothing, SmoothingConvention conv) {
    bool b = b_smoothing != (conv == SmoothingConvention::swapped);
    if (!b) return {{{0, 1}, {2, 3}}};
    return {{{0, 3}, {1, 2}}};
}

ArcIndex::ArcIndex(const Diagram& d) {
    std::map<int, int> num;
    for (const auto& c : d.pd)
        for (int x : c) num.emplace(x, 0);
    int i = 0;
    for (auto& kv : num) kv.second = i++;
    arcs = i;
    for (const auto& c : d.pd) at.push_back({num[c[0]], num[c[1]], num[c[2]], num[c[3]]});
}

int count_circles(const ArcIndex& idx, Smoothing s, SmoothingConvention conv) {
    int parent[2 * kMaxCrossings];
    std::iota(parent, parent + idx.arcs, 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int circles = idx.arcs;
    for (std::size_t k = 0; k < idx.at.size(); ++k) {
        for (auto [p, q] : smoothing_pairs((s >> k) & 1, conv)) {
            int x = find(idx.at[k][p]), y = find(idx.at[k][q]);
            if (x != y) {
                parent[x] = y;
                --circles;
            }
        }
    }
    return circles;
}

std::vector<std::vector<std::uint64_t>> state_census(const Diagram& d, int jobs, SmoothingConvention conv) {
    const int n = d.num_crossings();
    if (n > kMaxCrossings) throw InputError("too many crossings for a full state sum");
    const ArcIndex idx(d);
    const std::uint64_t total = std::uint64_t(1) << n;
    // Split the state space into blocks; each block keeps its own tally.
    const std::uint64_t block = std::max<std::uint64_t>(1, std::min<std::uint64_t>(total, 1u << 12));
    const std::size_t nblocks = static_cast<std::size_t>((total + block - 1) / block);
    std::vector<std::vector<std::vector<std::uint64_t>>> part(
        nblocks, std::vector<std::vector<std::uint64_t>>(n + 1, std::vector<std::uint64_t>(idx.arcs + 2, 0)));
    parallel_for(nblocks, jobs, [&](std::size_t b) {
        auto& tally = part[b];
        const std::uint64_t lo = b * block, hi = std::min(total, lo + block);
        for (std::uint64_t s = lo; s < hi; ++s) ++tally[std::popcount(s)][count_circles(idx, s, conv)];
    });
    std::vector<std::vector<std::uint64_t>> out(n + 1, std::vector<std::uint64_t>(idx.arcs + 2, 0));
    for (const auto& t : part)
        for (int i = 0; i <= n; ++i)
            for (std::size_t c = 0; c < t[i].size(); ++c) out[i][c] += t[i][c];
    return out;
}

LaurentPoly kauffman_bracket(const Diagram& d, int jobs, SmoothingConvention conv) {
    if (d.num_crossings() == 0) return LaurentPoly(1);
    const auto census = state_census(d, jobs, conv);
    const LaurentPoly loop = LaurentPoly::q() + LaurentPoly::monomial(1, -2);
    std::vector<LaurentPoly> loop_pow{LaurentPoly(1)};
    for (std::size_t c = 1; c < census[0].size(); ++c) loop_pow.push_back(loop_pow.back() * loop);
    LaurentPoly sum;
    for (std::size_t nb = 0; nb < census.size(); ++nb) {
        LaurentPoly row;
        for (std::size_t c = 0; c < census[nb].size(); ++c)
            if (census[nb][c]) row += loop_pow[c].scaled(GaussInt(static_cast<long long>(census[nb][c])), 0);
        // (-q)^nB
        sum += row.scaled(GaussInt(nb % 2 ? -1 : 1), 2 * static_cast<int>(nb));
    }
    return sum;
}

GaussInt bracket_at_one(const Diagram& d, int jobs) { return eval_at_one(kauffman_bracket(d, jobs)); }

std::pair<GaussInt, int> jones_normalization(const Diagram& d) {
    const CrossingCounts c = crossing_counts(d);
    // (-1)^(-n-) q^(n+ - 2n-)
    return {i_pow(-2 * c.n_minus), 2 * (c.n_plus - 2 * c.n_minus)};
}

std::pair<GaussInt, int> unoriented_normalization(const Diagram& d, ParityScheme scheme) {
    const CrossingCounts c = crossing_counts(d);
    const int lt2 = scheme == ParityScheme::none ? 0 : lambda_tilde2(d, scheme);
    // (-1)^(lambda~ - s- - m/2) q^(s+ - 2s- - m/2), with (-1)^(1/2) = i
    return {i_pow(lt2 - 2 * c.s_minus - c.m), 2 * c.s_plus - 4 * c.s_minus - c.m};
}

LaurentPoly jones(const Diagram& d, int jobs) {
    auto [unit, shift] = jones_normalization(d);
    return kauffman_bracket(d, jobs).scaled(unit, shift);
}

LaurentPoly unoriented_jones(const Diagram& d, ParityScheme scheme, int jobs) {
    auto [unit, shift] = unoriented_normalization(d, scheme);
    LaurentPoly p = kauffman_bracket(d, jobs).scaled(unit, shift);
    if (scheme == ParityScheme::multi_core && p.has_imaginary_part())
        throw ConsistencyError("unoriented Jones polynomial has an imaginary part: " + p.to_text());
    return p;
}

} // namespace vkh
