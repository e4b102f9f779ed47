#include "vkh/invariants.hpp"

#include "vkh/errors.hpp"
#include "vkh/half.hpp"

#include <algorithm>
#include <stdexcept>

namespace vkh {

ParityScheme parse_scheme(const std::string& name) {
    if (name == "multicore") return ParityScheme::multi_core;
    if (name == "firstcore") return ParityScheme::first_core_only;
    if (name == "allone") return ParityScheme::all_one;
    if (name == "none") return ParityScheme::none;
    throw InputError("unknown parity scheme '" + name + "'");
}

std::string scheme_name(ParityScheme s) {
    switch (s) {
    case ParityScheme::multi_core: return "multicore";
    case ParityScheme::first_core_only: return "firstcore";
    case ParityScheme::all_one: return "allone";
    case ParityScheme::none: return "none";
    }
    return "?";
}

ParityData parities(const Diagram& d) {
    const int l = d.num_components();
    ParityData p;
    p.pair_parity.assign(l, std::vector<int>(l, 0));
    p.component_parity.assign(l, 0);
    for (const auto& c : d.crossings) {
        if (c.kind != CrossingKind::mixed) continue;
        int i = c.under_component, j = c.over_component;
        p.pair_parity[i][j] ^= 1;
        p.pair_parity[j][i] ^= 1;
        p.component_parity[i] ^= 1;
        p.component_parity[j] ^= 1;
    }
    p.link_parity = std::any_of(p.component_parity.begin(), p.component_parity.end(),
                                [](int x) { return x != 0; }) ? 1 : 0;
    return p;
}

int LinkingMatrix::lambda2() const {
    int s = 0;
    for (std::size_t i = 0; i < lk2.size(); ++i)
        for (std::size_t j = i + 1; j < lk2.size(); ++j) s += lk2[i][j];
    return s;
}

LinkingMatrix linking_matrix(const Diagram& d) {
    const int l = d.num_components();
    LinkingMatrix m;
    m.lk2.assign(l, std::vector<int>(l, 0));
    for (const auto& c : d.crossings) {
        if (c.kind != CrossingKind::mixed) continue;
        m.lk2[c.under_component][c.over_component] += c.sign;
        m.lk2[c.over_component][c.under_component] += c.sign;
    }
    return m;
}

ComponentSet core_of(const Diagram& d, const ComponentSet& subset) {
    ComponentSet cur = subset;
    std::sort(cur.begin(), cur.end());
    while (!cur.empty()) {
        std::set<int> drop;
        for (int k = 0; k < d.num_components(); ++k)
            if (!std::binary_search(cur.begin(), cur.end(), k)) drop.insert(k);
        // The sub-link is treated as a link in its own right; its components
        // keep their relative order, so index r of the sub-link is cur[r].
        Diagram sub = delete_components(d, drop);
        ParityData p = parities(sub);
        ComponentSet next;
        for (std::size_t r = 0; r < cur.size(); ++r)
            if (p.component_parity[r] == 0) next.push_back(cur[r]);
        if (next.size() == cur.size()) break;
        cur = std::move(next);
    }
    return cur;
}

MultiCoreDecomposition multi_core(const Diagram& d) {
    MultiCoreDecomposition dec;
    ComponentSet remaining(d.num_components());
    for (int k = 0; k < d.num_components(); ++k) remaining[k] = k;
    while (!remaining.empty()) {
        ComponentSet core = core_of(d, remaining);
        if (core.empty()) break;
        ComponentSet rest;
        std::set_difference(remaining.begin(), remaining.end(), core.begin(), core.end(),
                            std::back_inserter(rest));
        dec.cores.push_back(std::move(core));
        remaining = std::move(rest);
    }
    dec.mantle = remaining;
    return dec;
}

namespace {
bool contains(const ComponentSet& s, int k) { return std::binary_search(s.begin(), s.end(), k); }
} // namespace

int parity_fn(const MultiCoreDecomposition& dec, ParityScheme scheme, int i, int j) {
    switch (scheme) {
    case ParityScheme::multi_core:
        for (const auto& c : dec.cores)
            if (contains(c, i) && contains(c, j)) return 0;
        return 1;
    case ParityScheme::first_core_only:
        if (!dec.cores.empty() && contains(dec.cores[0], i) && contains(dec.cores[0], j)) return 0;
        return 1;
    case ParityScheme::all_one:
        return 1;
    case ParityScheme::none:
        break;
    }
    throw std::invalid_argument("parity scheme 'none' has no component parity function");
}

int modified_lk2(const Diagram&, const ParityData& par, const LinkingMatrix& lk,
                 const MultiCoreDecomposition& dec, ParityScheme scheme, int i, int j) {
    const int l2 = lk.lk2[i][j];
    const int p = parity_fn(dec, scheme, i, j);
    // exponent p*(Lk + pi/2), doubled
    const int e2 = p * (l2 + par.pair_parity[i][j]);
    if (e2 % 2 != 0)
        throw ConsistencyError("modified linking number exponent is not an integer for components " +
                               std::to_string(i) + "," + std::to_string(j));
    return (mod(e2 / 2, 2) == 0 ? 1 : -1) * l2;
}

int lambda_tilde2(const Diagram& d, ParityScheme scheme) {
    if (scheme == ParityScheme::none) throw std::invalid_argument("lambda~ needs a parity scheme");
    const ParityData par = parities(d);
    const LinkingMatrix lk = linking_matrix(d);
    const MultiCoreDecomposition dec = multi_core(d);
    int s = 0;
    for (int i = 0; i < d.num_components(); ++i)
        for (int j = i + 1; j < d.num_components(); ++j) s += modified_lk2(d, par, lk, dec, scheme, i, j);
    return s;
}

int l_tilde2(int lambda_tilde2) { return mod(lambda_tilde2, 4); }

nlohmann::json invariants_report(const Diagram& d, ParityScheme scheme) {
    const ParityData par = parities(d);
    const LinkingMatrix lk = linking_matrix(d);
    const MultiCoreDecomposition dec = multi_core(d);
    nlohmann::json j;
    j["parities"] = {{"pairs", par.pair_parity},
                     {"components", par.component_parity},
                     {"link", par.link_parity}};
    j["linking_matrix"] = lk.lk2;
    j["cores"] = dec.cores;
    j["mantle"] = dec.mantle;
    if (scheme == ParityScheme::none) {
        j["lambda_tilde"] = nullptr;
        j["l_tilde"] = nullptr;
    } else {
        int lt = 0;
        for (int a = 0; a < d.num_components(); ++a)
            for (int b = a + 1; b < d.num_components(); ++b) lt += modified_lk2(d, par, lk, dec, scheme, a, b);
        j["lambda_tilde"] = lt;
        j["l_tilde"] = l_tilde2(lt);
    }
    j["scheme"] = scheme_name(scheme);
    return j;
}

} // namespace vkh
