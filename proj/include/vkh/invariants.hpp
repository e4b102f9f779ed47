#pragma once

#include "vkh/pd.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace vkh {

struct ParityData {
    std::vector<std::vector<int>> pair_parity;  // mixed crossings between K_i and K_j, mod 2
    std::vector<int> component_parity;          // mixed crossings involving K_i, mod 2
    int link_parity = 0;                        // 1 iff some component is odd
};

// Lk(K_i,K_j) doubled: the signed count of mixed crossings between K_i and K_j.
struct LinkingMatrix {
    std::vector<std::vector<int>> lk2;
    int lambda2() const;  // doubled sum over i<j
};

using ComponentSet = std::vector<int>;  // sorted component indices

struct MultiCoreDecomposition {
    std::vector<ComponentSet> cores;  // nonempty cores C_1, ..., C_n
    ComponentSet mantle;              // final mantle M_n: empty or with empty core
};

enum class ParityScheme { multi_core, first_core_only, all_one, none };

ParityScheme parse_scheme(const std::string& name);
std::string scheme_name(ParityScheme s);

ParityData parities(const Diagram& d);
LinkingMatrix linking_matrix(const Diagram& d);

// Iterated deletion of odd components inside the sub-link `subset`.
ComponentSet core_of(const Diagram& d, const ComponentSet& subset);
MultiCoreDecomposition multi_core(const Diagram& d);

// p(K_i,K_j) for the chosen scheme. Throws std::invalid_argument for scheme none.
int parity_fn(const MultiCoreDecomposition& dec, ParityScheme scheme, int i, int j);

// Modified linking number, doubled. Throws ConsistencyError on a non-integral sign exponent.
int modified_lk2(const Diagram& d, const ParityData& par, const LinkingMatrix& lk,
                 const MultiCoreDecomposition& dec, ParityScheme scheme, int i, int j);
int lambda_tilde2(const Diagram& d, ParityScheme scheme);
// l~ from 2*lambda~, doubled: 0, 1, 2 or 3.
int l_tilde2(int lambda_tilde2);

nlohmann::json invariants_report(const Diagram& d, ParityScheme scheme);

} // namespace vkh
