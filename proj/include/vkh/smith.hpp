#pragma once

#include "vkh/polynomial.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace vkh {

// Column-major sparse integer matrix: columns[c] holds (row, value) sorted by row.
struct SparseIntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}
    std::size_t nonzeros() const;
};

using DenseMatrix = std::vector<std::vector<BigInt>>;

// Nonzero invariant factors d1 | d2 | ... of a dense integer matrix.
std::vector<BigInt> smith_normal_form(DenseMatrix m);

struct InvariantFactors {
    std::size_t units = 0;          // factors equal to 1
    std::vector<BigInt> torsion;    // factors > 1, in divisibility order
    std::size_t rank() const { return units + torsion.size(); }
};

// Unit pivots are eliminated sparsely; what is left goes through the dense algorithm.
InvariantFactors invariant_factors(const SparseIntMatrix& m);
// Rank over Q by fraction-free elimination.
std::size_t rank_q(const SparseIntMatrix& m);
std::size_t rank_mod2(const SparseIntMatrix& m);

SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b);  // a*b

} // namespace vkh
