#include "vkh/smith.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <doctest.h>

#include <functional>
#include <random>

using namespace vkh;
using Rational = boost::multiprecision::cpp_rational;

namespace {

using Dense64 = std::vector<std::vector<long long>>;

SparseIntMatrix to_sparse(const Dense64& m, std::size_t cols) {
    SparseIntMatrix s(m.size(), cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < m.size(); ++r)
            if (m[r][c]) s.columns[c].push_back({static_cast<std::uint32_t>(r), m[r][c]});
    return s;
}

DenseMatrix to_big(const Dense64& m) {
    DenseMatrix out;
    for (const auto& row : m) {
        std::vector<BigInt> r;
        for (long long v : row) r.push_back(v);
        out.push_back(r);
    }
    return out;
}

Dense64 random_dense(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int range, double density) {
    std::uniform_int_distribution<int> v(-range, range);
    std::bernoulli_distribution keep(density);
    Dense64 m(rows, std::vector<long long>(cols, 0));
    for (auto& row : m)
        for (auto& x : row)
            if (keep(rng)) x = v(rng);
    return m;
}

BigInt det(const std::vector<std::vector<BigInt>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    BigInt s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<BigInt>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<BigInt> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(row);
        }
        const BigInt t = m[0][j] * det(minor);
        s += (j % 2 ? -t : t);
    }
    return s;
}

void subsets(std::size_t n, std::size_t k, std::function<void(const std::vector<std::size_t>&)> f) {
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (pick.size() == k) {
            f(pick);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
}

// Determinantal divisors: D_k = gcd of all k x k minors, and d_1 ... d_k = D_k.
std::vector<BigInt> oracle_factors(const Dense64& m, std::size_t cols) {
    std::vector<BigInt> out;
    BigInt prev = 1;
    for (std::size_t k = 1; k <= std::min(m.size(), cols); ++k) {
        BigInt g = 0;
        subsets(m.size(), k, [&](const std::vector<std::size_t>& rows) {
            subsets(cols, k, [&](const std::vector<std::size_t>& cs) {
                std::vector<std::vector<BigInt>> sub;
                for (auto r : rows) {
                    std::vector<BigInt> row;
                    for (auto c : cs) row.push_back(m[r][c]);
                    sub.push_back(row);
                }
                g = boost::multiprecision::gcd(g, abs(det(sub)));
            });
        });
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

std::size_t oracle_rank_q(const Dense64& m, std::size_t cols) {
    std::vector<std::vector<Rational>> a;
    for (const auto& row : m) {
        std::vector<Rational> r;
        for (long long v : row) r.push_back(Rational(v));
        a.push_back(r);
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t p = rank;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = 0; r < a.size(); ++r)
            if (r != rank && a[r][c] != 0) {
                const Rational f = a[r][c] / a[rank][c];
                for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
            }
        ++rank;
    }
    return rank;
}

std::size_t oracle_rank_mod2(const Dense64& m, std::size_t cols) {
    std::vector<std::vector<int>> a;
    for (const auto& row : m) {
        std::vector<int> r;
        for (long long v : row) r.push_back(static_cast<int>(((v % 2) + 2) % 2));
        a.push_back(r);
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t p = rank;
        while (p < a.size() && !a[p][c]) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = 0; r < a.size(); ++r)
            if (r != rank && a[r][c])
                for (std::size_t k = c; k < cols; ++k) a[r][k] ^= a[rank][k];
        ++rank;
    }
    return rank;
}

std::vector<BigInt> all_factors(const InvariantFactors& f) {
    std::vector<BigInt> out(f.units, 1);
    out.insert(out.end(), f.torsion.begin(), f.torsion.end());
    return out;
}

} // namespace

TEST_CASE("Smith normal form examples") {
    CHECK(smith_normal_form(to_big({{1, 0, 0}, {0, 2, 0}, {0, 0, 0}})) == std::vector<BigInt>{1, 2});
    CHECK(smith_normal_form(to_big({{0, 0}, {0, 0}})).empty());
    CHECK(smith_normal_form({}).empty());
    CHECK(smith_normal_form(to_big({{2, 4}, {6, 8}})) == std::vector<BigInt>{2, 4});
    CHECK(smith_normal_form(to_big({{2, 0}, {0, 3}})) == std::vector<BigInt>{1, 6});
    CHECK(smith_normal_form(to_big({{4, 0}, {0, 6}})) == std::vector<BigInt>{2, 12});

    const InvariantFactors f = invariant_factors(to_sparse({{2, 4}, {6, 8}}, 2));
    CHECK(f.units == 0);
    CHECK(f.torsion == std::vector<BigInt>{2, 4});
    CHECK(f.rank() == 2);
    CHECK(invariant_factors(SparseIntMatrix(3, 0)).rank() == 0);
    CHECK(invariant_factors(SparseIntMatrix(0, 3)).rank() == 0);
}

TEST_CASE("invariant factors agree with determinantal divisors") {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 300; ++t) {
        const std::size_t rows = 1 + t % 4, cols = 1 + (t / 4) % 4;
        const Dense64 m = random_dense(rng, rows, cols, 6, 0.7);
        const auto want = oracle_factors(m, cols);
        CHECK(smith_normal_form(to_big(m)) == want);
        CHECK(all_factors(invariant_factors(to_sparse(m, cols))) == want);
    }
}

TEST_CASE("sparse and dense paths agree on larger matrices") {
    std::mt19937_64 rng(52);
    for (int t = 0; t < 60; ++t) {
        const std::size_t rows = 8 + t % 9, cols = 6 + t % 11;
        const Dense64 m = random_dense(rng, rows, cols, t % 2 ? 1 : 4, 0.3);
        const auto sparse = all_factors(invariant_factors(to_sparse(m, cols)));
        CHECK(sparse == smith_normal_form(to_big(m)));
        CHECK(rank_q(to_sparse(m, cols)) == oracle_rank_q(m, cols));
        CHECK(rank_mod2(to_sparse(m, cols)) == oracle_rank_mod2(m, cols));
        std::size_t odd = 0;
        for (const auto& f : sparse) odd += (f % 2 != 0);
        CHECK(rank_mod2(to_sparse(m, cols)) == odd);
        CHECK(sparse.size() == rank_q(to_sparse(m, cols)));
    }
}

TEST_CASE("large entries fall back to big integers") {
    const long long big = 3'000'000'019LL;
    const Dense64 m = {{big * 2, big * 3, 0}, {big * 5, big * 7, 2}, {4, 6, big * 2}};
    const auto want = smith_normal_form(to_big(m));
    CHECK(all_factors(invariant_factors(to_sparse(m, 3))) == want);
    CHECK(rank_q(to_sparse(m, 3)) == 3);
    BigInt prod = 1;
    for (const auto& f : want) prod *= f;
    std::vector<std::vector<BigInt>> bm = to_big(m);
    CHECK(prod == abs(det(bm)));
}

TEST_CASE("sparse matrix product") {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 30; ++t) {
        const Dense64 a = random_dense(rng, 5, 4, 3, 0.5), b = random_dense(rng, 4, 6, 3, 0.5);
        Dense64 c(5, std::vector<long long>(6, 0));
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 6; ++j)
                for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
        const SparseIntMatrix got = multiply(to_sparse(a, 4), to_sparse(b, 6));
        CHECK(got.rows == 5);
        CHECK(got.cols == 6);
        CHECK(got.columns == to_sparse(c, 6).columns);
        CHECK(got.nonzeros() == to_sparse(c, 6).nonzeros());
    }
}
