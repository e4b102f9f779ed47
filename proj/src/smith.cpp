#include "vkh/smith.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

namespace vkh {

std::size_t SparseIntMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
}

namespace {

struct Overflow {};

struct I64 {
    using T = std::int64_t;
    static T from(std::int64_t v) { return v; }
    static bool is_unit(T v) { return v == 1 || v == -1; }
    static T mul(T a, T b) {
        T r;
        if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
        return r;
    }
    static T sub(T a, T b) {
        T r;
        if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
        return r;
    }
    static T gcd(T a, T b) { return std::gcd(a, b); }
    static T div(T a, T b) { return a / b; }
    static BigInt big(T v) { return BigInt(v); }
};

struct Big {
    using T = BigInt;
    static T from(std::int64_t v) { return BigInt(v); }
    static bool is_unit(const T& v) { return v == 1 || v == -1; }
    static T mul(const T& a, const T& b) { return a * b; }
    static T sub(const T& a, const T& b) { return a - b; }
    static T gcd(const T& a, const T& b) { return boost::multiprecision::gcd(a, b); }
    static T div(const T& a, const T& b) { return a / b; }
    static BigInt big(const T& v) { return v; }
};

struct GF2 {
    using T = std::uint8_t;
    static T from(std::int64_t v) { return static_cast<T>(v & 1); }
    static bool is_unit(T v) { return v != 0; }
    static T mul(T a, T b) { return a & b; }
    static T sub(T a, T b) { return a ^ b; }
    static T gcd(T, T) { return 1; }
    static T div(T a, T) { return a; }
    static BigInt big(T v) { return BigInt(v); }
};

// Sparse Gaussian elimination on the columns of a matrix ("lines").
// unit mode: only +-1 pivots, so every step is unimodular and contributes a
// factor 1 to the Smith form. rank mode: any pivot, fraction-free updates.
template <class A>
class Eliminator {
    using T = typename A::T;
    using Line = std::vector<std::pair<std::uint32_t, T>>;

public:
    explicit Eliminator(const SparseIntMatrix& m) : occ_(m.rows), count_(m.rows, 0) {
        lines_.reserve(m.cols);
        for (const auto& col : m.columns) {
            Line l;
            for (auto [r, v] : col) {
                T t = A::from(v);
                if (t != T(0)) l.emplace_back(r, t);
            }
            const auto id = static_cast<std::uint32_t>(lines_.size());
            for (auto& e : l) {
                occ_[e.first].push_back(id);
                ++count_[e.first];
            }
            lines_.push_back(std::move(l));
        }
        alive_.assign(lines_.size(), 1);
        queued_len_.assign(lines_.size(), 0);
        in_queue_.assign(lines_.size(), 0);
    }

    void run(bool any_pivot) {
        for (std::uint32_t id = 0; id < lines_.size(); ++id) enqueue(id);
        while (!queue_.empty()) {
            auto [len, id] = *queue_.begin();
            queue_.erase(queue_.begin());
            in_queue_[id] = 0;
            Line& piv = lines_[id];
            if (piv.empty()) {
                alive_[id] = 0;
                continue;
            }
            std::size_t best = piv.size();
            bool best_unit = false;
            for (std::size_t k = 0; k < piv.size(); ++k) {
                bool unit = A::is_unit(piv[k].second);
                if (!unit && !any_pivot) continue;
                if (best == piv.size() || (unit && !best_unit) ||
                    (unit == best_unit && count_[piv[k].first] < count_[piv[best].first])) {
                    best = k;
                    best_unit = unit;
                }
            }
            if (best == piv.size()) continue;  // no usable pivot now; left for the dense stage
            eliminate(id, best);
        }
    }

    std::size_t eliminated() const { return eliminated_; }

    DenseMatrix remainder() const {
        std::vector<std::uint32_t> idx;
        std::vector<std::uint32_t> ids;
        for (std::uint32_t id = 0; id < lines_.size(); ++id) {
            if (!alive_[id] || lines_[id].empty()) continue;
            ids.push_back(id);
            for (auto& e : lines_[id]) idx.push_back(e.first);
        }
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        DenseMatrix d(ids.size(), std::vector<BigInt>(idx.size()));
        for (std::size_t r = 0; r < ids.size(); ++r)
            for (auto& e : lines_[ids[r]]) {
                auto c = std::lower_bound(idx.begin(), idx.end(), e.first) - idx.begin();
                d[r][c] = A::big(e.second);
            }
        return d;
    }

private:
    void enqueue(std::uint32_t id) {
        if (!alive_[id]) return;
        if (in_queue_[id]) queue_.erase({queued_len_[id], id});
        queued_len_[id] = lines_[id].size();
        in_queue_[id] = 1;
        queue_.insert({queued_len_[id], id});
    }

    void eliminate(std::uint32_t pid, std::size_t k) {
        const Line piv = lines_[pid];
        const std::uint32_t c = piv[k].first;
        const T pv = piv[k].second;
        const bool unit = A::is_unit(pv);
        std::vector<std::uint32_t> users;
        users.swap(occ_[c]);
        for (std::uint32_t m : users) {
            if (m == pid || !alive_[m]) continue;
            Line& ln = lines_[m];
            auto it = std::lower_bound(ln.begin(), ln.end(), c,
                                       [](const auto& e, std::uint32_t x) { return e.first < x; });
            if (it == ln.end() || it->first != c) continue;
            // ln := alpha*ln - beta*piv, which clears index c
            T alpha, beta;
            if (unit) {
                alpha = T(1);
                beta = A::mul(it->second, pv);  // pv is its own inverse
            } else {
                const T g = A::gcd(it->second, pv);
                alpha = A::div(pv, g);
                beta = A::div(it->second, g);
            }
            combine(m, alpha, beta, piv);
            enqueue(m);
        }
        for (auto& e : piv) --count_[e.first];
        alive_[pid] = 0;
        lines_[pid].clear();
        ++eliminated_;
    }

    void combine(std::uint32_t m, const T& alpha, const T& beta, const Line& piv) {
        Line& ln = lines_[m];
        Line out;
        out.reserve(ln.size() + piv.size());
        std::size_t i = 0, j = 0;
        const bool scale = alpha != T(1);
        while (i < ln.size() || j < piv.size()) {
            if (j == piv.size() || (i < ln.size() && ln[i].first < piv[j].first)) {
                out.emplace_back(ln[i].first, scale ? A::mul(alpha, ln[i].second) : ln[i].second);
                ++i;
            } else if (i == ln.size() || piv[j].first < ln[i].first) {
                T v = A::sub(T(0), A::mul(beta, piv[j].second));
                occ_[piv[j].first].push_back(m);
                ++count_[piv[j].first];
                out.emplace_back(piv[j].first, v);
                ++j;
            } else {
                T v = A::sub(scale ? A::mul(alpha, ln[i].second) : ln[i].second, A::mul(beta, piv[j].second));
                if (v == T(0))
                    --count_[ln[i].first];
                else
                    out.emplace_back(ln[i].first, v);
                ++i;
                ++j;
            }
        }
        if (scale && !out.empty()) {
            T g = T(0);
            for (auto& e : out) g = A::gcd(g, e.second);
            if (g != T(1) && g != T(0))
                for (auto& e : out) e.second = A::div(e.second, g);
        }
        ln.swap(out);
    }

    std::vector<Line> lines_;
    std::vector<std::vector<std::uint32_t>> occ_;
    std::vector<std::uint32_t> count_;
    std::vector<char> alive_;
    std::vector<std::size_t> queued_len_;
    std::vector<char> in_queue_;
    std::set<std::pair<std::size_t, std::uint32_t>> queue_;
    std::size_t eliminated_ = 0;
};

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

} // namespace

std::vector<BigInt> smith_normal_form(DenseMatrix a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<BigInt> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero magnitude in the trailing block
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (pr == rows || abs_big(a[i][j]) < abs_big(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (clean) break;
            // move the smallest remainder in row t / column t to the pivot
            std::size_t bi = t, bj = t;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (a[i][t] != 0 && abs_big(a[i][t]) < abs_big(a[bi][bj])) { bi = i; bj = t; }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a[t][j] != 0 && abs_big(a[t][j]) < abs_big(a[bi][bj])) { bi = t; bj = j; }
            std::swap(a[t], a[bi]);
            for (auto& row : a) std::swap(row[t], row[bj]);
        }
        diag.push_back(abs_big(a[t][t]));
        ++t;
    }
    // diagonal -> divisibility chain
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            BigInt g = boost::multiprecision::gcd(diag[i], diag[j]);
            BigInt l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    return diag;
}

InvariantFactors invariant_factors(const SparseIntMatrix& m) {
    InvariantFactors out;
    DenseMatrix rest;
    try {
        Eliminator<I64> e(m);
        e.run(false);
        out.units = e.eliminated();
        rest = e.remainder();
    } catch (const Overflow&) {
        Eliminator<Big> e(m);
        e.run(false);
        out.units = e.eliminated();
        rest = e.remainder();
    }
    for (auto& f : smith_normal_form(std::move(rest))) {
        if (f == 1) ++out.units;
        else out.torsion.push_back(f);
    }
    return out;
}

std::size_t rank_q(const SparseIntMatrix& m) {
    try {
        Eliminator<I64> e(m);
        e.run(true);
        return e.eliminated();
    } catch (const Overflow&) {
        Eliminator<Big> e(m);
        e.run(true);
        return e.eliminated();
    }
}

std::size_t rank_mod2(const SparseIntMatrix& m) {
    Eliminator<GF2> e(m);
    e.run(true);
    return e.eliminated();
}

SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    SparseIntMatrix c(a.rows, b.cols);
    std::unordered_map<std::uint32_t, std::int64_t> acc;
    for (std::size_t j = 0; j < b.cols; ++j) {
        acc.clear();
        for (auto [k, v] : b.columns[j])
            for (auto [r, w] : a.columns[k]) acc[r] += v * w;
        for (auto [r, v] : acc)
            if (v) c.columns[j].emplace_back(r, v);
        std::sort(c.columns[j].begin(), c.columns[j].end());
    }
    return c;
}

} // namespace vkh
