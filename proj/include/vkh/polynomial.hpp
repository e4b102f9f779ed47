#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <map>
#include <string>

namespace vkh {

using BigInt = boost::multiprecision::cpp_int;

struct GaussInt {
    BigInt re = 0;
    BigInt im = 0;

    GaussInt() = default;
    GaussInt(long long r) : re(r) {}
    GaussInt(BigInt r, BigInt i) : re(std::move(r)), im(std::move(i)) {}

    static GaussInt i() { return {0, 1}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }

    GaussInt operator-() const { return {-re, -im}; }
    GaussInt& operator+=(const GaussInt& o) { re += o.re; im += o.im; return *this; }
    GaussInt& operator-=(const GaussInt& o) { re -= o.re; im -= o.im; return *this; }
    friend GaussInt operator+(GaussInt a, const GaussInt& b) { return a += b; }
    friend GaussInt operator-(GaussInt a, const GaussInt& b) { return a -= b; }
    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }

    std::string to_string() const;
};

// i^e, for any integer e. (-1)^(e/2) for doubled exponents e.
GaussInt i_pow(int e);

// Laurent polynomial in q^(1/2); keys are doubled exponents, zero terms never stored.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long long c) { add_term(0, GaussInt(c)); }

    static LaurentPoly monomial(const GaussInt& c, int exp2);
    static LaurentPoly q() { return monomial(1, 2); }

    const std::map<int, GaussInt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    GaussInt coeff(int exp2) const;
    void add_term(int exp2, const GaussInt& c);

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly operator-() const;
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

    // unit * q^(shift2/2) * this
    LaurentPoly scaled(const GaussInt& unit, int shift2) const;
    // p(q) -> p(q^-1)
    LaurentPoly inverted() const;
    bool has_imaginary_part() const;

    std::string to_text() const;
    nlohmann::json to_json() const;
    static LaurentPoly from_json(const nlohmann::json& j);

private:
    std::map<int, GaussInt> terms_;
};

inline LaurentPoly poly_add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
inline LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }
inline LaurentPoly poly_scale(const LaurentPoly& p, const GaussInt& unit, int shift2) {
    return p.scaled(unit, shift2);
}
GaussInt eval_at_one(const LaurentPoly& p);

} // namespace vkh
