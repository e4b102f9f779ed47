#include "vkh/polynomial.hpp"

#include "vkh/errors.hpp"
#include "vkh/half.hpp"

#include <limits>

namespace vkh {

namespace {

std::string coeff_text(const GaussInt& c) {
    if (c.im == 0) return c.re.str();
    std::string im;
    if (c.im == 1) im = "i";
    else if (c.im == -1) im = "-i";
    else im = c.im.str() + "*i";
    if (c.re == 0) return im;
    return "(" + c.re.str() + (im[0] == '-' ? "" : "+") + im + ")";
}

std::string power_text(int exp2) {
    if (exp2 == 0) return "";
    if (exp2 == 2) return "q";
    if (exp2 % 2 == 0) return "q^" + std::to_string(exp2 / 2);
    return "q^(" + format_half(exp2) + ")";
}

nlohmann::json big_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

BigInt big_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw InputError("polynomial coefficient must be an integer");
}

} // namespace

std::string GaussInt::to_string() const { return coeff_text(*this); }

GaussInt i_pow(int e) {
    switch (mod(e, 4)) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
    }
}

LaurentPoly LaurentPoly::monomial(const GaussInt& c, int exp2) {
    LaurentPoly p;
    p.add_term(exp2, c);
    return p;
}

GaussInt LaurentPoly::coeff(int exp2) const {
    auto it = terms_.find(exp2);
    return it == terms_.end() ? GaussInt() : it->second;
}

void LaurentPoly::add_term(int exp2, const GaussInt& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(exp2, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
    return p;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (const auto& [e1, c1] : a.terms_)
        for (const auto& [e2, c2] : b.terms_) p.add_term(e1 + e2, c1 * c2);
    return p;
}

LaurentPoly LaurentPoly::scaled(const GaussInt& unit, int shift2) const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.add_term(e + shift2, unit * c);
    return p;
}

LaurentPoly LaurentPoly::inverted() const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_.emplace(-e, c);
    return p;
}

bool LaurentPoly::has_imaginary_part() const {
    for (const auto& kv : terms_)
        if (kv.second.im != 0) return true;
    return false;
}

std::string LaurentPoly::to_text() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string pw = power_text(e);
        std::string term;
        if (pw.empty()) term = coeff_text(c);
        else if (c == GaussInt(1)) term = pw;
        else if (c == GaussInt(-1)) term = "-" + pw;
        else term = coeff_text(c) + "*" + pw;
        if (first) {
            out = term;
            first = false;
        } else if (term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out;
}

nlohmann::json LaurentPoly::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [e, c] : terms_) j.push_back({e, big_to_json(c.re), big_to_json(c.im)});
    return j;
}

LaurentPoly LaurentPoly::from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw InputError("polynomial JSON must be an array");
    LaurentPoly p;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer())
            throw InputError("polynomial term must be [2j, re, im]");
        p.add_term(t[0].get<int>(), GaussInt(big_from_json(t[1]), big_from_json(t[2])));
    }
    return p;
}

GaussInt eval_at_one(const LaurentPoly& p) {
    GaussInt s;
    for (const auto& kv : p.terms()) s += kv.second;
    return s;
}

} // namespace vkh
