#include "chiral/laurent.hpp"

#include <cassert>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace chiral {

LaurentPoly LaurentPoly::term(const Rational& c, long exp) {
    LaurentPoly p;
    if (!c.is_zero()) p.coeffs_[exp] = c;
    return p;
}

bool LaurentPoly::is_one() const {
    return coeffs_.size() == 1 && coeffs_.begin()->first == 0 &&
           coeffs_.begin()->second == Rational(1);
}

bool LaurentPoly::is_constant() const {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
}

Rational LaurentPoly::coeff(long exp) const {
    auto it = coeffs_.find(exp);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

long LaurentPoly::min_exp() const {
    assert(!coeffs_.empty());
    return coeffs_.begin()->first;
}

long LaurentPoly::max_exp() const {
    assert(!coeffs_.empty());
    return coeffs_.rbegin()->first;
}

std::optional<long> LaurentPoly::pole_order() const {
    if (coeffs_.empty()) return std::nullopt;
    return -min_exp();
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.coeffs_) {
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            coeffs_[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.coeffs_) {
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            coeffs_[e] = -c;
        } else {
            it->second -= c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.coeffs_)
        for (const auto& [eb, cb] : b.coeffs_) {
            Rational prod = ca * cb;
            auto it = r.coeffs_.find(ea + eb);
            if (it == r.coeffs_.end()) {
                if (!prod.is_zero()) r.coeffs_[ea + eb] = prod;
            } else {
                it->second += prod;
                if (it->second.is_zero()) r.coeffs_.erase(it);
            }
        }
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [e, v] : coeffs_) v *= c;
    return *this;
}

LaurentPoly LaurentPoly::shifted(long dexp) const {
    LaurentPoly r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e + dexp] = c;
    return r;
}

bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs_ < b.coeffs_;
}

long LaurentPoly::degree() const {
    assert(!coeffs_.empty());
    return max_exp();
}

Rational LaurentPoly::leading_coeff() const {
    assert(!coeffs_.empty());
    return coeffs_.rbegin()->second;
}

void LaurentPoly::divmod_plain(const LaurentPoly& d, LaurentPoly& q, LaurentPoly& r) const {
    if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (!is_plain() || !d.is_plain())
        throw std::invalid_argument("divmod_plain requires plain polynomials");
    q = LaurentPoly();
    r = *this;
    long dd = d.degree();
    Rational dl = d.leading_coeff();
    while (!r.is_zero() && r.degree() >= dd) {
        Rational c = r.leading_coeff() / dl;
        long e = r.degree() - dd;
        LaurentPoly m = term(c, e);
        q += m;
        r -= m * d;
    }
}

LaurentPoly LaurentPoly::divexact(const LaurentPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (is_zero()) return LaurentPoly();
    // strip poles so both operands are plain, remember the shift
    long sa = std::min(min_exp(), 0L);
    long sd = std::min(d.min_exp(), 0L);
    LaurentPoly a = shifted(-sa);
    LaurentPoly b = d.shifted(-sd);
    // also strip positive t-content of the divisor into the shift
    long ca = a.min_exp();
    long cb = b.min_exp();
    a = a.shifted(-ca);
    b = b.shifted(-cb);
    LaurentPoly q, r;
    a.divmod_plain(b, q, r);
    if (!r.is_zero()) throw std::invalid_argument("divexact: division is not exact");
    return q.shifted((sa + ca) - (sd + cb));
}

LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
    if (!a.is_plain() || !b.is_plain())
        throw std::invalid_argument("poly_gcd requires plain polynomials");
    while (!b.is_zero()) {
        LaurentPoly q, r;
        a.divmod_plain(b, q, r);
        a = b;
        b = r;
    }
    if (!a.is_zero()) a *= a.leading_coeff().inv();
    return a;
}

std::string LaurentPoly::str(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << c.str() << " " << var << "^" << e;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
    return os << p.str();
}

}  // namespace chiral
