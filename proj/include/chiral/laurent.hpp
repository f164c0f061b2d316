#pragma once

#include <map>
#include <optional>
#include <string>

#include "chiral/rational.hpp"

namespace chiral {

// Laurent polynomial in one formal variable t = z1 - z2 with exact rational
// coefficients. No zero coefficients are ever stored.
class LaurentPoly {
  public:
    LaurentPoly() = default;
    LaurentPoly(const Rational& c) {  // NOLINT: constant polynomial
        if (!c.is_zero()) coeffs_[0] = c;
    }
    LaurentPoly(int c) : LaurentPoly(Rational(c)) {}  // NOLINT

    static LaurentPoly term(const Rational& c, long exp);
    static LaurentPoly t(long exp = 1) { return term(1, exp); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;
    // c * t^m with c != 0; these are exactly the units of Q[t, t^-1].
    bool is_monomial() const { return coeffs_.size() == 1; }
    bool is_constant() const;

    const std::map<long, Rational>& coeffs() const { return coeffs_; }
    Rational coeff(long exp) const;
    long min_exp() const;  // requires nonzero
    long max_exp() const;  // requires nonzero

    // -(minimal exponent with nonzero coefficient); nullopt for zero.
    std::optional<long> pole_order() const;
    bool regular() const { return is_zero() || min_exp() >= 0; }

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

    LaurentPoly& operator*=(const Rational& c);
    friend LaurentPoly operator*(const Rational& c, LaurentPoly p) { return p *= c; }

    LaurentPoly shifted(long dexp) const;  // multiply by t^dexp

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    // total order for deterministic pivoting / printing
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b);

    // Plain-polynomial views (all exponents >= 0).
    bool is_plain() const { return regular(); }
    long degree() const;  // max exponent; requires nonzero plain use
    Rational leading_coeff() const;

    // Exact division in Q[t, t^-1]; throws if remainder nonzero.
    LaurentPoly divexact(const LaurentPoly& d) const;
    // Division with remainder after clearing poles: *this = q*d + r, deg r < deg d.
    // Both operands must be plain polynomials.
    void divmod_plain(const LaurentPoly& d, LaurentPoly& q, LaurentPoly& r) const;

    std::string str(const std::string& var = "t") const;

  private:
    std::map<long, Rational> coeffs_;
};

// Monic gcd over Q[t] (operands must be plain); gcd(0,0) = 0.
LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b);

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

}  // namespace chiral
