#include "chiral/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace chiral {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("division by zero rational");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inv() const {
    if (is_zero()) throw std::invalid_argument("inverse of zero rational");
    return Rational(mpq_class(1 / v_));
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (v.get_den() == 0) throw std::invalid_argument("zero denominator in: " + s);
    v.canonicalize();
    return Rational(v);
}

std::string Rational::str() const {
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

Rational binomial(long p, long j) {
    if (j < 0) return 0;
    Rational acc = 1;
    for (long i = 0; i < j; ++i) acc *= Rational(p - i, i + 1);
    return acc;
}

Rational factorial(long n) {
    Rational acc = 1;
    for (long i = 2; i <= n; ++i) acc *= Rational(i);
    return acc;
}

}  // namespace chiral
