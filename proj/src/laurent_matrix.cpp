#include "chiral/laurent_matrix.hpp"

#include <sstream>

#include "chiral/errors.hpp"

namespace chiral {

LaurentMatrix LaurentMatrix::identity(size_t n) {
    LaurentMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = LaurentPoly(1);
    return m;
}

std::vector<LaurentPoly> LaurentMatrix::row(size_t r) const {
    std::vector<LaurentPoly> v(cols_);
    for (size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

void LaurentMatrix::set_row(size_t r, const std::vector<LaurentPoly>& v) {
    if (v.size() != cols_) throw DimensionMismatch("set_row width");
    for (size_t c = 0; c < cols_; ++c) at(r, c) = v[c];
}

LaurentMatrix LaurentMatrix::transposed() const {
    LaurentMatrix m(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product");
    LaurentMatrix m(a.rows(), b.cols());
    for (size_t r = 0; r < a.rows(); ++r)
        for (size_t k = 0; k < a.cols(); ++k) {
            if (a.at(r, k).is_zero()) continue;
            for (size_t c = 0; c < b.cols(); ++c) {
                if (b.at(k, c).is_zero()) continue;
                m.at(r, c) += a.at(r, k) * b.at(k, c);
            }
        }
    return m;
}

bool LaurentMatrix::is_zero_row(size_t r) const {
    for (size_t c = 0; c < cols_; ++c)
        if (!at(r, c).is_zero()) return false;
    return true;
}

long LaurentMatrix::max_pole_order() const {
    long k = 0;
    for (const auto& p : data_)
        if (auto ord = p.pole_order(); ord && *ord > k) k = *ord;
    return k;
}

std::string LaurentMatrix::str() const {
    std::ostringstream os;
    for (size_t r = 0; r < rows_; ++r) {
        os << "[ ";
        for (size_t c = 0; c < cols_; ++c) {
            if (c) os << " | ";
            os << at(r, c).str();
        }
        os << " ]\n";
    }
    return os.str();
}

bool is_laurent_unit(const LaurentPoly& p) {
    return p.is_monomial();
}

LaurentPoly det(const LaurentMatrix& m) {
    if (!m.square()) throw DimensionMismatch("det of non-square matrix");
    size_t n = m.rows();
    if (n == 0) return LaurentPoly(1);

    // clear poles uniformly: det(M) = t^(-n*k) * det(t^k M)
    long k = m.max_pole_order();
    LaurentMatrix a = m;
    if (k > 0)
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) a.at(r, c) = a.at(r, c).shifted(k);

    // Bareiss: divisions are exact over the integral domain Q[t]
    int sign = 1;
    LaurentPoly prev(1);
    for (size_t p = 0; p + 1 < n; ++p) {
        if (a.at(p, p).is_zero()) {
            size_t swap = p + 1;
            while (swap < n && a.at(swap, p).is_zero()) ++swap;
            if (swap == n) return LaurentPoly();  // singular
            for (size_t c = 0; c < n; ++c) std::swap(a.at(p, c), a.at(swap, c));
            sign = -sign;
        }
        for (size_t r = p + 1; r < n; ++r) {
            for (size_t c = p + 1; c < n; ++c) {
                LaurentPoly num = a.at(p, p) * a.at(r, c) - a.at(r, p) * a.at(p, c);
                a.at(r, c) = num.divexact(prev);
            }
            a.at(r, p) = LaurentPoly();
        }
        prev = a.at(p, p);
    }
    LaurentPoly d = a.at(n - 1, n - 1);
    if (sign < 0) d = -d;
    return k > 0 ? d.shifted(-static_cast<long>(n) * k) : d;
}

namespace {

// Entry of the field of fractions of Q[t, t^-1]. Reduced form: den is plain,
// monic, with nonzero constant term; any t-shift lives in num.
struct Frac {
    LaurentPoly num;
    LaurentPoly den = LaurentPoly(1);

    void reduce() {
        if (num.is_zero()) {
            den = LaurentPoly(1);
            return;
        }
        long alpha = den.min_exp();
        long beta = num.min_exp();
        LaurentPoly d0 = den.shifted(-alpha);
        LaurentPoly n0 = num.shifted(-beta);
        LaurentPoly g = poly_gcd(n0, d0);
        n0 = n0.divexact(g);
        d0 = d0.divexact(g);
        Rational lc = d0.leading_coeff();
        n0 *= lc.inv();
        d0 *= lc.inv();
        num = n0.shifted(beta - alpha);
        den = d0;
    }

    bool is_zero() const { return num.is_zero(); }
};

Frac make_frac(const LaurentPoly& p) { return Frac{p, LaurentPoly(1)}; }

Frac add(const Frac& a, const Frac& b) {
    Frac r{a.num * b.den + b.num * a.den, a.den * b.den};
    r.reduce();
    return r;
}

Frac sub(const Frac& a, const Frac& b) {
    Frac r{a.num * b.den - b.num * a.den, a.den * b.den};
    r.reduce();
    return r;
}

Frac mul(const Frac& a, const Frac& b) {
    Frac r{a.num * b.num, a.den * b.den};
    r.reduce();
    return r;
}

Frac div(const Frac& a, const Frac& b) {
    Frac r{a.num * b.den, a.den * b.num};
    r.reduce();
    return r;
}

}  // namespace

LaurentMatrix invert_if_unit_det(const LaurentMatrix& m) {
    if (!m.square()) throw DimensionMismatch("inverse of non-square matrix");
    LaurentPoly d = det(m);
    if (!is_laurent_unit(d)) throw DetNotUnit(d.str());

    size_t n = m.rows();
    // Gauss-Jordan over Q(t); the unit determinant guarantees every entry of
    // the result reduces to a Laurent polynomial.
    std::vector<std::vector<Frac>> a(n, std::vector<Frac>(2 * n));
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c) a[r][c] = make_frac(m.at(r, c));
        a[r][n + r] = make_frac(LaurentPoly(1));
    }
    for (size_t p = 0; p < n; ++p) {
        size_t pivot = p;
        while (pivot < n && a[pivot][p].is_zero()) ++pivot;
        if (pivot == n) throw DetNotUnit(d.str());  // unreachable when det is a unit
        if (pivot != p) std::swap(a[pivot], a[p]);
        Frac pv = a[p][p];
        for (size_t c = p; c < 2 * n; ++c) a[p][c] = div(a[p][c], pv);
        for (size_t r = 0; r < n; ++r) {
            if (r == p || a[r][p].is_zero()) continue;
            Frac f = a[r][p];
            for (size_t c = p; c < 2 * n; ++c) a[r][c] = sub(a[r][c], mul(f, a[p][c]));
        }
    }
    LaurentMatrix inv(n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) {
            Frac& f = a[r][n + c];
            if (f.is_zero()) continue;
            if (!is_laurent_unit(f.den)) throw DetNotUnit(d.str());
            inv.at(r, c) = f.num.divexact(f.den);
        }
    return inv;
}

}  // namespace chiral
