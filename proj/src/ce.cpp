#include "chiral/ce.hpp"

#include "chiral/errors.hpp"

namespace chiral {

GeneratorDifferential ce_generator_differential(const ModeAlgebraSpec& spec) {
    size_t n = spec.rank();
    GeneratorDifferential d(n);
    Rational half(-1, 2);
    for (size_t a = 0; a < n; ++a) {
        QuadExpr expr;
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                Rational q = spec.f_at(a, b, c);
                if (q.is_zero()) continue;
                expr.push_back({b, 0, c, half * q});
            }
        d[a] = normalize_quad_expr(std::move(expr), spec.generators);
    }
    return d;
}

FockState quad_expr_state(const Engine& e, const QuadExpr& expr) {
    FockState out;
    for (const auto& term : expr) {
        FockState piece = e.normal_order({RawMode{term.a, -term.deriv - 1}, RawMode{term.b, -1}});
        piece *= term.coeff;
        out += piece;
    }
    return out;
}

FockState ce_differential(const Engine& e, const GeneratorDifferential& d, const FockState& u) {
    FockState out;
    for (const auto& [m, cu] : u.terms()) {
        bool prefix_odd = false;
        for (size_t i = 0; i < m.size(); ++i) {
            long mm = m[i].depth - 1;
            // d(c_(-m-1)|0>) = T^m (d c)/m!
            FockState dgen = quad_expr_state(e, d[m[i].gen]);
            for (long t = 0; t < mm; ++t) dgen = e.translation(dgen);
            if (mm > 1) dgen *= factorial(mm).inv();
            // splice the image back into the word
            for (const auto& [dm, dc] : dgen.terms()) {
                FockState v;
                v.add({}, 1);
                for (size_t j = m.size(); j-- > i + 1;) v = e.apply_mode(m[j].gen, -m[j].depth, v);
                for (size_t j = dm.size(); j-- > 0;) v = e.apply_mode(dm[j].gen, -dm[j].depth, v);
                for (size_t j = i; j-- > 0;) v = e.apply_mode(m[j].gen, -m[j].depth, v);
                Rational coef = cu * dc;
                if (prefix_odd) coef = -coef;
                v *= coef;
                out += v;
            }
            prefix_odd ^= e.gen_odd(m[i].gen);
        }
    }
    return out;
}

FockState curving_from_kappa(const Engine& e, const std::vector<std::vector<Rational>>& kappa) {
    FockState out;
    for (size_t a = 0; a < e.rank(); ++a)
        for (size_t b = 0; b < e.rank(); ++b) {
            if (a >= kappa.size() || b >= kappa[a].size()) continue;
            if (kappa[a][b].is_zero()) continue;
            FockState piece = e.normal_order({RawMode{a, -2}, RawMode{b, -1}});
            piece *= -kappa[a][b];
            out += piece;
        }
    return out;
}

FockState curving_from_omega(const Engine& e, const std::vector<std::vector<Rational>>& omega) {
    FockState out;
    for (size_t a = 0; a < e.rank(); ++a)
        for (size_t b = 0; b < e.rank(); ++b) {
            if (a >= omega.size() || b >= omega[a].size()) continue;
            if (omega[a][b].is_zero()) continue;
            FockState piece = e.normal_order({RawMode{a, -1}, RawMode{b, -1}});
            piece *= -omega[a][b];
            out += piece;
        }
    return out;
}

bool in_translation_image(const Engine& e, const FockState& x) {
    if (x.is_zero()) return true;
    Rational maxw = e.state_weight(x);
    if (maxw < Rational(1)) return false;  // T raises weight by exactly 1
    // candidate sources: every basis monomial one weight unit down
    std::vector<FockState> images;
    for (const auto& m : e.basis(maxw - 1)) {
        if (m.empty()) continue;  // T|0> = 0
        FockState u;
        u.add(m, 1);
        FockState tu = e.translation(u);
        if (!tu.is_zero()) images.push_back(std::move(tu));
    }
    // exact Gaussian elimination for membership of x in the span
    std::map<Monomial, size_t> coords;
    auto index_of = [&](const Monomial& m) {
        auto it = coords.find(m);
        if (it != coords.end()) return it->second;
        size_t id = coords.size();
        coords[m] = id;
        return id;
    };
    for (const auto& img : images)
        for (const auto& [m, c] : img.terms()) index_of(m);
    for (const auto& [m, c] : x.terms()) index_of(m);

    size_t ncols = images.size(), nrows = coords.size();
    std::vector<std::vector<Rational>> a(nrows, std::vector<Rational>(ncols + 1));
    for (size_t j = 0; j < ncols; ++j)
        for (const auto& [m, c] : images[j].terms()) a[coords[m]][j] = c;
    for (const auto& [m, c] : x.terms()) a[coords[m]][ncols] = c;

    size_t row = 0;
    for (size_t col = 0; col < ncols && row < nrows; ++col) {
        size_t piv = row;
        while (piv < nrows && a[piv][col].is_zero()) ++piv;
        if (piv == nrows) continue;
        std::swap(a[piv], a[row]);
        Rational d0 = a[row][col];
        for (size_t c = col; c <= ncols; ++c) a[row][c] /= d0;
        for (size_t r = 0; r < nrows; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            Rational mfac = a[r][col];
            for (size_t c = col; c <= ncols; ++c) a[r][c] -= mfac * a[row][c];
        }
        ++row;
    }
    // consistent iff no pivot lands in the last column
    for (size_t r = 0; r < nrows; ++r) {
        bool all_zero = true;
        for (size_t c = 0; c < ncols; ++c)
            if (!a[r][c].is_zero()) {
                all_zero = false;
                break;
            }
        if (all_zero && !a[r][ncols].is_zero()) return false;
    }
    return true;
}

bool cdg_identity_check(const Engine& e, const GeneratorDifferential& d, const FockState& iota,
                        const Rational& max_weight) {
    if (!in_translation_image(e, ce_differential(e, d, iota))) return false;
    for (const auto& m : e.basis(max_weight)) {
        FockState u;
        u.add(m, 1);
        FockState lhs = ce_differential(e, d, ce_differential(e, d, u));
        FockState rhs = e.nth_product(iota, 0, u);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace chiral
