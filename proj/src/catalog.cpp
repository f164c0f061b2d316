#include "chiral/catalog.hpp"

#include <array>

#include "chiral/errors.hpp"

namespace chiral {

namespace {

using Mat2 = std::array<std::array<Rational, 2>, 2>;

Mat2 mul2(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

Mat2 bracket2(const Mat2& a, const Mat2& b) {
    Mat2 ab = mul2(a, b), ba = mul2(b, a);
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = ab[i][j] - ba[i][j];
    return r;
}

Rational trace2(const Mat2& a) { return a[0][0] + a[1][1]; }

}  // namespace

LieData sl2(const Rational& level) {
    // (e, h, f) basis as 2x2 matrices; everything below is computed, not typed in
    Mat2 e{{{0, 1}, {0, 0}}};
    Mat2 h{{{1, 0}, {0, -1}}};
    Mat2 f{{{0, 0}, {1, 0}}};
    std::array<Mat2, 3> basis{e, h, f};

    // a traceless 2x2 matrix [[alpha, beta], [gamma, -alpha]] is
    // beta e + alpha h + gamma f
    auto expand = [](const Mat2& m) {
        return std::array<Rational, 3>{m[0][1], m[0][0], m[1][0]};
    };

    LieData lie;
    lie.names = {"e", "h", "f"};
    lie.f.assign(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3)));
    lie.kappa.assign(3, std::vector<Rational>(3));
    for (size_t a = 0; a < 3; ++a)
        for (size_t b = 0; b < 3; ++b) {
            auto coeffs = expand(bracket2(basis[a], basis[b]));
            for (size_t c = 0; c < 3; ++c) lie.f[c][a][b] = coeffs[c];
            lie.kappa[a][b] = level * trace2(mul2(basis[a], basis[b]));
        }
    return lie;
}

LieData abelian_lie(size_t n, const std::vector<std::vector<Rational>>& kappa) {
    LieData lie;
    for (size_t a = 0; a < n; ++a) lie.names.push_back("x" + std::to_string(a + 1));
    lie.f.assign(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
    lie.kappa = kappa;
    return lie;
}

LieData heisenberg(const Rational& k) {
    return abelian_lie(1, {{k}});
}

LieData change_basis(const LieData& lie, const std::vector<std::vector<Rational>>& g) {
    size_t n = lie.names.size();
    // invert g exactly
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = g[i][j];
        a[i][n + i] = 1;
    }
    for (size_t p = 0; p < n; ++p) {
        size_t piv = p;
        while (piv < n && a[piv][p].is_zero()) ++piv;
        if (piv == n) throw Error("change_basis: singular matrix");
        std::swap(a[piv], a[p]);
        Rational d = a[p][p];
        for (size_t c = 0; c < 2 * n; ++c) a[p][c] /= d;
        for (size_t r = 0; r < n; ++r) {
            if (r == p || a[r][p].is_zero()) continue;
            Rational m = a[r][p];
            for (size_t c = 0; c < 2 * n; ++c) a[r][c] -= m * a[p][c];
        }
    }
    std::vector<std::vector<Rational>> ginv(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) ginv[i][j] = a[i][n + j];

    LieData out;
    out.names = lie.names;
    out.f.assign(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
    out.kappa.assign(n, std::vector<Rational>(n));
    for (size_t aa = 0; aa < n; ++aa)
        for (size_t bb = 0; bb < n; ++bb) {
            for (size_t cc = 0; cc < n; ++cc) {
                Rational s = 0;
                for (size_t p = 0; p < n; ++p)
                    for (size_t q = 0; q < n; ++q)
                        for (size_t r = 0; r < n; ++r)
                            s += g[p][aa] * g[q][bb] * lie.f[r][p][q] * ginv[cc][r];
                out.f[cc][aa][bb] = s;
            }
            Rational s = 0;
            for (size_t p = 0; p < n; ++p)
                for (size_t q = 0; q < n; ++q) s += g[p][aa] * g[q][bb] * lie.kappa[p][q];
            out.kappa[aa][bb] = s;
        }
    return out;
}

std::vector<GeneratorSpec> dual_generators(const std::vector<GeneratorSpec>& gens) {
    std::vector<GeneratorSpec> out;
    out.reserve(gens.size());
    for (const auto& g : gens) {
        GeneratorSpec d;
        d.name = dual_name(g.name);
        d.degree = -g.degree - 1;
        d.parity = g.parity;
        d.weight = Rational(1) - g.weight;
        out.push_back(std::move(d));
    }
    return out;
}

ExampleBundle commutative_example(size_t rank, const std::vector<long>& degrees) {
    if (rank == 0 || degrees.size() != rank)
        throw Error("commutative_example: need one degree per generator");
    ExampleBundle b;
    b.name = "commutative";
    b.note = "P = N (x) N; the dual is the full regular module on suspended generators";
    for (size_t i = 0; i < rank; ++i)
        b.datum.generators.push_back(
            {"x" + std::to_string(i + 1), degrees[i], Parity::Even, Rational(0)});
    b.datum.relations = LaurentMatrix::identity(rank * rank);
    b.expected_dual_rows = LaurentMatrix::identity(rank * rank);
    return b;
}

ExampleBundle four_generator_example() {
    ExampleBundle b;
    b.name = "four-generator";
    b.note = "rank-4 pure quadratic datum with a t^-1 tail in two relation rows";
    size_t r = 4;
    for (size_t i = 0; i < r; ++i)
        b.datum.generators.push_back({"phi" + std::to_string(i + 1), 0, Parity::Even, Rational(0)});

    auto col = [&](size_t i, size_t j) { return i * r + j; };
    LaurentMatrix rel(r * r, r * r);
    size_t row = 0;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            if ((i == 0 && j == 1) || (i == 1 && j == 0)) continue;
            rel.at(row++, col(i, j)) = LaurentPoly(1);
        }
    rel.at(row, col(0, 1)) = LaurentPoly(1);
    rel.at(row, col(2, 3)) = LaurentPoly::term(-1, -1);
    ++row;
    rel.at(row, col(1, 0)) = LaurentPoly(1);
    rel.at(row, col(3, 2)) = LaurentPoly::term(1, -1);
    b.datum.relations = rel;

    LaurentMatrix dual(r * r, r * r);
    row = 0;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            if ((i == 2 && j == 3) || (i == 3 && j == 2)) continue;
            dual.at(row++, col(i, j)) = LaurentPoly(1);
        }
    dual.at(row, col(2, 3)) = LaurentPoly(1);
    dual.at(row, col(0, 1)) = LaurentPoly::term(1, -1);
    ++row;
    dual.at(row, col(3, 2)) = LaurentPoly(1);
    dual.at(row, col(1, 0)) = LaurentPoly::term(-1, -1);
    b.expected_dual_rows = dual;
    return b;
}

ExampleBundle kac_moody_example(const LieData& lie) {
    size_t n = lie.names.size();
    require_lie_data(lie.f, lie.kappa, n);

    ExampleBundle b;
    b.name = "kac-moody";
    b.note = "QLS datum of a chiral envelope; dual carries the CE differential and a curving";
    for (size_t a = 0; a < n; ++a)
        b.datum.generators.push_back({lie.names[a], 0, Parity::Even, Rational(1)});
    b.datum.generators.push_back({"unit", 0, Parity::Even, Rational(0)});

    size_t r = n + 1, u = n;
    auto col = [&](size_t i, size_t j) { return i * r + j; };
    Rational half(1, 2);

    LaurentMatrix rel(1 + 2 * n + n * n, r * r);
    size_t row = 0;
    rel.at(row++, col(u, u)) = LaurentPoly(1);
    for (size_t a = 0; a < n; ++a) rel.at(row++, col(u, a)) = LaurentPoly(1);
    for (size_t a = 0; a < n; ++a) rel.at(row++, col(a, u)) = LaurentPoly(1);
    for (size_t a = 0; a < n; ++a)
        for (size_t bb = 0; bb < n; ++bb) {
            rel.at(row, col(a, bb)) = LaurentPoly(1);
            for (size_t c = 0; c < n; ++c) {
                Rational q = half * lie.f[c][a][bb];
                if (q.is_zero()) continue;
                rel.at(row, col(u, c)) += LaurentPoly::term(-q, -1);
                rel.at(row, col(c, u)) += LaurentPoly::term(-q, -1);
            }
            if (!lie.kappa[a][bb].is_zero())
                rel.at(row, col(u, u)) += LaurentPoly::term(-lie.kappa[a][bb], -2);
            ++row;
        }
    b.datum.relations = rel;

    // displayed dual: anchors S(x)S, S(x)psi_c, psi_c(x)S with +1/2 f and
    // +kappa tails, plus the full quadratic block
    LaurentMatrix dual(r * r, r * r);
    row = 0;
    dual.at(row, col(u, u)) = LaurentPoly(1);
    for (size_t a = 0; a < n; ++a)
        for (size_t bb = 0; bb < n; ++bb)
            if (!lie.kappa[a][bb].is_zero())
                dual.at(row, col(a, bb)) += LaurentPoly::term(lie.kappa[a][bb], -2);
    ++row;
    for (size_t c = 0; c < n; ++c) {
        dual.at(row, col(u, c)) = LaurentPoly(1);
        for (size_t a = 0; a < n; ++a)
            for (size_t bb = 0; bb < n; ++bb) {
                Rational q = half * lie.f[c][a][bb];
                if (!q.is_zero()) dual.at(row, col(a, bb)) += LaurentPoly::term(q, -1);
            }
        ++row;
    }
    for (size_t c = 0; c < n; ++c) {
        dual.at(row, col(c, u)) = LaurentPoly(1);
        for (size_t a = 0; a < n; ++a)
            for (size_t bb = 0; bb < n; ++bb) {
                Rational q = half * lie.f[c][a][bb];
                if (!q.is_zero()) dual.at(row, col(a, bb)) += LaurentPoly::term(q, -1);
            }
        ++row;
    }
    for (size_t a = 0; a < n; ++a)
        for (size_t bb = 0; bb < n; ++bb) dual.at(row++, col(a, bb)) = LaurentPoly(1);
    b.expected_dual_rows = dual;

    std::vector<GeneratorSpec> prim(b.datum.generators.begin(), b.datum.generators.end() - 1);
    b.primal_engine = ModeAlgebraSpec::affine(prim, lie.f, lie.kappa);
    b.dual_engine = ModeAlgebraSpec::abelian_ce(dual_generators(prim), lie.f, lie.kappa);

    // closed forms: d(psi_c) = -1/2 f^c_ab psi_a psi_b, iota = -kappa_ab (d psi_a) psi_b
    GeneratorDifferential d(n);
    for (size_t c = 0; c < n; ++c) {
        QuadExpr expr;
        for (size_t a = 0; a < n; ++a)
            for (size_t bb = 0; bb < n; ++bb) {
                Rational q = Rational(-1, 2) * lie.f[c][a][bb];
                if (!q.is_zero()) expr.push_back({a, 0, bb, q});
            }
        d[c] = normalize_quad_expr(std::move(expr), b.dual_engine->generators);
    }
    b.expected_d = d;
    QuadExpr curving;
    for (size_t a = 0; a < n; ++a)
        for (size_t bb = 0; bb < n; ++bb)
            if (!lie.kappa[a][bb].is_zero()) curving.push_back({a, 1, bb, -lie.kappa[a][bb]});
    b.expected_curving = normalize_quad_expr(std::move(curving), b.dual_engine->generators);
    return b;
}

ExampleBundle beta_gamma_bc_example(const std::vector<std::vector<Rational>>& omega,
                                    const std::vector<Rational>& weights,
                                    const std::vector<Parity>& parities, bool request_dual) {
    size_t n = weights.size();
    if (parities.size() != n || omega.size() != n) throw InvalidPairing("inconsistent ranks");

    ExampleBundle b;
    b.name = "beta-gamma-bc";
    b.note = "free-field QLS datum; dual has zero differential and a quadratic curving";
    for (size_t a = 0; a < n; ++a)
        b.datum.generators.push_back({"x" + std::to_string(a + 1), 0, parities[a], weights[a]});
    require_symplectic_data(b.datum.generators, omega);
    if (request_dual) {
        // non-degeneracy: exact rank over Q
        std::vector<std::vector<Rational>> m = omega;
        size_t rank = 0;
        for (size_t c = 0; c < n; ++c) {
            size_t piv = rank;
            while (piv < n && m[piv][c].is_zero()) ++piv;
            if (piv == n) continue;
            std::swap(m[piv], m[rank]);
            for (size_t rr = 0; rr < n; ++rr) {
                if (rr == rank || m[rr][c].is_zero()) continue;
                Rational q = m[rr][c] / m[rank][c];
                for (size_t cc = 0; cc < n; ++cc) m[rr][cc] -= q * m[rank][cc];
            }
            ++rank;
        }
        if (rank != n) throw InvalidPairing("omega is degenerate but a dual was requested");
    }
    b.datum.generators.push_back({"unit", 0, Parity::Even, Rational(0)});

    size_t r = n + 1, u = n;
    auto col = [&](size_t i, size_t j) { return i * r + j; };

    LaurentMatrix rel(1 + 2 * n + n * n, r * r);
    size_t row = 0;
    rel.at(row++, col(u, u)) = LaurentPoly(1);
    for (size_t a = 0; a < n; ++a) rel.at(row++, col(u, a)) = LaurentPoly(1);
    for (size_t a = 0; a < n; ++a) rel.at(row++, col(a, u)) = LaurentPoly(1);
    for (size_t a = 0; a < n; ++a)
        for (size_t bb = 0; bb < n; ++bb) {
            rel.at(row, col(a, bb)) = LaurentPoly(1);
            if (!omega[a][bb].is_zero())
                rel.at(row, col(u, u)) += LaurentPoly::term(-omega[a][bb], -1);
            ++row;
        }
    b.datum.relations = rel;

    LaurentMatrix dual(r * r, r * r);
    row = 0;
    dual.at(row, col(u, u)) = LaurentPoly(1);
    for (size_t a = 0; a < n; ++a)
        for (size_t bb = 0; bb < n; ++bb)
            if (!omega[a][bb].is_zero())
                dual.at(row, col(a, bb)) += LaurentPoly::term(omega[a][bb], -1);
    ++row;
    for (size_t a = 0; a < n; ++a) dual.at(row++, col(u, a)) = LaurentPoly(1);
    for (size_t a = 0; a < n; ++a) dual.at(row++, col(a, u)) = LaurentPoly(1);
    for (size_t a = 0; a < n; ++a)
        for (size_t bb = 0; bb < n; ++bb) dual.at(row++, col(a, bb)) = LaurentPoly(1);
    b.expected_dual_rows = dual;

    std::vector<GeneratorSpec> prim(b.datum.generators.begin(), b.datum.generators.end() - 1);
    b.primal_engine = ModeAlgebraSpec::weyl(prim, omega);
    b.dual_engine = ModeAlgebraSpec::abelian_ce(dual_generators(prim), {}, {});

    b.expected_d = GeneratorDifferential(n);  // zero differential
    QuadExpr curving;
    for (size_t a = 0; a < n; ++a)
        for (size_t bb = 0; bb < n; ++bb)
            if (!omega[a][bb].is_zero()) curving.push_back({a, 0, bb, -omega[a][bb]});
    b.expected_curving = normalize_quad_expr(std::move(curving), b.dual_engine->generators);
    return b;
}

ExampleBundle beta_gamma_example() {
    std::vector<std::vector<Rational>> omega{{0, 1}, {-1, 0}};
    auto b = beta_gamma_bc_example(omega, {Rational(1, 2), Rational(1, 2)},
                                   {Parity::Even, Parity::Even});
    b.name = "beta-gamma";
    return b;
}

ExampleBundle bc_example() {
    std::vector<std::vector<Rational>> omega{{0, 1}, {1, 0}};
    auto b = beta_gamma_bc_example(omega, {Rational(1), Rational(0)}, {Parity::Odd, Parity::Odd});
    b.name = "bc";
    return b;
}

TensorState kac_moody_i0i(const TensorPair& pair, const LieData& lie) {
    size_t n = lie.names.size();
    TensorState out;
    const Engine& L = pair.left();
    const Engine& R = pair.right();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            for (size_t c = 0; c < n; ++c) {
                if (lie.f[c][a][b].is_zero()) continue;
                FockState ghost = R.normal_order({RawMode{a, -1}, RawMode{b, -1}});
                TensorState piece = pair.pure(L.generator(c), ghost);
                piece *= lie.f[c][a][b];
                out += piece;
            }
            if (!lie.kappa[a][b].is_zero()) {
                FockState ghost = R.normal_order({RawMode{a, -2}, RawMode{b, -1}});
                TensorState piece = pair.pure(L.vacuum(), ghost);
                piece *= lie.kappa[a][b];
                out += piece;
            }
        }
    return out;
}

}  // namespace chiral
