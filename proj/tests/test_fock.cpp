#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chiral/catalog.hpp"
#include "chiral/errors.hpp"
#include "chiral/fock.hpp"

using namespace chiral;

namespace {

Engine sl2_engine(const Rational& cutoff, const Rational& level = 1) {
    LieData lie = sl2(level);
    std::vector<GeneratorSpec> gens;
    for (const auto& n : lie.names) gens.push_back({n, 0, Parity::Even, Rational(1)});
    return Engine(ModeAlgebraSpec::affine(gens, lie.f, lie.kappa), cutoff);
}

Engine ce_sl2_engine(const Rational& cutoff) {
    LieData lie = sl2(1);
    std::vector<GeneratorSpec> gens;
    for (const auto& n : lie.names) gens.push_back({dual_name(n), -1, Parity::Even, Rational(0)});
    return Engine(ModeAlgebraSpec::abelian_ce(gens, lie.f, lie.kappa), cutoff);
}

Engine beta_gamma_engine(const Rational& cutoff) {
    std::vector<GeneratorSpec> gens{{"x1", 0, Parity::Even, Rational(1, 2)},
                                    {"x2", 0, Parity::Even, Rational(1, 2)}};
    std::vector<std::vector<Rational>> omega{{0, 1}, {-1, 0}};
    return Engine(ModeAlgebraSpec::weyl(gens, omega), cutoff);
}

Engine bc_engine(const Rational& cutoff) {
    std::vector<GeneratorSpec> gens{{"b", 0, Parity::Odd, Rational(1)},
                                    {"c", 0, Parity::Odd, Rational(0)}};
    std::vector<std::vector<Rational>> omega{{0, 1}, {1, 0}};
    return Engine(ModeAlgebraSpec::weyl(gens, omega), cutoff);
}

// independent oracle: the p = 0 specialization of the Borcherds identity,
// peeling the head mode of u:
//   (x_(r) w)_(q) z = sum_i (-1)^i C(r,i) [ x_(r-i)(w_(q+i) z)
//                     - (-1)^{r + p_x p_w} w_(q+r-i)(x_(i) z) ]
FockState oracle_product(const Engine& e, const FockState& u, long n, const FockState& v);

FockState oracle_product_monomial(const Engine& e, const Monomial& u, long n, const Monomial& z) {
    FockState out;
    if (u.empty()) {
        if (n == -1) out.add(z, 1);
        return out;
    }
    Mode head = u.front();
    Monomial w(u.begin() + 1, u.end());
    long r = -head.depth;
    size_t x = head.gen;
    bool sign = (head.depth + (e.gen_odd(x) && e.monomial_odd(w) ? 1 : 0)) % 2 == 1;
    FockState zs;
    zs.add(z, 1);
    for (long i = 0;; ++i) {
        Rational c = binomial(r, i);
        if (i % 2 == 1) c = -c;
        bool first_alive =
            e.monomial_weight(w) + e.monomial_weight(z) - Rational(n + i) - 1 >= Rational(0);
        bool second_alive =
            e.gen_weight(x) + e.monomial_weight(z) - Rational(i) - 1 >= Rational(0);
        if (!first_alive && !second_alive) break;
        if (first_alive) {
            FockState inner = oracle_product_monomial(e, w, n + i, z);
            FockState piece = e.apply_mode(x, r - i, inner);
            piece *= c;
            out += piece;
        }
        if (second_alive) {
            FockState inner = e.apply_mode(x, i, zs);
            FockState piece;
            for (const auto& [mi, ci] : inner.terms()) {
                FockState p2 = oracle_product_monomial(e, w, n + r - i, mi);
                p2 *= ci;
                piece += p2;
            }
            piece *= sign ? c : -c;
            out += piece;
        }
    }
    return out;
}

FockState oracle_product(const Engine& e, const FockState& u, long n, const FockState& v) {
    FockState out;
    for (const auto& [mu, cu] : u.terms())
        for (const auto& [mv, cv] : v.terms()) {
            FockState piece = oracle_product_monomial(e, mu, n, mv);
            piece *= cu * cv;
            out += piece;
        }
    return out;
}

FockState random_state(const Engine& e, std::mt19937& rng, long weight_budget) {
    std::uniform_int_distribution<size_t> gen_pick(0, e.rank() - 1);
    std::uniform_int_distribution<long> depth_pick(1, 2);
    std::uniform_int_distribution<int> len_pick(0, 2);
    std::vector<RawMode> word;
    Rational used = 0;
    for (int i = 0; i < len_pick(rng); ++i) {
        size_t a = gen_pick(rng);
        long d = depth_pick(rng);
        if (used + e.gen_weight(a) + Rational(d - 1) > Rational(weight_budget)) break;
        used += e.gen_weight(a) + Rational(d - 1);
        word.push_back(RawMode{a, -d});
    }
    return e.normal_order(word);
}

}  // namespace

TEST_CASE("normal ordering: affine defining products") {
    Engine e = sl2_engine(4);
    // J_{a,(1)} J_{b,(-1)} |0> = kappa_ab |0>
    LieData lie = sl2(1);
    for (size_t a = 0; a < 3; ++a)
        for (size_t b = 0; b < 3; ++b) {
            FockState got = e.normal_order({RawMode{a, 1}, RawMode{b, -1}});
            FockState expect = e.vacuum();
            expect *= lie.kappa[a][b];
            CHECK(got == expect);
        }
    // J_{e,(0)} J_{f,(-1)} |0> = J_{h,(-1)} |0>
    FockState got = e.normal_order({RawMode{0, 0}, RawMode{2, -1}});
    CHECK(got == e.generator(1));
}

TEST_CASE("normal ordering: abelian CE kills non-negative modes") {
    Engine e = ce_sl2_engine(3);
    FockState got = e.apply_mode(0, 0, e.generator(1));
    CHECK(got.is_zero());
    // odd repeated factor dies
    FockState sq = e.normal_order({RawMode{0, -1}, RawMode{0, -1}});
    CHECK(sq.is_zero());
}

TEST_CASE("normal ordering: Weyl pairing shows up at level -1") {
    Engine e = beta_gamma_engine(4);
    // x_{1,(0)} x_2 = omega_12 |0>
    CHECK(e.nth_product(e.generator(0), 0, e.generator(1)) == e.vacuum());
    FockState m = e.nth_product(e.generator(1), 0, e.generator(0));
    FockState expect = e.vacuum();
    expect *= Rational(-1);
    CHECK(m == expect);

    Engine f = bc_engine(4);
    CHECK(f.nth_product(f.generator(0), 0, f.generator(1)) == f.vacuum());
    CHECK(f.nth_product(f.generator(1), 0, f.generator(0)) == f.vacuum());
}

TEST_CASE("nth products of affine generators") {
    Engine e = sl2_engine(4);
    LieData lie = sl2(1);
    for (size_t a = 0; a < 3; ++a)
        for (size_t b = 0; b < 3; ++b) {
            FockState p0 = e.nth_product(e.generator(a), 0, e.generator(b));
            FockState expect;
            for (size_t c = 0; c < 3; ++c) {
                FockState t = e.generator(c);
                t *= lie.f[c][a][b];
                expect += t;
            }
            CHECK(p0 == expect);
            FockState p1 = e.nth_product(e.generator(a), 1, e.generator(b));
            FockState k = e.vacuum();
            k *= lie.kappa[a][b];
            CHECK(p1 == k);
            CHECK(e.nth_product(e.generator(a), 2, e.generator(b)).is_zero());
        }
}

TEST_CASE("composite product against the independent Borcherds oracle") {
    Engine e = sl2_engine(6);
    // (J_{a,(-1)} J_{b,(-1)} |0>)_(3) J_c
    for (size_t a = 0; a < 3; ++a)
        for (size_t b = 0; b < 3; ++b)
            for (size_t c = 0; c < 3; ++c) {
                FockState u = e.normal_order({RawMode{a, -1}, RawMode{b, -1}});
                FockState got = e.nth_product(u, 3, e.generator(c));
                FockState expect = oracle_product(e, u, 3, e.generator(c));
                CHECK(got == expect);
            }
}

TEST_CASE("random products agree with the oracle in every family") {
    std::mt19937 rng(101);
    std::uniform_int_distribution<long> n_pick(-2, 4);
    auto run = [&](Engine e) {
        for (int trial = 0; trial < 60; ++trial) {
            FockState u = random_state(e, rng, 3);
            FockState v = random_state(e, rng, 2);
            long n = n_pick(rng);
            FockState got, expect;
            try {
                got = e.nth_product(u, n, v);
            } catch (const CutoffExceeded&) {
                continue;
            }
            expect = oracle_product(e, u, n, v);
            CHECK(got == expect);
        }
    };
    run(sl2_engine(8));
    run(beta_gamma_engine(8));
    run(bc_engine(8));
    run(ce_sl2_engine(8));
}

TEST_CASE("vacuum axioms") {
    std::mt19937 rng(7);
    auto run = [&](Engine e) {
        for (int trial = 0; trial < 25; ++trial) {
            FockState u = random_state(e, rng, 3);
            CHECK(e.nth_product(u, -1, e.vacuum()) == u);          // creativity
            CHECK(e.nth_product(u, 0, e.vacuum()).is_zero());      // u_(n)|0> = 0
            CHECK(e.nth_product(u, 1, e.vacuum()).is_zero());
            CHECK(e.nth_product(e.vacuum(), -1, u) == u);          // |0>_(n) = delta
            CHECK(e.nth_product(e.vacuum(), 0, u).is_zero());
            CHECK(e.nth_product(e.vacuum(), -2, u).is_zero());
        }
    };
    run(sl2_engine(6));
    run(beta_gamma_engine(6));
    run(bc_engine(6));
    run(ce_sl2_engine(6));
}

TEST_CASE("translation basics") {
    Engine e = sl2_engine(5);
    CHECK(e.translation(e.vacuum()).is_zero());
    FockState j2 = e.normal_order({RawMode{0, -2}});
    CHECK(e.translation(e.generator(0)) == j2);
    // T^m c = m! c_(-m-1)|0>
    Engine ce = ce_sl2_engine(5);
    FockState t3 = ce.translation(ce.translation(ce.translation(ce.generator(0))));
    FockState expect = ce.normal_order({RawMode{0, -4}});
    expect *= Rational(6);
    CHECK(t3 == expect);
}

TEST_CASE("translation covariance: (Tu)_(n) v = -n u_(n-1) v") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<long> n_pick(-2, 3);
    auto run = [&](Engine e) {
        for (int trial = 0; trial < 40; ++trial) {
            FockState u = random_state(e, rng, 2);
            FockState v = random_state(e, rng, 2);
            long n = n_pick(rng);
            FockState lhs, rhs;
            try {
                lhs = e.nth_product(e.translation(u), n, v);
                rhs = e.nth_product(u, n - 1, v);
            } catch (const CutoffExceeded&) {
                continue;
            }
            rhs *= Rational(-n);
            CHECK(lhs == rhs);
        }
    };
    run(sl2_engine(8));
    run(beta_gamma_engine(8));
    run(bc_engine(8));
    run(ce_sl2_engine(8));
}

TEST_CASE("weight additivity and locality") {
    std::mt19937 rng(17);
    auto run = [&](Engine e) {
        for (int trial = 0; trial < 40; ++trial) {
            FockState u = random_state(e, rng, 3);
            FockState v = random_state(e, rng, 2);
            if (u.is_zero() || v.is_zero()) continue;
            Rational wu = e.state_weight(u), wv = e.state_weight(v);
            // locality bound: u_(n) v = 0 for n >= wt u + wt v
            long bound = 0;
            while (Rational(bound) < wu + wv) ++bound;
            CHECK(e.nth_product(u, bound, v).is_zero());
            CHECK(e.nth_product(u, bound + 1, v).is_zero());
            // weight additivity on homogeneous inputs
            for (long n = -1; n <= 1; ++n) {
                FockState p = e.nth_product(u, n, v);
                for (const auto& [m, c] : p.terms()) {
                    bool hom_u = true, hom_v = true;
                    for (const auto& [mu, cu] : u.terms())
                        if (e.monomial_weight(mu) != wu) hom_u = false;
                    for (const auto& [mv, cv] : v.terms())
                        if (e.monomial_weight(mv) != wv) hom_v = false;
                    if (hom_u && hom_v)
                        CHECK(e.monomial_weight(m) == wu + wv - Rational(n) - 1);
                }
            }
        }
    };
    run(sl2_engine(8));
    run(beta_gamma_engine(8));
    run(bc_engine(8));
}

TEST_CASE("Borcherds commutator property on random triples") {
    std::mt19937 rng(19);
    std::uniform_int_distribution<long> mode_pick(-3, 3);
    auto run = [&](Engine e) {
        for (int trial = 0; trial < 50; ++trial) {
            FockState u = random_state(e, rng, 2);
            FockState v = random_state(e, rng, 2);
            FockState w = random_state(e, rng, 2);
            long l = mode_pick(rng), m = mode_pick(rng);
            FockState lhs, rhs;
            try {
                FockState t1 = e.nth_product(u, l, e.nth_product(v, m, w));
                FockState t2 = e.nth_product(v, m, e.nth_product(u, l, w));
                bool both_odd = false;
                // states from random_state are parity homogeneous monomial sums
                if (!u.is_zero() && !v.is_zero())
                    both_odd = e.monomial_odd(u.terms().begin()->first) &&
                               e.monomial_odd(v.terms().begin()->first);
                if (both_odd) t2 *= Rational(-1);
                lhs = t1 - t2;
                rhs = FockState();
                for (long j = 0;; ++j) {
                    if (e.state_weight(u) + e.state_weight(v) - Rational(j) - 1 < Rational(0))
                        break;
                    FockState uv = e.nth_product(u, j, v);
                    if (uv.is_zero()) continue;
                    FockState term = e.nth_product(uv, l + m - j, w);
                    term *= binomial(l, j);
                    rhs += term;
                }
            } catch (const CutoffExceeded&) {
                continue;
            }
            CHECK(lhs == rhs);
        }
    };
    run(sl2_engine(9));
    run(beta_gamma_engine(9));
    run(bc_engine(9));
    run(ce_sl2_engine(9));
}

TEST_CASE("cutoff is enforced at the API surface") {
    Engine e = sl2_engine(2);
    CHECK_THROWS_AS(e.normal_order({RawMode{0, -2}, RawMode{1, -1}}), CutoffExceeded);
    FockState u = e.normal_order({RawMode{0, -2}});
    CHECK_THROWS_AS(e.translation(u), CutoffExceeded);
    CHECK_THROWS_AS(e.nth_product(u, -1, e.generator(0)), CutoffExceeded);
}

TEST_CASE("basis enumeration counts") {
    Engine e = sl2_engine(2);
    CHECK(e.basis(2).size() == 13);  // |0>, 3 x J(-1), 3 x J(-2), 6 x J(-1)J(-1)
    Engine bg = beta_gamma_engine(1);
    CHECK(bg.basis(1).size() == 6);
    Engine bc = bc_engine(1);
    CHECK(bc.basis(1).size() == 6);
    // infinite bases are rejected: an even weight-0 generator
    std::vector<GeneratorSpec> gens{{"x", 0, Parity::Even, Rational(0)},
                                    {"y", 0, Parity::Even, Rational(1)}};
    std::vector<std::vector<Rational>> omega{{0, 1}, {-1, 0}};
    Engine degenerate(ModeAlgebraSpec::weyl(gens, omega), 2);
    CHECK_THROWS(degenerate.basis(1));
}

TEST_CASE("mode algebra validation") {
    LieData lie = sl2(1);
    std::vector<GeneratorSpec> gens{{"e", 0, Parity::Even, Rational(1)},
                                    {"h", 0, Parity::Even, Rational(1)},
                                    {"f", 0, Parity::Even, Rational(1)}};
    auto bad_f = lie.f;
    bad_f[0][1][2] += Rational(1);  // breaks antisymmetry
    CHECK_THROWS_AS(ModeAlgebraSpec::affine(gens, bad_f, lie.kappa), InvalidLieData);
    auto bad_kappa = lie.kappa;
    bad_kappa[0][2] += Rational(1);
    bad_kappa[2][0] += Rational(1);  // symmetric but not invariant
    CHECK_THROWS_AS(ModeAlgebraSpec::affine(gens, lie.f, bad_kappa), InvalidLieData);
    // weight mismatch in a symplectic pairing
    std::vector<GeneratorSpec> wg{{"x", 0, Parity::Even, Rational(1, 2)},
                                  {"y", 0, Parity::Even, Rational(1)}};
    std::vector<std::vector<Rational>> om{{0, 1}, {-1, 0}};
    CHECK_THROWS_AS(ModeAlgebraSpec::weyl(wg, om), InvalidPairing);
}
