#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chiral/catalog.hpp"
#include "chiral/errors.hpp"
#include "chiral/mc.hpp"

using namespace chiral;

namespace {

Engine affine_engine(const LieData& lie, const Rational& cutoff) {
    std::vector<GeneratorSpec> gens;
    for (const auto& n : lie.names) gens.push_back({n, 0, Parity::Even, Rational(1)});
    return Engine(ModeAlgebraSpec::affine(gens, lie.f, lie.kappa), cutoff);
}

Engine ce_engine(const LieData& lie, const Rational& cutoff) {
    std::vector<GeneratorSpec> gens;
    for (const auto& n : lie.names) gens.push_back({dual_name(n), -1, Parity::Even, Rational(0)});
    return Engine(ModeAlgebraSpec::abelian_ce(gens, lie.f, lie.kappa), cutoff);
}

}  // namespace

TEST_CASE("tensor products reduce to plain products against the vacuum") {
    LieData lie = sl2(1);
    Engine L = affine_engine(lie, 4);
    Engine R = ce_engine(lie, 4);
    TensorPair pair(L, R);
    for (long n : {-2L, -1L, 0L, 1L}) {
        TensorState lhs = pair.nth_product(pair.pure(L.generator(0), R.vacuum()), n,
                                           pair.pure(L.generator(2), R.vacuum()));
        TensorState rhs = pair.pure(L.nth_product(L.generator(0), n, L.generator(2)), R.vacuum());
        CHECK(lhs == rhs);
    }
}

TEST_CASE("I_(0) I reproduces the closed form term for term") {
    LieData lie = sl2(1);
    Engine L = affine_engine(lie, 4);
    Engine R = ce_engine(lie, 4);
    TensorPair pair(L, R);
    TensorState I = pair.canonical_element();
    CHECK(pair.nth_product(I, 0, I) == kac_moody_i0i(pair, lie));
}

TEST_CASE("d I against the explicit expansion") {
    LieData lie = sl2(1);
    Engine L = affine_engine(lie, 4);
    Engine R = ce_engine(lie, 4);
    TensorPair pair(L, R);
    TensorState I = pair.canonical_element();
    auto d = ce_generator_differential(R.spec());
    TensorState dI = pair.apply_differential(d, true, I);
    TensorState expect;
    for (size_t a = 0; a < 3; ++a) {
        FockState da = quad_expr_state(R, d[a]);
        expect += pair.pure(L.generator(a), da);
    }
    CHECK(dI == expect);
}

TEST_CASE("Maurer-Cartan check passes for sl2 at cutoff 4") {
    LieData lie = sl2(1);
    Engine L = affine_engine(lie, 4);
    Engine R = ce_engine(lie, 4);
    TensorPair pair(L, R);
    TwistedStructure ts;
    ts.on_right = true;
    ts.d = ce_generator_differential(R.spec());
    ts.iota = curving_from_kappa(R, lie.kappa);
    MCReport rep = mc_check(pair, pair.canonical_element(), ts, 4);
    CHECK(rep.passed);
    CHECK(rep.residual_e1.is_zero());
    for (const auto& em : rep.residuals_em) CHECK(em.is_zero());
}

TEST_CASE("a perturbed curving shows up as the exact E1 residual") {
    LieData lie = sl2(1);
    Engine L = affine_engine(lie, 4);
    Engine R = ce_engine(lie, 4);
    TensorPair pair(L, R);
    TwistedStructure ts;
    ts.on_right = true;
    ts.d = ce_generator_differential(R.spec());
    auto kappa = lie.kappa;
    kappa[0][2] += Rational(1);  // kappa_ef += 1, entering the curving only
    ts.iota = curving_from_kappa(R, kappa);
    MCReport rep = mc_check(pair, pair.canonical_element(), ts, 2);
    CHECK_FALSE(rep.passed);
    // hand expansion of the kappa term: E1 = -1/2 |0> (x) (d c^e) c^f
    TensorState expect;
    FockState ghost = R.normal_order({RawMode{0, -2}, RawMode{2, -1}});
    ghost *= Rational(-1, 2);
    expect += pair.pure(L.vacuum(), ghost);
    CHECK(rep.residual_e1 == expect);
    for (const auto& em : rep.residuals_em) CHECK(em.is_zero());
}

TEST_CASE("abelian data with zero kappa passes with every term individually zero") {
    LieData lie = abelian_lie(1, {{0}});
    Engine L = affine_engine(lie, 4);
    Engine R = ce_engine(lie, 4);
    TensorPair pair(L, R);
    TensorState I = pair.canonical_element();
    TwistedStructure ts;
    ts.on_right = true;
    ts.d = ce_generator_differential(R.spec());
    CHECK(pair.apply_differential(ts.d, true, I).is_zero());
    CHECK(pair.nth_product(I, 0, I).is_zero());
    CHECK(ts.iota.is_zero());
    MCReport rep = mc_check(pair, I, ts, 3);
    CHECK(rep.passed);
    // the canonical element also solves the plain equations here
    CHECK(mc_plain(pair, I, MCForm::Full));
}

TEST_CASE("free-field Maurer-Cartan checks") {
    for (auto bundle : {beta_gamma_example(), bc_example()}) {
        Engine L(*bundle.primal_engine, 4);
        Engine R(*bundle.dual_engine, 4);
        TensorPair pair(L, R);
        TwistedStructure ts;
        ts.on_right = true;
        ts.d = GeneratorDifferential(L.rank());
        std::vector<std::vector<Rational>> omega = bundle.primal_engine->omega;
        ts.iota = curving_from_omega(R, omega);
        MCReport rep = mc_check(pair, pair.canonical_element(), ts, 3);
        CHECK(rep.passed);
    }
}

TEST_CASE("weak versus full plain Maurer-Cartan") {
    // degree -1 state in a bc pair carrying ghost degrees: weak holds, full fails
    std::vector<GeneratorSpec> gens{{"b", 1, Parity::Odd, Rational(1)},
                                    {"c", -1, Parity::Odd, Rational(0)}};
    std::vector<std::vector<Rational>> omega{{0, 1}, {-1, 0}};
    Engine e(ModeAlgebraSpec::weyl(gens, omega), 8);
    FockState v = e.normal_order({RawMode{0, -2}, RawMode{1, -1}, RawMode{1, -1}});
    v *= Rational(1, 2);
    v += e.normal_order({RawMode{0, -1}, RawMode{1, -2}, RawMode{1, -1}});
    // direct mode computation
    CHECK(e.nth_product(v, 0, v).is_zero());
    CHECK_FALSE(e.nth_product(v, 1, v).is_zero());
    CHECK(mc_plain(e, v, MCForm::Weak));
    CHECK_FALSE(mc_plain(e, v, MCForm::Full));
    // the zero state satisfies both
    CHECK(mc_plain(e, FockState(), MCForm::Weak));
    CHECK(mc_plain(e, FockState(), MCForm::Full));
}

TEST_CASE("hom_check: identity assignment, and the induced alpha solves MC") {
    LieData lie = sl2(1);
    Engine target = affine_engine(lie, 4);
    std::vector<FockState> y;
    for (size_t a = 0; a < 3; ++a) y.push_back(target.generator(a));
    HomReport rep = hom_check(lie.f, lie.kappa, target, y);
    CHECK(rep.passed);
    CHECK(rep.violations.empty());

    Engine ce = ce_engine(lie, 4);
    TensorPair pair(ce, target);
    TensorState alpha = hom_alpha(pair, y);
    TwistedStructure ts;
    ts.on_right = false;  // the CDG data sits in the first (dual) factor
    ts.d = ce_generator_differential(ce.spec());
    ts.iota = curving_from_kappa(ce, lie.kappa);
    MCReport mc = mc_check(pair, alpha, ts, 3);
    CHECK(mc.passed);
}

TEST_CASE("hom_check: the Heisenberg scaling family passes exactly at lambda^2 = 1") {
    LieData h = heisenberg(1);
    Engine target = affine_engine(h, 4);
    Engine ce = ce_engine(h, 4);
    TensorPair pair(ce, target);
    TwistedStructure ts;
    ts.on_right = false;
    ts.d = ce_generator_differential(ce.spec());
    ts.iota = curving_from_kappa(ce, h.kappa);
    for (Rational lambda : {Rational(1), Rational(-1), Rational(2), Rational(1, 2), Rational(0)}) {
        FockState y = target.generator(0);
        y *= lambda;
        HomReport rep = hom_check(h.f, h.kappa, target, {y});
        bool expect = lambda * lambda == Rational(1);
        CHECK(rep.passed == expect);
        MCReport mc = mc_check(pair, hom_alpha(pair, {y}), ts, 3);
        CHECK(mc.passed == expect);
        // oracle: y_(1) y = lambda^2 kappa |0>
        FockState p1 = target.nth_product(y, 1, y);
        FockState want = target.vacuum();
        want *= lambda * lambda;
        CHECK(p1 == want);
    }
}

TEST_CASE("hom_check and mc_check fail together on a perturbed assignment, same witness") {
    LieData lie = sl2(1);
    Engine target = affine_engine(lie, 4);
    std::vector<FockState> y;
    for (size_t a = 0; a < 3; ++a) y.push_back(target.generator(a));
    y[0] += target.generator(1);  // y_e = J_e + J_h
    HomReport rep = hom_check(lie.f, lie.kappa, target, y);
    CHECK_FALSE(rep.passed);
    // the (e,e) level-1 product violation: y_e(1) y_e = 2 != kappa_ee = 0
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.a == 0 && v.b == 0 && v.n == 1) found = true;
    CHECK(found);

    Engine ce = ce_engine(lie, 4);
    TensorPair pair(ce, target);
    TwistedStructure ts;
    ts.on_right = false;
    ts.d = ce_generator_differential(ce.spec());
    ts.iota = curving_from_kappa(ce, lie.kappa);
    MCReport mc = mc_check(pair, hom_alpha(pair, y), ts, 3);
    CHECK_FALSE(mc.passed);
    // the same witness sits in E1 at (d c^e) c^e (x) |0>: 1/2 (y_e(1)y_e - kappa_ee)
    FockState ghost = ce.normal_order({RawMode{0, -2}, RawMode{0, -1}});
    TensorMonomial slot{ghost.terms().begin()->first, Monomial{}};
    auto it = mc.residual_e1.terms().find(slot);
    REQUIRE(it != mc.residual_e1.terms().end());
    CHECK(it->second == Rational(1));  // 1/2 * (2 - 0)
}

TEST_CASE("hom_check reports derived commutator mismatches") {
    // target with the right products at levels 0/1/2.. but perturbed state mixing
    LieData lie = sl2(1);
    Engine target = affine_engine(lie, 5);
    std::vector<FockState> y;
    for (size_t a = 0; a < 3; ++a) y.push_back(target.generator(a));
    FockState extra = target.normal_order({RawMode{1, -2}});
    extra *= Rational(3);
    y[2] += extra;  // y_f = J_f + 3 T J_h: breaks the product relations
    HomReport rep = hom_check(lie.f, lie.kappa, target, y);
    CHECK_FALSE(rep.passed);
}

TEST_CASE("MC invariance under a change of basis of the Lie algebra") {
    LieData lie = sl2(1);
    // x' = g x with an invertible rational matrix
    std::vector<std::vector<Rational>> g{{1, 2, 0}, {0, 1, 0}, {Rational(1, 2), 0, 1}};
    LieData moved = change_basis(lie, g);
    // still a valid Lie structure with invariant form
    Engine L = affine_engine(moved, 4);
    Engine R = ce_engine(moved, 4);
    TensorPair pair(L, R);
    TwistedStructure ts;
    ts.on_right = true;
    ts.d = ce_generator_differential(R.spec());
    ts.iota = curving_from_kappa(R, moved.kappa);
    MCReport rep = mc_check(pair, pair.canonical_element(), ts, 4);
    CHECK(rep.passed);
}

TEST_CASE("exhaustive MC solutions at desk scale match the hom classification") {
    // rank-1 Heisenberg: the solutions of the twisted MC over the weight <= 2
    // ansatz are exactly y = +-b, matching the scaling homs with lambda^2 = 1
    LieData h = heisenberg(1);
    Engine target = affine_engine(h, 6);
    Engine ce = ce_engine(h, 6);
    TensorPair pair(ce, target);
    TwistedStructure ts;
    ts.on_right = false;
    ts.d = ce_generator_differential(ce.spec());
    ts.iota = curving_from_kappa(ce, h.kappa);
    auto solutions = mc_solve(pair, ts, 2);
    REQUIRE(solutions.size() == 2);
    for (const auto& y : solutions) {
        // every solution is a hom, and alpha(y) passes the verification direction
        CHECK(hom_check(h.f, h.kappa, target, y).passed);
        CHECK(mc_check(pair, hom_alpha(pair, y), ts, 4).passed);
        REQUIRE(y[0].terms().size() == 1);
        CHECK(y[0].terms().begin()->first == Monomial{Mode{0, 1}});
    }
    Rational sum = solutions[0][0].terms().begin()->second +
                   solutions[1][0].terms().begin()->second;
    CHECK(sum.is_zero());  // the two roots are +1 and -1

    // kappa = 0 degenerates the constraint: the ansatz has a free direction
    LieData h0 = heisenberg(0);
    Engine t0 = affine_engine(h0, 6);
    Engine c0 = ce_engine(h0, 6);
    TensorPair p0(c0, t0);
    TwistedStructure ts0;
    ts0.on_right = false;
    ts0.d = ce_generator_differential(c0.spec());
    ts0.iota = curving_from_kappa(c0, h0.kappa);
    CHECK_THROWS(mc_solve(p0, ts0, 2));
}

TEST_CASE("canonical element needs matched generator lists") {
    LieData lie = sl2(1);
    Engine L = affine_engine(lie, 3);
    Engine R = ce_engine(heisenberg(1), 3);
    TensorPair pair(L, R);
    CHECK_THROWS_AS(pair.canonical_element(), DimensionMismatch);
}
