#include "chiral/mc.hpp"

#include <random>

#include "chiral/errors.hpp"

namespace chiral {

MCReport mc_check(const TensorPair& pair, const TensorState& I, const TwistedStructure& ts,
                  long m_max, const Exec& exec) {
    for (const auto& [m, c] : I.terms())
        if (pair.degree(m) != -1)
            throw Error("mc_check requires |I| = -1, found a term of degree " +
                        std::to_string(pair.degree(m)));

    MCReport rep;
    Rational half(1, 2);

    TensorState e1 = pair.apply_differential(ts.d, ts.on_right, I);
    TensorState i0i = pair.nth_product(I, 0, I, exec);
    e1 += half * i0i;
    TensorState iota_term =
        ts.on_right ? pair.pure(pair.left().vacuum(), ts.iota)
                    : pair.pure(ts.iota, pair.right().vacuum());
    e1 += half * iota_term;
    rep.residual_e1 = e1;

    rep.residuals_em.resize(static_cast<size_t>(m_max > 0 ? m_max : 0));
    parallel_for(exec, rep.residuals_em.size(), [&](size_t idx) {
        rep.residuals_em[idx] = pair.nth_product(I, static_cast<long>(idx) + 1, I, Exec::serial());
    });

    rep.passed = rep.residual_e1.is_zero();
    if (!rep.residual_e1.is_zero())
        rep.witnesses.push_back("E1 = " + pair.str(rep.residual_e1));
    for (size_t i = 0; i < rep.residuals_em.size(); ++i) {
        if (rep.residuals_em[i].is_zero()) continue;
        rep.passed = false;
        rep.witnesses.push_back("E" + std::to_string(i + 2) + " = I_(" + std::to_string(i + 1) +
                                ") I = " + pair.str(rep.residuals_em[i]));
    }
    return rep;
}

bool mc_plain(const Engine& e, const FockState& v, MCForm form) {
    for (const auto& [m, c] : v.terms())
        if (e.monomial_degree(m) != -1) throw Error("mc_plain requires |v| = -1");
    if (v.is_zero()) return true;
    if (form == MCForm::Weak) return e.nth_product(v, 0, v).is_zero();
    Rational w = e.state_weight(v);
    long bound = 0;
    while (Rational(bound) < w + w) ++bound;  // v_(n) v = 0 for n >= 2 wt(v)
    for (long n = 0; n <= bound; ++n)
        if (!e.nth_product(v, n, v).is_zero()) return false;
    return true;
}

bool mc_plain(const TensorPair& pair, const TensorState& v, MCForm form, const Exec& exec) {
    for (const auto& [m, c] : v.terms())
        if (pair.degree(m) != -1) throw Error("mc_plain requires |v| = -1");
    if (v.is_zero()) return true;
    if (form == MCForm::Weak) return pair.nth_product(v, 0, v, exec).is_zero();
    Rational w = pair.state_weight(v);
    long bound = 0;
    while (Rational(bound) < w + w) ++bound;
    for (long n = 0; n <= bound; ++n)
        if (!pair.nth_product(v, n, v, exec).is_zero()) return false;
    return true;
}

HomReport hom_check(const std::vector<std::vector<std::vector<Rational>>>& f,
                    const std::vector<std::vector<Rational>>& kappa, const Engine& target,
                    const std::vector<FockState>& y, unsigned seed) {
    size_t n = y.size();
    HomReport rep;
    rep.products_ok = true;

    auto fat = [&](size_t c, size_t a, size_t b) -> Rational {
        return f.empty() ? Rational(0) : f[c][a][b];
    };
    auto kat = [&](size_t a, size_t b) -> Rational {
        return kappa.empty() ? Rational(0) : kappa[a][b];
    };

    // locality bound for the m >= 2 family
    long mbound = 2;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            Rational s = target.state_weight(y[a]) + target.state_weight(y[b]);
            while (Rational(mbound) < s) ++mbound;
        }

    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            FockState p0 = target.nth_product(y[a], 0, y[b]);
            FockState want;
            for (size_t c = 0; c < n; ++c) {
                FockState t = y[c];
                t *= fat(c, a, b);
                want += t;
            }
            if (!(p0 == want)) {
                rep.products_ok = false;
                rep.violations.push_back(
                    {a, b, 0, "y_a(0) y_b = " + target.str(p0) + ", required " + target.str(want)});
            }
            FockState p1 = target.nth_product(y[a], 1, y[b]);
            FockState k = target.vacuum();
            k *= kat(a, b);
            if (!(p1 == k)) {
                rep.products_ok = false;
                rep.violations.push_back(
                    {a, b, 1, "y_a(1) y_b = " + target.str(p1) + ", required " + target.str(k)});
            }
            for (long m = 2; m <= mbound; ++m) {
                FockState pm = target.nth_product(y[a], m, y[b]);
                if (!pm.is_zero()) {
                    rep.products_ok = false;
                    rep.violations.push_back(
                        {a, b, m, "y_a(" + std::to_string(m) + ") y_b = " + target.str(pm) +
                                      ", required 0"});
                }
            }
        }

    // derived commutators [y_a(l), y_b(m)] = f^c_ab y_c(l+m) + l kappa_ab d_{l+m,0}
    // on random modes and states, via the Borcherds commutator expansion
    rep.commutators_ok = true;
    if (rep.products_ok) {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<long> mode_dist(-2, 2);
        std::uniform_int_distribution<size_t> gen_dist(0, n - 1);
        for (int trial = 0; trial < 24 && rep.commutators_ok; ++trial) {
            size_t a = gen_dist(rng), b = gen_dist(rng);
            long l = mode_dist(rng), m = mode_dist(rng);
            FockState w = target.vacuum();
            if (trial % 2 == 1) w = y[gen_dist(rng)];
            Rational rw = target.state_weight(y[a]) + target.state_weight(y[b]) +
                          target.state_weight(w) - Rational(l) - Rational(m) - 2;
            if (rw > target.cutoff()) continue;
            FockState lhs = target.nth_product(y[a], l, target.nth_product(y[b], m, w));
            bool odd = false;  // y's sit in a degree-0 even target
            FockState rhs0 = target.nth_product(y[b], m, target.nth_product(y[a], l, w));
            if (odd) rhs0 *= Rational(-1);
            FockState comm = lhs - rhs0;
            FockState want;
            for (size_t c = 0; c < n; ++c) {
                if (fat(c, a, b).is_zero()) continue;
                FockState t = target.nth_product(y[c], l + m, w);
                t *= fat(c, a, b);
                want += t;
            }
            if (l + m == 0) {
                FockState t = w;
                t *= Rational(l) * kat(a, b);
                want += t;
            }
            if (!(comm == want)) {
                rep.commutators_ok = false;
                rep.violations.push_back({a, b, l, "derived commutator mismatch at (l,m)=(" +
                                                       std::to_string(l) + "," + std::to_string(m) +
                                                       ")"});
            }
        }
    }
    rep.passed = rep.products_ok && rep.commutators_ok;
    return rep;
}

TensorState hom_alpha(const TensorPair& pair, const std::vector<FockState>& y) {
    if (y.size() != pair.left().rank())
        throw DimensionMismatch("hom_alpha needs one target element per dual generator");
    TensorState out;
    for (size_t a = 0; a < y.size(); ++a) {
        FockState c = pair.left().generator(a);
        out += pair.pure(c, y[a]);
    }
    return out;
}


namespace {

// quadratic polynomial over Q in unknowns indexed 0..n-1:
// sum q[(i,j)] x_i x_j (i <= j) + sum l[i] x_i + c
struct QuadEq {
    std::map<std::pair<size_t, size_t>, Rational> q;
    std::map<size_t, Rational> l;
    Rational c;

    bool trivially_zero() const { return q.empty() && l.empty() && c.is_zero(); }
    bool contradictory() const { return q.empty() && l.empty() && !c.is_zero(); }

    void substitute(size_t var, const Rational& value) {
        std::map<std::pair<size_t, size_t>, Rational> q2;
        for (const auto& [key, co] : q) {
            auto [i, j] = key;
            if (i == var && j == var) {
                c += co * value * value;
            } else if (i == var) {
                l[j] += co * value;
            } else if (j == var) {
                l[i] += co * value;
            } else {
                q2[key] += co;
            }
        }
        q = std::move(q2);
        auto it = l.find(var);
        if (it != l.end()) {
            c += it->second * value;
            l.erase(it);
        }
        for (auto it2 = l.begin(); it2 != l.end();)
            it2 = it2->second.is_zero() ? l.erase(it2) : std::next(it2);
        for (auto it2 = q.begin(); it2 != q.end();)
            it2 = it2->second.is_zero() ? q.erase(it2) : std::next(it2);
    }
};

// exact rational square root when it exists
std::optional<Rational> rational_sqrt(const Rational& v) {
    if (v.sign() < 0) return std::nullopt;
    if (v.is_zero()) return Rational(0);
    mpz_class num(v.num_long()), den(v.den_long());
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rational(rn.get_si(), rd.get_si());
}

void solve_system(std::vector<QuadEq> eqs, std::map<size_t, Rational> assigned, size_t nvars,
                  std::vector<std::map<size_t, Rational>>& out) {
    // propagate until no forced step applies
    while (true) {
        bool progress = false;
        for (auto it = eqs.begin(); it != eqs.end();) {
            if (it->trivially_zero()) {
                it = eqs.erase(it);
                progress = true;
                continue;
            }
            if (it->contradictory()) return;
            ++it;
        }
        for (auto& eq : eqs) {
            if (eq.q.empty() && eq.l.size() == 1) {
                size_t var = eq.l.begin()->first;
                Rational value = -eq.c / eq.l.begin()->second;
                assigned[var] = value;
                for (auto& e2 : eqs) e2.substitute(var, value);
                progress = true;
                break;
            }
        }
        if (!progress) break;
    }
    if (eqs.empty()) {
        // free variables admit arbitrary values; a finite, exhaustive answer
        // needs none of them to remain
        if (assigned.size() != nvars)
            throw Error("mc_solve: solution set has a free parameter; shape unsupported");
        out.push_back(assigned);
        return;
    }
    // branch on a pure-square equation a x^2 + c = 0
    for (size_t idx = 0; idx < eqs.size(); ++idx) {
        const QuadEq& eq = eqs[idx];
        if (eq.l.empty() && eq.q.size() == 1 && eq.q.begin()->first.first == eq.q.begin()->first.second) {
            size_t var = eq.q.begin()->first.first;
            Rational rhs = -eq.c / eq.q.begin()->second;
            auto root = rational_sqrt(rhs);
            if (!root) return;  // no rational solution on this branch
            std::vector<Rational> branches;
            if (root->is_zero()) branches = {Rational(0)};
            else branches = {*root, -*root};
            for (const Rational& value : branches) {
                auto eqs2 = eqs;
                auto asg2 = assigned;
                asg2[var] = value;
                for (auto& e2 : eqs2) e2.substitute(var, value);
                solve_system(std::move(eqs2), std::move(asg2), nvars, out);
            }
            return;
        }
    }
    throw Error("mc_solve: quadratic system does not triangularize; shape unsupported");
}

}  // namespace

std::vector<std::vector<FockState>> mc_solve(const TensorPair& pair, const TwistedStructure& ts,
                                             const Rational& ansatz_weight) {
    const Engine& ce = pair.left();
    const Engine& target = pair.right();
    size_t rank = ce.rank();
    if (rank > 2) throw Error("mc_solve supports source rank <= 2");
    if (ansatz_weight > Rational(2)) throw Error("mc_solve supports ansatz weight <= 2");
    if (ts.on_right) throw Error("mc_solve expects the CDG data on the left (dual) factor");

    std::vector<Monomial> basis;
    for (const auto& m : target.basis(ansatz_weight)) {
        // vacuum components are excluded: they drop out of every product, so
        // they parameterize the free shift family and never pin down
        if (m.empty()) continue;
        basis.push_back(m);
    }
    size_t nvars = rank * basis.size();
    auto var = [&](size_t a, size_t i) { return a * basis.size() + i; };

    // alpha = sum lambda_v unit_v with unit_v = c^a (x) basis_i
    std::vector<TensorState> units(nvars);
    for (size_t a = 0; a < rank; ++a)
        for (size_t i = 0; i < basis.size(); ++i) {
            FockState y;
            y.add(basis[i], 1);
            units[var(a, i)] = pair.pure(ce.generator(a), y);
        }

    // residual components, indexed by tensor monomial: each is one equation
    std::map<TensorMonomial, QuadEq> eqs;
    auto add_quad = [&](size_t v1, size_t v2, const TensorState& val, const Rational& scale) {
        for (const auto& [m, c] : val.terms()) {
            auto key = std::minmax(v1, v2);
            eqs[m].q[{key.first, key.second}] += scale * c;
        }
    };
    auto add_lin = [&](size_t v, const TensorState& val) {
        for (const auto& [m, c] : val.terms()) eqs[m].l[v] += c;
    };
    auto add_const = [&](const TensorState& val, const Rational& scale) {
        for (const auto& [m, c] : val.terms()) eqs[m].c += scale * c;
    };

    Rational half(1, 2);
    // E1 = d(alpha) + 1/2 alpha_(0) alpha + 1/2 iota (x) |0>
    for (size_t v = 0; v < nvars; ++v)
        add_lin(v, pair.apply_differential(ts.d, false, units[v]));
    for (size_t v1 = 0; v1 < nvars; ++v1)
        for (size_t v2 = 0; v2 < nvars; ++v2)
            add_quad(v1, v2, pair.nth_product(units[v1], 0, units[v2]), half);
    add_const(pair.pure(ts.iota, target.vacuum()), half);
    // E_m = alpha_(m) alpha for m up to the locality bound of the ansatz
    long bound = 1;
    {
        Rational w = Rational(1) + ansatz_weight;  // highest tensor weight of a unit
        while (Rational(bound) < w + w) ++bound;
    }
    for (long m = 1; m <= bound; ++m)
        for (size_t v1 = 0; v1 < nvars; ++v1)
            for (size_t v2 = 0; v2 < nvars; ++v2)
                add_quad(v1, v2, pair.nth_product(units[v1], m, units[v2]), 1);

    std::vector<QuadEq> system;
    for (auto& [m, eq] : eqs) system.push_back(std::move(eq));
    std::vector<std::map<size_t, Rational>> raw;
    solve_system(std::move(system), {}, nvars, raw);

    std::vector<std::vector<FockState>> out;
    for (const auto& asg : raw) {
        std::vector<FockState> y(rank);
        for (size_t a = 0; a < rank; ++a)
            for (size_t i = 0; i < basis.size(); ++i) {
                auto it = asg.find(var(a, i));
                if (it == asg.end() || it->second.is_zero()) continue;
                FockState term;
                term.add(basis[i], it->second);
                y[a] += term;
            }
        out.push_back(std::move(y));
    }
    return out;
}

}  // namespace chiral
