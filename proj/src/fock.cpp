#include "chiral/fock.hpp"

#include <algorithm>
#include <sstream>

#include "chiral/errors.hpp"

namespace chiral {

Rational ModeAlgebraSpec::f_at(size_t c, size_t a, size_t b) const {
    if (f.empty()) return 0;
    return f[c][a][b];
}

Rational ModeAlgebraSpec::kappa_at(size_t a, size_t b) const {
    if (kappa.empty()) return 0;
    return kappa[a][b];
}

Rational ModeAlgebraSpec::omega_at(size_t a, size_t b) const {
    if (omega.empty()) return 0;
    return omega[a][b];
}

void require_lie_data(const std::vector<std::vector<std::vector<Rational>>>& f,
                      const std::vector<std::vector<Rational>>& kappa, size_t n) {
    auto fat = [&](size_t c, size_t a, size_t b) -> Rational {
        return f.empty() ? Rational(0) : f[c][a][b];
    };
    auto kat = [&](size_t a, size_t b) -> Rational {
        return kappa.empty() ? Rational(0) : kappa[a][b];
    };
    if (!f.empty()) {
        if (f.size() != n) throw InvalidLieData("structure constant tensor has wrong rank");
        for (const auto& plane : f) {
            if (plane.size() != n) throw InvalidLieData("structure constant tensor has wrong rank");
            for (const auto& row : plane)
                if (row.size() != n) throw InvalidLieData("structure constant tensor has wrong rank");
        }
        for (size_t c = 0; c < n; ++c)
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b)
                    if (fat(c, a, b) != -fat(c, b, a))
                        throw InvalidLieData("structure constants are not antisymmetric");
        // Jacobi: [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                for (size_t c = 0; c < n; ++c)
                    for (size_t e = 0; e < n; ++e) {
                        Rational s = 0;
                        for (size_t d = 0; d < n; ++d)
                            s += fat(d, a, b) * fat(e, d, c) + fat(d, b, c) * fat(e, d, a) +
                                 fat(d, c, a) * fat(e, d, b);
                        if (!s.is_zero()) throw InvalidLieData("Jacobi identity fails");
                    }
    }
    if (!kappa.empty()) {
        if (kappa.size() != n) throw InvalidLieData("kappa has wrong rank");
        for (const auto& row : kappa)
            if (row.size() != n) throw InvalidLieData("kappa has wrong rank");
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                if (kat(a, b) != kat(b, a)) throw InvalidLieData("kappa is not symmetric");
        // kappa([x,y],z) + kappa(y,[x,z]) = 0
        for (size_t x = 0; x < n; ++x)
            for (size_t y = 0; y < n; ++y)
                for (size_t z = 0; z < n; ++z) {
                    Rational s = 0;
                    for (size_t d = 0; d < n; ++d)
                        s += fat(d, x, y) * kat(d, z) + fat(d, x, z) * kat(y, d);
                    if (!s.is_zero()) throw InvalidLieData("kappa is not invariant");
                }
    }
}

void require_symplectic_data(const std::vector<GeneratorSpec>& gens,
                             const std::vector<std::vector<Rational>>& omega) {
    size_t n = gens.size();
    if (omega.size() != n) throw InvalidPairing("omega has wrong rank");
    for (const auto& row : omega)
        if (row.size() != n) throw InvalidPairing("omega has wrong rank");
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            if (omega[a][b].is_zero()) continue;
            // graded antisymmetry with the Koszul sign of the two arguments
            bool both_odd = gens[a].total_odd() && gens[b].total_odd();
            Rational expect = both_odd ? omega[a][b] : -omega[a][b];
            if (omega[b][a] != expect) throw InvalidPairing("omega is not graded-antisymmetric");
            if (gens[a].total_odd() != gens[b].total_odd())
                throw InvalidPairing("omega pairs generators of different parity");
            if (gens[a].weight + gens[b].weight != Rational(1))
                throw InvalidPairing("omega must have conformal weight -1: wt(a)+wt(b) != 1");
        }
}

ModeAlgebraSpec ModeAlgebraSpec::affine(std::vector<GeneratorSpec> gens,
                                        std::vector<std::vector<std::vector<Rational>>> f,
                                        std::vector<std::vector<Rational>> kappa) {
    require_lie_data(f, kappa, gens.size());
    ModeAlgebraSpec s;
    s.kind = AlgebraKind::AffineKacMoody;
    s.generators = std::move(gens);
    s.f = std::move(f);
    s.kappa = std::move(kappa);
    return s;
}

ModeAlgebraSpec ModeAlgebraSpec::weyl(std::vector<GeneratorSpec> gens,
                                      std::vector<std::vector<Rational>> omega) {
    require_symplectic_data(gens, omega);
    ModeAlgebraSpec s;
    s.kind = AlgebraKind::WeylClifford;
    s.generators = std::move(gens);
    s.omega = std::move(omega);
    return s;
}

ModeAlgebraSpec ModeAlgebraSpec::abelian_ce(std::vector<GeneratorSpec> gens,
                                            std::vector<std::vector<std::vector<Rational>>> f,
                                            std::vector<std::vector<Rational>> kappa) {
    require_lie_data(f, kappa, gens.size());
    ModeAlgebraSpec s;
    s.kind = AlgebraKind::AbelianCE;
    s.generators = std::move(gens);
    s.f = std::move(f);
    s.kappa = std::move(kappa);
    return s;
}

void FockState::add(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FockState& FockState::operator+=(const FockState& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

FockState& FockState::operator-=(const FockState& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

FockState& FockState::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

FockState FockState::operator-() const {
    FockState r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

namespace {

// PBW precedence: deeper modes first, ties by generator index ascending
bool pbw_before_or_eq(const Mode& x, const Mode& y) {
    if (x.depth != y.depth) return x.depth > y.depth;
    return x.gen <= y.gen;
}

}  // namespace

Engine::Engine(ModeAlgebraSpec spec, Rational cutoff)
    : spec_(std::move(spec)), cutoff_(std::move(cutoff)) {
    for (const auto& g : spec_.generators)
        if (g.weight < Rational(0))
            throw Error("engine requires non-negatively graded generators, got weight " +
                        g.weight.str() + " for " + g.name);
}

Rational Engine::monomial_weight(const Monomial& m) const {
    Rational w = 0;
    for (const auto& md : m) w += gen_weight(md.gen) + Rational(md.depth - 1);
    return w;
}

long Engine::monomial_degree(const Monomial& m) const {
    long d = 0;
    for (const auto& md : m) d += gen_degree(md.gen);
    return d;
}

bool Engine::monomial_odd(const Monomial& m) const {
    bool odd = false;
    for (const auto& md : m) odd ^= gen_odd(md.gen);
    return odd;
}

Rational Engine::state_weight(const FockState& v) const {
    Rational w = 0;
    for (const auto& [m, c] : v.terms()) w = std::max(w, monomial_weight(m));
    return w;
}

FockState Engine::vacuum() const {
    FockState v;
    v.add({}, 1);
    return v;
}

FockState Engine::generator(size_t a) const {
    FockState v;
    v.add({Mode{a, 1}}, 1);
    return v;
}

FockState Engine::bracket_on(size_t a, long l, size_t b, long mdepth, const Monomial& rest) const {
    // [x_a(l), x_b(-mdepth)]_± applied to rest|0>
    FockState out;
    switch (spec_.kind) {
        case AlgebraKind::AbelianCE:
            break;
        case AlgebraKind::WeylClifford: {
            Rational om = spec_.omega_at(a, b);
            if (!om.is_zero() && l - mdepth == -1) {
                FockState r;
                r.add(rest, om);
                out += r;
            }
            break;
        }
        case AlgebraKind::AffineKacMoody: {
            for (size_t c = 0; c < rank(); ++c) {
                Rational fc = spec_.f_at(c, a, b);
                if (fc.is_zero()) continue;
                FockState r;
                r.add(rest, fc);
                out += apply_mode(c, l - mdepth, r);
            }
            Rational ka = spec_.kappa_at(a, b);
            if (!ka.is_zero() && l == mdepth) {
                FockState r;
                r.add(rest, Rational(l) * ka);
                out += r;
            }
            break;
        }
    }
    return out;
}

FockState Engine::apply_mode_monomial(size_t a, long n, const Monomial& m) const {
    FockState out;
    if (m.empty()) {
        if (n <= -1) out.add({Mode{a, -n}}, 1);
        return out;  // annihilation on vacuum for n >= 0
    }
    Mode head = m.front();
    if (n <= -1) {
        Mode nu{a, -n};
        if (pbw_before_or_eq(nu, head)) {
            if (nu == head && gen_odd(a)) return out;  // repeated odd factor
            Monomial res;
            res.reserve(m.size() + 1);
            res.push_back(nu);
            res.insert(res.end(), m.begin(), m.end());
            out.add(res, 1);
            return out;
        }
    }
    Monomial rest(m.begin() + 1, m.end());
    bool sign = gen_odd(a) && gen_odd(head.gen);
    FockState sub = apply_mode_monomial(a, n, rest);
    if (!sub.is_zero()) {
        FockState back = apply_mode(head.gen, -head.depth, sub);
        if (sign) back *= Rational(-1);
        out += back;
    }
    out += bracket_on(a, n, head.gen, head.depth, rest);
    return out;
}

FockState Engine::apply_mode(size_t a, long n, const FockState& v) const {
    FockState out;
    for (const auto& [m, c] : v.terms()) {
        FockState piece = apply_mode_monomial(a, n, m);
        piece *= c;
        out += piece;
    }
    return out;
}

FockState Engine::normal_order(const std::vector<RawMode>& word) const {
    Rational w = 0;
    for (const auto& rm : word) w += gen_weight(rm.gen) - Rational(rm.n) - 1;
    if (w > cutoff_)
        throw CutoffExceeded("word of weight " + w.str() + " > " + cutoff_.str());
    FockState v = vacuum();
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = apply_mode(it->gen, it->n, v);
    return v;
}

FockState Engine::product_monomial(const Monomial& u, long n, const Monomial& v) const {
    FockState out;
    if (u.empty()) {
        if (n == -1) out.add(v, 1);
        return out;
    }
    Mode head = u.front();
    Monomial w(u.begin() + 1, u.end());
    long k = head.depth - 1;  // u = x_{(-k-1)} w
    size_t x = head.gen;
    bool sign = gen_odd(x) && monomial_odd(w);
    Rational wt_w = monomial_weight(w);
    Rational wt_v = monomial_weight(v);
    Rational wt_x = gen_weight(x);

    // creation part: sum_{j <= -1} (-1)^k C(j,k) x_(j-k) (w_(n-1-j) v)
    for (long j = -1;; --j) {
        // w_(n-1-j) v vanishes once its weight goes negative
        if (wt_w + wt_v - Rational(n - 1 - j) - 1 < Rational(0)) break;
        Rational coef = binomial(j, k);
        if (k % 2 == 1) coef = -coef;
        if (coef.is_zero()) continue;
        FockState inner = product_monomial(w, n - 1 - j, v);
        if (inner.is_zero()) continue;
        FockState piece = apply_mode(x, j - k, inner);
        piece *= coef;
        out += piece;
    }
    // annihilation part: (-1)^{p_x p_w} sum_{j >= 0} (-1)^k C(j,k) w_(n-1-j) (x_(j-k) v)
    for (long j = 0;; ++j) {
        // x_(j-k) v lands in negative weight once j is large enough
        if (wt_x + wt_v - Rational(j - k) - 1 < Rational(0)) break;
        Rational coef = binomial(j, k);
        if (k % 2 == 1) coef = -coef;
        if (sign) coef = -coef;
        if (coef.is_zero()) continue;
        FockState vb;
        vb.add(v, 1);
        FockState inner = apply_mode(x, j - k, vb);
        if (inner.is_zero()) continue;
        for (const auto& [mi, ci] : inner.terms()) {
            FockState piece = product_monomial(w, n - 1 - j, mi);
            piece *= coef * ci;
            out += piece;
        }
    }
    return out;
}

FockState Engine::nth_product(const FockState& u, long n, const FockState& v) const {
    FockState out;
    for (const auto& [mu, cu] : u.terms())
        for (const auto& [mv, cv] : v.terms()) {
            Rational rw = monomial_weight(mu) + monomial_weight(mv) - Rational(n) - 1;
            if (rw < Rational(0)) continue;  // locality
            if (rw > cutoff_)
                throw CutoffExceeded("product weight " + rw.str() + " > " + cutoff_.str());
            FockState piece = product_monomial(mu, n, mv);
            piece *= cu * cv;
            out += piece;
        }
    return out;
}

FockState Engine::translation(const FockState& u) const {
    for (const auto& [m, c] : u.terms())
        if (monomial_weight(m) + 1 > cutoff_)
            throw CutoffExceeded("translation passes the cutoff");
    // T(x_(-d) w) = d x_(-d-1) w + x_(-d) (T w), T|0> = 0; deepening one factor
    // can break the weak ordering, so each term is rebuilt mode by mode
    FockState out;
    for (const auto& [m, c] : u.terms()) {
        for (size_t i = 0; i < m.size(); ++i) {
            FockState v = vacuum();
            for (size_t j = m.size(); j-- > 0;) {
                long depth = m[j].depth + (j == i ? 1 : 0);
                v = apply_mode(m[j].gen, -depth, v);
            }
            v *= c * Rational(m[i].depth);
            out += v;
        }
    }
    return out;
}

std::vector<Monomial> Engine::basis(const Rational& max_weight) const {
    for (size_t a = 0; a < rank(); ++a)
        if (!gen_odd(a) && gen_weight(a) <= Rational(0))
            throw Error("infinite weight-truncated basis: even generator " +
                        spec_.generators[a].name + " has non-positive mode weights");
    // all modes with weight contribution <= max_weight, in PBW precedence order
    std::vector<Mode> modes;
    for (size_t a = 0; a < rank(); ++a)
        for (long depth = 1; gen_weight(a) + Rational(depth - 1) <= max_weight; ++depth)
            modes.push_back(Mode{a, depth});
    std::sort(modes.begin(), modes.end(), [](const Mode& x, const Mode& y) {
        if (x.depth != y.depth) return x.depth > y.depth;
        return x.gen < y.gen;
    });

    std::vector<Monomial> out;
    Monomial cur;
    // depth-first over weakly decreasing mode sequences
    auto rec = [&](auto&& self, size_t from, const Rational& remaining) -> void {
        out.push_back(cur);
        for (size_t i = from; i < modes.size(); ++i) {
            const Mode& md = modes[i];
            Rational contrib = gen_weight(md.gen) + Rational(md.depth - 1);
            if (contrib > remaining) continue;
            if (!cur.empty() && cur.back() == md && gen_odd(md.gen)) continue;
            cur.push_back(md);
            // repeats of the same even mode allowed: stay at i
            self(self, gen_odd(md.gen) ? i + 1 : i, remaining - contrib);
            cur.pop_back();
        }
    };
    rec(rec, 0, max_weight);
    return out;
}

std::string Engine::str(const FockState& v) const {
    if (v.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : v.terms()) {
        if (!first) os << " + ";
        first = false;
        os << c.str() << " ";
        if (m.empty()) {
            os << "|0>";
            continue;
        }
        for (const auto& md : m)
            os << "[" << spec_.generators[md.gen].name << " -" << md.depth << "]";
        os << "|0>";
    }
    return os.str();
}

}  // namespace chiral
