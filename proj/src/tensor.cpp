#include "chiral/tensor.hpp"

#include <sstream>

#include "chiral/errors.hpp"

namespace chiral {

void TensorState::add(const TensorMonomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TensorState& TensorState::operator+=(const TensorState& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

TensorState& TensorState::operator-=(const TensorState& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

TensorState& TensorState::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

TensorState TensorPair::pure(const FockState& u, const FockState& v) const {
    TensorState out;
    for (const auto& [mu, cu] : u.terms())
        for (const auto& [mv, cv] : v.terms()) out.add({mu, mv}, cu * cv);
    return out;
}

Rational TensorPair::weight(const TensorMonomial& m) const {
    return l_.monomial_weight(m.left) + r_.monomial_weight(m.right);
}

long TensorPair::degree(const TensorMonomial& m) const {
    return l_.monomial_degree(m.left) + r_.monomial_degree(m.right);
}

Rational TensorPair::state_weight(const TensorState& v) const {
    Rational w = 0;
    for (const auto& [m, c] : v.terms()) w = std::max(w, weight(m));
    return w;
}

TensorState TensorPair::nth_product(const TensorState& u, long n, const TensorState& v,
                                    const Exec& exec) const {
    // flatten the term pairs so the expansion can run data-parallel
    std::vector<std::pair<const std::pair<const TensorMonomial, Rational>*,
                          const std::pair<const TensorMonomial, Rational>*>>
        pairs;
    pairs.reserve(u.terms().size() * v.terms().size());
    for (const auto& tu : u.terms())
        for (const auto& tv : v.terms()) pairs.emplace_back(&tu, &tv);

    return parallel_map_reduce<TensorState>(exec, pairs.size(), [&](size_t idx) {
        const auto& [mu, cu] = *pairs[idx].first;
        const auto& [mv, cv] = *pairs[idx].second;
        TensorState out;
        bool sign_base = r_.monomial_odd(mu.right) && l_.monomial_odd(mv.left);
        Rational wl_u = l_.monomial_weight(mu.left), wr_u = r_.monomial_weight(mu.right);
        Rational wl_v = l_.monomial_weight(mv.left), wr_v = r_.monomial_weight(mv.right);
        FockState lu, ru, lv, rv;
        lu.add(mu.left, 1);
        ru.add(mu.right, 1);
        lv.add(mv.left, 1);
        rv.add(mv.right, 1);
        // p + q = n - 1; both factors die in negative weight
        for (long p = 0;; ++p) {
            if (wl_u + wl_v - Rational(p) - 1 < Rational(0)) break;
            long q = n - 1 - p;
            if (wr_u + wr_v - Rational(q) - 1 < Rational(0)) continue;
            FockState a = l_.nth_product(lu, p, lv);
            if (a.is_zero()) continue;
            FockState b = r_.nth_product(ru, q, rv);
            if (b.is_zero()) continue;
            TensorState piece = pure(a, b);
            piece *= sign_base ? -(cu * cv) : cu * cv;
            out += piece;
        }
        for (long p = -1;; --p) {
            long q = n - 1 - p;
            if (wr_u + wr_v - Rational(q) - 1 < Rational(0)) break;
            FockState a = l_.nth_product(lu, p, lv);
            if (a.is_zero()) continue;
            FockState b = r_.nth_product(ru, q, rv);
            if (b.is_zero()) continue;
            TensorState piece = pure(a, b);
            piece *= sign_base ? -(cu * cv) : cu * cv;
            out += piece;
        }
        return out;
    });
}

TensorState TensorPair::canonical_element() const {
    if (l_.rank() != r_.rank())
        throw DimensionMismatch("canonical element needs matched generator lists");
    TensorState out;
    for (size_t a = 0; a < l_.rank(); ++a)
        out.add({Monomial{Mode{a, 1}}, Monomial{Mode{a, 1}}}, 1);
    return out;
}

TensorState TensorPair::apply_differential(const GeneratorDifferential& d, bool on_right,
                                           const TensorState& u) const {
    TensorState out;
    for (const auto& [m, c] : u.terms()) {
        if (on_right) {
            FockState x;
            x.add(m.right, 1);
            FockState dx = ce_differential(r_, d, x);
            FockState fixed;
            fixed.add(m.left, 1);
            TensorState piece = pure(fixed, dx);
            piece *= l_.monomial_odd(m.left) ? -c : c;
            out += piece;
        } else {
            FockState x;
            x.add(m.left, 1);
            FockState dx = ce_differential(l_, d, x);
            FockState fixed;
            fixed.add(m.right, 1);
            TensorState piece = pure(dx, fixed);
            piece *= c;
            out += piece;
        }
    }
    return out;
}

std::string TensorPair::str(const TensorState& v) const {
    if (v.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : v.terms()) {
        if (!first) os << " + ";
        first = false;
        FockState a, b;
        a.add(m.left, 1);
        b.add(m.right, 1);
        os << c.str() << " (" << l_.str(a) << ") (x) (" << r_.str(b) << ")";
    }
    return os.str();
}

}  // namespace chiral
