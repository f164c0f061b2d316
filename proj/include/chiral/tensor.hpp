#pragma once

#include "chiral/ce.hpp"
#include "chiral/fock.hpp"
#include "chiral/parallel.hpp"

namespace chiral {

struct TensorMonomial {
    Monomial left;
    Monomial right;
    auto operator<=>(const TensorMonomial&) const = default;
};

class TensorState {
  public:
    TensorState() = default;

    bool is_zero() const { return terms_.empty(); }
    const std::map<TensorMonomial, Rational>& terms() const { return terms_; }

    void add(const TensorMonomial& m, const Rational& c);
    TensorState& operator+=(const TensorState& o);
    TensorState& operator-=(const TensorState& o);
    TensorState& operator*=(const Rational& c);
    friend TensorState operator+(TensorState a, const TensorState& b) { return a += b; }
    friend TensorState operator-(TensorState a, const TensorState& b) { return a -= b; }
    friend TensorState operator*(const Rational& c, TensorState v) { return v *= c; }

    friend bool operator==(const TensorState& a, const TensorState& b) {
        return a.terms_ == b.terms_;
    }

  private:
    std::map<TensorMonomial, Rational> terms_;
};

// Tensor pair of engines with the usual vertex algebra tensor structure:
// (a (x) b)_(n) (c (x) d) = sum_{p+q=n-1} (-1)^{p(b) p(c)} a_(p)c (x) b_(q)d.
class TensorPair {
  public:
    TensorPair(const Engine& left, const Engine& right) : l_(left), r_(right) {}

    const Engine& left() const { return l_; }
    const Engine& right() const { return r_; }

    TensorState pure(const FockState& u, const FockState& v) const;
    Rational weight(const TensorMonomial& m) const;
    long degree(const TensorMonomial& m) const;
    Rational state_weight(const TensorState& v) const;

    TensorState nth_product(const TensorState& u, long n, const TensorState& v,
                            const Exec& exec = {}) const;

    // sum_a gen_a (x) gen_a; ranks must match
    TensorState canonical_element() const;

    // id (x) d with the Koszul sign over the left factor, or d (x) id
    TensorState apply_differential(const GeneratorDifferential& d, bool on_right,
                                   const TensorState& u) const;

    std::string str(const TensorState& v) const;

  private:
    const Engine& l_;
    const Engine& r_;
};

}  // namespace chiral
