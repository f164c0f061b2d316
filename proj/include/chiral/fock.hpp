#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "chiral/datum.hpp"
#include "chiral/rational.hpp"

namespace chiral {

enum class AlgebraKind { AffineKacMoody, WeylClifford, AbelianCE };

// Mode algebra underlying a truncated vertex engine. The bracket data:
//   AffineKacMoody:  [x_a(l), x_b(m)] = sum_c f^c_ab x_c(l+m) + l kappa_ab d_{l+m,0}
//   WeylClifford:    [x_a(l), x_b(m)]_± = omega_ab d_{l+m,-1}
//   AbelianCE:       zero (f, kappa carried for the differential and curving)
struct ModeAlgebraSpec {
    AlgebraKind kind = AlgebraKind::AbelianCE;
    std::vector<GeneratorSpec> generators;
    std::vector<std::vector<std::vector<Rational>>> f;  // f[c][a][b]
    std::vector<std::vector<Rational>> kappa;
    std::vector<std::vector<Rational>> omega;

    static ModeAlgebraSpec affine(std::vector<GeneratorSpec> gens,
                                  std::vector<std::vector<std::vector<Rational>>> f,
                                  std::vector<std::vector<Rational>> kappa);
    static ModeAlgebraSpec weyl(std::vector<GeneratorSpec> gens,
                                std::vector<std::vector<Rational>> omega);
    static ModeAlgebraSpec abelian_ce(std::vector<GeneratorSpec> gens,
                                      std::vector<std::vector<std::vector<Rational>>> f,
                                      std::vector<std::vector<Rational>> kappa);

    size_t rank() const { return generators.size(); }
    Rational f_at(size_t c, size_t a, size_t b) const;
    Rational kappa_at(size_t a, size_t b) const;
    Rational omega_at(size_t a, size_t b) const;
};

// validation helpers, also used by the catalog
void require_lie_data(const std::vector<std::vector<std::vector<Rational>>>& f,
                      const std::vector<std::vector<Rational>>& kappa, size_t n);
void require_symplectic_data(const std::vector<GeneratorSpec>& gens,
                             const std::vector<std::vector<Rational>>& omega);

// x_{gen, (-depth)} with depth >= 1 (a creation mode)
struct Mode {
    size_t gen = 0;
    long depth = 1;
    auto operator<=>(const Mode&) const = default;
};

// PBW word x_{a1,(-n1)} ... x_{ak,(-nk)}|0>, n1 >= n2 >= ... >= nk, ties by
// generator index ascending, no repeated odd factors
using Monomial = std::vector<Mode>;

// raw mode in field indexing a(z) = sum a_(n) z^{-n-1}
struct RawMode {
    size_t gen = 0;
    long n = -1;
};

class FockState {
  public:
    FockState() = default;

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    void add(const Monomial& m, const Rational& c);
    FockState& operator+=(const FockState& o);
    FockState& operator-=(const FockState& o);
    FockState& operator*=(const Rational& c);
    friend FockState operator+(FockState a, const FockState& b) { return a += b; }
    friend FockState operator-(FockState a, const FockState& b) { return a -= b; }
    friend FockState operator*(const Rational& c, FockState v) { return v *= c; }
    FockState operator-() const;

    friend bool operator==(const FockState& a, const FockState& b) {
        return a.terms_ == b.terms_;
    }

  private:
    std::map<Monomial, Rational> terms_;
};

// Weight-truncated exact vertex engine over a mode algebra. All operations
// are pure; states above the cutoff raise CutoffExceeded at the API surface.
class Engine {
  public:
    Engine(ModeAlgebraSpec spec, Rational cutoff);

    const ModeAlgebraSpec& spec() const { return spec_; }
    const Rational& cutoff() const { return cutoff_; }
    size_t rank() const { return spec_.rank(); }

    bool gen_odd(size_t a) const { return spec_.generators[a].total_odd(); }
    const Rational& gen_weight(size_t a) const { return spec_.generators[a].weight; }
    long gen_degree(size_t a) const { return spec_.generators[a].degree; }

    Rational monomial_weight(const Monomial& m) const;
    long monomial_degree(const Monomial& m) const;
    bool monomial_odd(const Monomial& m) const;
    // max over monomials (0 for the zero state)
    Rational state_weight(const FockState& v) const;

    FockState vacuum() const;
    FockState generator(size_t a) const;  // x_{a,(-1)}|0>

    // x_{a,(n)} v, any n; no truncation applied internally
    FockState apply_mode(size_t a, long n, const FockState& v) const;

    // canonical PBW form of a raw word applied to |0>; CutoffExceeded when the
    // word weight lands above the cutoff
    FockState normal_order(const std::vector<RawMode>& word) const;

    FockState nth_product(const FockState& u, long n, const FockState& v) const;

    // T u; CutoffExceeded when the result passes the cutoff
    FockState translation(const FockState& u) const;

    // all PBW monomials of weight <= max_weight; throws when the basis is
    // infinite (an even generator with non-positive mode weights)
    std::vector<Monomial> basis(const Rational& max_weight) const;

    std::string str(const FockState& v) const;

  private:
    FockState apply_mode_monomial(size_t a, long n, const Monomial& m) const;
    FockState bracket_on(size_t a, long l, size_t b, long mdepth, const Monomial& rest) const;
    FockState product_monomial(const Monomial& u, long n, const Monomial& v) const;

    ModeAlgebraSpec spec_;
    Rational cutoff_;
};

}  // namespace chiral
