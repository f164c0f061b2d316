// Serial-versus-OpenMP benchmark for the two hot kernels: wide tensor
// product expansions and batched dual/involution checks.

#include <chrono>
#include <cstdio>
#include <random>

#include "chiral/catalog.hpp"
#include "chiral/mc.hpp"

using namespace chiral;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

// wide state: J-basis monomials paired against ghost monomials, capped
TensorState wide_state(const TensorPair& pair, const Rational& wl, const Rational& wr,
                       size_t max_terms) {
    TensorState u;
    auto lbasis = pair.left().basis(wl);
    auto rbasis = pair.right().basis(wr);
    Rational c(1);
    size_t count = 0;
    for (const auto& ml : lbasis) {
        if (ml.empty()) continue;
        for (const auto& mr : rbasis) {
            if (mr.empty()) continue;
            if (count++ >= max_terms) return u;
            u.add({ml, mr}, c);
            c += Rational(1, 3);
        }
    }
    return u;
}

void bench_tensor_products() {
    LieData lie = sl2(1);
    std::vector<GeneratorSpec> gens, dgens;
    for (const auto& n : lie.names) gens.push_back({n, 0, Parity::Even, Rational(1)});
    for (const auto& n : lie.names) dgens.push_back({dual_name(n), -1, Parity::Even, Rational(0)});

    std::printf("kernel A: tensor n-th product of wide states (sl2 x ghosts)\n");
    std::printf("%8s %8s %12s %14s %9s\n", "cutoff", "terms", "serial[ms]", "parallel[ms]",
                "speedup");
    for (long w : {2L, 3L, 4L}) {
        Engine L(ModeAlgebraSpec::affine(gens, lie.f, lie.kappa), 4 * w);
        Engine R(ModeAlgebraSpec::abelian_ce(dgens, lie.f, lie.kappa), 4 * w);
        TensorPair pair(L, R);
        TensorState u = wide_state(pair, w, 1, 48);

        auto t0 = clock_type::now();
        TensorState serial = pair.nth_product(u, 1, u, Exec::serial());
        double ts = ms_since(t0);
        t0 = clock_type::now();
        TensorState par = pair.nth_product(u, 1, u, Exec::par());
        double tp = ms_since(t0);
        if (!(serial == par)) {
            std::printf("MISMATCH between serial and parallel results\n");
            std::exit(1);
        }
        std::printf("%8ld %8zu %12.2f %14.2f %8.2fx\n", 4 * w, u.terms().size(), ts, tp, ts / tp);
    }
}

void bench_batch_duality() {
    std::printf("\nkernel B: batched dual + involution checks on random rank-3 data\n");
    auto make_datum = [](std::mt19937& rng, size_t rank) {
        QuadraticDatum d;
        for (size_t i = 0; i < rank; ++i)
            d.generators.push_back({"g" + std::to_string(i + 1), 0, Parity::Even, Rational(0)});
        size_t n = rank * rank;
        LaurentMatrix m = LaurentMatrix::identity(n);
        std::uniform_int_distribution<size_t> idx(0, n - 1);
        std::uniform_int_distribution<long> exp_dist(-3, 3);
        std::uniform_int_distribution<long> coef(-3, 3);
        for (int step = 0; step < static_cast<int>(3 * n); ++step) {
            size_t i = idx(rng), j = idx(rng);
            if (i == j) continue;
            LaurentPoly p = LaurentPoly::term(coef(rng), exp_dist(rng));
            for (size_t c = 0; c < n; ++c) m.at(i, c) += p * m.at(j, c);
        }
        d.relations = m;
        return d;
    };
    const size_t count = 256;
    std::vector<QuadraticDatum> data;
    std::mt19937 rng(911);
    for (size_t i = 0; i < count; ++i) data.push_back(make_datum(rng, 3));

    std::vector<char> ok_serial(count, 0), ok_par(count, 0);
    auto run = [&](const Exec& exec, std::vector<char>& ok) {
        auto t0 = clock_type::now();
        parallel_for(exec, count, [&](size_t i) {
            auto dd = dual_datum(dual_datum(data[i]));
            ok[i] = module_equal(dd.relations, data[i].relations) ? 1 : 0;
        });
        return ms_since(t0);
    };
    double ts = run(Exec::serial(), ok_serial);
    double tp = run(Exec::par(), ok_par);
    size_t good = 0;
    for (size_t i = 0; i < count; ++i)
        if (ok_serial[i] && ok_serial[i] == ok_par[i]) ++good;
    std::printf("%8zu instances: serial %.2f ms, parallel %.2f ms, speedup %.2fx, agreed %zu/%zu\n",
                count, ts, tp, ts / tp, good, count);
}

}  // namespace

int main() {
    std::printf("openmp available: %s\n\n", parallel_available() ? "yes" : "no");
    bench_tensor_products();
    bench_batch_duality();
    return 0;
}
