#pragma once

#include <cstdint>
#include <random>

#include "smq/superfunction.hpp"

namespace smq {

/// Seeded source of small rationals and indices; identical seeds give identical streams.
class RandomRationals {
   public:
    explicit RandomRationals(std::uint64_t seed) : rng_(seed) {}

    Rational next(int span = 3, int den_max = 3) {
        std::uniform_int_distribution<int> num(-span, span), den(1, den_max);
        Rational r(num(rng_), den(rng_));
        r.canonicalize();
        return r;
    }
    Rational nonzero(int span = 3, int den_max = 3) {
        for (;;) {
            Rational r = next(span, den_max);
            if (sgn(r) != 0) return r;
        }
    }
    QComplex complex(bool real_only = false) {
        if (real_only || coin()) return QComplex(next());
        return QComplex(next(), next());
    }
    int index(int count) { return std::uniform_int_distribution<int>(0, count - 1)(rng_); }
    bool coin() { return index(2) == 1; }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::mt19937_64& engine() { return rng_; }

   private:
    std::mt19937_64 rng_;
};

/// Random polynomial superfunction with up to `terms` monomials of total degree ≤ max_degree.
/// parity 0 or 1 restricts to even or odd blades; −1 allows both.
inline PolySuper<QComplex> random_polysuper(RandomRationals& rng, int m, int n, int max_degree, int terms, int parity = -1,
                                            bool real_only = false) {
    PolySuper<QComplex> f(m, n);
    const int blades = 1 << n;
    for (int t = 0; t < terms; ++t) {
        Mask bits = static_cast<Mask>(rng.index(blades));
        if (parity >= 0 && (popcount(bits) & 1) != parity) {
            if (n == 0) {
                if (parity == 1) return f;
            } else {
                bits ^= 1U;
            }
        }
        Exponents e(static_cast<std::size_t>(m), 0);
        int budget = max_degree == 0 ? 0 : rng.index(max_degree + 1);
        while (budget-- > 0 && m > 0) ++e[static_cast<std::size_t>(rng.index(m))];
        Polynomial<QComplex> p(m);
        p.add_term(e, rng.complex(real_only));
        f.add(bits, p);
    }
    return f;
}

/// Random GaussPoly superfunction: every present blade carries poly(z)·exp(−Σ a z²/2) with one
/// envelope for the whole superfunction, a ∈ {1, 3/2, 2} per axis, and a polynomial of
/// degree ≤ max_degree. A shared envelope keeps products representable.
inline GaussSuper<QComplex> random_gausssuper(RandomRationals& rng, int m, int n, int max_degree, int blades_used,
                                              int parity = -1) {
    GaussSuper<QComplex> f(m, n);
    const PolySuper<QComplex> shape = random_polysuper(rng, 0, n, 0, blades_used, parity);
    std::vector<Rational> widths;
    for (int k = 0; k < m; ++k) widths.emplace_back(2 + rng.index(3), 2);
    for (const auto& [bits, unused] : shape.coeffs()) {
        Polynomial<QComplex> p(m);
        for (int t = 0; t < 3; ++t) {
            Exponents e(static_cast<std::size_t>(m), 0);
            int budget = max_degree == 0 ? 0 : rng.index(max_degree + 1);
            while (budget-- > 0 && m > 0) ++e[static_cast<std::size_t>(rng.index(m))];
            p.add_term(e, rng.complex());
        }
        if (p.is_zero()) p.add_term(Exponents(static_cast<std::size_t>(m), 0), QComplex(1));
        f.add(bits, GaussPoly<QComplex>(p, widths));
    }
    return f;
}

}  // namespace smq
