#pragma once

// Hand-rolled generators for property tests. Every property runs a fixed number of cases from
// fixed seeds so failures reproduce; the failing case index is reported through INFO.

#include <cstdint>
#include <random>
#include <vector>

#include "smq/superfunction.hpp"

namespace gen {

using smq::CDouble;
using smq::Mask;
using smq::QComplex;
using smq::Rational;

class Gen {
   public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Rational rational(int span = 4, int den_max = 4) {
        Rational r(integer(-span, span), integer(1, den_max));
        r.canonicalize();
        return r;
    }
    Rational nonzero_rational(int span = 4, int den_max = 4) {
        for (;;) {
            Rational r = rational(span, den_max);
            if (sgn(r) != 0) return r;
        }
    }
    QComplex complex() { return coin() ? QComplex(rational()) : QComplex(rational(), rational()); }

    Mask blade(int n) { return n == 0 ? 0 : static_cast<Mask>(integer(0, (1 << n) - 1)); }
    Mask blade_with_parity(int n, int parity) {
        if (n == 0) return 0;
        for (;;) {
            const Mask b = blade(n);
            if ((smq::popcount(b) & 1) == parity) return b;
        }
    }

    smq::GrassmannElement<QComplex> grassmann(int n, int terms = 4) {
        smq::GrassmannElement<QComplex> a(n);
        for (int t = 0; t < terms; ++t) a.add_term(blade(n), complex());
        return a;
    }

    smq::Polynomial<QComplex> polynomial(int m, int max_degree, int terms) {
        smq::Polynomial<QComplex> p(m);
        for (int t = 0; t < terms; ++t) {
            smq::Exponents e(static_cast<std::size_t>(m), 0);
            int budget = integer(0, max_degree);
            while (budget-- > 0 && m > 0) ++e[static_cast<std::size_t>(integer(0, m - 1))];
            p.add_term(e, complex());
        }
        return p;
    }

    /// parity −1: any blades; 0/1: homogeneous.
    smq::PolySuper<QComplex> polysuper(int m, int n, int max_degree = 2, int blades = 3, int parity = -1) {
        smq::PolySuper<QComplex> f(m, n);
        if (parity == 1 && n == 0) return f;
        for (int b = 0; b < blades; ++b) {
            const Mask bits = parity < 0 ? blade(n) : blade_with_parity(n, parity);
            f.add(bits, polynomial(m, max_degree, 2));
        }
        return f;
    }

    /// One Gaussian envelope with widths in {1, 3/2, 2} shared by all blades.
    smq::GaussSuper<QComplex> gausssuper(int m, int n, int max_degree = 1, int blades = 2, int parity = -1) {
        std::vector<Rational> widths;
        for (int k = 0; k < m; ++k) widths.emplace_back(integer(2, 4), 2);
        smq::GaussSuper<QComplex> f(m, n);
        for (int b = 0; b < blades; ++b) {
            const Mask bits = parity < 0 ? blade(n) : blade_with_parity(n, parity);
            smq::Polynomial<QComplex> p = polynomial(m, max_degree, 2);
            if (p.is_zero()) p = smq::Polynomial<QComplex>::one(m);
            f.add(bits, smq::GaussPoly<QComplex>(p, widths));
        }
        if (f.is_zero()) f.add(0, smq::GaussPoly<QComplex>(smq::Polynomial<QComplex>::one(m), widths));
        return f;
    }

   private:
    std::mt19937_64 rng_;
};

}  // namespace gen
