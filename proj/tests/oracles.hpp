#pragma once

// Reference implementations that share no code with the library: generator strings sorted by
// adjacent swaps, the one-pair Moyal series written with binomials, and the graded product
// assembled blade by blade from those two.

#include <string>
#include <vector>

#include "smq/star.hpp"

namespace oracle {

using smq::Mask;
using smq::QComplex;
using smq::Rational;

struct Word {
    int sign = 1;  // 0 when the word vanishes
    Mask bits = 0;
};

/// θ^I θ^J by writing both blades as strings of generator letters, bubble-sorting with a sign
/// flip per swap of distinct letters, and resolving equal neighbours to `square` (1 for the
/// Clifford algebra, 0 for the Grassmann algebra).
inline Word word_product(Mask I, Mask J, int square) {
    std::string s;
    for (int k = 0; k < 32; ++k)
        if ((I >> k) & 1U) s.push_back(static_cast<char>('a' + k));
    for (int k = 0; k < 32; ++k)
        if ((J >> k) & 1U) s.push_back(static_cast<char>('a' + k));
    int sign = 1;
    for (bool again = true; again;) {
        again = false;
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            if (s[i] == s[i + 1]) {
                if (square == 0) return {0, 0};
                s.erase(i, 2);
                again = true;
                break;
            }
            if (s[i] > s[i + 1]) {
                std::swap(s[i], s[i + 1]);
                sign = -sign;
                again = true;
            }
        }
    }
    Mask bits = 0;
    for (char c : s) bits |= Mask{1} << (c - 'a');
    return {sign, bits};
}

inline Rational factorial(int k) {
    Rational r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

inline Rational binomial(int k, int j) { return factorial(k) / (factorial(j) * factorial(k - j)); }

/// Monomial x^a w^b.
inline smq::Polynomial<QComplex> mono(int a, int b, const QComplex& c) {
    smq::Polynomial<QComplex> p(2);
    p.add_term({a, b}, c);
    return p;
}

/// a(a−1)…(a−i+1), the factor ∂^i brings down from t^a.
inline Rational falling(int a, int i) {
    Rational r = 1;
    for (int t = 0; t < i; ++t) r *= (a - t);
    return r;
}

/// p ⋆₀ q for one conjugate pair (x, w) with [x, w] = iθ:
/// Σ_k (iθ/2)^k / k! Σ_j C(k, j) (−1)^j (∂_x^{k−j} ∂_w^j p)(∂_x^j ∂_w^{k−j} q).
inline smq::Polynomial<QComplex> moyal_pair(const smq::Polynomial<QComplex>& p, const smq::Polynomial<QComplex>& q, const Rational& theta) {
    smq::Polynomial<QComplex> out(2);
    const QComplex half_i_theta(Rational(0), theta / 2);
    for (const auto& [e1, c1] : p.terms())
        for (const auto& [e2, c2] : q.terms()) {
            const int kmax = std::max(e1[0] + e1[1], e2[0] + e2[1]);
            QComplex power(1);
            for (int k = 0; k <= kmax; ++k) {
                for (int j = 0; j <= k; ++j) {
                    const int i1 = k - j, j1 = j, i2 = j, j2 = k - j;
                    if (i1 > e1[0] || j1 > e1[1] || i2 > e2[0] || j2 > e2[1]) continue;
                    Rational coeff = binomial(k, j) / factorial(k) * falling(e1[0], i1) * falling(e1[1], j1) * falling(e2[0], i2) *
                                     falling(e2[1], j2);
                    if (j % 2 == 1) coeff = -coeff;
                    out += mono(e1[0] - i1 + e2[0] - i2, e1[1] - j1 + e2[1] - j2, c1 * c2 * power * QComplex(coeff));
                }
                power *= half_i_theta;
            }
        }
    return out;
}

/// Graded product on ℝ^{2|n}: (f_I θ^I) ⋆ (g_J θ^J) = (f_I ⋆₀ g_J) c_IJ q^{|I∩J|} θ^{IΔJ},
/// q = −iθα/(1+α)², c_IJ from word_product.
inline smq::PolySuper<QComplex> star(const smq::PolySuper<QComplex>& f, const smq::PolySuper<QComplex>& g, const Rational& theta,
                                     const Rational& alpha) {
    const QComplex q(Rational(0), -theta * alpha / ((1 + alpha) * (1 + alpha)));
    smq::PolySuper<QComplex> out(2, f.n());
    for (const auto& [I, fi] : f.coeffs())
        for (const auto& [J, gj] : g.coeffs()) {
            const Word w = word_product(I, J, 1);
            QComplex c(w.sign);
            for (int d = 0; d < smq::popcount(I & J); ++d) c *= q;
            out.add(w.bits, moyal_pair(fi, gj, theta) * c);
        }
    return out;
}

/// Product of Grassmann/Clifford elements through word_product; q deforms θ^iθ^i.
inline smq::GrassmannElement<QComplex> product(const smq::GrassmannElement<QComplex>& a, const smq::GrassmannElement<QComplex>& b,
                                               int square, const QComplex& q = QComplex(1)) {
    smq::GrassmannElement<QComplex> out(a.n());
    for (const auto& [I, x] : a.terms())
        for (const auto& [J, y] : b.terms()) {
            const Word w = word_product(I, J, square);
            if (w.sign == 0) continue;
            QComplex c = x * y * QComplex(w.sign);
            for (int d = 0; d < smq::popcount(I & J); ++d) c *= q;
            out.add_term(w.bits, c);
        }
    return out;
}

}  // namespace oracle
