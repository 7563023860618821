#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smq/substitution.hpp"
#include "smq/superfunction.hpp"

namespace smq {

/// flat: ℝ^{m|n} with (x, ξ)(y, η) = (x + y, ξ + η).
/// heisenberg: adds a central even coordinate a (last even variable) and the law
/// (x, ξ, a)(y, η, b) = (x + y, ξ + η, a + b + ½ xᵀω₀y + Σ ξ_i η_i).
struct HopfStructure {
    enum class Mode { flat, heisenberg };
    Mode mode = Mode::flat;
    int m = 0;
    int n = 0;

    HopfStructure(Mode mode_, int m_, int n_) : mode(mode_), m(m_), n(n_) {
        if (m < 0 || n < 0 || n > kMaxPublicGenerators) throw std::invalid_argument("HopfStructure: bad dimensions");
        if (mode == Mode::heisenberg && (m % 2) != 0) throw std::invalid_argument("HopfStructure: heisenberg needs even m");
    }
    /// Even variables of one leg: m, plus the central coordinate in heisenberg mode.
    int even_per_leg() const { return mode == Mode::heisenberg ? m + 1 : m; }
    int central() const { return m; }
    std::string name() const { return mode == Mode::flat ? "flat" : "heisenberg"; }
};

/// Element of H^{⊗legs}, stored as one polynomial superfunction on the concatenated legs:
/// leg k owns even variables [k·M, (k+1)·M) and odd generators [k·n, (k+1)·n).
/// The pointwise product of the combined algebra is the graded tensor product.
template <class S>
struct TensorSuper {
    int legs = 1;
    int M = 0;
    int n = 0;
    PolySuper<S> f;

    TensorSuper(int legs_, int M_, int n_) : legs(legs_), M(M_), n(n_), f(legs_ * M_, legs_ * n_) {}
    TensorSuper(int legs_, int M_, int n_, PolySuper<S> f_) : legs(legs_), M(M_), n(n_), f(std::move(f_)) {
        if (f.m() != legs * M || f.n() != legs * n) throw std::invalid_argument("TensorSuper: dimension mismatch");
    }
    friend bool operator==(const TensorSuper& a, const TensorSuper& b) {
        return a.legs == b.legs && a.M == b.M && a.n == b.n && a.f == b.f;
    }
};

namespace hopf_detail {

template <class S>
PolySuper<S> even_var(int legs, int M, int n, int leg, int j) {
    return PolySuper<S>::even_coordinate(legs * M, legs * n, leg * M + j);
}
template <class S>
PolySuper<S> odd_var(int legs, int M, int n, int leg, int i) {
    return PolySuper<S>::odd_coordinate(legs * M, legs * n, leg * n + i);
}

/// Images of the coordinates of one leg under the group law, landing in legs (l, l+1)
/// of a `legs`-leg space.
template <class S>
void group_law_images(const HopfStructure& H, int legs, int l, std::vector<PolySuper<S>>& even,
                      std::vector<PolySuper<S>>& odd) {
    const int M = H.even_per_leg();
    const int n = H.n;
    for (int j = 0; j < H.m; ++j) even.push_back(even_var<S>(legs, M, n, l, j) + even_var<S>(legs, M, n, l + 1, j));
    if (H.mode == HopfStructure::Mode::heisenberg) {
        PolySuper<S> a = even_var<S>(legs, M, n, l, H.central()) + even_var<S>(legs, M, n, l + 1, H.central());
        const int h = H.m / 2;
        const S half = from_rational<S>(Rational(1, 2));
        // ½ xᵀω₀y with ω₀ = [[0, 1], [−1, 0]]: ½ Σ_j (x_j y_{h+j} − x_{h+j} y_j).
        for (int j = 0; j < h; ++j) {
            a += pointwise_mul(even_var<S>(legs, M, n, l, j), even_var<S>(legs, M, n, l + 1, h + j)) * half;
            a -= pointwise_mul(even_var<S>(legs, M, n, l, h + j), even_var<S>(legs, M, n, l + 1, j)) * half;
        }
        for (int i = 0; i < n; ++i) a += pointwise_mul(odd_var<S>(legs, M, n, l, i), odd_var<S>(legs, M, n, l + 1, i));
        even.push_back(std::move(a));
    }
    for (int i = 0; i < n; ++i) odd.push_back(odd_var<S>(legs, M, n, l, i) + odd_var<S>(legs, M, n, l + 1, i));
}

}  // namespace hopf_detail

/// Places a single-leg superfunction into leg `leg` of a `legs`-leg tensor.
template <class S>
TensorSuper<S> embed_leg(const PolySuper<S>& f, const HopfStructure& H, int legs, int leg) {
    const int M = H.even_per_leg();
    if (f.m() != M || f.n() != H.n) throw std::invalid_argument("embed_leg: dimension mismatch");
    std::vector<int> em, om;
    for (int j = 0; j < M; ++j) em.push_back(leg * M + j);
    for (int i = 0; i < H.n; ++i) om.push_back(leg * H.n + i);
    return {legs, M, H.n, f.embed(legs * M, legs * H.n, em, om)};
}

/// a ⊗ b as a two-leg tensor.
template <class S>
TensorSuper<S> tensor(const PolySuper<S>& a, const PolySuper<S>& b, const HopfStructure& H) {
    return {2, H.even_per_leg(), H.n, pointwise_mul(embed_leg(a, H, 2, 0).f, embed_leg(b, H, 2, 1).f)};
}

/// Applies Δ to leg `leg`, producing legs+1 legs.
template <class S>
TensorSuper<S> coproduct_on_leg(const TensorSuper<S>& t, const HopfStructure& H, int leg) {
    const int M = t.M;
    const int n = t.n;
    const int out = t.legs + 1;
    std::vector<PolySuper<S>> even, odd;
    for (int l = 0; l < t.legs; ++l) {
        if (l == leg) {
            std::vector<PolySuper<S>> e, o;
            hopf_detail::group_law_images<S>(H, out, l, e, o);
            even.insert(even.end(), e.begin(), e.end());
            continue;
        }
        const int target = l < leg ? l : l + 1;
        for (int j = 0; j < M; ++j) even.push_back(hopf_detail::even_var<S>(out, M, n, target, j));
    }
    for (int l = 0; l < t.legs; ++l) {
        if (l == leg) {
            std::vector<PolySuper<S>> e, o;
            hopf_detail::group_law_images<S>(H, out, l, e, o);
            odd.insert(odd.end(), o.begin(), o.end());
            continue;
        }
        const int target = l < leg ? l : l + 1;
        for (int i = 0; i < n; ++i) odd.push_back(hopf_detail::odd_var<S>(out, M, n, target, i));
    }
    return {out, M, n, substitute(t.f, even, odd, out * M, out * n)};
}

/// Δf = f(g₁·g₂), computed by substituting the group law.
template <class S>
TensorSuper<S> coproduct(const PolySuper<S>& f, const HopfStructure& H) {
    return coproduct_on_leg(embed_leg(f, H, 1, 0), H, 0);
}

/// Applies ε to leg `leg` (sets its coordinates to the identity), producing legs−1 legs.
template <class S>
TensorSuper<S> counit_on_leg(const TensorSuper<S>& t, int leg) {
    const int M = t.M;
    const int n = t.n;
    const int out = t.legs - 1;
    std::vector<PolySuper<S>> even, odd;
    for (int l = 0; l < t.legs; ++l) {
        const int target = l < leg ? l : l - 1;
        for (int j = 0; j < M; ++j)
            even.push_back(l == leg ? PolySuper<S>(out * M, out * n) : hopf_detail::even_var<S>(out, M, n, target, j));
    }
    for (int l = 0; l < t.legs; ++l) {
        const int target = l < leg ? l : l - 1;
        for (int i = 0; i < n; ++i)
            odd.push_back(l == leg ? PolySuper<S>(out * M, out * n) : hopf_detail::odd_var<S>(out, M, n, target, i));
    }
    return {out, M, n, substitute(t.f, even, odd, out * M, out * n)};
}

/// ε(f) = f_∅ at the group identity.
template <class S>
S counit(const PolySuper<S>& f, const HopfStructure& H) {
    if (f.m() != H.even_per_leg() || f.n() != H.n) throw std::invalid_argument("counit: dimension mismatch");
    return f.coeff(0).constant_term();
}

/// Applies S to leg `leg`: pullback by g ↦ g⁻¹ = (−x, −ξ, −a).
template <class S>
TensorSuper<S> antipode_on_leg(const TensorSuper<S>& t, int leg) {
    const int M = t.M;
    const int n = t.n;
    std::vector<PolySuper<S>> even, odd;
    for (int l = 0; l < t.legs; ++l)
        for (int j = 0; j < M; ++j) {
            auto v = hopf_detail::even_var<S>(t.legs, M, n, l, j);
            even.push_back(l == leg ? -v : v);
        }
    for (int l = 0; l < t.legs; ++l)
        for (int i = 0; i < n; ++i) {
            auto v = hopf_detail::odd_var<S>(t.legs, M, n, l, i);
            odd.push_back(l == leg ? -v : v);
        }
    return {t.legs, M, n, substitute(t.f, even, odd, t.legs * M, t.legs * n)};
}

template <class S>
PolySuper<S> antipode(const PolySuper<S>& f, const HopfStructure& H) {
    return antipode_on_leg(embed_leg(f, H, 1, 0), 0).f;
}

/// μ on legs (leg, leg+1): identifies both legs' coordinates.
template <class S>
TensorSuper<S> multiply_legs(const TensorSuper<S>& t, int leg) {
    const int M = t.M;
    const int n = t.n;
    const int out = t.legs - 1;
    std::vector<PolySuper<S>> even, odd;
    for (int l = 0; l < t.legs; ++l) {
        const int target = l <= leg ? l : l - 1;
        for (int j = 0; j < M; ++j) even.push_back(hopf_detail::even_var<S>(out, M, n, target, j));
    }
    for (int l = 0; l < t.legs; ++l) {
        const int target = l <= leg ? l : l - 1;
        for (int i = 0; i < n; ++i) odd.push_back(hopf_detail::odd_var<S>(out, M, n, target, i));
    }
    return {out, M, n, substitute(t.f, even, odd, out * M, out * n)};
}

/// Graded exchange of legs (leg, leg+1); the Koszul sign comes from reordering generators.
template <class S>
TensorSuper<S> graded_swap(const TensorSuper<S>& t, int leg = 0) {
    std::vector<int> em, om;
    auto target = [&](int l) { return l == leg ? leg + 1 : (l == leg + 1 ? leg : l); };
    for (int l = 0; l < t.legs; ++l)
        for (int j = 0; j < t.M; ++j) em.push_back(target(l) * t.M + j);
    for (int l = 0; l < t.legs; ++l)
        for (int i = 0; i < t.n; ++i) om.push_back(target(l) * t.n + i);
    return {t.legs, t.M, t.n, t.f.embed(t.f.m(), t.f.n(), em, om)};
}

/// The flat coproduct as printed: Σ_{J∩K=∅} ε(J,K) Δ₀f_{J∪K} θ^J ⊗ θ^K.
template <class S>
TensorSuper<S> coproduct_flat_printed(const PolySuper<S>& f, const HopfStructure& H) {
    if (H.mode != HopfStructure::Mode::flat) throw std::invalid_argument("coproduct_flat_printed: flat mode only");
    const int M = H.m;
    const int n = H.n;
    TensorSuper<S> out(2, M, n);
    std::vector<PolySuper<S>> shift;
    for (int j = 0; j < M; ++j) shift.push_back(hopf_detail::even_var<S>(2, M, n, 0, j) + hopf_detail::even_var<S>(2, M, n, 1, j));
    for (const auto& [bits, c] : f.coeffs()) {
        const PolySuper<S> d0 = substitute(PolySuper<S>::blade(M, 0, 0, c), shift, {}, 2 * M, 2 * n);
        for (Mask J = bits;; J = (J - 1) & bits) {
            const Mask K = bits & ~J;
            // θ^J ⊗ θ^K = θ^J_{leg 1} θ^K_{leg 2}.
            const Mask blade = J | (K << n);
            PolySuper<S> term(2 * M, 2 * n);
            for (const auto& [b, p] : d0.coeffs()) term.add(blade, p);
            out.f += wedge_sign(J, K) < 0 ? -term : term;
            if (J == 0) break;
        }
    }
    return out;
}

/// The Heisenberg coproduct as printed, read as a sum over output blade pairs (I, J):
/// Σ_{I,J} c_IJ Δ₀(∂_a^{|I∩J|} f_{IΔJ}) θ^I ⊗ θ^J, with c_IJ the printed coproduct variant.
template <class S>
TensorSuper<S> coproduct_heisenberg_printed(const PolySuper<S>& f, const HopfStructure& H) {
    if (H.mode != HopfStructure::Mode::heisenberg) throw std::invalid_argument("coproduct_heisenberg_printed: heisenberg mode only");
    const int M = H.even_per_leg();
    const int n = H.n;
    const int h = H.m / 2;
    std::vector<PolySuper<S>> d0_images;
    for (int j = 0; j < H.m; ++j)
        d0_images.push_back(hopf_detail::even_var<S>(2, M, n, 0, j) + hopf_detail::even_var<S>(2, M, n, 1, j));
    {
        PolySuper<S> a = hopf_detail::even_var<S>(2, M, n, 0, H.central()) + hopf_detail::even_var<S>(2, M, n, 1, H.central());
        const S half = from_rational<S>(Rational(1, 2));
        for (int j = 0; j < h; ++j) {
            a += pointwise_mul(hopf_detail::even_var<S>(2, M, n, 0, j), hopf_detail::even_var<S>(2, M, n, 1, h + j)) * half;
            a -= pointwise_mul(hopf_detail::even_var<S>(2, M, n, 0, h + j), hopf_detail::even_var<S>(2, M, n, 1, j)) * half;
        }
        d0_images.push_back(std::move(a));
    }
    TensorSuper<S> out(2, M, n);
    const Mask full = (Mask{1} << n) - 1;
    for (Mask I = 0; I <= full; ++I)
        for (Mask J = 0; J <= full; ++J) {
            const Polynomial<S> fk = f.coeff(I ^ J);
            if (fk.is_zero()) continue;
            const int d = popcount(I & J);
            Polynomial<S> p = fk;
            for (int k = 0; k < d; ++k) p = p.derivative(H.central());
            if (p.is_zero()) continue;
            const int c = clifford_coeff_printed(IndexSet(I, n), IndexSet(J, n), PrintedCliffordVariant::coproduct_I_d);
            const PolySuper<S> d0 = substitute(PolySuper<S>::blade(M, 0, 0, p), d0_images, {}, 2 * M, 2 * n);
            const Mask blade = I | (J << n);
            for (const auto& [b, q] : d0.coeffs()) out.f.add(blade, c < 0 ? Polynomial<S>(-q) : q);
        }
    return out;
}

/// One line of the axiom report. `max_residual` is max |re|, |im| over residual coefficients.
struct AxiomResult {
    std::string axiom;
    Rational max_residual = 0;
    std::optional<std::string> witness;  // printed input for the first failing sample
};

/// Largest |re| or |im| of any coefficient (exact).
Rational max_residual(const PolySuper<QComplex>& r);

/// Checks coassociativity, both counit laws, both antipode laws and multiplicativity of Δ.
std::vector<AxiomResult> verify_hopf_axioms(const HopfStructure& H, const std::vector<PolySuper<QComplex>>& sample);

/// First sample element with Δf ≠ σΔf (σ the graded swap), if any.
std::optional<PolySuper<QComplex>> cocommutativity_witness(const HopfStructure& H, const std::vector<PolySuper<QComplex>>& sample);

}  // namespace smq
