#pragma once

#include <vector>

#include "smq/grassmann.hpp"
#include "smq/superfunction.hpp"

namespace smq {

/// θ, α and the constants derived from them. m even, n odd coordinates.
struct DeformationParams {
    Rational theta;
    Rational alpha;
    int m = 2;
    int n = 0;

    DeformationParams(Rational theta_, Rational alpha_, int m_, int n_);

    /// (m+n)×(m+n) matrices, row-major.
    std::vector<Rational> omega0() const;            // m×m, [[0, 1], [−1, 0]] blocks
    std::vector<Rational> omega_tilde() const;       // blockdiag(ω₀, (1+α)²/(2α)·1)
    std::vector<Rational> omega_tilde_inverse() const;
    /// Odd block of ω̃: s = (1+α)²/(2α); the odd block of ω̃⁻¹ is 1/s.
    Rational odd_block() const;
    /// Deformation constant of the odd sector: θ^i ⋆ θ^i = q = −iθα/(1+α)².
    QComplex q() const;

    /// Constants of the integral kernels as printed, with the kernel parameter θ_k = −θ
    /// (see README, "Sign conventions"). Odd parts are exact; even parts carry π.
    QComplex kappa_odd() const;   // (iθ_k)^n (−1)^{n(n+1)/2} α^n / (1+α)^{2n}
    QComplex gamma_odd() const;   // (iθ_k)^n (−1)^{n(n+1)/2} / (1+α)^n
    double kappa_even() const;    // 1 / (π|θ|)^m
    double gamma_even() const;    // 1 / (π|θ|)^{m/2}
    Rational kernel_theta() const { return -theta; }
};

/// Which variables of a (possibly combined) superfunction the product acts on. x[j] pairs with
/// w[j]; odd lists generators in increasing order. Everything else is a spectator coefficient.
struct StarCoords {
    std::vector<int> x;
    std::vector<int> w;
    std::vector<int> odd;

    /// Standard layout x = 0..m/2−1, w = m/2..m−1, odd = odd_offset..odd_offset+n−1.
    static StarCoords standard(int m, int n, int even_offset = 0, int odd_offset = 0);
    Mask odd_mask() const;
};

/// Σ_{α,β} (iθ/2)^{|α|+|β|} (−1)^{|β|}/(α!β!) ∂_x^α ∂_w^β p · ∂_x^β ∂_w^α q.
template <class S>
Polynomial<S> moyal_even(const Polynomial<S>& p, const Polynomial<S>& q, const Rational& theta, const StarCoords& coords);
template <class S>
Polynomial<S> moyal_even(const Polynomial<S>& p, const Polynomial<S>& q, const DeformationParams& params) {
    return moyal_even(p, q, params.theta, StarCoords::standard(params.m, 0));
}

/// Graded star product on polynomial superfunctions.
template <class S>
PolySuper<S> star(const PolySuper<S>& f, const PolySuper<S>& g, const DeformationParams& params, const StarCoords& coords);
template <class S>
PolySuper<S> star(const PolySuper<S>& f, const PolySuper<S>& g, const DeformationParams& params) {
    return star(f, g, params, StarCoords::standard(params.m, params.n));
}

/// f ⋆ g − (−1)^{|f||g|} g ⋆ f, extended bilinearly over parity parts.
template <class S>
PolySuper<S> graded_commutator(const PolySuper<S>& f, const PolySuper<S>& g, const DeformationParams& params);

/// {f, g} = (−1)^{|f||μ|} ω̃⁻¹_{νμ} ∂_μ f ∂_ν g, extended bilinearly over parity parts.
template <class C>
Superfunction<C> poisson_bracket(const Superfunction<C>& f, const Superfunction<C>& g, const DeformationParams& params);

/// The printed second-order expansion, including its global prefactor (1+α)^{n²−2n}/α^n.
template <class S>
PolySuper<S> star_expansion_order2(const PolySuper<S>& f, const PolySuper<S>& g, const DeformationParams& params);
Rational expansion_prefactor(const DeformationParams& params);

/// Float-mode series product of GaussPoly superfunctions evaluated at a real point z
/// (length m). The Moyal series is summed from Taylor coefficients at z until the
/// order-k contribution stays below `tol` (relative) for several consecutive orders.
struct SeriesOptions {
    int max_order = 80;
    double tol = 1e-17;
};
GrassmannElement<CDouble> star_series_at(const GaussSuper<CDouble>& f, const GaussSuper<CDouble>& g,
                                         const DeformationParams& params, const std::vector<double>& z,
                                         const SeriesOptions& options = {});

/// (f_I ⋆₀ g_J)(z) for GaussPoly coefficients, same summation as star_series_at.
CDouble moyal_even_at(const GaussPoly<CDouble>& p, const GaussPoly<CDouble>& q, double theta,
                      const std::vector<double>& z, const SeriesOptions& options = {});

}  // namespace smq
