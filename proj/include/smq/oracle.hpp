#pragma once

#include <functional>
#include <vector>

#include "smq/quadrature.hpp"
#include "smq/star.hpp"

namespace smq {

/// How the exponential of the odd bilinear form is expanded before Berezin integration.
/// naive: the full power series of the 3n-generator exponent; factorized: one
/// (1 + c E_i) factor per generator index i (E_i² = 0).
enum class OddExpansion { naive, factorized };

/// θ^I ⋆ θ^J from the odd part of the integral formula: ξ₁^I ξ₂^J exp(−ic(ξξ₁ + ξ₁ξ₂ + ξ₂ξ)),
/// c = (1+α)²/(αθ_k), Berezin-integrated over ξ₁ then ξ₂, times the odd factor of κ.
/// Returns an element over the n generators ξ. Exact.
GrassmannElement<QComplex> odd_star_berezin(Mask I, Mask J, const DeformationParams& params,
                                            OddExpansion mode = OddExpansion::factorized);

/// All pairs, indexed I·2ⁿ + J.
std::vector<GrassmannElement<QComplex>> odd_star_table(const DeformationParams& params,
                                                       OddExpansion mode = OddExpansion::factorized);

/// Odd part of Ω: θ^I acting on φ = θ^J, from f(ξ) exp((i/θ_k)(ξξ₀ − αξ₁ξ₀ − (α+1)ξξ₁)) φ(ξ + ξ₁)
/// integrated over ξ then ξ₁, times the odd factor of γ. Returns an element over ξ₀. Exact.
GrassmannElement<QComplex> omega_odd_berezin(Mask I, Mask J, const DeformationParams& params,
                                             OddExpansion mode = OddExpansion::factorized);

/// Even twisted convolution (f ⋆₀ g)(x, w) for m = 2 (or the product of constants for m = 0),
/// by quadrature on the common grid of both inputs.
CDouble even_star_point(const GaussPoly<CDouble>& f, const GaussPoly<CDouble>& g, const DeformationParams& params,
                        const std::vector<double>& z, const QuadratureSpec& quad);

/// (f ⋆₀ g) on every node of the (x, w) trapezoid grid (m = 2). values[ix·P + iw].
struct EvenStarGrid {
    Nodes1D nodes;
    std::vector<CDouble> values;
};
EvenStarGrid even_star_grid(const GaussPoly<CDouble>& f, const GaussPoly<CDouble>& g, const DeformationParams& params,
                            const QuadratureSpec& quad);
/// Grid that even_star_grid would use for this pair.
Nodes1D star_grid_nodes(const GaussPoly<CDouble>& f, const GaussPoly<CDouble>& g, const QuadratureSpec& quad);

struct StarIntegralResult {
    GrassmannElement<CDouble> value;
    QuadratureSpec spec;
    /// Relative change of the even integrals when P is doubled (0 when refinement is off).
    double refinement_change = 0.0;
    bool converged = true;
};

struct OracleOptions {
    bool refine = false;
    double tolerance = 1e-6;
};

/// (f ⋆ g)(z) from the integral formula: even part by quadrature, odd part exact.
StarIntegralResult star_integral(const GaussSuper<CDouble>& f, const GaussSuper<CDouble>& g, const DeformationParams& params,
                                 const std::vector<double>& z, const QuadratureSpec& quad, const OracleOptions& options = {});

/// |∫(f ⋆ g) − ∫ f g| with the left side integrated over the quadrature grid and the right side exact.
struct TracialResult {
    double residual = 0.0;
    CDouble lhs;
    CDouble rhs;
};
TracialResult tracial_check(const GaussSuper<CDouble>& f, const GaussSuper<CDouble>& g, const DeformationParams& params,
                            const QuadratureSpec& quad);

/// Function of (x, w) sampled on a uniform square grid with P points per axis.
struct SampledFunction2D {
    double lo = 0.0;
    double h = 0.0;
    int P = 0;
    std::vector<CDouble> values;  // values[ix·P + iw]

    double coordinate(int k) const { return lo + h * k; }
    CDouble at(int ix, int iw) const { return values[static_cast<std::size_t>(ix * P + iw)]; }
};
SampledFunction2D sample_function(const std::function<CDouble(double, double)>& fn, double half_width, int points);

/// O f = (1 − Δ)(f / (1 + x² + w²)), applied k times with the 5-point Laplacian.
/// Throws if the support reaches within k+1 cells of the boundary.
SampledFunction2D oscillating_apply(const SampledFunction2D& f, int k);
/// |Σ h² e^{ixw} f − Σ h² e^{ixw} Oᵏf|.
double oscillating_identity_residual(const SampledFunction2D& f, int k);

}  // namespace smq
