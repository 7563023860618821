#pragma once

#include <Eigen/Dense>
#include <vector>

#include "smq/oracle.hpp"

namespace smq {

/// Truncated basis φ_a ⊗ θ^J of L²(Q), Q = ℝ^{1|n} (m = 2). φ_a(x) = |θ|^{−1/4} ψ_a(x/√|θ|)
/// with ψ_a the Hermite functions. Index of (a, J) is J·N + a.
struct HermiteBasis {
    int N = 8;
    int n = 0;
    double theta = 0.5;

    HermiteBasis(int levels, int odd, double theta_);
    int dim() const { return N << n; }
    int index(int a, Mask J) const { return static_cast<int>(J) * N + a; }
    /// φ_0(x) … φ_{N−1}(x).
    std::vector<double> values(double x) const;
};

/// Hermite functions ψ_0(y) … ψ_{count−1}(y) by the stable three-term recurrence.
std::vector<double> hermite_functions(int count, double y);

struct OperatorMatrix {
    HermiteBasis basis;
    Eigen::MatrixXcd M;
};

/// Ω₀(f)φ(x₀) = γ₀ ∫dx dw f(x, w) e^{(2i/θ_k)(x − x₀)w} φ(2x − x₀), γ₀ = 1/(π|θ|), projected
/// on the basis: entry (a, b) = ⟨φ_a, Ω₀(f) φ_b⟩.
Eigen::MatrixXcd weyl_omega0(const GaussPoly<CDouble>& f, const HermiteBasis& basis, const DeformationParams& params,
                             const QuadratureSpec& quad);
/// Same from samples of the symbol on a tensor grid (values[ix·P + iw]) with the grid's weights.
Eigen::MatrixXcd weyl_omega0_samples(const Nodes1D& nodes, const std::vector<CDouble>& values, const HermiteBasis& basis,
                                     const DeformationParams& params);

/// computed: coefficients from the exact Berezin expansion of the odd kernel,
///   θ^I·θ^J ↦ c_IJ (−iθ/α)^{|I∩J|} (α/(1+α))^{|I|} θ^{IΔJ}.
/// printed: (−i/θ)^{n−d} (−1)^{n(n+1)/2 + |I|(n+d+|J|)} α^{|J|−d} (1+α)^{n−|J|} c_IJ.
enum class OmegaCoefficients { computed, printed };
QComplex omega_odd_coefficient(Mask I, Mask J, const DeformationParams& params, OmegaCoefficients which);

OperatorMatrix omega_full(const GaussSuper<CDouble>& f, const HermiteBasis& basis, const DeformationParams& params,
                          const QuadratureSpec& quad, OmegaCoefficients which = OmegaCoefficients::computed);

/// max-entry ‖Ω(f ⋆ g) − Ω(f)Ω(g)‖ with f ⋆ g from the integral oracle sampled on its grid.
double homomorphism_residual(const GaussSuper<CDouble>& f, const GaussSuper<CDouble>& g, const HermiteBasis& basis,
                             const DeformationParams& params, const QuadratureSpec& quad,
                             OmegaCoefficients which = OmegaCoefficients::computed);

// ---------------------------------------------------------------------------
// Schrödinger representation U on Q = ℝ^{1|n} (m = 2) with coefficients in ⋀ℝ^R.

/// c · P(x₀ − s) · e^{−b(x₀ − s)²/2} · e^{iκx₀} ⊗ odd, where odd lives on R ring generators
/// followed by the n generators ξ₀.
struct QTerm {
    double shift = 0.0;
    double width = 1.0;
    double freq = 0.0;
    std::vector<CDouble> poly{CDouble(1.0, 0.0)};
    GrassmannElement<CDouble> odd;

    CDouble even_at(double x0) const;
};

struct QState {
    int ring = 0;
    int n = 0;
    std::vector<QTerm> terms;

    GrassmannElement<CDouble> at(double x0) const;
};

/// Heisenberg element (x, ξ, w, a) for m = 2: x, w real, ξ odd and a even in ⋀ℝ^R.
struct HeisenbergElement {
    double x = 0.0;
    double w = 0.0;
    std::vector<GrassmannElement<CDouble>> xi;
    GrassmannElement<CDouble> a;

    static HeisenbergElement identity(int n, int ring);
};

/// (x, ξ, w, a)(y, η, v, b) = (x + y, ξ + η, w + v, a + b + ½(xv − wy) + Σ ξ_i η_i).
HeisenbergElement heisenberg_multiply(const HeisenbergElement& g, const HeisenbergElement& h);

/// U(g)φ(x₀, ξ₀) = e^{(i/θ)(a + ½(x − 2x₀)w + Σ ξ_i ξ₀_i)} φ(x₀ − x, ξ₀ − ξ).
QState schrodinger_U(const HeisenbergElement& g, const QState& phi, double theta);

/// ⟨φ, ψ⟩ = ∫dx₀ ∫dξ₀ conj(φ) ψ, a ⋀ℝ^R value (ξ₀ integrated with the top blade on the right).
GrassmannElement<CDouble> super_hermitian(const QState& phi, const QState& psi, int points = 1024);

/// max over pairs of |⟨U(g)φ, U(g)ψ⟩ − ⟨φ, ψ⟩| (largest coefficient).
double unitarity_residual(const HeisenbergElement& g, const std::vector<QState>& states, double theta);

/// max over sample points of |U(g)U(h)φ − U(gh)φ|.
double representation_residual(const HeisenbergElement& g, const HeisenbergElement& h, const QState& phi, double theta,
                               const std::vector<double>& points);

}  // namespace smq
