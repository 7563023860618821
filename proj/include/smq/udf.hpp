#pragma once

#include <cstdint>

#include "smq/hopf.hpp"
#include "smq/star.hpp"

namespace smq {

/// translation: ℝ^{m|n} acting on superfunctions on ℝ^{m|n} by ρ_z(f)(z') = f(z' + z).
/// odd_translation: ℝ^{0|n} acting on ⋀ℝⁿ by θ ↦ θ + ξ.
/// In both cases the algebra and the group share the layout (m, n), so elements of
/// A ⊗ H ⊗ … are TensorSuper values with M = m even and n odd variables per leg.
enum class ActionKind { translation, odd_translation };

struct ActionSpec {
    ActionKind kind = ActionKind::translation;
    int m = 2;
    int n = 0;

    static ActionSpec translation(int m, int n);
    static ActionSpec odd_translation(int n);
    HopfStructure hopf() const;
    /// Throws unless params describe the same group.
    void check(const DeformationParams& params) const;
    void check(const PolySuper<QComplex>& a) const;
};

using TwoLeg = TensorSuper<QComplex>;

/// ρ^a as a two-leg element: leg 0 the algebra variables, leg 1 the group variables z.
TwoLeg orbit_map(const PolySuper<QComplex>& a, const ActionSpec& action);

/// (ρ^a ⋆ ρ^b)(0): the star product in z with the algebra variables as spectators, then z = 0.
PolySuper<QComplex> deformed_product(const PolySuper<QComplex>& a, const PolySuper<QComplex>& b, const ActionSpec& action,
                                     const DeformationParams& params);

/// F applied to legs (leg, leg+1) of a multi-leg element, the other legs as spectators.
/// On a simple tensor a ⊗ b, F(a ⊗ b) is (ρ^a(z) ⋆_z ρ^b(z)) at z = 0 with the two algebra
/// copies kept apart: the terminating exponential bidifferential operator in ∂ ⊗ ∂.
TensorSuper<QComplex> twist_on_legs(const TensorSuper<QComplex>& t, int leg, const ActionSpec& action,
                                    const DeformationParams& params);
TwoLeg twist_apply(const TwoLeg& c, const ActionSpec& action, const DeformationParams& params);
/// μ₀ ∘ F.
PolySuper<QComplex> twisted_multiply(const TwoLeg& c, const ActionSpec& action, const DeformationParams& params);

/// χ(a) = ρ^a in A ⊗ H.
TwoLeg coaction(const PolySuper<QComplex>& a, const ActionSpec& action);

struct CoactionResidual {
    /// (id ⊗ Δ)χ(a) − (χ ⊗ id)χ(a), three legs.
    PolySuper<QComplex> coassociativity;
    /// (id ⊗ ε)χ(a) − a.
    PolySuper<QComplex> counit;
    bool zero() const { return coassociativity.is_zero() && counit.is_zero(); }
};
CoactionResidual coaction_residual(const PolySuper<QComplex>& a, const ActionSpec& action);

/// (μ ⊗ μ̃) σ₂₃ (χ(a) ⊗ χ(b)) − χ(μ(a ⊗ b)) with μ = μ₀ or μ = μ_F (deformed); μ̃ the product of H.
PolySuper<QComplex> comodule_residual(const PolySuper<QComplex>& a, const PolySuper<QComplex>& b, const ActionSpec& action,
                                      const DeformationParams& params, bool deformed);

/// Sampled check of τ(σ₂₃ c) ≤ C π(c) for c = Σ_i a_i ⊗ f_i ⊗ b_i ⊗ g_i with a_i, b_i in ⋀ℝ²
/// (ℓ¹ norm on blades) and f_i, g_i GaussPoly superfunctions on ℝ^{1|n}. Both seminorms use the
/// same grid; π is taken on the sampled representation, an upper bound for its infimum.
struct ExchangeSample {
    double max_ratio = 0.0;
    int tensors = 0;
    int skipped = 0;
};
ExchangeSample exchange_bound_sample(int n, int trials, std::uint64_t seed);

}  // namespace smq
