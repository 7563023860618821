#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "smq/star.hpp"
#include "smq/substitution.hpp"

namespace smq {

using ExactMatrix = SuperMatrix<QComplex>;
using ExactPoint = SuperPoint<QComplex>;

/// Which even symplectic form the membership equation uses: ω̃ = blockdiag(ω₀, (1+α)²/(2α))
/// or ω = blockdiag(ω₀, 2).
enum class OspForm { omega_tilde, omega };

/// (formᵀ)⁻¹ as a constant supermatrix over ⋀ℝ^N.
ExactMatrix inverse_transpose_form(const DeformationParams& params, int N, OspForm form = OspForm::omega_tilde);

struct OspResult {
    bool member = false;
    /// A (formᵀ)⁻¹ A^{ST} − (formᵀ)⁻¹.
    ExactMatrix residual;
};
OspResult osp_membership(const ExactMatrix& A, const DeformationParams& params, OspForm form = OspForm::omega_tilde);

/// φ^μ(z) = Σ_ν A_μν z_ν + τ_μ, ring entries on the left.
struct AffineSuperMap {
    ExactMatrix A;
    ExactPoint tau;

    static AffineSuperMap linear(const ExactMatrix& A);
    static AffineSuperMap translation(const ExactPoint& tau, int m, int n);
    void validate() const;
};

/// φ ∘ ψ.
AffineSuperMap compose(const AffineSuperMap& phi, const AffineSuperMap& psi);

/// φ_μν = (−1)^{|μ|(1+|ν|)} ∂_ν φ^μ with the left derivative; for an affine map this is
/// (−1)^{|μ|+|ν|} A_μν.
ExactMatrix jacobian_supermatrix(const AffineSuperMap& phi);

/// f ∘ φ on (m, N + n), ring generators first. f may already carry the N ring generators.
PolySuper<QComplex> pullback(const AffineSuperMap& phi, const PolySuper<QComplex>& f);

/// φ*(f ⋆ g) − (φ*f) ⋆ (φ*g) on (m, N + n); the ring generators are spectators of ⋆.
PolySuper<QComplex> invariance_residual(const AffineSuperMap& phi, const PolySuper<QComplex>& f, const PolySuper<QComplex>& g,
                                        const DeformationParams& params);

/// Coordinate pair (z_μ, z_ν) with nonzero invariance residual, if any.
struct InvarianceWitness {
    int mu = 0;
    int nu = 0;
    PolySuper<QComplex> residual;
};
std::optional<InvarianceWitness> coordinate_witness(const AffineSuperMap& phi, const DeformationParams& params);

/// Body member blockdiag(S, O): S a product of random rational symplectic generators, O a
/// product of rational Givens rotations and reflections. Entries are constants over ⋀ℝ^N.
ExactMatrix random_real_osp(int m, int n, std::uint64_t seed, int N = 0);

/// exp(X) for the odd Lie-algebra element X with random odd entries X10 over ⋀ℝ^N and
/// X01 = s ω₀ X10ᵀ (s the odd block of ω̃), so X W + W X^{ST} = 0 for W = (ω̃ᵀ)⁻¹.
ExactMatrix odd_osp_exponential(const DeformationParams& params, int N, std::uint64_t seed);

/// Random member: body member times odd exponential, plus a random translation (with odd
/// translation parts in ⋀ℝ^N when N ≥ 1).
AffineSuperMap random_osp_member(const DeformationParams& params, int N, std::uint64_t seed, bool nilpotent);

}  // namespace smq
