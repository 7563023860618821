#pragma once

#include <vector>

#include "smq/supermatrix.hpp"
#include "smq/superfunction.hpp"

namespace smq {

/// Algebra morphism determined by images of the coordinates: even variable k ↦ even_images[k],
/// odd generator g ↦ odd_images[g]. For polynomial f this is exact composition, so nilpotent
/// even parts reproduce the finite Taylor series automatically.
template <class S>
PolySuper<S> substitute(const PolySuper<S>& f, const std::vector<PolySuper<S>>& even_images,
                        const std::vector<PolySuper<S>>& odd_images, int target_m, int target_n) {
    if (static_cast<int>(even_images.size()) != f.m() || static_cast<int>(odd_images.size()) != f.n())
        throw std::invalid_argument("substitute: image count mismatch");
    for (const auto& e : even_images) {
        if (e.m() != target_m || e.n() != target_n) throw std::invalid_argument("substitute: image dimensions");
        if (e.parity() != 0) throw std::invalid_argument("substitute: even image must be even");
    }
    for (const auto& o : odd_images) {
        if (o.m() != target_m || o.n() != target_n) throw std::invalid_argument("substitute: image dimensions");
        if (o.parity() != 1 && !o.is_zero()) throw std::invalid_argument("substitute: odd image must be odd");
    }
    // Cached powers of the even images.
    std::vector<std::vector<PolySuper<S>>> powers(even_images.size());
    auto power = [&](std::size_t k, int e) -> const PolySuper<S>& {
        auto& cache = powers[k];
        if (cache.empty()) cache.push_back(PolySuper<S>::one(target_m, target_n));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(pointwise_mul(cache.back(), even_images[k]));
        return cache[static_cast<std::size_t>(e)];
    };
    PolySuper<S> result(target_m, target_n);
    for (const auto& [bits, coeff] : f.coeffs()) {
        PolySuper<S> odd_part = PolySuper<S>::one(target_m, target_n);
        for (Mask b = bits; b != 0; b &= b - 1) odd_part = pointwise_mul(odd_part, odd_images[static_cast<std::size_t>(std::countr_zero(b))]);
        if (odd_part.is_zero()) continue;
        for (const auto& [e, c] : coeff.terms()) {
            PolySuper<S> term = PolySuper<S>::constant(target_m, target_n, c);
            for (std::size_t k = 0; k < e.size(); ++k)
                if (e[k] != 0) term = pointwise_mul(term, power(k, e[k]));
            result += pointwise_mul(term, odd_part);
        }
    }
    return result;
}

/// Constant superfunction on the coefficient generators (placed first) of a combined algebra.
template <class S>
PolySuper<S> ring_constant(const GrassmannElement<S>& a, int m, int n_total) {
    PolySuper<S> r(m, n_total);
    for (const auto& [bits, c] : a.terms()) r.add(bits, Polynomial<S>::constant(m, c));
    return r;
}

/// Reads a superfunction with m = 0 as a Grassmann element.
template <class S>
GrassmannElement<S> as_grassmann(const PolySuper<S>& f) {
    if (f.m() != 0) throw std::invalid_argument("as_grassmann: even variables present");
    GrassmannElement<S> r(f.n());
    for (const auto& [bits, c] : f.coeffs()) r.add_term(bits, c.constant_term());
    return r;
}

/// f(z) in ⋀ℝ^N, z a super point with ring-valued coordinates.
template <class S>
GrassmannElement<S> evaluate(const PolySuper<S>& f, const SuperPoint<S>& z) {
    z.validate();
    if (static_cast<int>(z.even.size()) != f.m() || static_cast<int>(z.odd.size()) != f.n())
        throw std::invalid_argument("evaluate: point dimension mismatch");
    const int N = z.ring_generators();
    std::vector<PolySuper<S>> ev, od;
    for (const auto& e : z.even) ev.push_back(ring_constant(e, 0, N));
    for (const auto& o : z.odd) od.push_back(ring_constant(o, 0, N));
    return as_grassmann(substitute(f, ev, od, 0, N));
}

/// GaussPoly superfunctions at a point whose even part is a real body point.
template <class S>
GrassmannElement<CDouble> evaluate(const GaussSuper<S>& f, const SuperPoint<CDouble>& z) {
    z.validate();
    if (static_cast<int>(z.even.size()) != f.m() || static_cast<int>(z.odd.size()) != f.n())
        throw std::invalid_argument("evaluate: point dimension mismatch");
    const int N = z.ring_generators();
    std::vector<double> x;
    for (const auto& e : z.even) {
        if (e.terms().size() > 1 || (e.terms().size() == 1 && e.terms().begin()->first != 0))
            throw std::domain_error("evaluate: GaussPoly needs a purely real even point");
        if (std::abs(e.body().imag()) != 0.0) throw std::domain_error("evaluate: GaussPoly needs a real even point");
        x.push_back(e.body().real());
    }
    GrassmannElement<CDouble> r(N);
    for (const auto& [bits, c] : f.coeffs()) {
        GrassmannElement<CDouble> term = GrassmannElement<CDouble>::scalar(N, c.evaluate(x));
        for (Mask b = bits; b != 0; b &= b - 1) term = wedge_product(term, z.odd[static_cast<std::size_t>(std::countr_zero(b))]);
        r += term;
    }
    return r;
}

/// f(Az + τ) with A, τ over ⋀ℝ^N; (Az)^μ = Σ_ν A_μν z_ν with ring entries on the left.
/// `f_aux` is the number of ring generators already present in f (0 or N); the result always
/// lives on (m, N + n) with the ring generators first.
template <class S>
PolySuper<S> taylor_substitute_affine(const PolySuper<S>& f, const SuperMatrix<S>& A, const SuperPoint<S>& tau,
                                      int f_aux = 0) {
    const int m = A.m();
    const int n = A.n();
    const int N = A.N();
    if (f.m() != m || f.n() != f_aux + n || (f_aux != 0 && f_aux != N))
        throw std::invalid_argument("taylor_substitute_affine: dimension mismatch");
    if (!A.parity_consistent()) throw std::invalid_argument("taylor_substitute_affine: parity-inconsistent matrix");
    tau.validate();
    if (static_cast<int>(tau.even.size()) != m || static_cast<int>(tau.odd.size()) != n || tau.ring_generators() != N)
        throw std::invalid_argument("taylor_substitute_affine: translation dimension mismatch");
    const int tn = N + n;
    auto coordinate = [&](int nu) {
        return nu < m ? PolySuper<S>::even_coordinate(m, tn, nu) : PolySuper<S>::odd_coordinate(m, tn, N + nu - m);
    };
    std::vector<PolySuper<S>> images;
    for (int mu = 0; mu < m + n; ++mu) {
        PolySuper<S> img = ring_constant(mu < m ? tau.even[static_cast<std::size_t>(mu)] : tau.odd[static_cast<std::size_t>(mu - m)], m, tn);
        for (int nu = 0; nu < m + n; ++nu) {
            if (A.at(mu, nu).is_zero()) continue;
            img += pointwise_mul(ring_constant(A.at(mu, nu), m, tn), coordinate(nu));
        }
        images.push_back(std::move(img));
    }
    std::vector<PolySuper<S>> even_images(images.begin(), images.begin() + m);
    std::vector<PolySuper<S>> odd_images;
    for (int k = 0; k < f_aux; ++k) odd_images.push_back(PolySuper<S>::odd_coordinate(m, tn, k));
    odd_images.insert(odd_images.end(), images.begin() + m, images.end());
    return substitute(f, even_images, odd_images, m, tn);
}

template <class S>
PolySuper<S> taylor_substitute_affine(const GaussSuper<S>&, const SuperMatrix<S>&, const SuperPoint<S>&, int = 0) {
    throw std::logic_error("taylor_substitute_affine: unsupported for the GaussPoly backend");
}

}  // namespace smq
