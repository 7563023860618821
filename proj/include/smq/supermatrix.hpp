#pragma once

#include <stdexcept>
#include <vector>

#include "smq/grassmann.hpp"

namespace smq {

/// Finite Grassmann ring ⋀ℝ^N (generators η₁…η_N) standing in for the coefficient algebra.
struct GrassmannRing {
    int N = 0;

    explicit GrassmannRing(int generators = 0) : N(generators) {
        if (N < 0 || N > 10) throw std::invalid_argument("GrassmannRing: N must be in [0, 10]");
    }
    template <class S>
    GrassmannElement<S> scalar(const S& c) const { return GrassmannElement<S>::scalar(N, c); }
    template <class S>
    GrassmannElement<S> eta(int k) const { return GrassmannElement<S>::generator(N, k); }
};

/// Point of ℝ^{m|n} with coordinates in a Grassmann ring: m even and n odd entries.
template <class S>
struct SuperPoint {
    std::vector<GrassmannElement<S>> even;
    std::vector<GrassmannElement<S>> odd;

    static SuperPoint zero(int m, int n, int N) {
        return {std::vector<GrassmannElement<S>>(static_cast<std::size_t>(m), GrassmannElement<S>(N)),
                std::vector<GrassmannElement<S>>(static_cast<std::size_t>(n), GrassmannElement<S>(N))};
    }
    int ring_generators() const {
        if (!even.empty()) return even.front().n();
        if (!odd.empty()) return odd.front().n();
        return 0;
    }
    void validate() const {
        const int N = ring_generators();
        for (const auto& e : even)
            if (e.n() != N || e.parity() != 0) throw std::invalid_argument("SuperPoint: even coordinate must be even");
        for (const auto& o : odd)
            if (o.n() != N || (o.parity() != 1 && !o.is_zero()))
                throw std::invalid_argument("SuperPoint: odd coordinate must be odd");
    }
};

/// (m|n)-block matrix over ⋀ℝ^N; rows and columns are ordered even block first.
template <class S>
class SuperMatrix {
   public:
    SuperMatrix() = default;
    SuperMatrix(int m, int n, int N) : m_(m), n_(n), N_(N) {
        entries_.assign(static_cast<std::size_t>((m + n) * (m + n)), GrassmannElement<S>(N));
    }
    static SuperMatrix identity(int m, int n, int N) {
        SuperMatrix a(m, n, N);
        for (int k = 0; k < m + n; ++k) a.at(k, k) = GrassmannElement<S>::scalar(N, S(1));
        return a;
    }

    int m() const { return m_; }
    int n() const { return n_; }
    int N() const { return N_; }
    int dim() const { return m_ + n_; }
    /// Parity of row/column index: 0 for the first m, 1 afterwards.
    int index_parity(int k) const { return k < m_ ? 0 : 1; }

    GrassmannElement<S>& at(int r, int c) { return entries_.at(static_cast<std::size_t>(r * dim() + c)); }
    const GrassmannElement<S>& at(int r, int c) const { return entries_.at(static_cast<std::size_t>(r * dim() + c)); }

    /// Entry (r,c) must have parity |r|+|c| mod 2.
    bool parity_consistent() const {
        for (int r = 0; r < dim(); ++r)
            for (int c = 0; c < dim(); ++c) {
                const auto& e = at(r, c);
                if (e.is_zero()) continue;
                if (e.parity() != ((index_parity(r) + index_parity(c)) & 1)) return false;
            }
        return true;
    }

    friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.N_ == b.N_ && a.entries_ == b.entries_;
    }
    friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
        a.require_same(b);
        SuperMatrix r = a;
        for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] -= b.entries_[k];
        return r;
    }
    friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
        a.require_same(b);
        SuperMatrix r = a;
        for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] += b.entries_[k];
        return r;
    }
    void require_same(const SuperMatrix& o) const {
        if (o.m_ != m_ || o.n_ != n_ || o.N_ != N_) throw std::invalid_argument("SuperMatrix: size mismatch");
    }

   private:
    int m_ = 0;
    int n_ = 0;
    int N_ = 0;
    std::vector<GrassmannElement<S>> entries_;
};

template <class S>
SuperMatrix<S> supermatrix_mul(const SuperMatrix<S>& a, const SuperMatrix<S>& b) {
    a.require_same(b);
    SuperMatrix<S> r(a.m(), a.n(), a.N());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            GrassmannElement<S> acc(a.N());
            for (int k = 0; k < a.dim(); ++k) {
                if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
                acc += wedge_product(a.at(i, k), b.at(k, j));
            }
            r.at(i, j) = std::move(acc);
        }
    return r;
}

/// (A00ᵀ, −A10ᵀ; A01ᵀ, A11ᵀ).
template <class S>
SuperMatrix<S> supertranspose(const SuperMatrix<S>& a) {
    SuperMatrix<S> r(a.m(), a.n(), a.N());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            // r(i, j) = ±a(j, i); the minus sign sits on the upper-right block (i even, j odd).
            const bool negate = a.index_parity(i) == 0 && a.index_parity(j) == 1;
            r.at(i, j) = negate ? -a.at(j, i) : a.at(j, i);
        }
    return r;
}

/// Body map: strips nilpotent parts, returning the η^∅ coefficients.
template <class S>
std::vector<std::vector<S>> body(const SuperMatrix<S>& a) {
    std::vector<std::vector<S>> r(static_cast<std::size_t>(a.dim()), std::vector<S>(static_cast<std::size_t>(a.dim())));
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a.at(i, j).body();
    return r;
}

}  // namespace smq
