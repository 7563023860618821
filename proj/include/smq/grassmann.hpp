#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "smq/numeric.hpp"

namespace smq {

/// Blade mask: bit k set means generator k+1 is present.
using Mask = std::uint32_t;

/// Largest generator count accepted by the public IndexSet type.
inline constexpr int kMaxPublicGenerators = 16;
/// Largest generator count for internal combined algebras (tensor legs, coefficient rings).
inline constexpr int kMaxGenerators = 31;

inline int popcount(Mask m) { return std::popcount(m); }

/// Parity of the number of pairs (i in a, j in b) with i > j, as ±1.
/// For disjoint masks this is ε(a, b); for overlapping masks it is the Clifford
/// reordering sign (equal generators collapse to 1 after sorting).
inline int reorder_sign(Mask a, Mask b) {
    int count = 0;
    while (b != 0) {
        const int j = std::countr_zero(b);
        b &= b - 1;
        count += std::popcount(a >> (j + 1));
    }
    return (count & 1) != 0 ? -1 : 1;
}

/// ε(a, b) on masks: 0 if they overlap, otherwise the sorting sign.
inline int wedge_sign(Mask a, Mask b) { return (a & b) != 0 ? 0 : reorder_sign(a, b); }

/// Ordered subset of {1..n} stored as a bitmask.
class IndexSet {
   public:
    IndexSet() = default;
    IndexSet(Mask bits, int n);
    static IndexSet from_list(const std::vector<int>& one_based, int n);
    static IndexSet full(int n);

    Mask bits() const { return bits_; }
    int n() const { return n_; }
    int size() const { return popcount(bits_); }
    bool empty() const { return bits_ == 0; }
    bool contains(int one_based) const { return ((bits_ >> (one_based - 1)) & 1U) != 0; }
    IndexSet complement() const;
    std::vector<int> to_list() const;

    friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.bits_ == b.bits_ && a.n_ == b.n_; }
    friend bool operator<(const IndexSet& a, const IndexSet& b) { return a.bits_ < b.bits_; }

   private:
    Mask bits_ = 0;
    int n_ = 0;
};

/// ε(I, J): 0 if I∩J ≠ ∅, else (−1)^{#transpositions sorting I followed by J}.
int eps_sign(const IndexSet& I, const IndexSet& J);
/// c_IJ with θ^I θ^J = c_IJ θ^{IΔJ} in Cl(n, ℂ) (θ^iθ^i = 1).
int clifford_coeff(const IndexSet& I, const IndexSet& J);

/// Alternative closed forms for c_IJ, with exponent d(d+1)/2 + |I||J| or d(d+1)/2 + |I|d; kept so tests can compare them with the oracle.
enum class PrintedCliffordVariant { pairwise_IJ, coproduct_I_d };
int clifford_coeff_printed(const IndexSet& I, const IndexSet& J, PrintedCliffordVariant variant);

/// Element of ⋀ℝⁿ ⊗ ℂ (or of Cl(n, ℂ) when multiplied with clifford_product).
template <class S>
class GrassmannElement {
   public:
    GrassmannElement() = default;
    explicit GrassmannElement(int n) : n_(n) { check_n(n); }
    static GrassmannElement scalar(int n, const S& c) {
        GrassmannElement e(n);
        e.add_term(0, c);
        return e;
    }
    static GrassmannElement blade(int n, Mask bits, const S& c = S(1)) {
        GrassmannElement e(n);
        e.add_term(bits, c);
        return e;
    }
    static GrassmannElement generator(int n, int zero_based) { return blade(n, Mask{1} << zero_based); }

    int n() const { return n_; }
    const std::map<Mask, S>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    S coeff(Mask bits) const {
        auto it = terms_.find(bits);
        return it == terms_.end() ? S(0) : it->second;
    }
    S body() const { return coeff(0); }

    void add_term(Mask bits, const S& c) {
        if (smq::is_zero(c)) return;
        if (n_ < 32 && (bits >> n_) != 0) throw std::invalid_argument("blade outside generator range");
        auto [it, inserted] = terms_.try_emplace(bits, c);
        if (!inserted) {
            it->second += c;
            if (smq::is_zero(it->second)) terms_.erase(it);
        }
    }

    /// 0 even, 1 odd, -1 inhomogeneous; the zero element counts as even.
    int parity() const {
        int p = -2;
        for (const auto& [bits, c] : terms_) {
            const int q = popcount(bits) & 1;
            if (p == -2) p = q;
            else if (p != q) return -1;
        }
        return p == -2 ? 0 : p;
    }

    GrassmannElement& operator+=(const GrassmannElement& o) {
        require_same(o);
        for (const auto& [bits, c] : o.terms_) add_term(bits, c);
        return *this;
    }
    GrassmannElement& operator-=(const GrassmannElement& o) {
        require_same(o);
        for (const auto& [bits, c] : o.terms_) add_term(bits, -c);
        return *this;
    }
    GrassmannElement& operator*=(const S& s) {
        if (smq::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [bits, c] : terms_) c *= s;
        return *this;
    }
    friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
    friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
    friend GrassmannElement operator*(GrassmannElement a, const S& s) { return a *= s; }
    friend GrassmannElement operator*(const S& s, GrassmannElement a) { return a *= s; }
    GrassmannElement operator-() const {
        GrassmannElement r(n_);
        for (const auto& [bits, c] : terms_) r.terms_.emplace(bits, -c);
        return r;
    }
    friend bool operator==(const GrassmannElement& a, const GrassmannElement& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    /// Bilinear extension of θ^A θ^B = sign(A,B) · weight(A,B) · θ^{combine(A,B)}.
    template <class Rule>
    static GrassmannElement product(const GrassmannElement& a, const GrassmannElement& b, Rule&& rule) {
        a.require_same(b);
        GrassmannElement r(a.n_);
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) rule(ka, kb, ca, cb, r);
        }
        return r;
    }

    void require_same(const GrassmannElement& o) const {
        if (o.n_ != n_) throw std::invalid_argument("generator count mismatch");
    }

   private:
    static void check_n(int n) {
        if (n < 0 || n > kMaxGenerators) throw std::invalid_argument("generator count out of range");
    }

    int n_ = 0;
    std::map<Mask, S> terms_;
};

template <class S>
GrassmannElement<S> wedge_product(const GrassmannElement<S>& a, const GrassmannElement<S>& b) {
    return GrassmannElement<S>::product(a, b, [](Mask x, Mask y, const S& cx, const S& cy, GrassmannElement<S>& r) {
        if ((x & y) != 0) return;
        S c = cx * cy;
        if (reorder_sign(x, y) < 0) c = -c;
        r.add_term(x | y, c);
    });
}

template <class S>
GrassmannElement<S> clifford_product(const GrassmannElement<S>& a, const GrassmannElement<S>& b) {
    return GrassmannElement<S>::product(a, b, [](Mask x, Mask y, const S& cx, const S& cy, GrassmannElement<S>& r) {
        S c = cx * cy;
        if (reorder_sign(x, y) < 0) c = -c;
        r.add_term(x ^ y, c);
    });
}

/// Clifford product deformed by q: θ^iθ^i = q, so θ^Iθ^J = c_IJ q^{|I∩J|} θ^{IΔJ}.
template <class S>
GrassmannElement<S> q_clifford_product(const GrassmannElement<S>& a, const GrassmannElement<S>& b, const S& q) {
    std::vector<S> qpow(static_cast<std::size_t>(a.n()) + 1, S(1));
    for (std::size_t k = 1; k < qpow.size(); ++k) qpow[k] = qpow[k - 1] * q;
    return GrassmannElement<S>::product(a, b, [&](Mask x, Mask y, const S& cx, const S& cy, GrassmannElement<S>& r) {
        S c = cx * cy * qpow[static_cast<std::size_t>(popcount(x & y))];
        if (reorder_sign(x, y) < 0) c = -c;
        r.add_term(x ^ y, c);
    });
}

template <class S>
GrassmannElement<S> hodge(const GrassmannElement<S>& a) {
    const Mask full = a.n() >= 32 ? ~Mask{0} : ((Mask{1} << a.n()) - 1);
    GrassmannElement<S> r(a.n());
    for (const auto& [bits, c] : a.terms()) {
        const Mask comp = full & ~bits;
        r.add_term(comp, reorder_sign(bits, comp) < 0 ? S(-c) : c);
    }
    return r;
}

template <class S>
GrassmannElement<S> conjugate(const GrassmannElement<S>& a) {
    GrassmannElement<S> r(a.n());
    for (const auto& [bits, c] : a.terms()) r.add_term(bits, conj(c));
    return r;
}

/// ⟨a, b⟩ = Σ conj(a_I) b_J ε(I, J) δ_{J,∁I}.
template <class S>
S super_pairing(const GrassmannElement<S>& a, const GrassmannElement<S>& b) {
    a.require_same(b);
    const Mask full = (Mask{1} << a.n()) - 1;
    S total(0);
    for (const auto& [bits, c] : a.terms()) {
        const Mask comp = full & ~bits;
        auto it = b.terms().find(comp);
        if (it == b.terms().end()) continue;
        S term = conj(c) * it->second;
        if (reorder_sign(bits, comp) < 0) term = -term;
        total += term;
    }
    return total;
}

/// (a, b) = ⟨a, ∗b⟩.
template <class S>
S positive_pairing(const GrassmannElement<S>& a, const GrassmannElement<S>& b) {
    return super_pairing(a, hodge(b));
}

/// Coefficient of the top blade θ^{1..n}.
template <class S>
S berezin_odd(const GrassmannElement<S>& a) {
    const Mask full = a.n() >= 32 ? ~Mask{0} : ((Mask{1} << a.n()) - 1);
    return a.coeff(full);
}

/// Left derivative with respect to generator `g` (zero-based).
template <class S>
GrassmannElement<S> left_derivative(const GrassmannElement<S>& a, int g) {
    GrassmannElement<S> r(a.n());
    const Mask bit = Mask{1} << g;
    for (const auto& [bits, c] : a.terms()) {
        if ((bits & bit) == 0) continue;
        const bool odd = (popcount(bits & (bit - 1)) & 1) != 0;
        r.add_term(bits & ~bit, odd ? S(-c) : c);
    }
    return r;
}

/// exp(x) for x with zero body, by the terminating series.
template <class S>
GrassmannElement<S> exp_nilpotent(const GrassmannElement<S>& x) {
    if (!smq::is_zero(x.body())) throw std::invalid_argument("exp_nilpotent: nonzero body");
    GrassmannElement<S> result = GrassmannElement<S>::scalar(x.n(), S(1));
    GrassmannElement<S> power = result;
    for (int k = 1; k <= x.n() + 1; ++k) {
        power = wedge_product(power, x);
        if (power.is_zero()) break;
        power *= S(1) / S(k);
        result += power;
    }
    return result;
}

/// Canonical reordering of the generators: generator k moves to position perm[k].
/// Returns the signed image of θ^bits.
int permute_blade(Mask bits, const std::vector<int>& perm, Mask* out);

}  // namespace smq
