#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "smq/gausspoly.hpp"
#include "smq/grassmann.hpp"
#include "smq/polynomial.hpp"

namespace smq {

/// f = Σ_I f_I θ^I on ℝ^{m|n}. C is the even-coefficient backend: Polynomial<S> or GaussPoly<S>.
/// Generators of a combined algebra (tensor legs, coefficient ring ⋀ℝ^N) are just more odd
/// generators; the bit order of a blade is the product order.
template <class C>
class Superfunction {
   public:
    using Coeff = C;
    using Scalar = typename C::Scalar;

    Superfunction() = default;
    Superfunction(int m, int n) : m_(m), n_(n) {
        if (m < 0 || n < 0 || n > kMaxGenerators) throw std::invalid_argument("Superfunction: bad dimensions");
    }
    static Superfunction constant(int m, int n, const Scalar& c) {
        Superfunction f(m, n);
        f.add(0, C::constant(m, c));
        return f;
    }
    static Superfunction one(int m, int n) { return constant(m, n, Scalar(1)); }
    static Superfunction even_coordinate(int m, int n, int i) {
        Superfunction f(m, n);
        f.add(0, C::variable(m, i));
        return f;
    }
    static Superfunction odd_coordinate(int m, int n, int g) {
        Superfunction f(m, n);
        f.add(Mask{1} << g, C::one(m));
        return f;
    }
    static Superfunction blade(int m, int n, Mask bits, const C& coeff) {
        Superfunction f(m, n);
        f.add(bits, coeff);
        return f;
    }

    int m() const { return m_; }
    int n() const { return n_; }
    const std::map<Mask, C>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    C coeff(Mask bits) const {
        auto it = coeffs_.find(bits);
        return it == coeffs_.end() ? C(m_) : it->second;
    }

    void add(Mask bits, const C& c) {
        if (c.nvars() != m_) throw std::invalid_argument("Superfunction: coefficient variable count");
        if (n_ < 32 && (bits >> n_) != 0) throw std::invalid_argument("Superfunction: blade outside range");
        if (c.is_zero()) return;
        auto [it, inserted] = coeffs_.try_emplace(bits, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    /// 0 even, 1 odd, -1 inhomogeneous; zero counts as even.
    int parity() const {
        int p = -2;
        for (const auto& [bits, c] : coeffs_) {
            const int q = popcount(bits) & 1;
            if (p == -2) p = q;
            else if (p != q) return -1;
        }
        return p == -2 ? 0 : p;
    }
    Superfunction part(int par) const {
        Superfunction r(m_, n_);
        for (const auto& [bits, c] : coeffs_)
            if ((popcount(bits) & 1) == par) r.coeffs_.emplace(bits, c);
        return r;
    }

    Superfunction& operator+=(const Superfunction& o) {
        require_same(o);
        for (const auto& [bits, c] : o.coeffs_) add(bits, c);
        return *this;
    }
    Superfunction& operator-=(const Superfunction& o) {
        require_same(o);
        for (const auto& [bits, c] : o.coeffs_) add(bits, -c);
        return *this;
    }
    Superfunction& operator*=(const Scalar& s) {
        if (smq::is_zero(s)) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [bits, c] : coeffs_) c *= s;
        return *this;
    }
    Superfunction operator-() const {
        Superfunction r(m_, n_);
        for (const auto& [bits, c] : coeffs_) r.coeffs_.emplace(bits, -c);
        return r;
    }
    friend Superfunction operator+(Superfunction a, const Superfunction& b) { return a += b; }
    friend Superfunction operator-(Superfunction a, const Superfunction& b) { return a -= b; }
    friend Superfunction operator*(Superfunction a, const Scalar& s) { return a *= s; }
    friend Superfunction operator*(const Scalar& s, Superfunction a) { return a *= s; }
    friend bool operator==(const Superfunction& a, const Superfunction& b) {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Superfunction& a, const Superfunction& b) { return !(a == b); }

    void require_same(const Superfunction& o) const {
        if (o.m_ != m_ || o.n_ != n_) throw std::invalid_argument("Superfunction: dimension mismatch");
    }

    /// Applies `fn` to every coefficient, keeping blades.
    Superfunction map_coeffs(const std::function<C(const C&)>& fn) const {
        Superfunction r(m_, n_);
        for (const auto& [bits, c] : coeffs_) r.add(bits, fn(c));
        return r;
    }

    /// Relabels even variables and odd generators into a larger space. Generator k maps to
    /// odd_map[k]; the blade sign follows from reordering.
    Superfunction embed(int new_m, int new_n, const std::vector<int>& even_map, const std::vector<int>& odd_map) const {
        Superfunction r(new_m, new_n);
        for (const auto& [bits, c] : coeffs_) {
            Mask out = 0;
            const int s = permute_blade(bits, odd_map, &out);
            C e = c.embed(new_m, even_map);
            if (s < 0) e = -e;
            r.add(out, e);
        }
        return r;
    }

   private:
    int m_ = 0;
    int n_ = 0;
    std::map<Mask, C> coeffs_;
};

template <class S>
using PolySuper = Superfunction<Polynomial<S>>;
template <class S>
using GaussSuper = Superfunction<GaussPoly<S>>;

/// Σ ε(I,J) f_I g_J θ^{I∪J}.
template <class C>
Superfunction<C> pointwise_mul(const Superfunction<C>& f, const Superfunction<C>& g) {
    f.require_same(g);
    Superfunction<C> r(f.m(), f.n());
    for (const auto& [a, ca] : f.coeffs()) {
        for (const auto& [b, cb] : g.coeffs()) {
            if ((a & b) != 0) continue;
            C prod = ca * cb;
            if (reorder_sign(a, b) < 0) prod = -prod;
            r.add(a | b, prod);
        }
    }
    return r;
}

template <class C>
Superfunction<C> conjugate(const Superfunction<C>& f) {
    return f.map_coeffs([](const C& c) { return c.conjugate(); });
}

template <class C>
Superfunction<C> derivative_even(const Superfunction<C>& f, int var) {
    if (var < 0 || var >= f.m()) throw std::out_of_range("derivative: even index out of range");
    return f.map_coeffs([var](const C& c) { return c.derivative(var); });
}

/// Left derivative in generator g: passes the generators before g with a sign.
template <class C>
Superfunction<C> derivative_odd(const Superfunction<C>& f, int g) {
    if (g < 0 || g >= f.n()) throw std::out_of_range("derivative: odd index out of range");
    Superfunction<C> r(f.m(), f.n());
    const Mask bit = Mask{1} << g;
    for (const auto& [bits, c] : f.coeffs()) {
        if ((bits & bit) == 0) continue;
        const bool odd = (popcount(bits & (bit - 1)) & 1) != 0;
        r.add(bits & ~bit, odd ? C(-c) : c);
    }
    return r;
}

/// Direction μ in [0, m+n): even variables first, then odd generators.
template <class C>
Superfunction<C> partial_derivative(const Superfunction<C>& f, int mu) {
    if (mu < 0 || mu >= f.m() + f.n()) throw std::out_of_range("partial_derivative: direction out of range");
    return mu < f.m() ? derivative_even(f, mu) : derivative_odd(f, mu - f.m());
}

/// ∫ dx ∫ dθ f: top-blade coefficient of the odd generators in `gens` (right-placed), integrated over ℝ^m.
template <class S>
CDouble berezin_lebesgue(const GaussSuper<S>& f) {
    const Mask top = f.n() >= 32 ? ~Mask{0} : ((Mask{1} << f.n()) - 1);
    return f.coeff(top).integrate();
}
template <class S>
CDouble berezin_lebesgue(const PolySuper<S>&) {
    throw std::domain_error("berezin_lebesgue: polynomial backend is not integrable");
}

/// Exact form of berezin_lebesgue when only the top blade matters.
template <class S>
typename GaussPoly<S>::Moment berezin_lebesgue_exact(const GaussSuper<S>& f) {
    const Mask top = (Mask{1} << f.n()) - 1;
    return f.coeff(top).integrate_exact();
}

/// ⟨f, g⟩ = Σ_I ε(I, ∁I) ∫ conj(f_I) g_∁I.
template <class S>
CDouble scalar_super(const GaussSuper<S>& f, const GaussSuper<S>& g) {
    f.require_same(g);
    const Mask full = (Mask{1} << f.n()) - 1;
    CDouble total{0.0, 0.0};
    for (const auto& [bits, c] : f.coeffs()) {
        const Mask comp = full & ~bits;
        auto it = g.coeffs().find(comp);
        if (it == g.coeffs().end()) continue;
        CDouble v = (c.conjugate() * it->second).integrate();
        total += reorder_sign(bits, comp) < 0 ? -v : v;
    }
    return total;
}

/// (f, g) = Σ_I ∫ conj(f_I) g_I.
template <class S>
CDouble scalar_pos(const GaussSuper<S>& f, const GaussSuper<S>& g) {
    f.require_same(g);
    CDouble total{0.0, 0.0};
    for (const auto& [bits, c] : f.coeffs()) {
        auto it = g.coeffs().find(bits);
        if (it == g.coeffs().end()) continue;
        total += (c.conjugate() * it->second).integrate();
    }
    return total;
}

template <class S>
CDouble scalar_super(const PolySuper<S>&, const PolySuper<S>&) {
    throw std::domain_error("scalar_super: polynomial backend is not integrable");
}
template <class S>
CDouble scalar_pos(const PolySuper<S>&, const PolySuper<S>&) {
    throw std::domain_error("scalar_pos: polynomial backend is not integrable");
}

/// Uniform sampling grid: `points` per axis on [−radius, radius] in every even variable.
struct SampleGrid {
    double radius = 4.0;
    int points = 33;
};

/// max over the grid of Σ_I |D^α f_I(x)|; a lower bound for the true supremum.
template <class S>
double seminorm_estimate(const GaussSuper<S>& f, const std::vector<int>& alpha, const SampleGrid& grid) {
    if (static_cast<int>(alpha.size()) != f.m()) throw std::invalid_argument("seminorm_estimate: multi-index length");
    if (grid.points < 1) throw std::invalid_argument("seminorm_estimate: empty grid");
    std::vector<GaussPoly<S>> derived;
    for (const auto& [bits, c] : f.coeffs()) {
        GaussPoly<S> d = c;
        for (std::size_t k = 0; k < alpha.size(); ++k)
            for (int j = 0; j < alpha[k]; ++j) d = d.derivative(static_cast<int>(k));
        derived.push_back(std::move(d));
    }
    const int m = f.m();
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    std::vector<double> z(static_cast<std::size_t>(m));
    const double h = grid.points == 1 ? 0.0 : 2.0 * grid.radius / (grid.points - 1);
    double best = 0.0;
    while (true) {
        for (int k = 0; k < m; ++k) z[static_cast<std::size_t>(k)] = grid.points == 1 ? 0.0 : -grid.radius + h * idx[static_cast<std::size_t>(k)];
        double s = 0.0;
        for (const auto& d : derived) s += std::abs(d.evaluate(z));
        best = std::max(best, s);
        int k = 0;
        for (; k < m; ++k) {
            if (++idx[static_cast<std::size_t>(k)] < grid.points) break;
            idx[static_cast<std::size_t>(k)] = 0;
        }
        if (k == m) break;
    }
    return best;
}

/// Converts a float-free exact superfunction to float mode.
template <template <class> class B>
Superfunction<B<CDouble>> to_float(const Superfunction<B<QComplex>>& f);

template <>
inline PolySuper<CDouble> to_float(const PolySuper<QComplex>& f) {
    PolySuper<CDouble> r(f.m(), f.n());
    for (const auto& [bits, c] : f.coeffs()) {
        Polynomial<CDouble> p(f.m());
        for (const auto& [e, v] : c.terms()) p.add_term(e, to_cdouble(v));
        r.add(bits, p);
    }
    return r;
}
template <>
inline GaussSuper<CDouble> to_float(const GaussSuper<QComplex>& f) {
    GaussSuper<CDouble> r(f.m(), f.n());
    for (const auto& [bits, c] : f.coeffs()) {
        Polynomial<CDouble> p(f.m());
        for (const auto& [e, v] : c.poly().terms()) p.add_term(e, to_cdouble(v));
        r.add(bits, GaussPoly<CDouble>(p, c.widths()));
    }
    return r;
}

}  // namespace smq
