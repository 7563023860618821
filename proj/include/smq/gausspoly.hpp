#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "smq/polynomial.hpp"

namespace smq {

/// poly(z) · exp(−Σ a_i z_i² / 2). Widths a_i ≥ 0 internally; user-facing values
/// must have a_i > 0 (checked by `require_integrable`). The zero element carries no widths.
template <class S>
class GaussPoly {
   public:
    using Scalar = S;

    GaussPoly() = default;
    explicit GaussPoly(int nvars) : poly_(nvars), widths_(static_cast<std::size_t>(nvars), Rational(0)) {}
    GaussPoly(Polynomial<S> poly, std::vector<Rational> widths) : poly_(std::move(poly)), widths_(std::move(widths)) {
        if (static_cast<int>(widths_.size()) != poly_.nvars()) throw std::invalid_argument("GaussPoly: width count");
        for (const auto& a : widths_)
            if (sgn(a) < 0) throw std::invalid_argument("GaussPoly: negative width");
    }
    static GaussPoly constant(int nvars, const S& c) { return GaussPoly(Polynomial<S>::constant(nvars, c), zeros(nvars)); }
    static GaussPoly one(int nvars) { return constant(nvars, S(1)); }
    static GaussPoly variable(int nvars, int i) { return GaussPoly(Polynomial<S>::variable(nvars, i), zeros(nvars)); }
    static GaussPoly gaussian(std::vector<Rational> widths) {
        const int nv = static_cast<int>(widths.size());
        return GaussPoly(Polynomial<S>::one(nv), std::move(widths));
    }

    int nvars() const { return poly_.nvars(); }
    const Polynomial<S>& poly() const { return poly_; }
    const std::vector<Rational>& widths() const { return widths_; }
    bool is_zero() const { return poly_.is_zero(); }

    bool integrable() const {
        for (const auto& a : widths_)
            if (sgn(a) <= 0) return false;
        return true;
    }
    void require_integrable() const {
        if (!is_zero() && !integrable()) throw std::domain_error("GaussPoly: non-integrable (zero width)");
    }

    GaussPoly& operator+=(const GaussPoly& o) {
        poly_.require_same(o.poly_);
        if (o.is_zero()) return *this;
        if (is_zero()) {
            *this = o;
            return *this;
        }
        if (widths_ != o.widths_) throw std::invalid_argument("GaussPoly: adding terms with different widths");
        poly_ += o.poly_;
        return *this;
    }
    GaussPoly& operator-=(const GaussPoly& o) { return *this += -o; }
    GaussPoly& operator*=(const S& s) {
        poly_ *= s;
        return *this;
    }
    GaussPoly operator-() const { return GaussPoly(-poly_, widths_); }
    friend GaussPoly operator+(GaussPoly a, const GaussPoly& b) { return a += b; }
    friend GaussPoly operator-(GaussPoly a, const GaussPoly& b) { return a -= b; }
    friend GaussPoly operator*(GaussPoly a, const S& s) { return a *= s; }
    friend GaussPoly operator*(const S& s, GaussPoly a) { return a *= s; }
    friend GaussPoly operator*(const GaussPoly& a, const GaussPoly& b) {
        std::vector<Rational> w(a.widths_.size());
        for (std::size_t k = 0; k < w.size(); ++k) w[k] = a.widths_[k] + b.widths_[k];
        return GaussPoly(a.poly_ * b.poly_, std::move(w));
    }
    GaussPoly& operator*=(const GaussPoly& o) { return *this = *this * o; }
    friend bool operator==(const GaussPoly& a, const GaussPoly& b) {
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero() && a.nvars() == b.nvars();
        return a.poly_ == b.poly_ && a.widths_ == b.widths_;
    }

    /// ∂_i [p e^{−a z²/2}] = (∂_i p − a_i z_i p) e^{−a z²/2}.
    GaussPoly derivative(int i) const {
        Polynomial<S> d = poly_.derivative(i);
        const Rational& a = widths_.at(static_cast<std::size_t>(i));
        if (sgn(a) != 0) d -= Polynomial<S>::variable(nvars(), i) * poly_ * from_rational<S>(a);
        return GaussPoly(std::move(d), widths_);
    }

    GaussPoly conjugate() const { return GaussPoly(poly_.conjugate(), widths_); }

    GaussPoly embed(int new_nvars, const std::vector<int>& map) const {
        std::vector<Rational> w(static_cast<std::size_t>(new_nvars), Rational(0));
        for (std::size_t k = 0; k < widths_.size(); ++k) w.at(static_cast<std::size_t>(map.at(k))) = widths_[k];
        return GaussPoly(poly_.embed(new_nvars, map), std::move(w));
    }

    CDouble evaluate(const std::vector<double>& z) const {
        std::vector<CDouble> zc(z.begin(), z.end());
        double quad = 0.0;
        for (std::size_t k = 0; k < z.size(); ++k) quad += widths_[k].get_d() * z[k] * z[k];
        return poly_.template evaluate<CDouble>(zc) * std::exp(-0.5 * quad);
    }

    /// Exact integral over ℝ^m written as rational_part · Π_i sqrt(2π / a_i).
    struct Moment {
        S rational_part;
        std::vector<Rational> widths;
        CDouble value() const {
            double f = 1.0;
            for (const auto& a : widths) f *= std::sqrt(2.0 * std::numbers::pi / a.get_d());
            return to_cdouble(rational_part) * f;
        }
    };

    /// ∫ z^k e^{−a z²/2} dz = (k−1)!! a^{−k/2} sqrt(2π/a) for even k, 0 for odd k.
    Moment integrate_exact() const {
        require_integrable();
        Moment m{S(0), widths_};
        for (const auto& [e, c] : poly_.terms()) {
            S term = c;
            bool vanishes = false;
            for (std::size_t k = 0; k < e.size(); ++k) {
                if ((e[k] & 1) != 0) {
                    vanishes = true;
                    break;
                }
                Rational f(1);
                for (int j = e[k] - 1; j > 0; j -= 2) f *= j;
                for (int j = 0; j < e[k] / 2; ++j) f /= widths_[k];
                term *= from_rational<S>(f);
            }
            if (!vanishes) m.rational_part += term;
        }
        return m;
    }
    CDouble integrate() const {
        if (is_zero()) return {0.0, 0.0};
        return integrate_exact().value();
    }

   private:
    static std::vector<Rational> zeros(int nvars) { return std::vector<Rational>(static_cast<std::size_t>(nvars), Rational(0)); }

    Polynomial<S> poly_;
    std::vector<Rational> widths_;
};

}  // namespace smq
