#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "smq/numeric.hpp"

namespace smq {

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial with scalar coefficients S.
template <class S>
class Polynomial {
   public:
    using Scalar = S;

    Polynomial() = default;
    explicit Polynomial(int nvars) : nvars_(nvars) {
        if (nvars < 0) throw std::invalid_argument("Polynomial: negative variable count");
    }
    static Polynomial constant(int nvars, const S& c) {
        Polynomial p(nvars);
        p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
        return p;
    }
    static Polynomial one(int nvars) { return constant(nvars, S(1)); }
    static Polynomial variable(int nvars, int i) {
        Polynomial p(nvars);
        Exponents e(static_cast<std::size_t>(nvars), 0);
        e.at(static_cast<std::size_t>(i)) = 1;
        p.add_term(e, S(1));
        return p;
    }

    int nvars() const { return nvars_; }
    const std::map<Exponents, S>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Exponents& e, const S& c) {
        if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("Polynomial: exponent length mismatch");
        if (smq::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (smq::is_zero(it->second)) terms_.erase(it);
        }
    }

    S coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? S(0) : it->second;
    }
    S constant_term() const { return coeff(Exponents(static_cast<std::size_t>(nvars_), 0)); }

    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int k : e) s += k;
            d = std::max(d, s);
        }
        return d;
    }
    int degree_in(int i) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(i)]);
        return d;
    }

    Polynomial& operator+=(const Polynomial& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(const S& s) {
        if (smq::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    Polynomial operator-() const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const S& s) { return a *= s; }
    friend Polynomial operator*(const S& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_same(b);
        Polynomial r(a.nvars_);
        Exponents e(static_cast<std::size_t>(a.nvars_));
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Polynomial derivative(int i) const {
        Polynomial r(nvars_);
        const auto k = static_cast<std::size_t>(i);
        if (i < 0 || i >= nvars_) throw std::out_of_range("Polynomial::derivative: variable index");
        for (const auto& [e, c] : terms_) {
            if (e[k] == 0) continue;
            Exponents f = e;
            f[k] -= 1;
            r.add_term(f, c * S(e[k]));
        }
        return r;
    }

    Polynomial conjugate() const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, conj(c));
        return r;
    }

    /// Re-indexes variables: old variable k becomes new variable map[k] in a space of `new_nvars`.
    Polynomial embed(int new_nvars, const std::vector<int>& map) const {
        Polynomial r(new_nvars);
        Exponents f(static_cast<std::size_t>(new_nvars));
        for (const auto& [e, c] : terms_) {
            std::fill(f.begin(), f.end(), 0);
            for (std::size_t k = 0; k < e.size(); ++k) f.at(static_cast<std::size_t>(map.at(k))) += e[k];
            r.add_term(f, c);
        }
        return r;
    }

    /// p(z) at a numeric point.
    template <class T>
    T evaluate(const std::vector<T>& z) const {
        T total(0);
        for (const auto& [e, c] : terms_) {
            T term = T(to_target<T>(c));
            for (std::size_t k = 0; k < e.size(); ++k)
                for (int j = 0; j < e[k]; ++j) term *= z[k];
            total += term;
        }
        return total;
    }

    /// Variable substitution z_k -> z_k + shift_k, exact binomial expansion.
    Polynomial shifted(const std::vector<S>& shift) const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            Polynomial term = constant(nvars_, c);
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                Polynomial lin = variable(nvars_, static_cast<int>(k)) + constant(nvars_, shift[k]);
                for (int j = 0; j < e[k]; ++j) term = term * lin;
            }
            r += term;
        }
        return r;
    }

    void require_same(const Polynomial& o) const {
        if (o.nvars_ != nvars_) throw std::invalid_argument("Polynomial: variable count mismatch");
    }

   private:
    template <class T>
    static T to_target(const S& c) {
        if constexpr (std::is_same_v<T, S>) return c;
        else return T(to_cdouble(c));
    }

    int nvars_ = 0;
    std::map<Exponents, S> terms_;
};

}  // namespace smq
