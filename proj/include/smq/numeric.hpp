#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>

namespace smq {

using Rational = mpq_class;
using CDouble = std::complex<double>;

/// Exact complex number with rational real and imaginary parts.
struct QComplex {
    Rational re;
    Rational im;

    QComplex() : re(0), im(0) {}
    QComplex(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
    QComplex(Rational r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static QComplex i() { return {Rational(0), Rational(1)}; }

    QComplex& operator+=(const QComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    QComplex& operator-=(const QComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    QComplex& operator*=(const QComplex& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    QComplex& operator/=(const QComplex& o) {
        Rational d = o.re * o.re + o.im * o.im;
        if (d == 0) throw std::domain_error("QComplex: division by zero");
        Rational r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = std::move(r);
        return *this;
    }
    QComplex operator-() const { return {-re, -im}; }
    friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
    friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
    friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
    friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
    friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }
};

// Scalar interface shared by the exact and float arithmetic modes.

inline bool is_zero(const QComplex& z) { return sgn(z.re) == 0 && sgn(z.im) == 0; }
inline bool is_zero(const CDouble& z) { return z.real() == 0.0 && z.imag() == 0.0; }
inline QComplex conj(const QComplex& z) { return {z.re, -z.im}; }
inline CDouble conj(const CDouble& z) { return std::conj(z); }
inline CDouble to_cdouble(const QComplex& z) { return {z.re.get_d(), z.im.get_d()}; }
inline CDouble to_cdouble(const CDouble& z) { return z; }

template <class S>
S from_rational(const Rational& q);
template <>
inline QComplex from_rational<QComplex>(const Rational& q) { return QComplex(q); }
template <>
inline CDouble from_rational<CDouble>(const Rational& q) { return {q.get_d(), 0.0}; }

template <class S>
S from_qcomplex(const QComplex& q);
template <>
inline QComplex from_qcomplex<QComplex>(const QComplex& q) { return q; }
template <>
inline CDouble from_qcomplex<CDouble>(const QComplex& q) { return to_cdouble(q); }

template <class S>
S imag_unit() {
    return from_qcomplex<S>(QComplex::i());
}

template <class S>
S ipow(S base, unsigned e) {
    S r(1);
    while (e != 0) {
        if (e & 1U) r *= base;
        base *= base;
        e >>= 1U;
    }
    return r;
}

/// max(|re|, |im|) as a double; used for residual reporting.
inline double max_abs_part(const QComplex& z) {
    return std::max(Rational(abs(z.re)).get_d(), Rational(abs(z.im)).get_d());
}
inline double max_abs_part(const CDouble& z) { return std::max(std::abs(z.real()), std::abs(z.imag())); }

/// Parses "p", "p/q", "-p/q" or a decimal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& s);
/// Canonical "p/q" (or "p" when q = 1).
std::string to_string(const Rational& q);
std::string to_string(const QComplex& z);

}  // namespace smq
