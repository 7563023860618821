#include "smq/star.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <map>

namespace smq {

DeformationParams::DeformationParams(Rational theta_, Rational alpha_, int m_, int n_)
    : theta(std::move(theta_)), alpha(std::move(alpha_)), m(m_), n(n_) {
    if (sgn(theta) == 0) throw std::invalid_argument("DeformationParams: theta must be nonzero");
    if (sgn(alpha) == 0 || alpha == -1) throw std::invalid_argument("DeformationParams: alpha must not be 0 or -1");
    if (m < 0 || (m % 2) != 0) throw std::invalid_argument("DeformationParams: m must be even and non-negative");
    if (n < 0 || n > kMaxPublicGenerators) throw std::invalid_argument("DeformationParams: n out of range");
}

std::vector<Rational> DeformationParams::omega0() const {
    std::vector<Rational> w(static_cast<std::size_t>(m * m), Rational(0));
    const int h = m / 2;
    for (int j = 0; j < h; ++j) {
        w[static_cast<std::size_t>(j * m + h + j)] = 1;
        w[static_cast<std::size_t>((h + j) * m + j)] = -1;
    }
    return w;
}

Rational DeformationParams::odd_block() const {
    Rational s = (1 + alpha) * (1 + alpha) / (2 * alpha);
    s.canonicalize();
    return s;
}

std::vector<Rational> DeformationParams::omega_tilde() const {
    const int d = m + n;
    std::vector<Rational> w(static_cast<std::size_t>(d * d), Rational(0));
    const auto w0 = omega0();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) w[static_cast<std::size_t>(i * d + j)] = w0[static_cast<std::size_t>(i * m + j)];
    const Rational s = odd_block();
    for (int k = m; k < d; ++k) w[static_cast<std::size_t>(k * d + k)] = s;
    return w;
}

std::vector<Rational> DeformationParams::omega_tilde_inverse() const {
    // ω₀⁻¹ = −ω₀ for the standard block form; the odd block inverts entrywise.
    const int d = m + n;
    std::vector<Rational> w(static_cast<std::size_t>(d * d), Rational(0));
    const auto w0 = omega0();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) w[static_cast<std::size_t>(i * d + j)] = -w0[static_cast<std::size_t>(i * m + j)];
    const Rational inv = 1 / odd_block();
    for (int k = m; k < d; ++k) w[static_cast<std::size_t>(k * d + k)] = inv;
    return w;
}

QComplex DeformationParams::q() const {
    Rational v = -theta * alpha / ((1 + alpha) * (1 + alpha));
    v.canonicalize();
    return {Rational(0), v};
}

namespace {

QComplex odd_kernel_base(const Rational& theta_k, int n) {
    QComplex r = ipow(QComplex(Rational(0), theta_k), static_cast<unsigned>(n));
    if (((n * (n + 1) / 2) & 1) != 0) r = -r;
    return r;
}

}  // namespace

QComplex DeformationParams::kappa_odd() const {
    QComplex r = odd_kernel_base(kernel_theta(), n);
    Rational f = 1;
    for (int k = 0; k < n; ++k) f *= alpha / ((1 + alpha) * (1 + alpha));
    return r * QComplex(f);
}

QComplex DeformationParams::gamma_odd() const {
    QComplex r = odd_kernel_base(kernel_theta(), n);
    Rational f = 1;
    for (int k = 0; k < n; ++k) f /= (1 + alpha);
    return r * QComplex(f);
}

double DeformationParams::kappa_even() const {
    return std::pow(std::numbers::pi * std::abs(theta.get_d()), -static_cast<double>(m));
}

double DeformationParams::gamma_even() const {
    return std::pow(std::numbers::pi * std::abs(theta.get_d()), -static_cast<double>(m) / 2.0);
}

StarCoords StarCoords::standard(int m, int n, int even_offset, int odd_offset) {
    StarCoords c;
    for (int j = 0; j < m / 2; ++j) {
        c.x.push_back(even_offset + j);
        c.w.push_back(even_offset + m / 2 + j);
    }
    for (int k = 0; k < n; ++k) c.odd.push_back(odd_offset + k);
    return c;
}

Mask StarCoords::odd_mask() const {
    Mask m = 0;
    for (int g : odd) m |= Mask{1} << g;
    return m;
}

namespace {

// Enumerates (α, β) ∈ ℕ^h × ℕ^h with |α| + |β| = k.
template <class Fn>
void for_each_split(int h, int k, Fn&& fn) {
    std::vector<int> idx(static_cast<std::size_t>(2 * h), 0);
    const int total = 2 * h;
    if (total == 0) {
        if (k == 0) fn(idx);
        return;
    }
    // Compositions of k into `total` parts.
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == total - 1) {
            idx[static_cast<std::size_t>(pos)] = left;
            fn(idx);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            idx[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, k);
}

template <class S>
int star_degree(const Polynomial<S>& p, const StarCoords& coords) {
    int d = 0;
    for (const auto& [e, c] : p.terms()) {
        int s = 0;
        for (int v : coords.x) s += e[static_cast<std::size_t>(v)];
        for (int v : coords.w) s += e[static_cast<std::size_t>(v)];
        d = std::max(d, s);
    }
    return d;
}

long factorial(int k) {
    long f = 1;
    for (int j = 2; j <= k; ++j) f *= j;
    return f;
}

}  // namespace

template <class S>
Polynomial<S> moyal_even(const Polynomial<S>& p, const Polynomial<S>& q, const Rational& theta, const StarCoords& coords) {
    p.require_same(q);
    Polynomial<S> result(p.nvars());
    if (p.is_zero() || q.is_zero()) return result;
    const int h = static_cast<int>(coords.x.size());
    const int kmax = std::min(star_degree(p, coords), star_degree(q, coords));
    const S half_i_theta = S(from_qcomplex<S>(QComplex(Rational(0), theta / 2)));
    S prefactor(1);
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) prefactor *= half_i_theta;
        for_each_split(h, k, [&](const std::vector<int>& idx) {
            // idx[0..h) = α on x, idx[h..2h) = β on w.
            Polynomial<S> dp = p;
            Polynomial<S> dq = q;
            long denom = 1;
            int beta_total = 0;
            for (int j = 0; j < h; ++j) {
                const int a = idx[static_cast<std::size_t>(j)];
                const int b = idx[static_cast<std::size_t>(h + j)];
                for (int t = 0; t < a; ++t) {
                    dp = dp.derivative(coords.x[static_cast<std::size_t>(j)]);
                    dq = dq.derivative(coords.w[static_cast<std::size_t>(j)]);
                }
                for (int t = 0; t < b; ++t) {
                    dp = dp.derivative(coords.w[static_cast<std::size_t>(j)]);
                    dq = dq.derivative(coords.x[static_cast<std::size_t>(j)]);
                }
                denom *= factorial(a) * factorial(b);
                beta_total += b;
            }
            if (dp.is_zero() || dq.is_zero()) return;
            S c = prefactor * from_rational<S>(Rational(1, denom));
            if ((beta_total & 1) != 0) c = -c;
            result += (dp * dq) * c;
        });
    }
    return result;
}

namespace {

// Sign and target blade of e^A ⋆ e^B restricted to the blade bookkeeping, with spectator
// generators (outside `odd`) treated as graded coefficients.
struct BladeProduct {
    int sign = 0;
    int overlap = 0;
    Mask out = 0;
};

BladeProduct blade_product(Mask A, Mask B, Mask odd) {
    const Mask K = A & ~odd;
    const Mask I = A & odd;
    const Mask L = B & ~odd;
    const Mask J = B & odd;
    BladeProduct r;
    if ((K & L) != 0) return r;
    int s = reorder_sign(K, I) * reorder_sign(L, J) * reorder_sign(K, L) * reorder_sign(I, J);
    if (((popcount(I) * popcount(L)) & 1) != 0) s = -s;
    const Mask KL = K | L;
    const Mask IJ = I ^ J;
    s *= reorder_sign(KL, IJ);
    r.sign = s;
    r.overlap = popcount(I & J);
    r.out = KL | IJ;
    return r;
}

}  // namespace

template <class S>
PolySuper<S> star(const PolySuper<S>& f, const PolySuper<S>& g, const DeformationParams& params, const StarCoords& coords) {
    f.require_same(g);
    if (static_cast<int>(coords.x.size()) * 2 != params.m || static_cast<int>(coords.odd.size()) != params.n)
        throw std::invalid_argument("star: coordinate layout does not match parameters");
    const Mask odd = coords.odd_mask();
    const S q = from_qcomplex<S>(params.q());
    std::vector<S> qpow(static_cast<std::size_t>(params.n) + 1, S(1));
    for (std::size_t k = 1; k < qpow.size(); ++k) qpow[k] = qpow[k - 1] * q;
    PolySuper<S> result(f.m(), f.n());
    for (const auto& [A, fa] : f.coeffs()) {
        for (const auto& [B, gb] : g.coeffs()) {
            const BladeProduct bp = blade_product(A, B, odd);
            if (bp.sign == 0) continue;
            Polynomial<S> even = moyal_even(fa, gb, params.theta, coords);
            if (even.is_zero()) continue;
            S c = qpow[static_cast<std::size_t>(bp.overlap)];
            if (bp.sign < 0) c = -c;
            result.add(bp.out, even * c);
        }
    }
    return result;
}

template <class S>
PolySuper<S> graded_commutator(const PolySuper<S>& f, const PolySuper<S>& g, const DeformationParams& params) {
    PolySuper<S> result(f.m(), f.n());
    for (int pf = 0; pf < 2; ++pf) {
        const PolySuper<S> fp = f.part(pf);
        if (fp.is_zero()) continue;
        for (int pg = 0; pg < 2; ++pg) {
            const PolySuper<S> gp = g.part(pg);
            if (gp.is_zero()) continue;
            result += star(fp, gp, params);
            if ((pf & pg) != 0) result += star(gp, fp, params);
            else result -= star(gp, fp, params);
        }
    }
    return result;
}

template <class C>
Superfunction<C> poisson_bracket(const Superfunction<C>& f, const Superfunction<C>& g, const DeformationParams& params) {
    using S = typename C::Scalar;
    f.require_same(g);
    if (f.m() != params.m || f.n() != params.n) throw std::invalid_argument("poisson_bracket: dimension mismatch");
    const int d = params.m + params.n;
    const auto inv = params.omega_tilde_inverse();
    Superfunction<C> result(f.m(), f.n());
    for (int pf = 0; pf < 2; ++pf) {
        const Superfunction<C> fp = f.part(pf);
        if (fp.is_zero()) continue;
        for (int mu = 0; mu < d; ++mu) {
            const Superfunction<C> dmu = partial_derivative(fp, mu);
            if (dmu.is_zero()) continue;
            const int mu_par = mu < params.m ? 0 : 1;
            for (int nu = 0; nu < d; ++nu) {
                const Rational& w = inv[static_cast<std::size_t>(nu * d + mu)];
                if (sgn(w) == 0) continue;
                const Superfunction<C> dnu = partial_derivative(g, nu);
                if (dnu.is_zero()) continue;
                S c = from_rational<S>(w);
                if ((pf & mu_par) != 0) c = -c;
                result += pointwise_mul(dmu, dnu) * c;
            }
        }
    }
    return result;
}

Rational expansion_prefactor(const DeformationParams& params) {
    const int n = params.n;
    Rational num = 1;
    const int e = n * n - 2 * n;
    for (int k = 0; k < std::abs(e); ++k) num *= (1 + params.alpha);
    if (e < 0) num = 1 / num;
    for (int k = 0; k < n; ++k) num /= params.alpha;
    num.canonicalize();
    return num;
}

template <class S>
PolySuper<S> star_expansion_order2(const PolySuper<S>& f, const PolySuper<S>& g, const DeformationParams& params) {
    f.require_same(g);
    const int d = params.m + params.n;
    const auto inv = params.omega_tilde_inverse();
    auto par = [&](int mu) { return mu < params.m ? 0 : 1; };
    PolySuper<S> result(f.m(), f.n());
    const S first = from_qcomplex<S>(QComplex(Rational(0), params.theta / 2));
    const S second = from_rational<S>(-params.theta * params.theta / 8);
    for (int pf = 0; pf < 2; ++pf) {
        const PolySuper<S> f1 = f.part(pf);
        if (f1.is_zero()) continue;
        result += pointwise_mul(f1, g);
        for (int mu = 0; mu < d; ++mu) {
            const PolySuper<S> dmu = partial_derivative(f1, mu);
            if (dmu.is_zero()) continue;
            for (int nu = 0; nu < d; ++nu) {
                const Rational& w = inv[static_cast<std::size_t>(nu * d + mu)];
                if (sgn(w) == 0) continue;
                S c = first * from_rational<S>(w);
                if ((pf & par(mu)) != 0) c = -c;
                result += pointwise_mul(dmu, partial_derivative(g, nu)) * c;
            }
        }
        for (int mu1 = 0; mu1 < d; ++mu1)
            for (int mu2 = 0; mu2 < d; ++mu2) {
                const PolySuper<S> dd = partial_derivative(partial_derivative(f1, mu2), mu1);
                if (dd.is_zero()) continue;
                for (int nu1 = 0; nu1 < d; ++nu1) {
                    const Rational& w1 = inv[static_cast<std::size_t>(nu1 * d + mu1)];
                    if (sgn(w1) == 0) continue;
                    for (int nu2 = 0; nu2 < d; ++nu2) {
                        const Rational& w2 = inv[static_cast<std::size_t>(nu2 * d + mu2)];
                        if (sgn(w2) == 0) continue;
                        const int e = (pf + 1) * (par(mu1) + par(mu2)) + par(mu1) * (1 + par(mu2));
                        S c = second * from_rational<S>(w1 * w2);
                        if ((e & 1) != 0) c = -c;
                        result += pointwise_mul(dd, partial_derivative(partial_derivative(g, nu2), nu1)) * c;
                    }
                }
            }
    }
    return result * from_rational<S>(expansion_prefactor(params));
}

// ---------------------------------------------------------------------------
// Float series on GaussPoly inputs, evaluated pointwise from Taylor coefficients.

namespace {

// Dense Taylor coefficients of p(z+h)·exp(−Σ a (z+h)²/2) in h, box-truncated at order K per axis.
std::vector<CDouble> taylor_box(const GaussPoly<CDouble>& p, const std::vector<double>& z, int K) {
    const int m = p.nvars();
    const std::size_t side = static_cast<std::size_t>(K) + 1;
    std::size_t total = 1;
    for (int k = 0; k < m; ++k) total *= side;
    std::vector<CDouble> box(total, CDouble(0.0, 0.0));
    // Polynomial part: Π (z_i + h_i)^{e_i} expanded binomially.
    for (const auto& [e, c] : p.poly().terms()) {
        std::vector<std::vector<double>> axis(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            const int ei = e[static_cast<std::size_t>(i)];
            auto& a = axis[static_cast<std::size_t>(i)];
            a.assign(static_cast<std::size_t>(ei) + 1, 0.0);
            double binom = 1.0;
            for (int j = 0; j <= ei; ++j) {
                a[static_cast<std::size_t>(j)] = binom * std::pow(z[static_cast<std::size_t>(i)], ei - j);
                binom = binom * (ei - j) / (j + 1);
            }
        }
        std::vector<int> idx(static_cast<std::size_t>(m), 0);
        while (true) {
            bool inside = true;
            std::size_t flat = 0;
            double v = 1.0;
            for (int i = m - 1; i >= 0; --i) {
                const int j = idx[static_cast<std::size_t>(i)];
                if (j > K) inside = false;
                flat = flat * side + static_cast<std::size_t>(j);
                v *= axis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
            if (inside) box[flat] += c * v;
            int i = 0;
            for (; i < m; ++i) {
                if (++idx[static_cast<std::size_t>(i)] <= e[static_cast<std::size_t>(i)]) break;
                idx[static_cast<std::size_t>(i)] = 0;
            }
            if (i == m) break;
        }
    }
    // Gaussian factor per axis: g(h) = exp(−a z h − a h²/2), (j+1) c_{j+1} = −a z c_j − a c_{j−1}.
    double envelope = 0.0;
    std::size_t stride = 1;
    for (int i = 0; i < m; ++i) {
        const double a = p.widths()[static_cast<std::size_t>(i)].get_d();
        const double zi = z[static_cast<std::size_t>(i)];
        envelope += a * zi * zi;
        if (a != 0.0) {
            std::vector<double> g(side, 0.0);
            g[0] = 1.0;
            if (K >= 1) g[1] = -a * zi;
            for (int j = 1; j < K; ++j)
                g[static_cast<std::size_t>(j) + 1] = (-a * zi * g[static_cast<std::size_t>(j)] - a * g[static_cast<std::size_t>(j) - 1]) / (j + 1);
            // Convolve along axis i (index stride `stride`), truncating at K.
            std::vector<CDouble> out(total, CDouble(0.0, 0.0));
            for (std::size_t flat = 0; flat < total; ++flat) {
                if (box[flat] == CDouble(0.0, 0.0)) continue;
                const std::size_t j = (flat / stride) % side;
                const std::size_t base = flat - j * stride;
                for (std::size_t t = 0; j + t < side; ++t) out[base + (j + t) * stride] += box[flat] * g[t];
            }
            box.swap(out);
        }
        stride *= side;
    }
    const double env = std::exp(-0.5 * envelope);
    for (auto& v : box) v *= env;
    return box;
}

}  // namespace

CDouble moyal_even_at(const GaussPoly<CDouble>& p, const GaussPoly<CDouble>& q, double theta,
                      const std::vector<double>& z, const SeriesOptions& options) {
    if (p.nvars() != q.nvars() || static_cast<int>(z.size()) != p.nvars() || (p.nvars() % 2) != 0)
        throw std::invalid_argument("moyal_even_at: dimension mismatch");
    if (p.is_zero() || q.is_zero()) return {0.0, 0.0};
    const int m = p.nvars();
    const int h = m / 2;
    const int K = options.max_order;
    const auto F = taylor_box(p, z, K);
    const auto G = taylor_box(q, z, K);
    const std::size_t side = static_cast<std::size_t>(K) + 1;
    std::vector<double> lf(side);
    for (std::size_t j = 0; j < side; ++j) lf[j] = std::lgamma(static_cast<double>(j) + 1.0);
    const CDouble half_i_theta(0.0, theta / 2.0);
    CDouble total(0.0, 0.0);
    CDouble pref(1.0, 0.0);
    int quiet = 0;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) pref *= half_i_theta;
        CDouble order(0.0, 0.0);
        for_each_split(h, k, [&](const std::vector<int>& idx) {
            // F index: x-exponents α, w-exponents β; G index: x-exponents β, w-exponents α.
            std::size_t fi = 0;
            std::size_t gi = 0;
            double logfact = 0.0;
            int beta_total = 0;
            for (int i = m - 1; i >= 0; --i) {
                const int fa = i < h ? idx[static_cast<std::size_t>(i)] : idx[static_cast<std::size_t>(i)];
                const int ga = i < h ? idx[static_cast<std::size_t>(h + i)] : idx[static_cast<std::size_t>(i - h)];
                fi = fi * side + static_cast<std::size_t>(fa);
                gi = gi * side + static_cast<std::size_t>(ga);
            }
            for (int j = 0; j < 2 * h; ++j) logfact += lf[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
            for (int j = 0; j < h; ++j) beta_total += idx[static_cast<std::size_t>(h + j)];
            const CDouble term = F[fi] * G[gi] * std::exp(logfact);
            order += (beta_total & 1) != 0 ? -term : term;
        });
        order *= pref;
        total += order;
        if (k >= 2 && std::abs(order) <= options.tol * std::max(std::abs(total), 1e-300)) {
            if (++quiet >= 4) break;
        } else {
            quiet = 0;
        }
    }
    return total;
}

GrassmannElement<CDouble> star_series_at(const GaussSuper<CDouble>& f, const GaussSuper<CDouble>& g,
                                         const DeformationParams& params, const std::vector<double>& z,
                                         const SeriesOptions& options) {
    f.require_same(g);
    if (f.m() != params.m || f.n() != params.n) throw std::invalid_argument("star_series_at: dimension mismatch");
    const CDouble q = to_cdouble(params.q());
    GrassmannElement<CDouble> out(f.n());
    for (const auto& [I, fi] : f.coeffs())
        for (const auto& [J, gj] : g.coeffs()) {
            CDouble v = moyal_even_at(fi, gj, params.theta.get_d(), z, options);
            v *= std::pow(q, popcount(I & J));
            out.add_term(I ^ J, reorder_sign(I, J) < 0 ? -v : v);
        }
    return out;
}

template Polynomial<QComplex> moyal_even(const Polynomial<QComplex>&, const Polynomial<QComplex>&, const Rational&, const StarCoords&);
template Polynomial<CDouble> moyal_even(const Polynomial<CDouble>&, const Polynomial<CDouble>&, const Rational&, const StarCoords&);
template PolySuper<QComplex> star(const PolySuper<QComplex>&, const PolySuper<QComplex>&, const DeformationParams&, const StarCoords&);
template PolySuper<CDouble> star(const PolySuper<CDouble>&, const PolySuper<CDouble>&, const DeformationParams&, const StarCoords&);
template PolySuper<QComplex> graded_commutator(const PolySuper<QComplex>&, const PolySuper<QComplex>&, const DeformationParams&);
template PolySuper<CDouble> graded_commutator(const PolySuper<CDouble>&, const PolySuper<CDouble>&, const DeformationParams&);
template PolySuper<QComplex> poisson_bracket(const PolySuper<QComplex>&, const PolySuper<QComplex>&, const DeformationParams&);
template PolySuper<CDouble> poisson_bracket(const PolySuper<CDouble>&, const PolySuper<CDouble>&, const DeformationParams&);
template GaussSuper<CDouble> poisson_bracket(const GaussSuper<CDouble>&, const GaussSuper<CDouble>&, const DeformationParams&);
template GaussSuper<QComplex> poisson_bracket(const GaussSuper<QComplex>&, const GaussSuper<QComplex>&, const DeformationParams&);
template PolySuper<QComplex> star_expansion_order2(const PolySuper<QComplex>&, const PolySuper<QComplex>&, const DeformationParams&);
template PolySuper<CDouble> star_expansion_order2(const PolySuper<CDouble>&, const PolySuper<CDouble>&, const DeformationParams&);

}  // namespace smq
