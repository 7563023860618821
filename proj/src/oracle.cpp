#include "smq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smq/kernels.hpp"
#include "smq/parallel.hpp"

namespace smq {

namespace {

using GE = GrassmannElement<QComplex>;

// Writes each term as A·θ^{gens} (gens ordered, on the right) and keeps A.
GE berezin_right(const GE& x, Mask gens) {
    GE r(x.n());
    for (const auto& [k, v] : x.terms()) {
        if ((k & gens) != gens) continue;
        const Mask rest = k & ~gens;
        r.add_term(rest, reorder_sign(rest, gens) < 0 ? -v : v);
    }
    return r;
}

GE ordered_blade(int total, Mask bits) { return GE::blade(total, bits, QComplex(1)); }

// Two-generator blade g_a g_b written in canonical order.
GE pair(int total, int a, int b, const QComplex& c) {
    const Mask bits = (Mask{1} << a) | (Mask{1} << b);
    return GE::blade(total, bits, a < b ? c : -c);
}

GE exponential(const std::vector<GE>& pieces, int total, OddExpansion mode) {
    if (mode == OddExpansion::factorized) {
        GE r = GE::scalar(total, QComplex(1));
        for (const auto& p : pieces) r = wedge_product(r, GE::scalar(total, QComplex(1)) + p);
        return r;
    }
    GE sum(total);
    for (const auto& p : pieces) sum += p;
    return exp_nilpotent(sum);
}

GE restrict_low(const GE& x, int n) {
    GE r(n);
    for (const auto& [k, v] : x.terms()) {
        if ((k >> n) != 0) throw std::logic_error("restrict_low: unintegrated generators remain");
        r.add_term(k, v);
    }
    return r;
}

}  // namespace

GrassmannElement<QComplex> odd_star_berezin(Mask I, Mask J, const DeformationParams& params, OddExpansion mode) {
    const int n = params.n;
    const int total = 3 * n;
    const Mask low = (Mask{1} << n) - 1;
    if ((I & ~low) != 0 || (J & ~low) != 0) throw std::invalid_argument("odd_star_berezin: blade out of range");
    Rational cr = (1 + params.alpha) * (1 + params.alpha) / (params.alpha * params.kernel_theta());
    cr.canonicalize();
    const QComplex c(Rational(0), -cr);
    std::vector<GE> pieces;
    for (int i = 0; i < n; ++i) {
        const int xi = i, x1 = n + i, x2 = 2 * n + i;
        GE e = pair(total, xi, x1, c);
        e += pair(total, x1, x2, c);
        e += pair(total, x2, xi, c);
        pieces.push_back(std::move(e));
    }
    const GE ex = exponential(pieces, total, mode);
    const GE integrand = wedge_product(wedge_product(ordered_blade(total, I << n), ordered_blade(total, J << (2 * n))), ex);
    GE r = berezin_right(integrand, low << n);
    r = berezin_right(r, low << (2 * n));
    return restrict_low(r, n) * params.kappa_odd();
}

std::vector<GrassmannElement<QComplex>> odd_star_table(const DeformationParams& params, OddExpansion mode) {
    const Mask count = Mask{1} << params.n;
    std::vector<GE> table;
    table.reserve(static_cast<std::size_t>(count) * count);
    for (Mask I = 0; I < count; ++I)
        for (Mask J = 0; J < count; ++J) table.push_back(odd_star_berezin(I, J, params, mode));
    return table;
}

GrassmannElement<QComplex> omega_odd_berezin(Mask I, Mask J, const DeformationParams& params, OddExpansion mode) {
    const int n = params.n;
    const int total = 3 * n;
    const Mask low = (Mask{1} << n) - 1;
    if ((I & ~low) != 0 || (J & ~low) != 0) throw std::invalid_argument("omega_odd_berezin: blade out of range");
    Rational inv = 1 / params.kernel_theta();
    inv.canonicalize();
    const QComplex c(Rational(0), inv);
    std::vector<GE> pieces;
    for (int i = 0; i < n; ++i) {
        const int x0 = i, xi = n + i, x1 = 2 * n + i;
        GE e = pair(total, xi, x0, c);
        e += pair(total, x1, x0, c * QComplex(-params.alpha));
        e += pair(total, xi, x1, c * QComplex(-(params.alpha + 1)));
        pieces.push_back(std::move(e));
    }
    const GE ex = exponential(pieces, total, mode);
    GE phi = GE::scalar(total, QComplex(1));
    for (int j = 0; j < n; ++j)
        if (((J >> j) & 1U) != 0) phi = wedge_product(phi, GE::generator(total, n + j) + GE::generator(total, 2 * n + j));
    const GE integrand = wedge_product(wedge_product(ordered_blade(total, I << n), ex), phi);
    GE r = berezin_right(integrand, low << n);
    r = berezin_right(r, low << (2 * n));
    return restrict_low(r, n) * params.gamma_odd();
}

// ---------------------------------------------------------------------------
// Even sector, m = 2.

namespace {

double common_sigma(const GaussPoly<CDouble>& f, const GaussPoly<CDouble>& g) {
    double amin = INFINITY;
    for (const auto* p : {&f, &g}) {
        if (p->is_zero()) continue;
        p->require_integrable();
        for (const auto& a : p->widths()) amin = std::min(amin, a.get_d());
    }
    if (!std::isfinite(amin)) amin = 1.0;
    return 1.0 / std::sqrt(amin);
}

// Weighted samples F[i·P + j] = f(t_i, t_j) w_i w_j.
std::vector<CDouble> weighted_samples(const GaussPoly<CDouble>& f, const Nodes1D& nd) {
    const std::size_t P = nd.t.size();
    std::vector<CDouble> F(P * P);
    parallel_for(P, [&](std::size_t b, std::size_t e) {
        std::vector<double> z(2);
        for (std::size_t i = b; i < e; ++i)
            for (std::size_t j = 0; j < P; ++j) {
                z[0] = nd.t[i];
                z[1] = nd.t[j];
                F[i * P + j] = f.evaluate(z) * (nd.w[i] * nd.w[j]);
            }
    });
    return F;
}

void require_m2(const DeformationParams& params, const char* what) {
    if (params.m != 2) throw std::invalid_argument(std::string(what) + ": quadrature is implemented for m = 2");
}

double even_normalization(const DeformationParams& params) {
    const double t = std::abs(params.theta.get_d());
    return 1.0 / (std::numbers::pi * t * std::numbers::pi * t);
}

}  // namespace

Nodes1D star_grid_nodes(const GaussPoly<CDouble>& f, const GaussPoly<CDouble>& g, const QuadratureSpec& quad) {
    return make_nodes(quad, 0.0, common_sigma(f, g));
}

CDouble even_star_point(const GaussPoly<CDouble>& f, const GaussPoly<CDouble>& g, const DeformationParams& params,
                        const std::vector<double>& z, const QuadratureSpec& quad) {
    if (f.is_zero() || g.is_zero()) return {0.0, 0.0};
    if (params.m == 0) return f.evaluate({}) * g.evaluate({});
    require_m2(params, "even_star_point");
    if (z.size() != 2) throw std::invalid_argument("even_star_point: point must have 2 coordinates");
    const Nodes1D nd = star_grid_nodes(f, g, quad);
    const std::size_t P = nd.t.size();
    const double k = 2.0 / params.kernel_theta().get_d();
    const double x = z[0];
    const double w = z[1];
    const auto F = weighted_samples(f, nd);
    const auto G = weighted_samples(g, nd);
    std::vector<CDouble> E1(P * P), E2(P * P), ph(P);
    for (std::size_t i = 0; i < P; ++i) {
        for (std::size_t j = 0; j < P; ++j) {
            E1[i * P + j] = std::polar(1.0, k * (nd.t[i] - x) * nd.t[j]);
            E2[i * P + j] = std::polar(1.0, k * (x - nd.t[i]) * nd.t[j]);
        }
        ph[i] = std::polar(1.0, -k * nd.t[i] * w);
    }
    // Row x1: Σ_{x2} A[x2, x1] B[x1, x2] e^{−ik x2 w}, then times e^{ik x1 w}.
    std::vector<CDouble> rows(P);
    parallel_for(P, [&](std::size_t b, std::size_t e) {
        std::vector<CDouble> c(P);
        for (std::size_t x1 = b; x1 < e; ++x1) {
            for (std::size_t x2 = 0; x2 < P; ++x2) {
                const CDouble a = cdot(&E1[x2 * P], &F[x1 * P], P);
                const CDouble bb = cdot(&E2[x1 * P], &G[x2 * P], P);
                c[x2] = a * bb;
            }
            rows[x1] = cdot(c.data(), ph.data(), P) * std::conj(ph[x1]);
        }
    });
    return pairwise_sum(rows) * even_normalization(params);
}

EvenStarGrid even_star_grid(const GaussPoly<CDouble>& f, const GaussPoly<CDouble>& g, const DeformationParams& params,
                            const QuadratureSpec& quad) {
    require_m2(params, "even_star_grid");
    if (quad.rule != QuadRule::trapezoid) throw std::invalid_argument("even_star_grid: needs the trapezoid rule");
    EvenStarGrid out;
    out.nodes = star_grid_nodes(f, g, quad);
    const Nodes1D& nd = out.nodes;
    const std::size_t P = nd.t.size();
    out.values.assign(P * P, CDouble(0.0, 0.0));
    if (f.is_zero() || g.is_zero()) return out;
    const double k = 2.0 / params.kernel_theta().get_d();
    const auto F = weighted_samples(f, nd);
    const auto G = weighted_samples(g, nd);
    // Ed[d][w] = e^{ik (d−P+1) h t_w} over the 2P−1 grid differences.
    const std::size_t D = 2 * P - 1;
    std::vector<CDouble> Ed(D * P);
    for (std::size_t d = 0; d < D; ++d)
        for (std::size_t j = 0; j < P; ++j)
            Ed[d * P + j] = std::polar(1.0, k * (static_cast<double>(d) - static_cast<double>(P - 1)) * nd.h * nd.t[j]);
    std::vector<CDouble> Ahat(D * P), Bhat(D * P);
    parallel_for(D, [&](std::size_t b, std::size_t e) {
        for (std::size_t d = b; d < e; ++d)
            for (std::size_t i = 0; i < P; ++i) {
                Ahat[d * P + i] = cdot(&Ed[d * P], &F[i * P], P);
                Bhat[d * P + i] = cdot(&Ed[d * P], &G[i * P], P);
            }
    });
    std::vector<CDouble> Phi(P * P), PhiM(P * P);
    for (std::size_t iw = 0; iw < P; ++iw)
        for (std::size_t j = 0; j < P; ++j) {
            Phi[iw * P + j] = std::polar(1.0, k * nd.t[j] * nd.t[iw]);
            PhiM[iw * P + j] = std::conj(Phi[iw * P + j]);
        }
    const double norm = even_normalization(params);
    parallel_for(P, [&](std::size_t b, std::size_t e) {
        std::vector<CDouble> C(P * P), Dw(P);
        for (std::size_t ix = b; ix < e; ++ix) {
            // C[x1][x2] = Ahat[x2 − ix][x1] · Bhat[ix − x1][x2].
            for (std::size_t x1 = 0; x1 < P; ++x1)
                for (std::size_t x2 = 0; x2 < P; ++x2)
                    C[x1 * P + x2] = Ahat[(x2 + P - 1 - ix) * P + x1] * Bhat[(ix + P - 1 - x1) * P + x2];
            for (std::size_t iw = 0; iw < P; ++iw) {
                for (std::size_t x1 = 0; x1 < P; ++x1) Dw[x1] = cdot(&C[x1 * P], &PhiM[iw * P], P);
                out.values[ix * P + iw] = cdot(&Phi[iw * P], Dw.data(), P) * norm;
            }
        }
    });
    return out;
}

namespace {

GrassmannElement<CDouble> to_float(const GE& e) {
    GrassmannElement<CDouble> r(e.n());
    for (const auto& [k, v] : e.terms()) r.add_term(k, to_cdouble(v));
    return r;
}

GrassmannElement<CDouble> assemble(const GaussSuper<CDouble>& f, const GaussSuper<CDouble>& g, const std::vector<GE>& table,
                                   int n, const std::function<CDouble(const GaussPoly<CDouble>&, const GaussPoly<CDouble>&)>& even,
                                   std::vector<CDouble>* evens) {
    GrassmannElement<CDouble> out(n);
    for (const auto& [I, fi] : f.coeffs())
        for (const auto& [J, gj] : g.coeffs()) {
            const GE& odd = table[(static_cast<std::size_t>(I) << n) + J];
            if (odd.is_zero()) continue;
            const CDouble e = even(fi, gj);
            if (evens) evens->push_back(e);
            out += to_float(odd) * e;
        }
    return out;
}

}  // namespace

StarIntegralResult star_integral(const GaussSuper<CDouble>& f, const GaussSuper<CDouble>& g, const DeformationParams& params,
                                 const std::vector<double>& z, const QuadratureSpec& quad, const OracleOptions& options) {
    f.require_same(g);
    if (f.m() != params.m || f.n() != params.n) throw std::invalid_argument("star_integral: dimension mismatch");
    if (static_cast<int>(z.size()) != params.m) throw std::invalid_argument("star_integral: point dimension");
    quad.validate();
    const auto table = odd_star_table(params);
    StarIntegralResult res;
    res.spec = quad;
    std::vector<CDouble> coarse, fine;
    res.value = assemble(f, g, table, params.n,
                         [&](const GaussPoly<CDouble>& a, const GaussPoly<CDouble>& b) { return even_star_point(a, b, params, z, quad); },
                         &coarse);
    if (options.refine && params.m > 0) {
        QuadratureSpec q2 = quad;
        q2.P *= 2;
        assemble(f, g, table, params.n,
                 [&](const GaussPoly<CDouble>& a, const GaussPoly<CDouble>& b) { return even_star_point(a, b, params, z, q2); },
                 &fine);
        double diff = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < coarse.size(); ++k) {
            diff = std::max(diff, std::abs(coarse[k] - fine[k]));
            scale = std::max(scale, std::abs(fine[k]));
        }
        res.refinement_change = scale > 0.0 ? diff / scale : diff;
        res.converged = res.refinement_change < options.tolerance;
    }
    return res;
}

TracialResult tracial_check(const GaussSuper<CDouble>& f, const GaussSuper<CDouble>& g, const DeformationParams& params,
                            const QuadratureSpec& quad) {
    f.require_same(g);
    if (f.m() != params.m || f.n() != params.n) throw std::invalid_argument("tracial_check: dimension mismatch");
    const auto table = odd_star_table(params);
    const Mask top = (Mask{1} << params.n) - 1;
    TracialResult r;
    r.lhs = {0.0, 0.0};
    for (const auto& [I, fi] : f.coeffs())
        for (const auto& [J, gj] : g.coeffs()) {
            const QComplex c = table[(static_cast<std::size_t>(I) << params.n) + J].coeff(top);
            if (is_zero(c)) continue;
            CDouble integral;
            if (params.m == 0) {
                integral = fi.evaluate({}) * gj.evaluate({});
            } else {
                const EvenStarGrid grid = even_star_grid(fi, gj, params, quad);
                const std::size_t P = grid.nodes.t.size();
                std::vector<CDouble> rows(P);
                for (std::size_t ix = 0; ix < P; ++ix)
                    rows[ix] = weighted_sum(grid.nodes.w.data(), &grid.values[ix * P], P) * grid.nodes.w[ix];
                integral = pairwise_sum(rows);
            }
            r.lhs += to_cdouble(c) * integral;
        }
    const GaussSuper<CDouble> prod = pointwise_mul(f, g);
    if (params.m == 0) r.rhs = prod.coeff(top).evaluate({});
    else r.rhs = prod.is_zero() ? CDouble(0.0, 0.0) : berezin_lebesgue(prod);
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

// ---------------------------------------------------------------------------
// Oscillating-integral operator.

SampledFunction2D sample_function(const std::function<CDouble(double, double)>& fn, double half_width, int points) {
    if (points < 16 || !(half_width > 0.0)) throw std::invalid_argument("sample_function: bad grid");
    SampledFunction2D s;
    s.P = points;
    s.lo = -half_width;
    s.h = 2.0 * half_width / (points - 1);
    s.values.resize(static_cast<std::size_t>(points) * points);
    for (int i = 0; i < points; ++i)
        for (int j = 0; j < points; ++j) s.values[static_cast<std::size_t>(i * points + j)] = fn(s.coordinate(i), s.coordinate(j));
    return s;
}

namespace {

void require_interior_support(const SampledFunction2D& f, int margin) {
    for (int i = 0; i < f.P; ++i)
        for (int j = 0; j < f.P; ++j) {
            const bool border = i < margin || j < margin || i >= f.P - margin || j >= f.P - margin;
            if (border && f.at(i, j) != CDouble(0.0, 0.0))
                throw std::domain_error("oscillating_apply: support reaches the grid boundary");
        }
}

}  // namespace

SampledFunction2D oscillating_apply(const SampledFunction2D& f, int k) {
    if (k < 0) throw std::invalid_argument("oscillating_apply: k must be non-negative");
    require_interior_support(f, k + 1);
    SampledFunction2D cur = f;
    const int P = f.P;
    const double h2 = f.h * f.h;
    for (int step = 0; step < k; ++step) {
        std::vector<CDouble> u(cur.values.size());
        for (int i = 0; i < P; ++i)
            for (int j = 0; j < P; ++j) {
                const double x = cur.coordinate(i), w = cur.coordinate(j);
                u[static_cast<std::size_t>(i * P + j)] = cur.at(i, j) / (1.0 + x * x + w * w);
            }
        auto U = [&](int i, int j) {
            if (i < 0 || j < 0 || i >= P || j >= P) return CDouble(0.0, 0.0);
            return u[static_cast<std::size_t>(i * P + j)];
        };
        for (int i = 0; i < P; ++i)
            for (int j = 0; j < P; ++j) {
                const CDouble lap = (U(i + 1, j) + U(i - 1, j) + U(i, j + 1) + U(i, j - 1) - 4.0 * U(i, j)) / h2;
                cur.values[static_cast<std::size_t>(i * P + j)] = U(i, j) - lap;
            }
    }
    return cur;
}

double oscillating_identity_residual(const SampledFunction2D& f, int k) {
    const SampledFunction2D o = oscillating_apply(f, k);
    const int P = f.P;
    std::vector<CDouble> a(static_cast<std::size_t>(P)), b(static_cast<std::size_t>(P));
    for (int i = 0; i < P; ++i) {
        CDouble sa(0.0, 0.0), sb(0.0, 0.0);
        for (int j = 0; j < P; ++j) {
            const CDouble ph = std::polar(1.0, f.coordinate(i) * f.coordinate(j));
            sa += ph * f.at(i, j);
            sb += ph * o.at(i, j);
        }
        a[static_cast<std::size_t>(i)] = sa;
        b[static_cast<std::size_t>(i)] = sb;
    }
    return std::abs(pairwise_sum(a) - pairwise_sum(b)) * f.h * f.h;
}

}  // namespace smq
