#include "smq/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "smq/parallel.hpp"

namespace smq {

std::vector<double> hermite_functions(int count, double y) {
    std::vector<double> psi(static_cast<std::size_t>(std::max(count, 0)), 0.0);
    if (count <= 0) return psi;
    psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y);
    if (count > 1) psi[1] = std::sqrt(2.0) * y * psi[0];
    for (int k = 1; k + 1 < count; ++k)
        psi[static_cast<std::size_t>(k + 1)] = std::sqrt(2.0 / (k + 1)) * y * psi[static_cast<std::size_t>(k)] -
                                              std::sqrt(static_cast<double>(k) / (k + 1)) * psi[static_cast<std::size_t>(k - 1)];
    return psi;
}

HermiteBasis::HermiteBasis(int levels, int odd, double theta_) : N(levels), n(odd), theta(theta_) {
    if (N < 4) throw std::invalid_argument("HermiteBasis: N must be at least 4");
    if (n < 0 || n > 8) throw std::invalid_argument("HermiteBasis: n out of range");
    if (!(theta != 0.0) || !std::isfinite(theta)) throw std::invalid_argument("HermiteBasis: theta must be nonzero");
}

std::vector<double> HermiteBasis::values(double x) const {
    const double s = std::sqrt(std::abs(theta));
    auto v = hermite_functions(N, x / s);
    const double scale = 1.0 / std::sqrt(s);
    for (auto& e : v) e *= scale;
    return v;
}

namespace {

void require_m2(const DeformationParams& params, const char* what) {
    if (params.m != 2) throw std::invalid_argument(std::string(what) + ": implemented for m = 2");
}

double basis_radius(const HermiteBasis& basis) {
    return std::sqrt(std::abs(basis.theta)) * (std::sqrt(2.0 * basis.N + 1.0) + 7.0);
}

// W[(a·N + b), ix·P + iw] = γ₀ ∫du φ_a(x − u) φ_b(x + u) e^{iku w}: the matrix element of Ω₀
// of a point mass at (x, w).
struct WignerTable {
    int N = 0;
    std::size_t P = 0;
    Eigen::MatrixXcd W;
};

WignerTable wigner_table(const Nodes1D& nodes, const HermiteBasis& basis, const DeformationParams& params) {
    const double th = std::abs(params.theta.get_d());
    const double k = 2.0 / params.kernel_theta().get_d();
    const int N = basis.N;
    const double radius = basis_radius(basis);
    double wmax = 0.0;
    for (double t : nodes.t) wmax = std::max(wmax, std::abs(t));
    const double band = std::abs(k) * wmax + 2.0 * (std::sqrt(2.0 * N + 1.0) + 3.0) / std::sqrt(th);
    const int Q = static_cast<int>(std::ceil(2.0 * radius * band / std::numbers::pi)) + 1;
    const Nodes1D un = trapezoid_nodes(-radius, radius, std::max(Q, 32));
    const std::size_t nq = un.t.size();
    const double gamma0 = 1.0 / (std::numbers::pi * th);

    WignerTable tab;
    tab.N = N;
    tab.P = nodes.t.size();
    const std::size_t P = tab.P;
    tab.W.resize(N * N, static_cast<Eigen::Index>(P * P));
    parallel_for(P, [&](std::size_t b, std::size_t e) {
        Eigen::MatrixXd A(N, static_cast<Eigen::Index>(nq)), B(N, static_cast<Eigen::Index>(nq));
        Eigen::MatrixXcd Bw(N, static_cast<Eigen::Index>(nq));
        Eigen::MatrixXcd block(N, N);
        for (std::size_t ix = b; ix < e; ++ix) {
            const double x = nodes.t[ix];
            for (std::size_t q = 0; q < nq; ++q) {
                const auto fa = basis.values(x - un.t[q]);
                const auto fb = basis.values(x + un.t[q]);
                for (int a = 0; a < N; ++a) {
                    A(a, static_cast<Eigen::Index>(q)) = fa[static_cast<std::size_t>(a)];
                    B(a, static_cast<Eigen::Index>(q)) = fb[static_cast<std::size_t>(a)] * un.w[q];
                }
            }
            for (std::size_t iw = 0; iw < P; ++iw) {
                const double w = nodes.t[iw];
                for (std::size_t q = 0; q < nq; ++q) {
                    const CDouble ph = std::polar(gamma0, k * un.t[q] * w);
                    Bw.col(static_cast<Eigen::Index>(q)) = B.col(static_cast<Eigen::Index>(q)).cast<CDouble>() * ph;
                }
                block.noalias() = A.cast<CDouble>() * Bw.transpose();
                const Eigen::Index col = static_cast<Eigen::Index>(ix * P + iw);
                for (int a = 0; a < N; ++a)
                    for (int c = 0; c < N; ++c) tab.W(a * N + c, col) = block(a, c);
            }
        }
    });
    return tab;
}

Eigen::MatrixXcd contract(const WignerTable& tab, const Eigen::VectorXcd& weighted) {
    const Eigen::VectorXcd flat = tab.W * weighted;
    Eigen::MatrixXcd M(tab.N, tab.N);
    for (int a = 0; a < tab.N; ++a)
        for (int b = 0; b < tab.N; ++b) M(a, b) = flat(a * tab.N + b);
    return M;
}

Eigen::VectorXcd weighted_values(const Nodes1D& nodes, const std::vector<CDouble>& values) {
    const std::size_t P = nodes.t.size();
    if (values.size() != P * P) throw std::invalid_argument("weyl_omega0: sample count does not match the grid");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(P * P));
    for (std::size_t i = 0; i < P; ++i)
        for (std::size_t j = 0; j < P; ++j) v(static_cast<Eigen::Index>(i * P + j)) = values[i * P + j] * (nodes.w[i] * nodes.w[j]);
    return v;
}

// Symbol grid scale: the symbol's width, clipped so the grid stays inside the phase-space
// region where the basis lives (wide symbols would otherwise under-resolve it).
double symbol_sigma(const GaussPoly<CDouble>& f, const HermiteBasis& basis, const QuadratureSpec& quad) {
    f.require_integrable();
    double amin = INFINITY;
    for (const auto& a : f.widths()) amin = std::min(amin, a.get_d());
    return std::min(1.0 / std::sqrt(amin), basis_radius(basis) / quad.L);
}

std::vector<CDouble> sample_grid(const GaussPoly<CDouble>& f, const Nodes1D& nodes) {
    const std::size_t P = nodes.t.size();
    std::vector<CDouble> v(P * P);
    parallel_for(P, [&](std::size_t b, std::size_t e) {
        std::vector<double> z(2);
        for (std::size_t i = b; i < e; ++i)
            for (std::size_t j = 0; j < P; ++j) {
                z[0] = nodes.t[i];
                z[1] = nodes.t[j];
                v[i * P + j] = f.evaluate(z);
            }
    });
    return v;
}

// Caches Wigner tables per grid within one computation.
class WignerCache {
   public:
    WignerCache(const HermiteBasis& basis, const DeformationParams& params) : basis_(basis), params_(params) {}
    const WignerTable& get(const Nodes1D& nodes) {
        const auto key = std::make_tuple(nodes.t.front(), nodes.t.back(), nodes.t.size());
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, wigner_table(nodes, basis_, params_)).first;
        return it->second;
    }

   private:
    const HermiteBasis& basis_;
    const DeformationParams& params_;
    std::map<std::tuple<double, double, std::size_t>, WignerTable> cache_;
};

Eigen::MatrixXcd omega0_cached(const GaussPoly<CDouble>& f, WignerCache& cache, const HermiteBasis& basis,
                               const QuadratureSpec& quad) {
    if (f.is_zero()) return Eigen::MatrixXcd::Zero(basis.N, basis.N);
    const Nodes1D nodes = make_nodes(quad, 0.0, symbol_sigma(f, basis, quad));
    return contract(cache.get(nodes), weighted_values(nodes, sample_grid(f, nodes)));
}

void check_basis(const HermiteBasis& basis, const DeformationParams& params) {
    require_m2(params, "quantization");
    if (basis.n != params.n) throw std::invalid_argument("quantization: basis and parameters disagree on n");
    if (std::abs(basis.theta - params.theta.get_d()) > 1e-12 * std::abs(basis.theta))
        throw std::invalid_argument("quantization: basis width does not match theta");
}

// Adds coefficient·M0 into every blade block of Ω for the symbol blade I.
void add_blade_blocks(Eigen::MatrixXcd& M, const Eigen::MatrixXcd& M0, Mask I, const CDouble& scale, const HermiteBasis& basis,
                      const DeformationParams& params, OmegaCoefficients which) {
    const Mask count = Mask{1} << basis.n;
    const int N = basis.N;
    for (Mask J = 0; J < count; ++J) {
        const CDouble c = to_cdouble(omega_odd_coefficient(I, J, params, which)) * scale;
        if (c == CDouble(0.0, 0.0)) continue;
        const Mask K = I ^ J;
        M.block(basis.index(0, K), basis.index(0, J), N, N) += c * M0;
    }
}

}  // namespace

Eigen::MatrixXcd weyl_omega0(const GaussPoly<CDouble>& f, const HermiteBasis& basis, const DeformationParams& params,
                             const QuadratureSpec& quad) {
    require_m2(params, "weyl_omega0");
    quad.validate();
    if (f.nvars() != 2) throw std::invalid_argument("weyl_omega0: symbol must have 2 even variables");
    WignerCache cache(basis, params);
    return omega0_cached(f, cache, basis, quad);
}

Eigen::MatrixXcd weyl_omega0_samples(const Nodes1D& nodes, const std::vector<CDouble>& values, const HermiteBasis& basis,
                                     const DeformationParams& params) {
    require_m2(params, "weyl_omega0_samples");
    return contract(wigner_table(nodes, basis, params), weighted_values(nodes, values));
}

QComplex omega_odd_coefficient(Mask I, Mask J, const DeformationParams& params, OmegaCoefficients which) {
    const int n = params.n;
    const Mask low = (Mask{1} << n) - 1;
    if ((I & ~low) != 0 || (J & ~low) != 0) throw std::invalid_argument("omega_odd_coefficient: blade out of range");
    const int d = popcount(I & J);
    const int c = reorder_sign(I, J);
    const Rational& th = params.theta;
    const Rational& al = params.alpha;
    if (which == OmegaCoefficients::computed) {
        Rational r = al / (1 + al);
        r.canonicalize();
        Rational t = th / al;
        t.canonicalize();
        QComplex v = ipow(QComplex(Rational(0), -t), static_cast<unsigned>(d)) *
                     QComplex(ipow(r, static_cast<unsigned>(popcount(I))));
        return c < 0 ? -v : v;
    }
    Rational inv = 1 / th;
    inv.canonicalize();
    const int jn = popcount(J);
    const int in = popcount(I);
    QComplex v = ipow(QComplex(Rational(0), -inv), static_cast<unsigned>(n - d));
    Rational a = 1;
    if (jn - d >= 0) a = ipow(al, static_cast<unsigned>(jn - d));
    else a = 1 / ipow(al, static_cast<unsigned>(d - jn));
    a *= ipow(Rational(1 + al), static_cast<unsigned>(n - jn));
    a.canonicalize();
    v = v * QComplex(a);
    const int e = n * (n + 1) / 2 + in * (n + d + jn);
    if (((e & 1) != 0) != (c < 0)) v = -v;
    return v;
}

OperatorMatrix omega_full(const GaussSuper<CDouble>& f, const HermiteBasis& basis, const DeformationParams& params,
                          const QuadratureSpec& quad, OmegaCoefficients which) {
    check_basis(basis, params);
    quad.validate();
    if (f.m() != 2 || f.n() != params.n) throw std::invalid_argument("omega_full: symbol dimensions");
    OperatorMatrix out{basis, Eigen::MatrixXcd::Zero(basis.dim(), basis.dim())};
    WignerCache cache(basis, params);
    for (const auto& [I, fi] : f.coeffs())
        add_blade_blocks(out.M, omega0_cached(fi, cache, basis, quad), I, CDouble(1.0, 0.0), basis, params, which);
    return out;
}

double homomorphism_residual(const GaussSuper<CDouble>& f, const GaussSuper<CDouble>& g, const HermiteBasis& basis,
                             const DeformationParams& params, const QuadratureSpec& quad, OmegaCoefficients which) {
    check_basis(basis, params);
    f.require_same(g);
    const auto table = odd_star_table(params);
    const int n = params.n;
    Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
    WignerCache cache(basis, params);
    for (const auto& [I, fi] : f.coeffs())
        for (const auto& [J, gj] : g.coeffs()) {
            const auto& odd = table[(static_cast<std::size_t>(I) << n) + J];
            if (odd.is_zero()) continue;
            const EvenStarGrid grid = even_star_grid(fi, gj, params, quad);
            const Eigen::MatrixXcd M0 = contract(cache.get(grid.nodes), weighted_values(grid.nodes, grid.values));
            for (const auto& [K, c] : odd.terms()) add_blade_blocks(lhs, M0, K, to_cdouble(c), basis, params, which);
        }
    const Eigen::MatrixXcd rhs = omega_full(f, basis, params, quad, which).M * omega_full(g, basis, params, quad, which).M;
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Schrödinger representation.

namespace {

using GC = GrassmannElement<CDouble>;

GC embed(const GC& x, int total) {
    GC r(total);
    for (const auto& [k, v] : x.terms()) r.add_term(k, v);
    return r;
}

void require_real(const GC& x, int parity, const char* what) {
    for (const auto& [k, v] : x.terms()) {
        if (v.imag() != 0.0) throw std::invalid_argument(std::string(what) + ": group coordinates must be real");
        if ((popcount(k) & 1) != parity) throw std::invalid_argument(std::string(what) + ": wrong parity");
    }
}

GC conj_coeffs(const GC& x) {
    GC r(x.n());
    for (const auto& [k, v] : x.terms()) r.add_term(k, std::conj(v));
    return r;
}

}  // namespace

CDouble QTerm::even_at(double x0) const {
    const double y = x0 - shift;
    CDouble p(0.0, 0.0);
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) p = p * y + *it;
    return p * std::exp(-0.5 * width * y * y) * std::polar(1.0, freq * x0);
}

GrassmannElement<CDouble> QState::at(double x0) const {
    GC r(ring + n);
    for (const auto& t : terms) r += t.odd * t.even_at(x0);
    return r;
}

HeisenbergElement HeisenbergElement::identity(int n, int ring) {
    HeisenbergElement g;
    g.xi.assign(static_cast<std::size_t>(n), GC(ring));
    g.a = GC(ring);
    return g;
}

HeisenbergElement heisenberg_multiply(const HeisenbergElement& g, const HeisenbergElement& h) {
    if (g.xi.size() != h.xi.size() || g.a.n() != h.a.n()) throw std::invalid_argument("heisenberg_multiply: shape mismatch");
    HeisenbergElement r;
    r.x = g.x + h.x;
    r.w = g.w + h.w;
    r.a = g.a + h.a;
    r.a += GC::scalar(g.a.n(), CDouble(0.5 * (g.x * h.w - g.w * h.x), 0.0));
    for (std::size_t i = 0; i < g.xi.size(); ++i) {
        r.xi.push_back(g.xi[i] + h.xi[i]);
        r.a += wedge_product(g.xi[i], h.xi[i]);
    }
    return r;
}

QState schrodinger_U(const HeisenbergElement& g, const QState& phi, double theta) {
    const int R = phi.ring;
    const int n = phi.n;
    const int total = R + n;
    if (static_cast<int>(g.xi.size()) != n || g.a.n() != R) throw std::invalid_argument("schrodinger_U: group element shape");
    if (!(theta != 0.0)) throw std::invalid_argument("schrodinger_U: theta must be nonzero");
    require_real(g.a, 0, "schrodinger_U");
    for (const auto& x : g.xi) require_real(x, 1, "schrodinger_U");

    // Odd phase e^{(i/θ)(a − a_body + Σ ξ_i ξ₀_i)}.
    GC expo = embed(g.a, total);
    const double abody = expo.body().real();
    expo.add_term(0, CDouble(-abody, 0.0));
    std::vector<GC> shifted;
    for (int i = 0; i < n; ++i) {
        const GC xi = embed(g.xi[static_cast<std::size_t>(i)], total);
        const GC x0 = GC::generator(total, R + i);
        expo += wedge_product(xi, x0);
        shifted.push_back(x0 - xi);
    }
    expo *= CDouble(0.0, 1.0 / theta);
    const GC odd_phase = exp_nilpotent(expo);

    const Mask ring_mask = (Mask{1} << R) - 1;
    QState out{R, n, {}};
    for (const auto& t : phi.terms) {
        if (t.odd.n() != total) throw std::invalid_argument("schrodinger_U: term generator count");
        GC sub(total);
        for (const auto& [k, v] : t.odd.terms()) {
            GC piece = GC::blade(total, k & ring_mask, v);
            const Mask J = k >> R;
            for (int j = 0; j < n; ++j)
                if (((J >> j) & 1U) != 0) piece = wedge_product(piece, shifted[static_cast<std::size_t>(j)]);
            sub += piece;
        }
        QTerm u;
        u.shift = t.shift + g.x;
        u.width = t.width;
        u.freq = t.freq - g.w / theta;
        const CDouble c = std::polar(1.0, -t.freq * g.x + (abody + 0.5 * g.x * g.w) / theta);
        u.poly = t.poly;
        for (auto& p : u.poly) p *= c;
        u.odd = wedge_product(odd_phase, sub);
        out.terms.push_back(std::move(u));
    }
    return out;
}

GrassmannElement<CDouble> super_hermitian(const QState& phi, const QState& psi, int points) {
    if (phi.ring != psi.ring || phi.n != psi.n) throw std::invalid_argument("super_hermitian: state shapes differ");
    const int R = phi.ring;
    GC result(R);
    if (phi.terms.empty() || psi.terms.empty()) return result;
    double lo = INFINITY, hi = -INFINITY, wmin = INFINITY;
    for (const auto* s : {&phi, &psi})
        for (const auto& t : s->terms) {
            if (!(t.width > 0.0)) throw std::invalid_argument("super_hermitian: term is not square integrable");
            lo = std::min(lo, t.shift);
            hi = std::max(hi, t.shift);
            wmin = std::min(wmin, t.width);
        }
    const double margin = 12.0 / std::sqrt(wmin);
    const Nodes1D nodes = trapezoid_nodes(lo - margin, hi + margin, points);
    const Mask top = ((Mask{1} << phi.n) - 1) << R;
    std::vector<GC> parts(nodes.t.size(), GC(R));
    parallel_for(nodes.t.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
            const GC prod = wedge_product(conj_coeffs(phi.at(nodes.t[k])), psi.at(nodes.t[k]));
            GC r(R);
            for (const auto& [bits, v] : prod.terms()) {
                if ((bits & top) != top) continue;
                r.add_term(bits & ~top, v * nodes.w[k]);
            }
            parts[k] = std::move(r);
        }
    });
    for (const auto& p : parts) result += p;
    return result;
}

namespace {

double max_coeff(const GC& x) {
    double m = 0.0;
    for (const auto& [k, v] : x.terms()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

double unitarity_residual(const HeisenbergElement& g, const std::vector<QState>& states, double theta) {
    std::vector<QState> moved;
    for (const auto& s : states) moved.push_back(schrodinger_U(g, s, theta));
    double worst = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = 0; j < states.size(); ++j)
            worst = std::max(worst, max_coeff(super_hermitian(moved[i], moved[j]) - super_hermitian(states[i], states[j])));
    return worst;
}

double representation_residual(const HeisenbergElement& g, const HeisenbergElement& h, const QState& phi, double theta,
                               const std::vector<double>& points) {
    const QState lhs = schrodinger_U(g, schrodinger_U(h, phi, theta), theta);
    const QState rhs = schrodinger_U(heisenberg_multiply(g, h), phi, theta);
    double worst = 0.0;
    for (double x0 : points) worst = std::max(worst, max_coeff(lhs.at(x0) - rhs.at(x0)));
    return worst;
}

}  // namespace smq
