#include "smq/symmetry.hpp"

#include <random>
#include <stdexcept>

namespace smq {

namespace {

using GE = GrassmannElement<QComplex>;

GE constant(int N, const Rational& r) { return GE::scalar(N, QComplex(r)); }

ExactMatrix from_rational_matrix(const std::vector<Rational>& w, int m, int n, int N) {
    ExactMatrix a(m, n, N);
    const int d = m + n;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a.at(i, j) = constant(N, w[static_cast<std::size_t>(i * d + j)]);
    return a;
}

bool is_zero_matrix(const ExactMatrix& a) {
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (!a.at(i, j).is_zero()) return false;
    return true;
}

class RationalSource {
   public:
    explicit RationalSource(std::uint64_t seed) : rng_(seed) {}
    Rational next(int span = 3, int den_max = 4) {
        std::uniform_int_distribution<int> num(-span, span), den(1, den_max);
        Rational r(num(rng_), den(rng_));
        r.canonicalize();
        return r;
    }
    Rational nonzero(int span = 3, int den_max = 4) {
        for (;;) {
            Rational r = next(span, den_max);
            if (sgn(r) != 0) return r;
        }
    }
    int index(int count) { return std::uniform_int_distribution<int>(0, count - 1)(rng_); }
    bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }

   private:
    std::mt19937_64 rng_;
};

// Random odd element of ⋀ℝ^N: degree-1 terms plus, when N ≥ 3, one degree-3 term.
GE random_odd(RationalSource& src, int N) {
    GE e(N);
    for (int k = 0; k < N; ++k)
        if (src.coin()) e.add_term(Mask{1} << k, QComplex(src.next()));
    if (N >= 3 && src.coin()) e.add_term(Mask{7} << src.index(N - 2), QComplex(src.next()));
    return e;
}

GE random_nilpotent_even(RationalSource& src, int N) {
    GE e(N);
    if (N >= 2 && src.coin()) e.add_term(Mask{3} << src.index(N - 1), QComplex(src.next()));
    return e;
}

ExactMatrix scaled(const ExactMatrix& a, const Rational& r) {
    ExactMatrix out = a;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out.at(i, j) *= QComplex(r);
    return out;
}

}  // namespace

ExactMatrix inverse_transpose_form(const DeformationParams& params, int N, OspForm form) {
    const int m = params.m, n = params.n, d = m + n;
    // (ω̃ᵀ)⁻¹ = (ω̃⁻¹)ᵀ.
    std::vector<Rational> inv = params.omega_tilde_inverse();
    std::vector<Rational> t(inv.size());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) t[static_cast<std::size_t>(i * d + j)] = inv[static_cast<std::size_t>(j * d + i)];
    if (form == OspForm::omega)
        for (int k = m; k < d; ++k) t[static_cast<std::size_t>(k * d + k)] = Rational(1, 2);
    return from_rational_matrix(t, m, n, N);
}

OspResult osp_membership(const ExactMatrix& A, const DeformationParams& params, OspForm form) {
    if (A.m() != params.m || A.n() != params.n) throw std::invalid_argument("osp_membership: size mismatch");
    const ExactMatrix W = inverse_transpose_form(params, A.N(), form);
    OspResult r;
    r.residual = supermatrix_mul(supermatrix_mul(A, W), supertranspose(A)) - W;
    r.member = is_zero_matrix(r.residual);
    return r;
}

AffineSuperMap AffineSuperMap::linear(const ExactMatrix& A) {
    return {A, ExactPoint::zero(A.m(), A.n(), A.N())};
}

AffineSuperMap AffineSuperMap::translation(const ExactPoint& tau, int m, int n) {
    return {ExactMatrix::identity(m, n, tau.ring_generators()), tau};
}

void AffineSuperMap::validate() const {
    if (!A.parity_consistent()) throw std::invalid_argument("AffineSuperMap: parity-inconsistent matrix");
    tau.validate();
    if (static_cast<int>(tau.even.size()) != A.m() || static_cast<int>(tau.odd.size()) != A.n() ||
        (A.m() + A.n() > 0 && tau.ring_generators() != A.N()))
        throw std::invalid_argument("AffineSuperMap: translation shape");
    // Invertibility: the body of A must be invertible; checked blockwise by Gaussian elimination.
    const auto b = body(A);
    const int d = A.dim();
    std::vector<std::vector<QComplex>> M = b;
    for (int c = 0; c < d; ++c) {
        int p = c;
        while (p < d && is_zero(M[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)])) ++p;
        if (p == d) throw std::invalid_argument("AffineSuperMap: matrix body is singular");
        std::swap(M[static_cast<std::size_t>(p)], M[static_cast<std::size_t>(c)]);
        for (int r = c + 1; r < d; ++r) {
            const QComplex f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] / M[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
            for (int k = c; k < d; ++k)
                M[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -= f * M[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
        }
    }
}

AffineSuperMap compose(const AffineSuperMap& phi, const AffineSuperMap& psi) {
    phi.A.require_same(psi.A);
    AffineSuperMap r;
    r.A = supermatrix_mul(phi.A, psi.A);
    r.tau = phi.tau;
    const int m = phi.A.m();
    const int d = phi.A.dim();
    for (int mu = 0; mu < d; ++mu) {
        GE acc = mu < m ? phi.tau.even[static_cast<std::size_t>(mu)] : phi.tau.odd[static_cast<std::size_t>(mu - m)];
        for (int nu = 0; nu < d; ++nu) {
            const GE& t = nu < m ? psi.tau.even[static_cast<std::size_t>(nu)] : psi.tau.odd[static_cast<std::size_t>(nu - m)];
            acc += wedge_product(phi.A.at(mu, nu), t);
        }
        (mu < m ? r.tau.even[static_cast<std::size_t>(mu)] : r.tau.odd[static_cast<std::size_t>(mu - m)]) = std::move(acc);
    }
    return r;
}

ExactMatrix jacobian_supermatrix(const AffineSuperMap& phi) {
    ExactMatrix j = phi.A;
    for (int mu = 0; mu < j.dim(); ++mu)
        for (int nu = 0; nu < j.dim(); ++nu)
            if ((j.index_parity(mu) + j.index_parity(nu)) % 2 != 0) j.at(mu, nu) = -j.at(mu, nu);
    return j;
}

PolySuper<QComplex> pullback(const AffineSuperMap& phi, const PolySuper<QComplex>& f) {
    const int aux = f.n() - phi.A.n();
    if (aux != 0 && aux != phi.A.N()) throw std::invalid_argument("pullback: superfunction does not match the map");
    return taylor_substitute_affine(f, phi.A, phi.tau, aux);
}

PolySuper<QComplex> invariance_residual(const AffineSuperMap& phi, const PolySuper<QComplex>& f, const PolySuper<QComplex>& g,
                                        const DeformationParams& params) {
    f.require_same(g);
    const int m = params.m, n = params.n, N = phi.A.N();
    if (phi.A.m() != m || phi.A.n() != n) throw std::invalid_argument("invariance_residual: map size");
    const int aux = f.n() - n;
    const PolySuper<QComplex> fg = star(f, g, params, StarCoords::standard(m, n, 0, aux));
    const StarCoords after = StarCoords::standard(m, n, 0, N);
    return pullback(phi, fg) - star(pullback(phi, f), pullback(phi, g), params, after);
}

std::optional<InvarianceWitness> coordinate_witness(const AffineSuperMap& phi, const DeformationParams& params) {
    const int m = params.m, n = params.n, d = m + n;
    auto coordinate = [&](int mu) {
        return mu < m ? PolySuper<QComplex>::even_coordinate(m, n, mu) : PolySuper<QComplex>::odd_coordinate(m, n, mu - m);
    };
    for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu) {
            PolySuper<QComplex> r = invariance_residual(phi, coordinate(mu), coordinate(nu), params);
            if (!r.is_zero()) return InvarianceWitness{mu, nu, std::move(r)};
        }
    return std::nullopt;
}

ExactMatrix random_real_osp(int m, int n, std::uint64_t seed, int N) {
    if (m % 2 != 0 || m < 0 || n < 0) throw std::invalid_argument("random_real_osp: m must be even");
    RationalSource src(seed);
    const int h = m / 2;
    ExactMatrix A = ExactMatrix::identity(m, n, N);
    // Symplectic generators for ω₀ = [[0, 1], [−1, 0]] in the (x, w) block layout.
    for (int step = 0; step < 3 * std::max(h, 1) && h > 0; ++step) {
        ExactMatrix G = ExactMatrix::identity(m, n, N);
        const int kind = src.index(3);
        if (kind < 2) {
            // [[1, S], [0, 1]] or [[1, 0], [S, 1]] with S symmetric.
            for (int i = 0; i < h; ++i)
                for (int j = i; j < h; ++j) {
                    const Rational v = src.next();
                    const int r = kind == 0 ? i : h + i, c = kind == 0 ? h + j : j;
                    const int r2 = kind == 0 ? j : h + j, c2 = kind == 0 ? h + i : i;
                    G.at(r, c) = constant(N, v);
                    G.at(r2, c2) = constant(N, v);
                }
        } else {
            // blockdiag(L, L^{−T}) with L unit lower triangular plus a diagonal scaling.
            std::vector<Rational> L(static_cast<std::size_t>(h * h), Rational(0));
            for (int i = 0; i < h; ++i) {
                L[static_cast<std::size_t>(i * h + i)] = src.nonzero(2, 2);
                for (int j = 0; j < i; ++j) L[static_cast<std::size_t>(i * h + j)] = src.next();
            }
            // Inverse of the lower-triangular L by forward substitution.
            std::vector<Rational> Li(static_cast<std::size_t>(h * h), Rational(0));
            for (int c = 0; c < h; ++c)
                for (int i = 0; i < h; ++i) {
                    Rational acc = i == c ? Rational(1) : Rational(0);
                    for (int j = 0; j < i; ++j) acc -= L[static_cast<std::size_t>(i * h + j)] * Li[static_cast<std::size_t>(j * h + c)];
                    acc /= L[static_cast<std::size_t>(i * h + i)];
                    acc.canonicalize();
                    Li[static_cast<std::size_t>(i * h + c)] = acc;
                }
            for (int i = 0; i < h; ++i)
                for (int j = 0; j < h; ++j) {
                    G.at(i, j) = constant(N, L[static_cast<std::size_t>(i * h + j)]);
                    G.at(h + i, h + j) = constant(N, Li[static_cast<std::size_t>(j * h + i)]);
                }
        }
        A = supermatrix_mul(A, G);
    }
    // Orthogonal odd block: rational Givens rotations (t ↦ ((1−t²), 2t)/(1+t²)) and reflections.
    for (int step = 0; step < 2 * n; ++step) {
        ExactMatrix G = ExactMatrix::identity(m, n, N);
        if (n >= 2 && src.coin()) {
            int i = src.index(n), j = src.index(n - 1);
            if (j >= i) ++j;
            const Rational t = src.next();
            Rational c = (1 - t * t) / (1 + t * t), s = 2 * t / (1 + t * t);
            c.canonicalize();
            s.canonicalize();
            G.at(m + i, m + i) = constant(N, c);
            G.at(m + j, m + j) = constant(N, c);
            G.at(m + i, m + j) = constant(N, -s);
            G.at(m + j, m + i) = constant(N, s);
        } else if (n >= 1) {
            const int i = src.index(n);
            G.at(m + i, m + i) = constant(N, Rational(-1));
        }
        A = supermatrix_mul(A, G);
    }
    return A;
}

ExactMatrix odd_osp_exponential(const DeformationParams& params, int N, std::uint64_t seed) {
    const int m = params.m, n = params.n;
    RationalSource src(seed);
    ExactMatrix X(m, n, N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) X.at(m + i, j) = random_odd(src, N);
    const auto w0 = params.omega0();
    const Rational s = params.odd_block();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            GE acc(N);
            for (int k = 0; k < m; ++k) {
                const Rational& w = w0[static_cast<std::size_t>(i * m + k)];
                if (sgn(w) != 0) acc += X.at(m + j, k) * QComplex(s * w);
            }
            X.at(i, m + j) = std::move(acc);
        }
    // exp(X) terminates: every entry of X is nilpotent.
    ExactMatrix result = ExactMatrix::identity(m, n, N);
    ExactMatrix power = result;
    for (int k = 1; k <= N + 1; ++k) {
        power = scaled(supermatrix_mul(power, X), Rational(1, k));
        if (is_zero_matrix(power)) break;
        result = result + power;
    }
    return result;
}

AffineSuperMap random_osp_member(const DeformationParams& params, int N, std::uint64_t seed, bool nilpotent) {
    const int m = params.m, n = params.n;
    ExactMatrix A = random_real_osp(m, n, seed, N);
    if (nilpotent && N >= 1 && n >= 1) A = supermatrix_mul(A, odd_osp_exponential(params, N, seed ^ 0x9e3779b97f4a7c15ULL));
    RationalSource src(seed + 17);
    ExactPoint tau = ExactPoint::zero(m, n, N);
    for (auto& e : tau.even) {
        e = constant(N, src.next());
        if (nilpotent) e += random_nilpotent_even(src, N);
    }
    if (nilpotent)
        for (auto& o : tau.odd) o = random_odd(src, N);
    return {A, tau};
}

}  // namespace smq
