#include "smq/udf.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <tuple>

namespace smq {

namespace {

using PS = PolySuper<QComplex>;
using TS = TensorSuper<QComplex>;

PS even_var(int legs, int M, int n, int leg, int j) { return PS::even_coordinate(legs * M, legs * n, leg * M + j); }
PS odd_var(int legs, int M, int n, int leg, int i) { return PS::odd_coordinate(legs * M, legs * n, leg * n + i); }

// Substitutes y_l ↦ y_l + z for every leg l in `shifted`, z being leg `zleg`.
PS shift_legs(const PS& f, int legs, int M, int n, const std::vector<int>& shifted, int zleg) {
    auto is_shifted = [&](int l) { return std::find(shifted.begin(), shifted.end(), l) != shifted.end(); };
    std::vector<PS> even, odd;
    for (int l = 0; l < legs; ++l)
        for (int j = 0; j < M; ++j) {
            PS v = even_var(legs, M, n, l, j);
            if (is_shifted(l)) v += even_var(legs, M, n, zleg, j);
            even.push_back(std::move(v));
        }
    for (int l = 0; l < legs; ++l)
        for (int i = 0; i < n; ++i) {
            PS v = odd_var(legs, M, n, l, i);
            if (is_shifted(l)) v += odd_var(legs, M, n, zleg, i);
            odd.push_back(std::move(v));
        }
    return substitute(f, even, odd, legs * M, legs * n);
}

// Embeds an L-leg element into L+1 legs (the new last leg unused).
PS add_leg(const PS& f, int legs, int M, int n) {
    std::vector<int> em, om;
    for (int k = 0; k < legs * M; ++k) em.push_back(k);
    for (int k = 0; k < legs * n; ++k) om.push_back(k);
    return f.embed((legs + 1) * M, (legs + 1) * n, em, om);
}

StarCoords leg_coords(const ActionSpec& action, int leg) {
    return StarCoords::standard(action.m, action.n, leg * action.m, leg * action.n);
}

Mask leg_mask(int n, int leg) { return ((Mask{1} << n) - 1) << (leg * n); }

}  // namespace

ActionSpec ActionSpec::translation(int m, int n) {
    if (m < 0 || m % 2 != 0 || n < 0) throw std::invalid_argument("ActionSpec: m must be even and non-negative");
    return {ActionKind::translation, m, n};
}

ActionSpec ActionSpec::odd_translation(int n) {
    if (n < 0) throw std::invalid_argument("ActionSpec: n must be non-negative");
    return {ActionKind::odd_translation, 0, n};
}

HopfStructure ActionSpec::hopf() const {
    return HopfStructure(HopfStructure::Mode::flat, m, n);
}

void ActionSpec::check(const DeformationParams& params) const {
    if (params.m != m || params.n != n) throw std::invalid_argument("ActionSpec: parameters describe a different group");
}

void ActionSpec::check(const PolySuper<QComplex>& a) const {
    if (a.m() != m || a.n() != n) throw std::invalid_argument("ActionSpec: element does not belong to the algebra");
}

TwoLeg orbit_map(const PolySuper<QComplex>& a, const ActionSpec& action) {
    action.check(a);
    return coproduct(a, action.hopf());
}

PolySuper<QComplex> deformed_product(const PolySuper<QComplex>& a, const PolySuper<QComplex>& b, const ActionSpec& action,
                                     const DeformationParams& params) {
    action.check(params);
    const TwoLeg ra = orbit_map(a, action);
    const TwoLeg rb = orbit_map(b, action);
    const TS prod{2, action.m, action.n, star(ra.f, rb.f, params, leg_coords(action, 1))};
    return counit_on_leg(prod, 1).f;
}

TensorSuper<QComplex> twist_on_legs(const TensorSuper<QComplex>& t, int leg, const ActionSpec& action,
                                    const DeformationParams& params) {
    action.check(params);
    const int L = t.legs, M = t.M, n = t.n;
    if (M != action.m || n != action.n) throw std::invalid_argument("twist_on_legs: layout does not match the action");
    if (leg < 0 || leg + 1 >= L) throw std::invalid_argument("twist_on_legs: leg out of range");
    const int i = leg, j = leg + 1;
    const Mask mi = leg_mask(n, i), mj = leg_mask(n, j);

    // Group terms as O · A · B with A on leg i, B on leg j and O on the remaining legs;
    // F acts on A ⊗ B only, so terms sharing (A, B) are summed first.
    using Key = std::tuple<Mask, Exponents, Mask, Exponents>;
    std::map<Key, PS> groups;
    for (const auto& [bits, poly] : t.f.coeffs()) {
        const Mask Bi = bits & mi, Bj = bits & mj, Bo = bits & ~(mi | mj);
        const int sign = wedge_sign(Bo, Bi) * wedge_sign(Bo | Bi, Bj);
        for (const auto& [e, c] : poly.terms()) {
            Exponents ei(e.size(), 0), ej(e.size(), 0), eo = e;
            for (int k = 0; k < M; ++k) {
                ei[static_cast<std::size_t>(i * M + k)] = e[static_cast<std::size_t>(i * M + k)];
                ej[static_cast<std::size_t>(j * M + k)] = e[static_cast<std::size_t>(j * M + k)];
                eo[static_cast<std::size_t>(i * M + k)] = 0;
                eo[static_cast<std::size_t>(j * M + k)] = 0;
            }
            Polynomial<QComplex> po(L * M);
            po.add_term(eo, sign < 0 ? -c : c);
            PS other(L * M, L * n);
            other.add(Bo, po);
            auto [it, inserted] = groups.try_emplace(Key{Bi, ei, Bj, ej}, other);
            if (!inserted) it->second += other;
        }
    }
    TS out{L, M, n, PS(L * M, L * n)};
    const int z = L;
    for (const auto& [key, other] : groups) {
        if (other.is_zero()) continue;
        const auto& [Bi, ei, Bj, ej] = key;
        Polynomial<QComplex> pa(L * M), pb(L * M);
        pa.add_term(ei, QComplex(1));
        pb.add_term(ej, QComplex(1));
        PS A(L * M, L * n), B(L * M, L * n);
        A.add(Bi, pa);
        B.add(Bj, pb);
        const PS ra = shift_legs(add_leg(A, L, M, n), L + 1, M, n, {i}, z);
        const PS rb = shift_legs(add_leg(B, L, M, n), L + 1, M, n, {j}, z);
        const TS fz{L + 1, M, n, star(ra, rb, params, leg_coords(action, z))};
        out.f += pointwise_mul(other, counit_on_leg(fz, z).f);
    }
    return out;
}

TwoLeg twist_apply(const TwoLeg& c, const ActionSpec& action, const DeformationParams& params) {
    if (c.legs != 2) throw std::invalid_argument("twist_apply: expects a two-leg element");
    return twist_on_legs(c, 0, action, params);
}

PolySuper<QComplex> twisted_multiply(const TwoLeg& c, const ActionSpec& action, const DeformationParams& params) {
    return multiply_legs(twist_apply(c, action, params), 0).f;
}

TwoLeg coaction(const PolySuper<QComplex>& a, const ActionSpec& action) { return orbit_map(a, action); }

CoactionResidual coaction_residual(const PolySuper<QComplex>& a, const ActionSpec& action) {
    const HopfStructure H = action.hopf();
    const TwoLeg chi = coaction(a, action);
    CoactionResidual r;
    // χ ⊗ id applies the coaction to the algebra leg; for these actions χ is the group law on that leg.
    r.coassociativity = coproduct_on_leg(chi, H, 1).f - coproduct_on_leg(chi, H, 0).f;
    r.counit = counit_on_leg(chi, 1).f - a;
    return r;
}

PolySuper<QComplex> comodule_residual(const PolySuper<QComplex>& a, const PolySuper<QComplex>& b, const ActionSpec& action,
                                      const DeformationParams& params, bool deformed) {
    action.check(params);
    const int M = action.m, n = action.n;
    const TwoLeg ca = coaction(a, action), cb = coaction(b, action);
    std::vector<int> e0, o0, e1, o1;
    for (int k = 0; k < 2 * M; ++k) {
        e0.push_back(k);
        e1.push_back(2 * M + k);
    }
    for (int k = 0; k < 2 * n; ++k) {
        o0.push_back(k);
        o1.push_back(2 * n + k);
    }
    // χ(a) ⊗ χ(b) on legs (A, H, A, H), then σ₂₃ to (A, A, H, H).
    TS four{4, M, n, pointwise_mul(ca.f.embed(4 * M, 4 * n, e0, o0), cb.f.embed(4 * M, 4 * n, e1, o1))};
    four = graded_swap(four, 1);
    if (deformed) four = twist_on_legs(four, 0, action, params);
    const TS three = multiply_legs(four, 0);
    const TS two = multiply_legs(three, 1);
    const PS ab = deformed ? deformed_product(a, b, action, params) : pointwise_mul(a, b);
    return two.f - coaction(ab, action).f;
}

ExchangeSample exchange_bound_sample(int n, int trials, std::uint64_t seed) {
    if (n < 0 || n > 4) throw std::invalid_argument("exchange_bound_sample: n out of range");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> terms(1, 3), deg(0, 2), width(1, 4);
    const int ring = 2;
    const Mask blades = Mask{1} << n;
    auto random_ring = [&]() {
        std::vector<CDouble> a(std::size_t{1} << ring);
        for (auto& v : a) v = {coef(rng), coef(rng)};
        return a;
    };
    auto random_function = [&]() {
        std::vector<GaussPoly<CDouble>> f;
        for (Mask I = 0; I < blades; ++I) {
            Polynomial<CDouble> p(1);
            for (int k = 0, d = deg(rng); k <= d; ++k) p.add_term({k}, {coef(rng), coef(rng)});
            f.emplace_back(p, std::vector<Rational>{Rational(width(rng), 2)});
        }
        return f;
    };
    std::vector<double> grid;
    for (int k = 0; k <= 40; ++k) grid.push_back(-4.0 + 0.2 * k);
    auto l1 = [](const std::vector<CDouble>& v) {
        double s = 0.0;
        for (const auto& c : v) s += std::abs(c);
        return s;
    };

    ExchangeSample out;
    for (int t = 0; t < trials; ++t) {
        const int r = terms(rng);
        std::vector<std::vector<CDouble>> A, B;
        std::vector<std::vector<GaussPoly<CDouble>>> F, G;
        for (int i = 0; i < r; ++i) {
            A.push_back(random_ring());
            B.push_back(random_ring());
            F.push_back(random_function());
            G.push_back(random_function());
        }
        // Values on the grid: fv[i][x][I].
        auto tabulate = [&](const std::vector<std::vector<GaussPoly<CDouble>>>& fs) {
            std::vector<std::vector<std::vector<CDouble>>> v(fs.size());
            for (std::size_t i = 0; i < fs.size(); ++i)
                for (double x : grid) {
                    std::vector<CDouble> row;
                    for (const auto& c : fs[i]) row.push_back(c.evaluate({x}));
                    v[i].push_back(std::move(row));
                }
            return v;
        };
        const auto fv = tabulate(F), gv = tabulate(G);
        double pi = 0.0;
        for (int i = 0; i < r; ++i) {
            double sf = 0.0, sg = 0.0;
            for (std::size_t x = 0; x < grid.size(); ++x) {
                sf = std::max(sf, l1(fv[static_cast<std::size_t>(i)][x]));
                sg = std::max(sg, l1(gv[static_cast<std::size_t>(i)][x]));
            }
            pi += l1(A[static_cast<std::size_t>(i)]) * l1(B[static_cast<std::size_t>(i)]) * sf * sg;
        }
        if (!(pi > 0.0)) {
            ++out.skipped;
            continue;
        }
        double tau = 0.0;
        const std::size_t R = std::size_t{1} << ring;
        std::vector<CDouble> acc(R * R);
        for (std::size_t x = 0; x < grid.size(); ++x)
            for (std::size_t y = 0; y < grid.size(); ++y) {
                double s = 0.0;
                for (Mask I = 0; I < blades; ++I)
                    for (Mask J = 0; J < blades; ++J) {
                        std::fill(acc.begin(), acc.end(), CDouble(0.0, 0.0));
                        for (int i = 0; i < r; ++i) {
                            const auto u = static_cast<std::size_t>(i);
                            const CDouble fg = fv[u][x][I] * gv[u][y][J];
                            for (std::size_t k = 0; k < R; ++k)
                                for (std::size_t l = 0; l < R; ++l) acc[k * R + l] += A[u][k] * B[u][l] * fg;
                        }
                        s += l1(acc);
                    }
                tau = std::max(tau, s);
            }
        out.max_ratio = std::max(out.max_ratio, tau / pi);
        ++out.tensors;
    }
    return out;
}

}  // namespace smq
