#include "smq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "smq/hopf.hpp"
#include "smq/io.hpp"
#include "smq/oracle.hpp"
#include "smq/parser.hpp"
#include "smq/symmetry.hpp"
#include "smq/udf.hpp"

namespace smq {

namespace {

using PS = PolySuper<QComplex>;

CheckLine exact_line(const std::string& name, const Rational& worst, const std::string& detail = {}) {
    return {name, worst == 0, to_string(worst), detail};
}

CheckLine float_line(const std::string& name, double value, double tol, const std::string& detail = {}) {
    return {name, std::isfinite(value) && value < tol, format_double(value), detail.empty() ? "tol " + format_double(tol) : detail};
}

Rational largest_part(const GrassmannElement<QComplex>& e) {
    Rational worst = 0;
    for (const auto& [bits, v] : e.terms()) worst = std::max({worst, Rational(abs(v.re)), Rational(abs(v.im))});
    return worst;
}

int poly_degree(const PS& f) {
    int d = 0;
    for (const auto& [bits, c] : f.coeffs()) d = std::max(d, c.degree());
    return d;
}

int parity_of(const PS& f) { return std::max(f.parity(), 0); }

PS random_sample(RandomRationals& rng, int m, int n, int deg, int terms, int parity = -1) {
    PS f = random_polysuper(rng, m, n, deg, terms, parity);
    if (f.is_zero() && parity != 1) f = PS::one(m, n);
    return f;
}

std::string describe(const PS& f) {
    if (f.n() > kMaxPublicGenerators) return {};
    const VariableNames names = VariableNames::standard(f.m() % 2 == 0 ? f.m() : f.m() - 1, f.n(), f.m() % 2 == 1);
    return print_expression(f, names);
}

// ---------------------------------------------------------------------------

SuiteReport suite_grassmann(const SuiteOptions& o) {
    SuiteReport r{"grassmann", {}};
    const int nmax = std::min(std::max(o.n, 6), kMaxPublicGenerators);
    long coeff_bad = 0, eps_bad = 0;
    for (int n = 0; n <= nmax; ++n) {
        const Mask full = (Mask{1} << n) - 1;
        for (Mask I = 0; I <= full; ++I)
            for (Mask J = 0; J <= full; ++J) {
                const WordProduct c = generator_word_product(I, J, true);
                const WordProduct e = generator_word_product(I, J, false);
                if (clifford_coeff(IndexSet(I, n), IndexSet(J, n)) != c.sign || c.bits != (I ^ J)) ++coeff_bad;
                if (eps_sign(IndexSet(I, n), IndexSet(J, n)) != e.sign) ++eps_bad;
            }
    }
    r.checks.push_back({"clifford_coeff_vs_word_oracle", coeff_bad == 0, std::to_string(coeff_bad), "n <= " + std::to_string(nmax)});
    r.checks.push_back({"eps_sign_vs_word_oracle", eps_bad == 0, std::to_string(eps_bad), "n <= " + std::to_string(nmax)});

    RandomRationals rng(o.seed);
    const int n = std::max(o.n, 3);
    const DeformationParams p(o.theta, o.alpha, 0, n);
    auto element = [&] { return as_grassmann(random_sample(rng, 0, n, 0, 4)); };
    Rational cl = 0, ql = 0, wl = 0;
    const QComplex q = p.q();
    for (int k = 0; k < o.samples; ++k) {
        const auto a = element(), b = element(), c = element();
        wl = std::max(wl, largest_part(wedge_product(wedge_product(a, b), c) - wedge_product(a, wedge_product(b, c))));
        cl = std::max(cl, largest_part(clifford_product(clifford_product(a, b), c) - clifford_product(a, clifford_product(b, c))));
        ql = std::max(ql, largest_part(q_clifford_product(q_clifford_product(a, b, q), c, q) - q_clifford_product(a, q_clifford_product(b, c, q), q)));
    }
    r.checks.push_back(exact_line("wedge_associativity", wl));
    r.checks.push_back(exact_line("clifford_associativity", cl));
    r.checks.push_back(exact_line("q_clifford_associativity", ql));
    return r;
}

SuiteReport suite_star(const SuiteOptions& o) {
    SuiteReport r{"star", {}};
    const DeformationParams p(o.theta, o.alpha, o.m, o.n);
    RandomRationals rng(o.seed);
    Rational assoc = 0, conj_law = 0, unit = 0, poisson = 0;
    std::string witness;
    for (int k = 0; k < o.samples; ++k) {
        const PS f = random_sample(rng, o.m, o.n, 2, 3), g = random_sample(rng, o.m, o.n, 2, 3), h = random_sample(rng, o.m, o.n, 2, 3);
        const Rational a = max_residual(star(star(f, g, p), h, p) - star(f, star(g, h, p), p));
        if (a > assoc) {
            assoc = a;
            witness = describe(f) + " ; " + describe(g) + " ; " + describe(h);
        }
        const PS fh = random_sample(rng, o.m, o.n, 2, 3, rng.index(2)), gh = random_sample(rng, o.m, o.n, 2, 3, rng.index(2));
        const bool minus = (parity_of(fh) & parity_of(gh)) != 0;
        const PS rhs = star(conjugate(gh), conjugate(fh), p);
        conj_law = std::max(conj_law, max_residual(conjugate(star(fh, gh, p)) - (minus ? -rhs : rhs)));
        const PS one = PS::one(o.m, o.n);
        unit = std::max({unit, max_residual(star(one, f, p) - f), max_residual(star(f, one, p) - f)});
        if (k < 5) {
            const PS fe = PS::blade(o.m, o.n, 0, f.coeff(0)), ge = PS::blade(o.m, o.n, 0, g.coeff(0));
            poisson = std::max(poisson, max_residual(commutator_theta_linear(fe, ge, o.alpha, o.m, o.n) -
                                                     poisson_bracket(fe, ge, p) * QComplex::i()));
        }
    }
    r.checks.push_back(exact_line("associativity", assoc, assoc == 0 ? std::string{} : witness));
    r.checks.push_back(exact_line("conjugation_law", conj_law));
    r.checks.push_back(exact_line("unit", unit));
    r.checks.push_back(exact_line("poisson_direction_even", poisson));
    return r;
}

SuiteReport suite_hopf(const SuiteOptions& o) {
    SuiteReport r{"hopf", {}};
    RandomRationals rng(o.seed);
    std::vector<HopfStructure> structures{HopfStructure(HopfStructure::Mode::flat, o.m, o.n)};
    if (o.m % 2 == 0 && o.m > 0) structures.emplace_back(HopfStructure::Mode::heisenberg, o.m, o.n);
    for (const auto& H : structures) {
        const int M = H.even_per_leg();
        std::vector<PS> sample;
        for (int k = 0; k < o.samples; ++k) sample.push_back(random_sample(rng, M, H.n, 2, 4));
        for (const auto& a : verify_hopf_axioms(H, sample)) r.checks.push_back(exact_line(H.name() + "." + a.axiom, a.max_residual, a.witness.value_or("")));
        if (H.mode == HopfStructure::Mode::heisenberg) {
            sample.push_back(PS::even_coordinate(M, H.n, H.central()));
            const auto w = cocommutativity_witness(H, sample);
            r.checks.push_back({"heisenberg.non_cocommutative", w.has_value(), w ? "witness" : "none",
                                w ? print_expression(*w, VariableNames::standard(H.m, H.n, true)) : ""});
        }
    }
    return r;
}

SuiteReport suite_oracle(const SuiteOptions& o) {
    if (o.m != 2) throw std::invalid_argument("oracle suite: needs m = 2");
    SuiteReport r{"oracle", {}};
    const DeformationParams p(o.theta, o.alpha, o.m, o.n);
    RandomRationals rng(o.seed);
    double series = 0.0, tracial = 0.0;
    const int pairs = std::min(o.samples, 2);
    for (int k = 0; k < pairs; ++k) {
        const GaussSuper<CDouble> f = to_float(random_gausssuper(rng, 2, o.n, 1, 2));
        const GaussSuper<CDouble> g = to_float(random_gausssuper(rng, 2, o.n, 1, 2));
        for (int t = 0; t < 2; ++t) {
            const std::vector<double> z{rng.uniform(-1, 1), rng.uniform(-1, 1)};
            const auto a = star_series_at(f, g, p, z);
            const auto b = star_integral(f, g, p, z, o.quad).value;
            series = std::max(series, relative_difference(a, b));
        }
        tracial = std::max(tracial, tracial_check(f, g, p, o.quad).residual);
    }
    r.checks.push_back(float_line("series_vs_integral", series, 1e-6, o.quad.describe()));
    r.checks.push_back(float_line("traciality", tracial, 1e-6, o.quad.describe()));
    return r;
}

SuiteReport suite_quantization(const SuiteOptions& o) {
    if (o.m != 2 || o.n > 2) throw std::invalid_argument("quantization suite: needs m = 2 and n <= 2");
    SuiteReport r{"quantization", {}};
    const DeformationParams p(o.theta, o.alpha, o.m, o.n);
    const double theta = o.theta.get_d();
    RandomRationals rng(o.seed);
    const GaussSuper<CDouble> f = to_float(random_gausssuper(rng, 2, o.n, 1, 2));
    const GaussSuper<CDouble> g = to_float(random_gausssuper(rng, 2, o.n, 1, 2));
    const double r6 = homomorphism_residual(f, g, HermiteBasis(6, o.n, theta), p, o.quad);
    const double r8 = homomorphism_residual(f, g, HermiteBasis(8, o.n, theta), p, o.quad);
    r.checks.push_back(float_line("homomorphism_N8", r8, 1e-2, "N=6: " + format_double(r6)));
    r.checks.push_back({"homomorphism_decreases", r8 < r6, format_double(r8 - r6), "N=8 minus N=6"});
    double unitary = 0.0, rep = 0.0;
    const int ring = 2;
    for (int k = 0; k < std::min(o.samples, 5); ++k) {
        const HeisenbergElement a = random_heisenberg(rng, o.n, ring), b = random_heisenberg(rng, o.n, ring);
        const QState s1 = random_qstate(rng, o.n, ring), s2 = random_qstate(rng, o.n, ring);
        unitary = std::max(unitary, unitarity_residual(a, {s1, s2}, theta));
        rep = std::max(rep, representation_residual(a, b, s1, theta, {-1.5, -0.3, 0.0, 0.8, 2.0}));
    }
    r.checks.push_back(float_line("U_unitarity", unitary, 1e-6));
    r.checks.push_back(float_line("U_representation", rep, 1e-6));
    return r;
}

SuiteReport suite_symmetry(const SuiteOptions& o) {
    SuiteReport r{"symmetry", {}};
    const DeformationParams p(o.theta, o.alpha, o.m, o.n);
    Rational inv = 0;
    int non_members = 0;
    const int members = std::min(o.samples, 10);
    for (int k = 0; k < members; ++k) {
        const bool nilpotent = (k % 2) == 1;
        const AffineSuperMap phi = random_osp_member(p, nilpotent ? 2 : 0, o.seed + static_cast<std::uint64_t>(k), nilpotent);
        if (!osp_membership(phi.A, p).member) ++non_members;
        if (const auto w = coordinate_witness(phi, p)) inv = std::max(inv, max_residual(w->residual));
    }
    r.checks.push_back({"members_satisfy_osp", non_members == 0, std::to_string(non_members), std::to_string(members) + " sampled"});
    r.checks.push_back(exact_line("member_invariance", inv));
    if (o.m + o.n > 0) {
        ExactMatrix A = ExactMatrix::identity(o.m, o.n, 0);
        A.at(0, 0) = GrassmannElement<QComplex>::scalar(0, QComplex(2));
        const auto w = coordinate_witness(AffineSuperMap::linear(A), p);
        r.checks.push_back({"non_member_witness", w.has_value() && !osp_membership(A, p).member,
                            w ? to_string(max_residual(w->residual)) : "0",
                            w ? "z" + std::to_string(w->mu + 1) + ", z" + std::to_string(w->nu + 1) : "no witness"});
    }
    return r;
}

SuiteReport suite_udf(const SuiteOptions& o) {
    SuiteReport r{"udf", {}};
    const ActionSpec action = ActionSpec::translation(o.m, o.n);
    const DeformationParams p(o.theta, o.alpha, o.m, o.n);
    const HopfStructure H = action.hopf();
    RandomRationals rng(o.seed);
    Rational vs_star = 0, twist = 0, assoc = 0, comod0 = 0, comod = 0;
    bool coaction_ok = true;
    const int samples = std::min(o.samples, 8);
    for (int k = 0; k < samples; ++k) {
        const PS a = random_sample(rng, o.m, o.n, 2, 3), b = random_sample(rng, o.m, o.n, 2, 3), c = random_sample(rng, o.m, o.n, 1, 2);
        const PS ab = deformed_product(a, b, action, p);
        vs_star = std::max(vs_star, max_residual(ab - star(a, b, p)));
        twist = std::max(twist, max_residual(twisted_multiply(tensor(a, b, H), action, p) - ab));
        assoc = std::max(assoc, max_residual(deformed_product(ab, c, action, p) - deformed_product(a, deformed_product(b, c, action, p), action, p)));
        coaction_ok = coaction_ok && coaction_residual(a, action).zero();
        comod0 = std::max(comod0, max_residual(comodule_residual(a, b, action, p, false)));
        comod = std::max(comod, max_residual(comodule_residual(a, b, action, p, true)));
    }
    r.checks.push_back(exact_line("deformed_product_equals_star", vs_star));
    r.checks.push_back(exact_line("twist_identity", twist));
    r.checks.push_back(exact_line("deformed_associativity", assoc));
    r.checks.push_back({"coaction_axioms", coaction_ok, coaction_ok ? "0" : "nonzero", ""});
    r.checks.push_back(exact_line("comodule_undeformed", comod0));
    r.checks.push_back(exact_line("comodule_deformed", comod));
    if (o.n > 0) {
        const ActionSpec odd = ActionSpec::odd_translation(o.n);
        const DeformationParams q(o.theta, o.alpha, 0, o.n);
        Rational worst = 0;
        const Mask full = (Mask{1} << o.n) - 1;
        for (Mask I = 0; I <= full; ++I)
            for (Mask J = 0; J <= full; ++J) {
                QComplex expect(clifford_coeff(IndexSet(I, o.n), IndexSet(J, o.n)));
                expect *= ipow(q.q(), static_cast<unsigned>(popcount(I & J)));
                const PS got = deformed_product(PS::blade(0, o.n, I, Polynomial<QComplex>::one(0)), PS::blade(0, o.n, J, Polynomial<QComplex>::one(0)), odd, q);
                worst = std::max(worst, max_residual(got - PS::blade(0, o.n, I ^ J, Polynomial<QComplex>::constant(0, expect))));
            }
        r.checks.push_back(exact_line("odd_translation_structure_constants", worst));
    }
    return r;
}

using SuiteFn = SuiteReport (*)(const SuiteOptions&);

const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> table{
        {"grassmann", suite_grassmann}, {"star", suite_star},         {"hopf", suite_hopf}, {"oracle", suite_oracle},
        {"quantization", suite_quantization}, {"symmetry", suite_symmetry}, {"udf", suite_udf}};
    return table;
}

}  // namespace

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"grassmann", "star", "hopf", "oracle", "quantization", "symmetry", "udf"};
    return names;
}

std::vector<SuiteReport> run_suite(const std::string& name, const SuiteOptions& options) {
    if (options.samples < 1) throw std::invalid_argument("verify: samples must be positive");
    std::vector<SuiteReport> out;
    if (name == "all") {
        for (const auto& s : suite_names()) out.push_back(registry().at(s)(options));
        return out;
    }
    const auto it = registry().find(name);
    if (it == registry().end()) throw std::invalid_argument("verify: unknown suite '" + name + "'");
    out.push_back(it->second(options));
    return out;
}

double relative_difference(const GrassmannElement<CDouble>& a, const GrassmannElement<CDouble>& b) {
    double scale = 1.0, diff = 0.0;
    for (const auto& [bits, v] : a.terms()) scale = std::max(scale, std::abs(v));
    const GrassmannElement<CDouble> d = a - b;
    for (const auto& [bits, v] : d.terms()) diff = std::max(diff, std::abs(v));
    return diff / scale;
}

WordProduct generator_word_product(Mask I, Mask J, bool clifford) {
    std::vector<int> word;
    for (int k = 0; k < 32; ++k)
        if (((I >> k) & 1U) != 0) word.push_back(k);
    for (int k = 0; k < 32; ++k)
        if (((J >> k) & 1U) != 0) word.push_back(k);
    int sign = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            if (word[i] > word[i + 1]) {
                std::swap(word[i], word[i + 1]);
                sign = -sign;
                changed = true;
            } else if (word[i] == word[i + 1]) {
                if (!clifford) return {0, 0};
                word.erase(word.begin() + static_cast<std::ptrdiff_t>(i), word.begin() + static_cast<std::ptrdiff_t>(i) + 2);
                changed = true;
                break;
            }
        }
    }
    Mask bits = 0;
    for (int k : word) bits |= Mask{1} << k;
    return {sign, bits};
}

PolySuper<QComplex> commutator_theta_linear(const PolySuper<QComplex>& f, const PolySuper<QComplex>& g, const Rational& alpha,
                                            int m, int n) {
    // Nodes 0, 1, …, D; the commutator vanishes at θ = 0 and has degree < D in θ.
    const int D = poly_degree(f) + poly_degree(g) + n + 2;
    PolySuper<QComplex> out(m, n);
    for (int k = 1; k <= D; ++k) {
        Rational weight = 1;
        for (int j = 1; j <= D; ++j)
            if (j != k) weight *= Rational(-j, 1);
        for (int j = 0; j <= D; ++j)
            if (j != k) weight /= Rational(k - j, 1);
        const DeformationParams p(Rational(k), alpha, m, n);
        out += graded_commutator(f, g, p) * QComplex(weight);
    }
    return out;
}

HeisenbergElement random_heisenberg(RandomRationals& rng, int n, int ring) {
    HeisenbergElement g = HeisenbergElement::identity(n, ring);
    g.x = rng.next().get_d();
    g.w = rng.next().get_d();
    g.a = GrassmannElement<CDouble>::scalar(ring, {rng.next().get_d(), 0.0});
    if (ring >= 2) g.a.add_term(3, {rng.next().get_d(), 0.0});
    for (auto& xi : g.xi) {
        xi = GrassmannElement<CDouble>(ring);
        for (int k = 0; k < ring; ++k) xi.add_term(Mask{1} << k, {rng.next().get_d(), 0.0});
    }
    return g;
}

QState random_qstate(RandomRationals& rng, int n, int ring) {
    QState s{ring, n, {}};
    const int gens = ring + n;
    for (int t = 0; t < 2; ++t) {
        QTerm term;
        term.shift = rng.uniform(-0.5, 0.5);
        term.width = rng.uniform(0.8, 1.6);
        term.freq = rng.uniform(-1.0, 1.0);
        term.poly = {CDouble(1.0, 0.0), CDouble(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))};
        term.odd = GrassmannElement<CDouble>::scalar(gens, {1.0, 0.0});
        if (gens > 0) term.odd.add_term(static_cast<Mask>(1 + rng.index((1 << gens) - 1)), {rng.uniform(-1, 1), rng.uniform(-1, 1)});
        s.terms.push_back(std::move(term));
    }
    return s;
}

}  // namespace smq
