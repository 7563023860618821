#include "doctest.h"
#include "generators.hpp"
#include "smq/io.hpp"
#include "smq/parser.hpp"
#include "smq/udf.hpp"

using namespace smq;

namespace {

using PS = PolySuper<QComplex>;

}  // namespace

TEST_SUITE("udf") {
    TEST_CASE("orbit map and deformed product of coordinates") {
        const ActionSpec action = ActionSpec::translation(2, 1);
        const DeformationParams p(Rational(1, 2), Rational(1), 2, 1);
        const VariableNames names = VariableNames::standard(2, 1);
        const VariableNames legs = tensor_names(names, 2);
        CHECK(orbit_map(parse_polynomial("x1*th1", names), action).f == parse_polynomial("(x1_1 + x1_2)*(th1_1 + th1_2)", legs));
        CHECK(deformed_product(parse_polynomial("x1", names), parse_polynomial("w1", names), action, p) ==
              parse_polynomial("x1*w1 + 1/4i", names));
        CHECK(deformed_product(parse_polynomial("th1", names), parse_polynomial("th1", names), action, p) == PS::constant(2, 1, p.q()));
        CHECK_THROWS(deformed_product(parse_polynomial("x1", names), parse_polynomial("w1", names), action,
                                      DeformationParams(Rational(1, 2), Rational(1), 2, 2)));
    }

    TEST_CASE("deformed product, twist and associativity (property)") {
        gen::Gen g(91);
        for (int t = 0; t < 12; ++t) {
            INFO("case " << t);
            const int n = g.integer(0, 2);
            const ActionSpec action = ActionSpec::translation(2, n);
            const DeformationParams p(t % 2 == 0 ? Rational(1, 2) : Rational(-1, 3), Rational(2), 2, n);
            const PS a = g.polysuper(2, n, 2, 3), b = g.polysuper(2, n, 2, 3), c = g.polysuper(2, n, 1, 2);
            const PS ab = deformed_product(a, b, action, p);
            CHECK(ab == star(a, b, p));
            CHECK(twisted_multiply(tensor(a, b, action.hopf()), action, p) == ab);
            CHECK(deformed_product(ab, c, action, p) == deformed_product(a, deformed_product(b, c, action, p), action, p));
        }
    }

    TEST_CASE("coaction and comodule axioms (property)") {
        gen::Gen g(92);
        for (int t = 0; t < 10; ++t) {
            INFO("case " << t);
            const int n = g.integer(0, 2);
            const ActionSpec action = ActionSpec::translation(2, n);
            const DeformationParams p(Rational(1, 2), Rational(1), 2, n);
            const PS a = g.polysuper(2, n, 2, 2), b = g.polysuper(2, n, 2, 2);
            CHECK(coaction_residual(a, action).zero());
            CHECK(comodule_residual(a, b, action, p, false).is_zero());
            CHECK(comodule_residual(a, b, action, p, true).is_zero());
        }
    }

    TEST_CASE("odd translations realize the q-Clifford algebra") {
        for (int n = 1; n <= 3; ++n) {
            const ActionSpec odd = ActionSpec::odd_translation(n);
            const DeformationParams p(Rational(1, 2), Rational(2), 0, n);
            for (Mask I = 0; I < (Mask{1} << n); ++I)
                for (Mask J = 0; J < (Mask{1} << n); ++J) {
                    QComplex c(clifford_coeff(IndexSet(I, n), IndexSet(J, n)));
                    for (int d = 0; d < popcount(I & J); ++d) c *= p.q();
                    const PS got = deformed_product(PS::blade(0, n, I, Polynomial<QComplex>::one(0)), PS::blade(0, n, J, Polynomial<QComplex>::one(0)), odd, p);
                    CHECK(got == PS::blade(0, n, I ^ J, Polynomial<QComplex>::constant(0, c)));
                }
        }
    }

    TEST_CASE("twist on a middle leg leaves spectators alone") {
        const ActionSpec action = ActionSpec::translation(2, 0);
        const DeformationParams p(Rational(1, 2), Rational(1), 2, 0);
        const VariableNames legs = tensor_names(VariableNames::standard(2, 0), 3);
        const TensorSuper<QComplex> t(3, 2, 0, parse_polynomial("x1_1*x1_2*w1_3", legs));
        // F(x ⊗ w) = x ⊗ w + iθ/2 (1 ⊗ 1).
        CHECK(twist_on_legs(t, 1, action, p).f == parse_polynomial("x1_1*x1_2*w1_3 + 1/4i*x1_1", legs));
    }

    TEST_CASE("exchange bound on sampled tensors") {
        for (int n = 0; n <= 1; ++n) {
            const ExchangeSample s = exchange_bound_sample(n, 20, 7);
            CHECK(s.tensors + s.skipped == 20);
            CHECK(s.tensors > 0);
            CHECK(s.max_ratio <= (2 << n) * 1.05);
        }
    }
}
