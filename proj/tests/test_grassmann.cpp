#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "smq/grassmann.hpp"

using namespace smq;

namespace {

IndexSet S(std::vector<int> list, int n) { return IndexSet::from_list(list, n); }

}  // namespace

TEST_SUITE("grassmann") {
    TEST_CASE("index sets") {
        const IndexSet I = S({1, 3}, 4);
        CHECK(I.bits() == 0b0101);
        CHECK(I.size() == 2);
        CHECK(I.contains(3));
        CHECK_FALSE(I.contains(2));
        CHECK(I.complement() == S({2, 4}, 4));
        CHECK(I.to_list() == std::vector<int>{1, 3});
        CHECK_THROWS(S({5}, 4));
    }

    TEST_CASE("eps_sign on small sets") {
        CHECK(eps_sign(S({1}, 2), S({2}, 2)) == 1);
        CHECK(eps_sign(S({2}, 2), S({1}, 2)) == -1);
        CHECK(eps_sign(S({1}, 2), S({1}, 2)) == 0);
        CHECK(eps_sign(S({2, 3}, 3), S({1}, 3)) == 1);
        CHECK(eps_sign(S({3}, 3), S({1, 2}, 3)) == 1);
        CHECK(eps_sign(S({2}, 3), S({1, 3}, 3)) == -1);
    }

    TEST_CASE("clifford coefficients follow the generator-string oracle") {
        // θ¹θ² is already ordered, θ²θ¹ needs one swap, θ¹θ¹ = 1, θ¹²θ² = θ¹.
        CHECK(clifford_coeff(S({1}, 2), S({2}, 2)) == 1);
        CHECK(clifford_coeff(S({2}, 2), S({1}, 2)) == -1);
        CHECK(clifford_coeff(S({1}, 2), S({1}, 2)) == 1);
        CHECK(clifford_coeff(S({1, 2}, 2), S({2}, 2)) == 1);
        CHECK(clifford_coeff(S({1, 2}, 2), S({1}, 2)) == -1);
        CHECK(clifford_coeff(S({1, 2}, 2), S({1, 2}, 2)) == -1);
        for (int n = 0; n <= 6; ++n)
            for (Mask I = 0; I < (Mask{1} << n); ++I)
                for (Mask J = 0; J < (Mask{1} << n); ++J) {
                    const auto c = oracle::word_product(I, J, 1);
                    const auto e = oracle::word_product(I, J, 0);
                    REQUIRE(clifford_coeff(IndexSet(I, n), IndexSet(J, n)) == c.sign);
                    REQUIRE(c.bits == (I ^ J));
                    REQUIRE(eps_sign(IndexSet(I, n), IndexSet(J, n)) == e.sign);
                }
    }

    TEST_CASE("printed clifford variants") {
        // The coproduct-form exponent reproduces the oracle everywhere.
        for (int n = 0; n <= 5; ++n)
            for (Mask I = 0; I < (Mask{1} << n); ++I)
                for (Mask J = 0; J < (Mask{1} << n); ++J)
                    REQUIRE(clifford_coeff_printed(IndexSet(I, n), IndexSet(J, n), PrintedCliffordVariant::coproduct_I_d) ==
                            clifford_coeff(IndexSet(I, n), IndexSet(J, n)));
        // The pairwise-form exponent breaks associativity: (θ¹θ²)θ² must be θ¹.
        const int lhs = clifford_coeff_printed(S({1}, 2), S({2}, 2), PrintedCliffordVariant::pairwise_IJ) *
                        clifford_coeff_printed(S({1, 2}, 2), S({2}, 2), PrintedCliffordVariant::pairwise_IJ);
        CHECK(lhs == -1);
    }

    TEST_CASE("products agree with the word oracle") {
        gen::Gen g(11);
        for (int t = 0; t < 200; ++t) {
            INFO("case " << t);
            const int n = g.integer(0, 5);
            const auto a = g.grassmann(n, 5), b = g.grassmann(n, 5);
            const QComplex q(g.rational(), g.rational());
            CHECK(wedge_product(a, b) == oracle::product(a, b, 0));
            CHECK(clifford_product(a, b) == oracle::product(a, b, 1));
            CHECK(q_clifford_product(a, b, q) == oracle::product(a, b, 1, q));
        }
    }

    TEST_CASE("associativity and unit (property)") {
        gen::Gen g(12);
        for (int t = 0; t < 100; ++t) {
            INFO("case " << t);
            const int n = g.integer(1, 6);
            const auto a = g.grassmann(n), b = g.grassmann(n), c = g.grassmann(n);
            const QComplex q(g.rational(), g.rational());
            const auto one = GrassmannElement<QComplex>::scalar(n, QComplex(1));
            CHECK(wedge_product(wedge_product(a, b), c) == wedge_product(a, wedge_product(b, c)));
            CHECK(clifford_product(clifford_product(a, b), c) == clifford_product(a, clifford_product(b, c)));
            CHECK(q_clifford_product(q_clifford_product(a, b, q), c, q) == q_clifford_product(a, q_clifford_product(b, c, q), q));
            CHECK(clifford_product(one, a) == a);
            CHECK(wedge_product(a, one) == a);
        }
    }

    TEST_CASE("graded commutativity of the wedge product (property)") {
        gen::Gen g(13);
        for (int t = 0; t < 100; ++t) {
            const int n = g.integer(1, 6);
            const Mask I = g.blade(n), J = g.blade(n);
            const auto a = GrassmannElement<QComplex>::blade(n, I), b = GrassmannElement<QComplex>::blade(n, J);
            const bool minus = (popcount(I) * popcount(J)) % 2 == 1;
            const auto ba = wedge_product(b, a);
            CHECK(wedge_product(a, b) == (minus ? -ba : ba));
        }
    }

    TEST_CASE("nilpotency and exponential") {
        const auto t1 = GrassmannElement<QComplex>::generator(3, 0);
        CHECK(wedge_product(t1, t1).is_zero());
        const auto x = GrassmannElement<QComplex>::blade(3, 0b011, QComplex(2)) + GrassmannElement<QComplex>::blade(3, 0b100);
        // exp(2θ¹θ² + θ³) = 1 + 2θ¹θ² + θ³ + 2θ¹θ²θ³.
        auto expect = GrassmannElement<QComplex>::scalar(3, QComplex(1)) + x;
        expect.add_term(0b111, QComplex(2));
        CHECK(exp_nilpotent(x) == expect);
        CHECK_THROWS(exp_nilpotent(GrassmannElement<QComplex>::scalar(3, QComplex(1))));
    }

    TEST_CASE("hodge star and pairings") {
        gen::Gen g(14);
        for (int t = 0; t < 50; ++t) {
            const int n = g.integer(0, 5);
            const auto a = g.grassmann(n);
            GrassmannElement<QComplex> twice(n);
            Rational norm = 0;
            for (const auto& [bits, c] : a.terms()) {
                twice.add_term(bits, (popcount(bits) * (n - popcount(bits))) % 2 == 0 ? c : -c);
                norm += c.re * c.re + c.im * c.im;
            }
            CHECK(hodge(hodge(a)) == twice);
            CHECK(positive_pairing(a, a) == QComplex(norm));
        }
        const auto top = GrassmannElement<QComplex>::blade(2, 0b11, QComplex(5));
        CHECK(berezin_odd(top) == QComplex(5));
        CHECK(left_derivative(top, 1) == GrassmannElement<QComplex>::blade(2, 0b01, QComplex(-5)));
    }
}
