#include <cmath>

#include "doctest.h"
#include "smq/quantization.hpp"
#include "smq/random.hpp"
#include "smq/verify.hpp"

using namespace smq;

namespace {

GaussPoly<CDouble> gauss(const Polynomial<CDouble>& p, Rational a) { return GaussPoly<CDouble>(p, {a, a}); }

Polynomial<CDouble> coordinate(int k) {
    Polynomial<CDouble> p(2);
    Exponents e{0, 0};
    e[static_cast<std::size_t>(k)] = 1;
    p.add_term(e, CDouble(1, 0));
    return p;
}

}  // namespace

TEST_SUITE("quantization") {
    TEST_CASE("Hermite functions are orthonormal") {
        // Trapezoid on [−12, 12] is spectrally accurate for these integrands.
        const int count = 10, P = 2001;
        const double h = 24.0 / (P - 1);
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(count, count);
        for (int k = 0; k < P; ++k) {
            const auto v = hermite_functions(count, -12.0 + h * k);
            for (int a = 0; a < count; ++a)
                for (int b = 0; b < count; ++b) G(a, b) += h * v[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)];
        }
        CHECK((G - Eigen::MatrixXd::Identity(count, count)).cwiseAbs().maxCoeff() < 1e-12);
        const HermiteBasis B(4, 2, 0.5);
        CHECK(B.dim() == 16);
        CHECK(B.index(1, 0b10) == 9);
    }

    TEST_CASE("vacuum symbol maps to half the ground-state projector") {
        // e^{−(x²+w²)/θ} has widths 2/θ.
        const DeformationParams p(Rational(1, 2), Rational(1), 2, 0);
        const HermiteBasis B(6, 0, 0.5);
        const Eigen::MatrixXcd M = weyl_omega0(gauss(Polynomial<CDouble>::one(2), Rational(4)), B, p, QuadratureSpec{});
        Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(6, 6);
        expect(0, 0) = 0.5;
        CHECK((M - expect).cwiseAbs().maxCoeff() < 1e-12);
    }

    TEST_CASE("wide symbol is close to the identity") {
        const DeformationParams p(Rational(1, 2), Rational(1), 2, 0);
        const HermiteBasis B(6, 0, 0.5);
        const Eigen::MatrixXcd M = weyl_omega0(gauss(Polynomial<CDouble>::one(2), Rational(1, 100)), B, p, QuadratureSpec{});
        CHECK((M - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() < 3e-2);
        CHECK((M - M.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }

    TEST_CASE("real symbols give Hermitian operators") {
        const DeformationParams p(Rational(1, 3), Rational(1), 2, 0);
        const HermiteBasis B(8, 0, 1.0 / 3.0);
        for (int k = 0; k < 2; ++k) {
            const Eigen::MatrixXcd M = weyl_omega0(gauss(coordinate(k), Rational(3, 2)), B, p, QuadratureSpec{});
            CHECK((M - M.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    TEST_CASE("Ω is asymptotically multiplicative; printed coefficients are not") {
        const DeformationParams p(Rational(1, 2), Rational(1), 2, 1);
        GaussSuper<CDouble> f(2, 1), g(2, 1);
        f.add(0, gauss(Polynomial<CDouble>::one(2), Rational(1)));
        f.add(1, gauss(coordinate(0), Rational(1)));
        g.add(1, gauss(Polynomial<CDouble>::one(2), Rational(1)));
        g.add(0, gauss(coordinate(0), Rational(1)));
        const double r6 = homomorphism_residual(f, g, HermiteBasis(6, 1, 0.5), p, QuadratureSpec{});
        const double r8 = homomorphism_residual(f, g, HermiteBasis(8, 1, 0.5), p, QuadratureSpec{});
        CHECK(r8 < 1e-3);
        CHECK(r8 < r6 / 2);
        const double printed = homomorphism_residual(f, g, HermiteBasis(8, 1, 0.5), p, QuadratureSpec{}, OmegaCoefficients::printed);
        CHECK(printed > 1.0);
    }

    TEST_CASE("odd coefficients") {
        const DeformationParams p(Rational(1, 2), Rational(2), 2, 2);
        // Ω(1) on odd states is the identity.
        for (Mask J = 0; J < 4; ++J) CHECK(omega_odd_coefficient(0, J, p, OmegaCoefficients::computed) == QComplex(1));
        // θ¹ acting on θ¹: c (−iθ/α) (α/(1+α)) = −i/6.
        CHECK(omega_odd_coefficient(0b01, 0b01, p, OmegaCoefficients::computed) == QComplex(Rational(0), Rational(-1, 6)));
    }

    TEST_CASE("Schrödinger representation") {
        RandomRationals rng(71);
        const double theta = 0.5;
        for (int n = 0; n <= 2; ++n) {
            INFO("n=" << n);
            for (int k = 0; k < 3; ++k) {
                const HeisenbergElement a = random_heisenberg(rng, n, 2), b = random_heisenberg(rng, n, 2);
                const QState s1 = random_qstate(rng, n, 2), s2 = random_qstate(rng, n, 2);
                CHECK(unitarity_residual(a, {s1, s2}, theta) < 1e-6);
                CHECK(representation_residual(a, b, s1, theta, {-1.0, 0.0, 0.7, 1.9}) < 1e-9);
            }
            const HeisenbergElement e = HeisenbergElement::identity(n, 2);
            const QState s = random_qstate(rng, n, 2);
            const QState u = schrodinger_U(e, s, theta);
            for (double x : {-1.0, 0.25, 2.0}) CHECK(relative_difference(u.at(x), s.at(x)) < 1e-14);
        }
    }

    TEST_CASE("Heisenberg multiplication") {
        HeisenbergElement g = HeisenbergElement::identity(1, 1), h = HeisenbergElement::identity(1, 1);
        g.x = 1;
        g.w = 2;
        h.x = 3;
        h.w = -1;
        g.xi[0] = GrassmannElement<CDouble>::generator(1, 0);
        h.xi[0] = GrassmannElement<CDouble>::generator(1, 0);
        const HeisenbergElement gh = heisenberg_multiply(g, h);
        CHECK(gh.x == 4);
        CHECK(gh.w == 1);
        // a = ½(xv − wy) + ξη = ½(−1 − 6) with ξη = 0 (same generator).
        CHECK(std::abs(gh.a.coeff(0) - CDouble(-3.5, 0)) < 1e-15);
    }
}
