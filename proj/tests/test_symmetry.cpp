#include "doctest.h"
#include "generators.hpp"
#include "smq/io.hpp"
#include "smq/parser.hpp"
#include "smq/symmetry.hpp"

using namespace smq;

namespace {

using PS = PolySuper<QComplex>;

bool osp_member(const ExactMatrix& A, const DeformationParams& p, OspForm form = OspForm::omega_tilde) {
    return osp_membership(A, p, form).member;
}

}  // namespace

TEST_SUITE("symmetry") {
    TEST_CASE("identity and body members") {
        for (int n = 0; n <= 3; ++n) {
            const DeformationParams p(Rational(1, 2), Rational(2), 2, n);
            CHECK(osp_member(ExactMatrix::identity(2, n, 0), p));
            CHECK(osp_member(ExactMatrix::identity(2, n, 0), p, OspForm::omega));
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                INFO("n=" << n << " seed=" << seed);
                const ExactMatrix A = random_real_osp(2, n, seed);
                CHECK(osp_member(A, p));
                CHECK(osp_member(A, p, OspForm::omega));
                CHECK_FALSE(coordinate_witness(AffineSuperMap::linear(A), p).has_value());
            }
        }
        const DeformationParams p4(Rational(1, 3), Rational(1), 4, 1);
        CHECK(osp_member(random_real_osp(4, 1, 9), p4));
    }

    TEST_CASE("nilpotent members over a Grassmann ring") {
        for (int N : {2, 4}) {
            const DeformationParams p(Rational(1, 2), Rational(2), 2, 2);
            for (std::uint64_t seed = 1; seed <= 4; ++seed) {
                INFO("N=" << N << " seed=" << seed);
                const ExactMatrix X = odd_osp_exponential(p, N, seed);
                CHECK(osp_member(X, p));
                const AffineSuperMap phi = random_osp_member(p, N, seed, true);
                CHECK(osp_member(phi.A, p));
                CHECK_FALSE(coordinate_witness(phi, p).has_value());
            }
        }
        // With α ≠ 1 the odd blocks of ω̃ and ω differ, so the odd exponential only preserves ω̃.
        const DeformationParams p(Rational(1, 2), Rational(2), 2, 2);
        CHECK_FALSE(osp_member(odd_osp_exponential(p, 2, 3), p, OspForm::omega));
    }

    TEST_CASE("members preserve the product on random inputs (property)") {
        gen::Gen g(81);
        for (int t = 0; t < 6; ++t) {
            INFO("case " << t);
            const int n = g.integer(0, 2);
            const DeformationParams p(Rational(1, 2), Rational(1), 2, n);
            const AffineSuperMap phi = random_osp_member(p, n == 0 ? 0 : 2, static_cast<std::uint64_t>(100 + t), n > 0);
            const PS a = g.polysuper(2, n, 2, 2), b = g.polysuper(2, n, 2, 2);
            CHECK(invariance_residual(phi, a, b, p).is_zero());
        }
    }

    TEST_CASE("non-members have witnesses") {
        const DeformationParams p(Rational(1, 2), Rational(1), 2, 1);
        ExactMatrix A = ExactMatrix::identity(2, 1, 0);
        A.at(0, 0) = GrassmannElement<QComplex>::scalar(0, QComplex(2));
        CHECK_FALSE(osp_member(A, p));
        const auto w = coordinate_witness(AffineSuperMap::linear(A), p);
        REQUIRE(w.has_value());
        CHECK_FALSE(w->residual.is_zero());

        // Scaling the odd coordinate breaks only the odd sector.
        ExactMatrix B = ExactMatrix::identity(2, 1, 0);
        B.at(2, 2) = GrassmannElement<QComplex>::scalar(0, QComplex(3));
        CHECK_FALSE(osp_member(B, p));
        const auto wb = coordinate_witness(AffineSuperMap::linear(B), p);
        REQUIRE(wb.has_value());
        CHECK(wb->mu == 2);
        CHECK(wb->nu == 2);
    }

    TEST_CASE("affine maps: composition, Jacobian and pullback") {
        const DeformationParams p(Rational(1, 2), Rational(1), 2, 1);
        const AffineSuperMap a = random_osp_member(p, 2, 5, true), b = random_osp_member(p, 2, 6, true);
        CHECK(osp_member(compose(a, b).A, p));
        const ExactMatrix J = jacobian_supermatrix(a);
        for (int mu = 0; mu < 3; ++mu)
            for (int nu = 0; nu < 3; ++nu) {
                const bool flip = ((mu >= 2) + (nu >= 2)) % 2 == 1;
                CHECK(J.at(mu, nu) == (flip ? -a.A.at(mu, nu) : a.A.at(mu, nu)));
            }

        ExactPoint tau = ExactPoint::zero(2, 1, 0);
        tau.even[0] = GrassmannElement<QComplex>::scalar(0, QComplex(3));
        const AffineSuperMap shift = AffineSuperMap::translation(tau, 2, 1);
        const VariableNames names = VariableNames::standard(2, 1);
        CHECK(pullback(shift, parse_polynomial("x1*w1 + th1", names)) == parse_polynomial("(x1 + 3)*w1 + th1", names));
        const AffineSuperMap twice = compose(shift, shift);
        CHECK(twice.tau.even[0] == GrassmannElement<QComplex>::scalar(0, QComplex(6)));
        CHECK_FALSE(coordinate_witness(shift, p).has_value());
    }

    TEST_CASE("JSON matrices") {
        const DeformationParams p(Rational(1, 2), Rational(2), 2, 2);
        const ExactMatrix A = random_osp_member(p, 2, 11, true).A;
        const ExactMatrix back = supermatrix_from_json(to_json(A), 2, 2);
        CHECK(back == A);
        CHECK(supermatrix_from_json(Json::parse(R"({"identity": true})"), 2, 2) == ExactMatrix::identity(2, 2, 0));
        // An odd entry in the even block is rejected.
        Json bad = to_json(ExactMatrix::identity(2, 1, 1));
        bad["entries"][0][0] = "e1";
        CHECK_THROWS(supermatrix_from_json(bad, 2, 1));
    }
}
