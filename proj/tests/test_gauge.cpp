#include <catch2/catch_amalgamated.hpp>

#include <spinlab/gauge.hpp>

#include "test_util.hpp"

using namespace spinlab;

namespace {

double hom_residual(const GaugeRep& rep, const Mat& X, const Mat& Y) {
    Mat lhs = rep.apply(X * Y - Y * X);
    Mat rhs = rep.apply(X) * rep.apply(Y) - rep.apply(Y) * rep.apply(X);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("special unitary basis is orthonormal traceless anti-hermitian", "[gauge]") {
    for (int N : {2, 3, 4}) {
        auto g = GaugeAlgebra::su(N);
        REQUIRE(g.dim() == N * N - 1);
        for (int a = 0; a < g.dim(); ++a) {
            const Mat& B = g.basis[a];
            REQUIRE((B + B.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
            REQUIRE(std::abs(B.trace()) <= 1e-14);
            for (int b = 0; b < g.dim(); ++b) {
                cplx ip = lie_inner(g.basis[a], g.basis[b]);
                REQUIRE(std::abs(ip - (a == b ? 1.0 : 0.0)) <= 1e-13);
            }
        }
    }
}

TEST_CASE("full unitary basis appends the scaled identity", "[gauge]") {
    for (int N : {1, 2, 3}) {
        auto g = GaugeAlgebra::u(N);
        REQUIRE(g.dim() == N * N);
        Mat last = g.basis.back();
        Mat expect = cplx(0.0, 1.0 / std::sqrt(2.0 * N)) * Mat::Identity(N, N);
        REQUIRE((last - expect).cwiseAbs().maxCoeff() <= 1e-14);
        for (int a = 0; a < g.dim(); ++a)
            for (int b = 0; b < g.dim(); ++b)
                REQUIRE(std::abs(lie_inner(g.basis[a], g.basis[b]) - (a == b ? 1.0 : 0.0)) <= 1e-13);
    }
}

TEST_CASE("rank one special unitary basis is the half spin family", "[gauge]") {
    auto g = GaugeAlgebra::su(2);
    Mat s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, 1, 1, 0;
    s2 << 0, cplx(0, -1), cplx(0, 1), 0;
    s3 << 1, 0, 0, -1;
    const cplx mi(0, -0.5);
    REQUIRE((g.basis[0] - mi * s1).cwiseAbs().maxCoeff() <= 1e-15);
    REQUIRE((g.basis[1] - mi * s2).cwiseAbs().maxCoeff() <= 1e-15);
    REQUIRE((g.basis[2] - mi * s3).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("coordinates round trip and flag outside arguments", "[gauge]") {
    auto rng = testutil::rng(401);
    for (int N : {2, 3}) {
        auto g = GaugeAlgebra::su(N);
        Eigen::VectorXd c(g.dim());
        for (int i = 0; i < g.dim(); ++i) c[i] = testutil::runif(rng);
        Mat X = Mat::Zero(N, N);
        for (int i = 0; i < g.dim(); ++i) X += c[i] * g.basis[i];
        double off = 1.0;
        Eigen::VectorXd rec = lie_coords(g, X, &off);
        REQUIRE(off <= 1e-13);
        REQUIRE((rec - c).cwiseAbs().maxCoeff() <= 1e-13);

        Mat herm = Mat::Identity(N, N); // not anti-hermitian
        lie_coords(g, herm, &off);
        REQUIRE(off >= 0.1);
    }
}

TEST_CASE("closure of the bracket in coordinates", "[gauge]") {
    auto rng = testutil::rng(402);
    for (auto g : {GaugeAlgebra::su(2), GaugeAlgebra::su(3), GaugeAlgebra::u(2)}) {
        for (int trial = 0; trial < 10; ++trial) {
            Mat X = testutil::random_lie(g.N, g.family == GaugeAlgebra::Family::su, rng);
            Mat Y = testutil::random_lie(g.N, g.family == GaugeAlgebra::Family::su, rng);
            double off = 1.0;
            lie_coords(g, X * Y - Y * X, &off);
            REQUIRE(off <= 1e-12);
        }
    }
}

TEST_CASE("standard representation applies the matrix itself", "[gauge]") {
    auto rng = testutil::rng(403);
    auto g = GaugeAlgebra::su(3);
    auto rep = GaugeRep::standard(g);
    REQUIRE(rep.d == 3);
    Mat X = testutil::random_lie(3, true, rng);
    REQUIRE((rep.apply(X) - X).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("adjoint representation is a real antisymmetric homomorphism", "[gauge]") {
    auto rng = testutil::rng(404);
    for (int N : {2, 3}) {
        auto g = GaugeAlgebra::su(N);
        auto rep = GaugeRep::adjoint(g);
        REQUIRE(rep.d == g.dim());
        for (int trial = 0; trial < 8; ++trial) {
            Mat X = testutil::random_lie(N, true, rng);
            Mat Y = testutil::random_lie(N, true, rng);
            REQUIRE(hom_residual(rep, X, Y) <= 1e-12);
        }
        if (N == 2)
            for (const auto& B : g.basis) {
                Mat ad = rep.apply(B);
                REQUIRE(ad.imag().cwiseAbs().maxCoeff() <= 1e-14);
                REQUIRE((ad + ad.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
            }
    }
}

TEST_CASE("derivation representation on binary monomials", "[gauge]") {
    auto rng = testutil::rng(405);
    auto g = GaugeAlgebra::su(2);

    SECTION("weight one copy is the standard action") {
        auto rep = GaugeRep::sym_su2(1);
        Mat X = testutil::random_lie(2, true, rng);
        REQUIRE((rep.apply(X) - X).cwiseAbs().maxCoeff() <= 1e-13);
    }

    SECTION("homomorphism and quadratic invariant") {
        for (int l : {1, 2, 3, 4}) {
            auto rep = GaugeRep::sym_su2(l);
            REQUIRE(rep.d == l + 1);
            for (int trial = 0; trial < 6; ++trial) {
                Mat X = testutil::random_lie(2, true, rng);
                Mat Y = testutil::random_lie(2, true, rng);
                REQUIRE(hom_residual(rep, X, Y) <= 1e-12);
            }
            Mat cas = casimir(rep);
            Mat expect = -0.25 * l * (l + 2.0) * Mat::Identity(l + 1, l + 1);
            REQUIRE((cas - expect).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }

    SECTION("adjoint of rank one matches weight two invariants") {
        Mat cas = casimir(GaugeRep::adjoint(g));
        REQUIRE((cas + 2.0 * Mat::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("killing form is the scaled trace pairing", "[gauge]") {
    for (int N : {2, 3}) REQUIRE(killing_residual(GaugeAlgebra::su(N)) <= 1e-10);
}

TEST_CASE("algebra valued forms project to coordinates and back", "[gauge]") {
    auto rng = testutil::rng(406);
    auto g = GaugeAlgebra::su(2);
    MatForm a = mat_form(4, 2, 2, 2);
    for (auto& v : a.c) v = testutil::random_lie(2, true, rng);
    VecForm coords = fiberize(g, a);
    REQUIRE(coords.k == 2);
    for (size_t r = 0; r < a.c.size(); ++r) {
        Mat rec = lie_from_coords(g, coords.c[r]);
        REQUIRE((rec - a.c[r]).cwiseAbs().maxCoeff() <= 1e-12);
    }

    MatForm bad = mat_form(4, 1, 2, 2);
    bad.at({1}) = Mat::Identity(2, 2); // hermitian, not in the algebra
    REQUIRE_THROWS(fiberize(g, bad));
}
