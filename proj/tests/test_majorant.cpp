#include "doctest.h"
#include "gk/majorant.hpp"
#include "test_util.hpp"

using namespace gk;
using CE = CliffordElement<TrigPoly>;

TEST_CASE("majorant coefficients") {
    for (const Rational& c : {rat(1, 1), rat(1, 3), rat(7, 2)}) {
        auto M = majorant_coeffs(c, 4);
        CHECK(M[0] == 0);
        CHECK(M[1] == rat(1, 16));  // independent of c
        CHECK(M[2] == c / 64);
        CHECK(M[3] == c * c / 144);
    }
    // the nu = 2 instance of the square bound at c = 1, spelled out
    auto M = majorant_coeffs(rat(1, 1), 2);
    auto M2 = detail::cauchy_product(M, M);
    CHECK(M2[2] == rat(1, 256));
    CHECK(M2[2] <= M[2]);  // (1/c) M_2 = 1/64
}

TEST_CASE("square and exponential bounds hold exactly to order 200") {
    testutil::Rng rng(77);
    for (int trial = 0; trial < 6; ++trial) {
        Rational c = rat(1 + (int)(rng() % 400), 100);  // in (0, 4]
        int N = 200;
        auto M = majorant_coeffs(c, N);
        auto M2 = detail::cauchy_product(M, M);
        for (int nu = 0; nu <= N; ++nu) CHECK(M2[nu] <= M[nu] / c);

        Rational lambda = 1 / c;
        Rational factor = (exp_upper_bound(lambda) - 1) / lambda;
        auto E = detail::exp_minus_one(M);
        for (int nu = 1; nu <= N; ++nu) CHECK(E[nu] <= factor * M[nu]);
    }
}

TEST_CASE("rational exponential upper bound") {
    Rational e1 = exp_upper_bound(rat(1, 1));
    CHECK(e1 > rat(2718281, 1000000));
    CHECK(e1 < rat(2718282, 1000000));
    CHECK(exp_upper_bound(rat(5, 1)) > rat(148, 1));   // e^5 = 148.41...
    CHECK(exp_upper_bound(rat(5, 1)) < rat(149, 1));
    CHECK_THROWS_AS(exp_upper_bound(rat(-1, 1)), ValidationError);
}

TEST_CASE("certificate of the trivial deformation") {
    int m = 4, N = 3;
    auto mod = flat_kahler_model(m);
    auto gk = gk_one_spinor(mod.J0, mod.psi);
    CliffordSeries<TrigPoly> zero(N, CE(m));
    auto rep = solve_stability(gk, zero, FormField<TrigPoly>(m), N, 4);
    auto cert =
        majorant_certificate(rat(1, 1), rat(1, 1), rat(1, 2), rat(1, 4), N, rep);
    CHECK(cert.square_bound);
    CHECK(cert.exp_bound);
    CHECK(cert.K1_min == 0);
    CHECK(cert.K2_min == 0);
    CHECK(cert.z_ok);
    CHECK(cert.contraction);
    CHECK(cert.pass());
}

TEST_CASE("certificate of a small mode-1 deformation") {
    int m = 4, N = 3;
    auto mod = flat_kahler_model(m);
    auto gk = gk_one_spinor(mod.J0, mod.psi);
    CliffordSeries<TrigPoly> eps(N, CE(m));
    Key k1(m, 0);
    k1[0] = 1;
    auto dzb = [&](int j) {
        return CE::form_gen(m, 2 * j, TrigPoly::one(m)) -
               CE::form_gen(m, 2 * j + 1, TrigPoly::constant(m, Scalar::i()));
    };
    eps[1] = clifford_mul(dzb(0), dzb(1)) *
             TrigPoly::monomial(m, k1, Scalar(rat(1, 1000)));
    auto a = prop26_lift(eps, mod.J0, mod.phi, N);
    auto rep = solve_stability(gk, a, FormField<TrigPoly>(m), N, 4);
    REQUIRE(rep.closed);

    auto cert = majorant_certificate(rat(1, 1), rat(1, 1), rat(1, 2),
                                     rat(1, 4), N, rep);
    CHECK(cert.square_bound);
    CHECK(cert.exp_bound);
    CHECK(cert.K1_min > 0);
    CHECK(cert.K2_min > 0);
    CHECK(cert.K1_min + cert.K2_min < 1);
    CHECK(cert.z_ok);
    CHECK(cert.contraction);
    CHECK(cert.pass());

    // the minimal constants are tight: anything smaller fails
    auto tight = majorant_certificate(rat(1, 1), rat(1, 1), cert.K1_min,
                                      cert.K2_min, N, rep);
    CHECK(tight.a_ok);
    CHECK(tight.b_ok);
    auto small = majorant_certificate(rat(1, 1), rat(1, 1), cert.K1_min / 2,
                                      cert.K2_min / 2, N, rep);
    CHECK_FALSE(small.a_ok);
    CHECK_FALSE(small.b_ok);
    CHECK_FALSE(small.pass());
}
