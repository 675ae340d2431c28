#include "doctest.h"
#include "gk/clifford.hpp"
#include "test_util.hpp"

using namespace gk;
using testutil::Rng;

namespace {
using CE = CliffordElement<TrigPoly>;
using FF = FormField<TrigPoly>;

CE dd(int dim, int j) { return CE::vec_gen(dim, j, TrigPoly::one(dim)); }
CE dx(int dim, int j) { return CE::form_gen(dim, j, TrigPoly::one(dim)); }
FF fdx(int dim, Mask mask) { return FF::basis(dim, mask, TrigPoly::one(dim)); }
}  // namespace

TEST_CASE("split pairing on generators") {
    CHECK(pairing(dd(2, 0), dx(2, 0)) ==
          TrigPoly::constant(2, Scalar(Rational(1, 2))));
    CHECK(pairing(dx(2, 0), dx(2, 0)).is_zero());
    CHECK(pairing(dd(2, 0), dd(2, 1)).is_zero());
    // <d1 + dx2, d2 + dx1> = 1/2 + 1/2 = 1
    CHECK(pairing(dd(2, 0) + dx(2, 1), dd(2, 1) + dx(2, 0)) == TrigPoly::one(2));
    CHECK_THROWS_AS(pairing(dd(2, 0), clifford_mul(dd(2, 0), dd(2, 1))),
                    DegreeError);
}

TEST_CASE("Clifford relation on generators") {
    auto rel = [](const CE& a, const CE& b) {
        return clifford_mul(a, b) + clifford_mul(b, a);
    };
    CHECK(rel(dd(2, 0), dx(2, 0)) == CE::one(2));
    CHECK(rel(dd(2, 0), dd(2, 1)).is_zero());
    CHECK(rel(dx(2, 0), dx(2, 1)).is_zero());
    auto e = dd(2, 0) + dx(2, 0);
    CHECK(clifford_mul(e, e) == CE::one(2));
}

TEST_CASE("Clifford relation E.F + F.E = 2<E,F> for random degree-1 E, F") {
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        auto E = testutil::random_degree1(rng, 3);
        auto F = testutil::random_degree1(rng, 3);
        auto lhs = clifford_mul(E, F) + clifford_mul(F, E);
        auto rhs = CE::scalar(3, pairing(E, F) * Scalar(2));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("clifford_mul is associative on random triples") {
    Rng rng(43);
    for (int dim : {2, 4}) {
        for (int trial = 0; trial < 15; ++trial) {
            auto a = testutil::random_trig_clifford(rng, dim, 3);
            auto b = testutil::random_trig_clifford(rng, dim, 3);
            auto c = testutil::random_trig_clifford(rng, dim, 3);
            CHECK(clifford_mul(clifford_mul(a, b), c) ==
                  clifford_mul(a, clifford_mul(b, c)));
        }
    }
}

TEST_CASE("spin action on basis forms") {
    // d1 . (dx1 ^ dx2) = dx2
    CHECK(spin_action(dd(2, 0), fdx(2, 0b11)) == fdx(2, 0b10));
    // dx1 . 1 = dx1
    CHECK(spin_action(dx(2, 0), fdx(2, 0)) == fdx(2, 0b01));
    // (d1 + dx1) . dx1 = 1
    CHECK(spin_action(dd(2, 0) + dx(2, 0), fdx(2, 0b01)) == fdx(2, 0));
    // sign bookkeeping: d2 . (dx1 ^ dx2) = -dx1
    CHECK(spin_action(dd(2, 1), fdx(2, 0b11)) == -fdx(2, 0b01));
}

TEST_CASE("spin-module axiom: spin(a.b, x) = spin(a, spin(b, x))") {
    Rng rng(44);
    for (int dim : {2, 4}) {
        for (int trial = 0; trial < 15; ++trial) {
            auto a = testutil::random_trig_clifford(rng, dim, 3);
            auto b = testutil::random_trig_clifford(rng, dim, 3);
            auto x = testutil::random_trig_form(rng, dim);
            CHECK(spin_action(clifford_mul(a, b), x) ==
                  spin_action(a, spin_action(b, x)));
        }
    }
}

TEST_CASE("Clifford relation as an operator identity") {
    Rng rng(45);
    for (int trial = 0; trial < 20; ++trial) {
        auto E = testutil::random_degree1(rng, 3);
        auto F = testutil::random_degree1(rng, 3);
        auto x = testutil::random_trig_form(rng, 3);
        auto lhs = spin_action(E, spin_action(F, x)) +
                   spin_action(F, spin_action(E, x));
        CHECK(lhs == x * (pairing(E, F) * Scalar(2)));
    }
}

TEST_CASE("exterior derivative") {
    // d(e^{ix1} dx2) = i e^{ix1} dx1 ^ dx2
    FF f(2);
    f.add_term(0b10, TrigPoly::monomial(2, {1, 0}));
    FF df(2);
    df.add_term(0b11, TrigPoly::monomial(2, {1, 0}, Scalar::i()));
    CHECK(f.d() == df);
    CHECK(fdx(2, 0b01).d().is_zero());

    FormField<AffinePoly> g(2);
    g.add_term(0b10, AffinePoly::monomial(2, {1, 0}));  // x1 dx2
    FormField<AffinePoly> dg(2);
    dg.add_term(0b11, AffinePoly::one(2));
    CHECK(g.d() == dg);
}

TEST_CASE("d o d = 0 on random forms over both rings") {
    Rng rng(46);
    for (int dim : {2, 4}) {
        for (int trial = 0; trial < 15; ++trial) {
            CHECK(testutil::random_trig_form(rng, dim).d().d().is_zero());
            auto f = testutil::random_form<AffinePoly>(
                rng, dim, [](Rng& r, int d) { return testutil::random_affine(r, d); });
            CHECK(f.d().d().is_zero());
        }
    }
}

TEST_CASE("wedge is graded-commutative and associative") {
    Rng rng(47);
    for (int trial = 0; trial < 15; ++trial) {
        auto a = testutil::random_trig_form(rng, 3);
        auto b = testutil::random_trig_form(rng, 3);
        auto c = testutil::random_trig_form(rng, 3);
        CHECK(a.wedge(b).wedge(c) == a.wedge(b.wedge(c)));
        CHECK((a.wedge(b) + b.wedge(a)).d() == (a.wedge(b) + b.wedge(a)).d());
    }
    // graded sign on pure degrees
    auto a1 = fdx(3, 0b001);
    auto b2 = fdx(3, 0b110);
    CHECK(a1.wedge(b2) == b2.wedge(a1));        // odd * even commute
    auto c1 = fdx(3, 0b010);
    CHECK(a1.wedge(c1) == -c1.wedge(a1));       // odd * odd anticommute
    // Leibniz: d(a ^ b) = da ^ b + (-1)^|a| a ^ db
    Rng rng2(48);
    for (int trial = 0; trial < 15; ++trial) {
        auto f = testutil::random_trig(rng2, 3);
        auto g = testutil::random_trig(rng2, 3);
        auto a = fdx(3, 0b001) * f;  // degree 1
        auto b = fdx(3, 0b110) * g;  // degree 2
        CHECK(a.wedge(b).d() == a.d().wedge(b) - a.wedge(b.d()));
    }
}

TEST_CASE("grade parts, conjugation and real part") {
    auto a = CE::scalar(2, TrigPoly::constant(2, Scalar(3))) +
             clifford_mul(dd(2, 0), dd(2, 1));
    auto parts = a.grade_parts();
    REQUIRE(parts.size() == 2);
    CHECK(parts.at(0) == CE::scalar(2, TrigPoly::constant(2, Scalar(3))));
    CHECK(parts.at(2) == clifford_mul(dd(2, 0), dd(2, 1)));
    CHECK(parts.at(0) + parts.at(2) == a);

    auto b = clifford_mul(dd(2, 0), dd(2, 1)) * Scalar::i();
    CHECK(b.conj() == -b);

    Rng rng(49);
    auto eps = testutil::random_trig_clifford(rng, 4, 2);
    auto r = eps + eps.conj();
    CHECK(r.is_real());
    CHECK(real_part(r) == r);
    CHECK(real_part(eps) * Scalar(2) == r);
}

TEST_CASE("conjugation is a ring map on the Clifford algebra") {
    Rng rng(50);
    for (int trial = 0; trial < 15; ++trial) {
        auto a = testutil::random_trig_clifford(rng, 3, 3);
        auto b = testutil::random_trig_clifford(rng, 3, 3);
        CHECK(clifford_mul(a, b).conj() == clifford_mul(a.conj(), b.conj()));
        auto x = testutil::random_trig_form(rng, 3);
        CHECK(spin_action(a, x).conj() == spin_action(a.conj(), x.conj()));
    }
}
