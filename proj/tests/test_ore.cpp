#include <catch2/catch_amalgamated.hpp>

#include "orefrac/ore.hpp"
#include "test_support.hpp"

using namespace orefrac;
using testsup::Ore;
using testsup::from_commutative;
using testsup::rand_int;
using testsup::rand_ore;
using testsup::rand_ore_constant_coeffs;
using testsup::rand_ratfunc;
using testsup::to_commutative;

namespace {
Ore D() { return Ore::d(); }
Ore x_op() { return Ore(RatFunc::variable()); }
Ore ore(std::vector<RatFunc> cs) { return Ore(std::move(cs)); }

Ore rand_nonzero_ore(int max_order, int coeff_deg = 2) {
    for (;;) {
        Ore p = rand_ore(max_order, coeff_deg);
        if (!p.is_zero()) return p;
    }
}
}  // namespace

TEST_CASE("commutation rule") {
    // D * x = x*D + 1
    REQUIRE(D() * x_op() == ore({RatFunc(1), RatFunc::variable()}));
    // D*f - f*D = f' for random f.
    for (int t = 0; t < 50; ++t) {
        RatFunc f = rand_ratfunc(3);
        Ore lhs = D() * Ore(f) - Ore(f) * D();
        REQUIRE(lhs == Ore(f.derivative()));
    }
}

TEST_CASE("products") {
    // (D-1)(D+1) = D^2 - 1: constant coefficients commute.
    Ore a = ore({RatFunc(-1), RatFunc(1)});
    Ore b = ore({RatFunc(1), RatFunc(1)});
    REQUIRE(a * b == ore({RatFunc(-1), RatFunc(0), RatFunc(1)}));
    // D * (x D) = x D^2 + D, by one application of the commutation rule.
    REQUIRE(D() * (x_op() * D()) == ore({RatFunc(0), RatFunc(1), RatFunc::variable()}));
    // Orders add and leading coefficients multiply.
    for (int t = 0; t < 30; ++t) {
        Ore p = rand_nonzero_ore(3), q = rand_nonzero_ore(3);
        Ore r = p * q;
        REQUIRE(r.order() == p.order() + q.order());
        REQUIRE(r.leading_coeff() == p.leading_coeff() * q.leading_coeff());
    }
    // Associativity.
    for (int t = 0; t < 20; ++t) {
        Ore p = rand_ore(2, 1), q = rand_ore(2, 1), r = rand_ore(2, 1);
        REQUIRE((p * q) * r == p * (q * r));
    }
}

TEST_CASE("right division") {
    // a = D^2 - D, b = D - 1 divide exactly with quotient D.
    Ore a = ore({RatFunc(0), RatFunc(-1), RatFunc(1)});
    Ore b = ore({RatFunc(-1), RatFunc(1)});
    auto [q, r] = right_divmod(a, b);
    REQUIRE(q == D());
    REQUIRE(r.is_zero());

    // Unit divisor returns the dividend.
    auto [q1, r1] = right_divmod(a, Ore::one());
    REQUIRE(q1 == a);
    REQUIRE(r1.is_zero());

    // D^2 = ((1/x)D - 1/x^2)(x D): remultiplication oracle.
    Ore xd = x_op() * D();
    auto [q2, r2] = right_divmod(D() * D(), xd);
    REQUIRE(r2.is_zero());
    Poly X = Poly::variable();
    REQUIRE(q2 == ore({-RatFunc(Poly(1), X * X), RatFunc(Poly(1), X)}));
    REQUIRE(q2 * xd == D() * D());

    REQUIRE_THROWS_AS(right_divmod(a, Ore::zero()), OreError);
}

TEST_CASE("right division properties") {
    for (int t = 0; t < 60; ++t) {
        Ore a = rand_ore(5, 2);
        Ore b = rand_nonzero_ore(5, 2);
        auto [q, r] = right_divmod(a, b);
        REQUIRE(q * b + r == a);
        REQUIRE(r.order() < b.order());
    }
}

TEST_CASE("left division") {
    Ore a = ore({RatFunc(0), RatFunc(-1), RatFunc(1)});  // D^2 - D
    auto [q, r] = left_divmod(a, D());
    REQUIRE(r.is_zero());
    REQUIRE(q == ore({RatFunc(-1), RatFunc(1)}));
    REQUIRE(D() * q == a);

    auto [q1, r1] = left_divmod(a, Ore::one());
    REQUIRE(q1 == a);
    REQUIRE(r1.is_zero());

    auto [q2, r2] = left_divmod(Ore::one(), D());
    REQUIRE(q2.is_zero());
    REQUIRE(r2 == Ore::one());

    for (int t = 0; t < 60; ++t) {
        Ore a2 = rand_ore(5, 2);
        Ore b2 = rand_nonzero_ore(5, 2);
        auto [q3, r3] = left_divmod(a2, b2);
        REQUIRE(b2 * q3 + r3 == a2);
        REQUIRE(r3.order() < b2.order());
    }
}

TEST_CASE("gcrd") {
    Ore a = ore({RatFunc(0), RatFunc(-1), RatFunc(1)});  // D(D-1)
    Ore b = ore({RatFunc(-1), RatFunc(1)});              // D-1
    REQUIRE(gcrd(a, b) == b);

    // gcrd(a, 0) is monic(a).
    Ore p = x_op() * D();
    REQUIRE(gcrd(p, Ore::zero()) == D());

    // One Euclidean step of (D, D+x) leaves the remainder x, so gcrd = 1.
    REQUIRE(gcrd(D(), D() + x_op()) == Ore::one());

    REQUIRE_THROWS_AS(gcrd(Ore::zero(), Ore::zero()), OreError);

    for (int t = 0; t < 40; ++t) {
        Ore a2 = rand_ore(4, 2);
        Ore b2 = rand_nonzero_ore(4, 2);
        Ore g = gcrd(a2, b2);
        REQUIRE(right_divmod(a2, g).second.is_zero());
        REQUIRE(right_divmod(b2, g).second.is_zero());
    }
}

TEST_CASE("extended gcrd and Bezout identity") {
    // a = D-1, b = D: the Euclidean scheme gives g = 1 = (-1)(D-1) + (1)(D).
    Ore a = ore({RatFunc(-1), RatFunc(1)});
    auto [g, u, v] = gcrd_extended(a, D());
    REQUIRE(g == Ore::one());
    REQUIRE(u == ore({RatFunc(-1)}));
    REQUIRE(v == Ore::one());
    REQUIRE(u * a + v * D() == g);

    auto [g1, u1, v1] = gcrd_extended(D(), Ore::one());
    REQUIRE(g1 == Ore::one());
    REQUIRE(u1 * D() + v1 * Ore::one() == g1);

    Ore big = ore({RatFunc(0), RatFunc(-1), RatFunc(1)});
    auto [g2, u2, v2] = gcrd_extended(big, a);
    REQUIRE(g2 == a);
    REQUIRE(u2 * big + v2 * a == g2);

    for (int t = 0; t < 40; ++t) {
        Ore a2 = rand_ore(4, 2);
        Ore b2 = rand_nonzero_ore(4, 2);
        auto [g3, u3, v3] = gcrd_extended(a2, b2);
        REQUIRE(u3 * a2 + v3 * b2 == g3);
        REQUIRE(g3 == gcrd(a2, b2));
    }
}

TEST_CASE("lclm") {
    // Unit factor and idempotence.
    Ore p = x_op() * D();
    REQUIRE(lclm(p, Ore::one()) == D());
    REQUIRE(lclm(D(), D()) == D());
    // Constant coefficients reduce to the commutative lcm in C[lambda].
    Ore dm1 = ore({RatFunc(-1), RatFunc(1)});
    REQUIRE(lclm(D(), dm1) == ore({RatFunc(0), RatFunc(-1), RatFunc(1)}));
    REQUIRE_THROWS_AS(lclm(D(), Ore::zero()), OreError);

    for (int t = 0; t < 40; ++t) {
        Ore a = rand_nonzero_ore(4, 1);
        Ore b = rand_nonzero_ore(4, 1);
        auto [m, p1, q1] = lclm_cofactors(a, b);
        REQUIRE(m == p1 * a);
        REQUIRE(m == q1 * b);
        REQUIRE(right_divmod(m, a).second.is_zero());
        REQUIRE(right_divmod(m, b).second.is_zero());
        // Ore order identity.
        REQUIRE(m.order() == a.order() + b.order() - gcrd(a, b).order());
    }
}

TEST_CASE("lcrm mirrors lclm") {
    for (int t = 0; t < 40; ++t) {
        Ore a = rand_nonzero_ore(4, 1);
        Ore b = rand_nonzero_ore(4, 1);
        auto [m, s, u] = lcrm_cofactors(a, b);
        REQUIRE(m == a * s);
        REQUIRE(m == b * u);
        REQUIRE(left_divmod(m, a).second.is_zero());
        REQUIRE(left_divmod(m, b).second.is_zero());
        REQUIRE(m.order() == a.order() + b.order() - gcld(a, b).order());
    }
}

TEST_CASE("adjoint") {
    REQUIRE(adjoint(D()) == -D());
    // (x D)* = -D x = -x D - 1.
    REQUIRE(adjoint(x_op() * D()) == ore({RatFunc(-1), -RatFunc::variable()}));
    // Order-zero operators are self-adjoint.
    for (int t = 0; t < 20; ++t) {
        Ore f = Ore(rand_ratfunc(3));
        REQUIRE(adjoint(f) == f);
    }
    // Involution and antihomomorphism; order preserved, leading coefficient
    // scaled by (-1)^order.
    for (int t = 0; t < 40; ++t) {
        Ore p = rand_nonzero_ore(4, 2);
        Ore q = rand_nonzero_ore(4, 2);
        REQUIRE(adjoint(adjoint(p)) == p);
        REQUIRE(adjoint(p * q) == adjoint(q) * adjoint(p));
        REQUIRE(adjoint(p).order() == p.order());
        RatFunc sign = p.order() % 2 == 0 ? RatFunc(1) : RatFunc(-1);
        REQUIRE(adjoint(p).leading_coeff() == sign * p.leading_coeff());
    }
}

TEST_CASE("commutative specialization oracle") {
    for (int t = 0; t < 40; ++t) {
        Ore a = rand_ore_constant_coeffs(4);
        Ore b = rand_ore_constant_coeffs(4);
        REQUIRE(to_commutative(a * b) == to_commutative(a) * to_commutative(b));
        if (a.is_zero() || b.is_zero()) continue;
        REQUIRE(to_commutative(gcrd(a, b)) == Poly::gcd(to_commutative(a), to_commutative(b)));
        REQUIRE(to_commutative(lclm(a, b)) == Poly::lcm(to_commutative(a), to_commutative(b)));
    }
}

TEST_CASE("zero operator sentinels") {
    REQUIRE(Ore::zero().order() == Ore::kOrderZero);
    REQUIRE(Ore::zero().order() < -1000000);
    REQUIRE_THROWS_AS(Ore::zero().leading_coeff(), OreError);
}

TEST_CASE("operator application") {
    RatFunc x2 = RatFunc::variable() * RatFunc::variable();
    REQUIRE(apply(D(), x2) == RatFunc(2) * RatFunc::variable());
    for (int t = 0; t < 20; ++t) {
        Ore p = rand_ore(3, 2), q = rand_ore(3, 2);
        RatFunc f = rand_ratfunc(2);
        REQUIRE(apply(p * q, f) == apply(p, apply(q, f)));
        REQUIRE(apply(p + q, f) == apply(p, f) + apply(q, f));
    }
}
