#include <catch2/catch_amalgamated.hpp>

#include <gradal/zmodel.hpp>

using namespace gradal;
using zb::ZPoly;

TEST_CASE("strong normal forms over Z") {
    auto S = MPolyRing::make(Field::rationals(), {"x"});
    ZPoly x = ZPoly::var(S, 0);
    ZPoly two = ZPoly::constant(S, 2);
    // 2x reduces 5x to x (balanced remainder), not to zero
    auto nf = zb::strong_nf(x.mul_term(mono::one(1), Int(5)), {two * x});
    REQUIRE_FALSE(nf.is_zero());
    REQUIRE(nf.lc() == 1);
    // 4x reduces to zero
    REQUIRE(zb::strong_nf(x.mul_term(mono::one(1), Int(4)), {two * x}).is_zero());
}

TEST_CASE("strong groebner bases decide membership over Z") {
    auto S = MPolyRing::make(Field::rationals(), {"x", "y"});
    ZPoly x = ZPoly::var(S, 0), y = ZPoly::var(S, 1);
    SECTION("gcd polynomials appear: (2x, 3x) contains x") {
        auto GB = zb::zgroebner(S, {x.mul_term(mono::one(2), Int(2)), x.mul_term(mono::one(2), Int(3))});
        REQUIRE(zb::zmember(x, GB));
    }
    SECTION("(2x, 2y) does not contain x") {
        auto GB = zb::zgroebner(S, {x.mul_term(mono::one(2), Int(2)), y.mul_term(mono::one(2), Int(2))});
        REQUIRE_FALSE(zb::zmember(x, GB));
        REQUIRE(zb::zmember(x.mul_term(mono::one(2), Int(2)), GB));
    }
    SECTION("mixed: x + 2y and 3y") {
        auto GB = zb::zgroebner(S, {x + y + y, y.mul_term(mono::one(2), Int(3))});
        REQUIRE(zb::zmember((x + y + y) * (x + y), GB));
        REQUIRE_FALSE(zb::zmember(y, GB));
    }
}

TEST_CASE("intersection and quotient over Z") {
    auto S = MPolyRing::make(Field::rationals(), {"x", "y"});
    ZPoly x = ZPoly::var(S, 0), y = ZPoly::var(S, 1);
    // (x) cap (y) = (xy)
    auto inter = zb::zintersect(S, {x}, {y});
    auto GB = zb::zgroebner(S, inter);
    REQUIRE(zb::zmember(x * y, GB));
    REQUIRE_FALSE(zb::zmember(x, GB));
    // ((2x) : 2) = (x)
    auto quot = zb::zquotient(S, {x.mul_term(mono::one(2), Int(2))}, ZPoly::constant(S, 2));
    auto QGB = zb::zgroebner(S, quot);
    REQUIRE(zb::zmember(x, QGB));
}

TEST_CASE("flatness over Z_(p)") {
    SECTION("p-torsion detected: Z_(2)[x]/(2x)") {
        auto X = ZpAlgebra::make(Int(2), {"x"});
        X.add_gen(X.constant(2) * X.x(0));
        REQUIRE_FALSE(is_flat_zmodel(X));
    }
    SECTION("free module is flat") {
        auto X = ZpAlgebra::make(Int(2), {"x"});
        REQUIRE(is_flat_zmodel(X));
    }
    SECTION("x^2 - p is a domain, flat") {
        auto X = ZpAlgebra::make(Int(2), {"x"});
        X.add_gen(X.x(0) * X.x(0) - X.constant(2));
        REQUIRE(is_flat_zmodel(X));
    }
    SECTION("x^2 - x is flat") {
        auto X = ZpAlgebra::make(Int(5), {"x"});
        X.add_gen(X.x(0) * X.x(0) - X.x(0));
        REQUIRE(is_flat_zmodel(X));
    }
    SECTION("unit denominators do not fake torsion: (3x) over Z_(2)") {
        auto X = ZpAlgebra::make(Int(2), {"x"});
        X.add_gen(X.constant(3) * X.x(0));
        // 3 is a unit in Z_(2): the algebra is Z_(2)[x]/(x), flat
        REQUIRE(is_flat_zmodel(X));
    }
}

TEST_CASE("torsion kill over localized integers") {
    SECTION("(p*T) yields the killer T") {
        auto X = ZpAlgebra::make(Int(3), {"T"});
        X.add_gen(X.constant(3) * X.x(0));
        auto kill = zp_torsion_kill(X);
        REQUIRE(kill.size() == 1);
        REQUIRE(kill[0] == X.x(0));
    }
    SECTION("(T1, p*T2) yields the killer T2") {
        auto X = ZpAlgebra::make(Int(3), {"T1", "T2"});
        X.add_gen(X.x(0));
        X.add_gen(X.constant(3) * X.x(1));
        auto kill = zp_torsion_kill(X);
        REQUIRE(kill.size() == 1);
        REQUIRE(kill[0] == X.x(1));
        // the corrected model is flat
        auto Y = X;
        for (auto& b : kill) Y.add_gen(b);
        REQUIRE(is_flat_zmodel(Y));
    }
    SECTION("flat input needs no killers") {
        auto X = ZpAlgebra::make(Int(2), {"T"});
        X.add_gen(X.x(0) * X.x(0) - X.x(0));
        REQUIRE(zp_torsion_kill(X).empty());
    }
}
