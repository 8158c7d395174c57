#include <catch2/catch_amalgamated.hpp>

#include <gradal/annuloid.hpp>

#include <random>

using namespace gradal;

namespace {

ValuedField q2() { return ValuedField::padic(Int(2), RealValue::from_rat(Rat(1, 2))); }

ValuedField f3t() {
    auto F3 = Field::prime_field(Int(3));
    auto F3t = Field::rational_functions(F3, "t");
    return ValuedField::tadic(F3t, RealValue::from_rat(Rat(1, 3)));
}

}  // namespace

TEST_CASE("p-adic absolute value on Q") {
    auto v = q2();
    auto Q = v.field();
    REQUIRE(v.abs(FElem::from_rat(Q, Rat(4))) == RealValue::from_rat(Rat(1, 4)));
    REQUIRE(v.abs(FElem::from_rat(Q, Rat(3, 2))) == RealValue::from_rat(Rat(2)));
    REQUIRE(v.abs(FElem::from_rat(Q, Rat(5))) == RealValue::one());
    REQUIRE(v.abs(FElem::zero(Q)).is_zero());
    REQUIRE(v.reduce_to(FElem::from_rat(Q, Rat(7)), 1) == FElem::one(v.residue_field(1)));
}

TEST_CASE("t-adic absolute value and residue") {
    auto v = f3t();
    auto K = v.field();
    auto t = FElem::generator(K);
    REQUIRE(v.abs(t) == RealValue::from_rat(Rat(1, 3)));
    REQUIRE(v.abs(t.inv()) == RealValue::from_rat(Rat(3)));
    auto one_plus_t = FElem::one(K) + t;
    REQUIRE(v.abs(one_plus_t) == RealValue::one());
    REQUIRE(v.reduce_to(one_plus_t, 1) == FElem::one(K->base));
    REQUIRE(v.reduce_to(t, 1).is_zero());
}

TEST_CASE("rank-2 composite valuation") {
    auto F5 = Field::prime_field(Int(5));
    auto F5u = Field::rational_functions(F5, "u");
    auto F5ut = Field::rational_functions(F5u, "t");
    auto v = ValuedField::t_then_u(F5ut);
    REQUIRE(v.height() == 2);
    auto t = FElem::generator(F5ut);
    auto u = FElem::from_fraction(F5ut, {FElem::generator(F5u)}, {FElem::one(F5u)});
    auto vt = v.lexv(t), vu = v.lexv(u);
    REQUIRE(vt.compare(vu) > 0);                      // |t| < |u| < 1: v(t) > v(u) > 0
    REQUIRE(vu.compare(LexValue::zero(2)) > 0);
    REQUIRE(v.in_annuloid(u));
    REQUIRE(v.in_maximal_ideal(t));
    REQUIRE_FALSE(v.in_annuloid(u.inv()));
    // residues down the chain
    REQUIRE(v.residue_field(1) == F5u);
    REQUIRE(v.residue_field(2) == F5);
    REQUIRE(v.reduce_to(u + t, 1) == FElem::generator(F5u));
    REQUIRE(v.reduce_to(u + FElem::one(F5ut), 2) == FElem::one(F5));
    auto wits = v.chain_witnesses();
    REQUIRE(wits.size() == 2);
    // nu_0 = t vanishes at tau_1 but not tau_0; nu_1 = u vanishes at tau_2 only
    REQUIRE(v.reduce_to(wits[0], 1).is_zero());
    REQUIRE_FALSE(v.reduce_to(wits[1], 1).is_zero());
    REQUIRE(v.reduce_to(wits[1], 2).is_zero());
}

TEST_CASE("graded valuation on a corpoid with section values") {
    // Q trivially valued, degree group <2> with |section| = 1/2
    auto Q = Field::rationals();
    BiDegree two;
    two.d = RealValue::from_rat(Rat(2));
    auto C = Corpoid::make(Q, {two}, {"g"});
    auto v = GradedValuation::make(C, ValuedField::trivial(Q), {RealValue::from_rat(Rat(1, 2))});
    auto s = CorpoidElem::section(C, 0);
    REQUIRE(v.abs(s) == RealValue::from_rat(Rat(1, 2)));
    REQUIRE(v.abs(s.inv()) == RealValue::from_rat(Rat(2)));
    REQUIRE(v.abs(CorpoidElem::one(C)).is_one());
    REQUIRE(v.height() == 1);
    ValuationAnnuloid ann{v};
    REQUIRE(ann.contains(s));
    REQUIRE_FALSE(ann.contains(s.inv()));
    REQUIRE(ann.in_maximal_ideal(s));
    // multiplicativity spot checks
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int i = 0; i < 50; ++i) {
        long e1 = d(rng), e2 = d(rng);
        auto a = CorpoidElem::make(C, FElem::from_int(Q, Int(3)), {Int(e1)});
        auto b = CorpoidElem::make(C, FElem::from_int(Q, Int(5)), {Int(e2)});
        REQUIRE(v.abs(a * b) == v.abs(a) * v.abs(b));
    }
}

TEST_CASE("gauss extension: max formula") {
    auto Q = Field::rationals();
    auto C = Corpoid::trivial(Q);
    auto vbase = GradedValuation::make(C, q2(), {});
    auto R = GradedRing::make(C, {{"T", BiDegree::one()}});
    auto gauss = gauss_extend(vbase, R, {RealValue::from_rat(Rat(1, 2))});
    auto T = GradedPoly::variable(R, 0);
    auto one = GradedPoly::one(R);
    REQUIRE(gauss.abs(T) == RealValue::from_rat(Rat(1, 2)));
    // |T^2 + c| with |c| = 1, gamma = 1/2 -> max(1/4, 1) = 1
    auto c = GradedPoly::constant(R, CorpoidElem::from_coeff(C, FElem::from_rat(Q, Rat(3))));
    REQUIRE(gauss.abs(T * T + c) == RealValue::one());
    // multiplicativity on products
    auto f = T * T + c;
    auto g = T + one;
    REQUIRE(gauss.abs(f * g) == gauss.abs(f) * gauss.abs(g));
    // |(T-c)(T+c)| with |c| < gamma: gamma^2
    auto vb3 = GradedValuation::make(C, q2(), {});
    auto gauss2 = gauss_extend(vb3, R, {RealValue::one()});
    auto two = GradedPoly::constant(R, CorpoidElem::from_coeff(C, FElem::from_rat(Q, Rat(2))));
    REQUIRE(gauss2.abs((T - two) * (T + two)) == RealValue::one());
}

TEST_CASE("residue corpoid of valued fields") {
    SECTION("trivially valued") {
        auto Q = Field::rationals();
        auto C = Corpoid::trivial(Q);
        auto v = GradedValuation::make(C, ValuedField::trivial(Q), {});
        auto rc = residue_corpoid(v);
        REQUIRE(rc.corpoid->gens().empty());
        auto x = CorpoidElem::from_coeff(C, FElem::from_rat(Q, Rat(5, 7)));
        REQUIRE(rc.tilde(x).coeff() == FElem::from_rat(Q, Rat(5, 7)));
    }
    SECTION("F3((t)) flavoured: residue F3 with section t~") {
        auto v = f3t();
        auto C = Corpoid::trivial(v.field());
        auto gv = GradedValuation::make(C, v, {});
        auto rc = residue_corpoid(gv);
        REQUIRE(rc.corpoid->f1()->describe() == "F3");
        REQUIRE(rc.corpoid->gens().size() == 1);
        auto t = CorpoidElem::from_coeff(C, FElem::generator(v.field()));
        auto im = rc.tilde(t);
        REQUIRE(im.gexp()[0] == 1);
        // multiplicativity of tilde on random pairs
        std::mt19937 rng(11);
        std::uniform_int_distribution<int> d(-2, 2);
        auto K = v.field();
        for (int i = 0; i < 100; ++i) {
            // elements c * t^e with c in F3(t) unit part
            FElem a = FElem::one(K) + FElem::generator(K);
            FElem b = FElem::generator(K).pow(Int(d(rng) + 2));
            auto xa = CorpoidElem::from_coeff(C, a * b);
            auto xb = CorpoidElem::from_coeff(C, a + a);
            auto lhs = rc.tilde(xa * xb);
            auto rhs = rc.tilde(xa) * rc.tilde(xb);
            REQUIRE(lhs == rhs);
        }
    }
    SECTION("gauss extension adds an independent T~") {
        auto v = q2();
        auto C = Corpoid::trivial(v.field());
        auto gv = GradedValuation::make(C, v, {});
        auto R = GradedRing::make(C, {{"T", BiDegree::one()}});
        // gamma = 1/3: free over |Q2^x| = 2^Z
        auto gauss = gauss_extend(gv, R, {RealValue::from_rat(Rat(1, 3))});
        auto rc = gauss.residue();
        // residue corpoid has p~ and T~ generators
        REQUIRE(rc.corpoid->gens().size() == 2);
        // T~ is transcendental: no algebraic relation up to degree 4 means the
        // section powers stay independent; sanity-check degrees differ
        REQUIRE(rc.corpoid->gens()[0].v != rc.corpoid->gens()[1].v);
    }
}

TEST_CASE("coarsening") {
    auto F5 = Field::prime_field(Int(5));
    auto F5u = Field::rational_functions(F5, "u");
    auto F5ut = Field::rational_functions(F5u, "t");
    auto v2 = ValuedField::t_then_u(F5ut);
    auto C = Corpoid::trivial(F5ut);
    auto gv = GradedValuation::make(C, v2, {});
    // trivial subgroup: identity
    auto same = compose_coarsen_rank2(gv, ConvexSubgroup{0});
    REQUIRE(same.height() == 2);
    // whole group: trivial valuation
    auto triv = compose_coarsen_rank2(gv, ConvexSubgroup{2});
    REQUIRE(triv.height() == 0);
    // second factor: rank-1 t-adic
    auto rank1 = compose_coarsen_rank2(gv, ConvexSubgroup{1});
    REQUIRE(rank1.height() == 1);
    auto t = CorpoidElem::from_coeff(C, FElem::generator(F5ut));
    // coarser: annuloid of v contains... compose is coarser, so the annuloid grows
    REQUIRE(rank1.in_annuloid(t));
    // u^-1 has value (0,-1): outside the rank-2 annuloid but inside the coarsening
    auto u = CorpoidElem::from_coeff(
        C, FElem::from_fraction(F5ut, {FElem::generator(F5u)}, {FElem::one(F5u)}).inv());
    REQUIRE_FALSE(gv.in_annuloid(u));
    REQUIRE(rank1.in_annuloid(u));
    // height additivity: height(coarse) + height(residue chain remainder) = height(v)
    REQUIRE(rank1.height() + 1 == gv.height());
}

TEST_CASE("flatness over the valuation annuloid") {
    SECTION("pi-torsion detected") {
        auto v = f3t();
        auto X = FOAlgebra::make(v, {"x"});
        // relator t*x: x is t-torsion
        X.add_gen(X.witness(0) * X.x(0));
        REQUIRE_FALSE(is_flat_module(X));
    }
    SECTION("free module is flat") {
        auto v = f3t();
        auto X = FOAlgebra::make(v, {"x"});
        REQUIRE(is_flat_module(X));
    }
    SECTION("x^2 - t is a domain, flat") {
        auto v = f3t();
        auto X = FOAlgebra::make(v, {"x"});
        X.add_gen(X.x(0) * X.x(0) - X.witness(0));
        REQUIRE(is_flat_module(X));
    }
    SECTION("x^2 - x is flat") {
        auto v = f3t();
        auto X = FOAlgebra::make(v, {"x"});
        X.add_gen(X.x(0) * X.x(0) - X.x(0));
        REQUIRE(is_flat_module(X));
    }
    SECTION("height-2 torsion at the second witness") {
        auto F5 = Field::prime_field(Int(5));
        auto F5u = Field::rational_functions(F5, "u");
        auto F5ut = Field::rational_functions(F5u, "t");
        auto v = ValuedField::t_then_u(F5ut);
        auto X = FOAlgebra::make(v, {"x"});
        X.add_gen(X.witness(1) * X.x(0));  // u * x
        REQUIRE_FALSE(is_flat_module(X));
    }
}

TEST_CASE("fiber splitting cover") {
    SECTION("two sections split over a height-1 chain") {
        auto v = f3t();
        auto X = FOAlgebra::make(v, {"x"});
        X.add_gen(X.x(0) * X.x(0) - X.x(0));
        auto cover = fiber_splitting_cover(X);
        REQUIRE(cover.opens.size() == 2);
        for (auto& e : cover.opens) REQUIRE(e.depth == 1);
        // every level's fiber has two components, each open picks one per level
        for (auto& lev : cover.levels) REQUIRE(lev.comps.prime_groups.size() == 2);
    }
    SECTION("integral total space with connected fibers: one open") {
        auto v = f3t();
        auto X = FOAlgebra::make(v, {"x"});
        // x^2 + 1 + t: special fiber x^2+1 irreducible mod 3, generic fiber irreducible
        auto R = X.model_ring();
        X.add_gen(X.x(0) * X.x(0) + MPoly::one(R) + X.witness(0));
        auto cover = fiber_splitting_cover(X);
        REQUIRE(cover.opens.size() == 1);
    }
    SECTION("xy - t: special fiber connected, one open") {
        auto v = f3t();
        auto X = FOAlgebra::make(v, {"x", "y"});
        X.add_gen(X.x(0) * X.x(1) - X.witness(0));
        auto cover = fiber_splitting_cover(X);
        REQUIRE(cover.opens.size() == 1);
        REQUIRE(cover.levels[0].comps.prime_groups.size() == 1);
        REQUIRE(cover.levels[1].comps.prime_groups.size() == 1);
    }
    SECTION("non-reduced fiber rejected") {
        auto v = f3t();
        auto X = FOAlgebra::make(v, {"x"});
        X.add_gen(X.x(0) * X.x(0) - X.witness(0) * X.x(0));  // x(x - t): special fiber x^2
        REQUIRE_THROWS_AS(fiber_splitting_cover(X), std::domain_error);
    }
    SECTION("height-2 chain with split sections") {
        auto F5 = Field::prime_field(Int(5));
        auto F5u = Field::rational_functions(F5, "u");
        auto F5ut = Field::rational_functions(F5u, "t");
        auto v = ValuedField::t_then_u(F5ut);
        auto X = FOAlgebra::make(v, {"x"});
        X.add_gen(X.x(0) * X.x(0) - X.x(0));
        auto cover = fiber_splitting_cover(X);
        REQUIRE(cover.opens.size() == 2);
        for (auto& lev : cover.levels) REQUIRE(lev.comps.prime_groups.size() == 2);
        // post-hoc verification: each open's fiber at every level is empty or
        // a single component, by construction of component_at_level
        for (auto& e : cover.opens)
            for (size_t lvl = 0; lvl <= 2; ++lvl)
                if (e.component_at_level[lvl] >= 0)
                    REQUIRE(static_cast<size_t>(e.component_at_level[lvl]) <
                            cover.levels[lvl].comps.prime_groups.size());
    }
}

TEST_CASE("spv membership and integrality witnesses") {
    auto Q = Field::rationals();
    auto C = Corpoid::trivial(Q);
    auto vbase = GradedValuation::make(C, ValuedField::trivial(Q), {});
    auto R = GradedRing::make(C, {{"T", BiDegree::one()}});
    auto gauss = gauss_extend(vbase, R, {RealValue::from_rat(Rat(2))});
    auto xi = [&](const GradedPoly& f) { return gauss.abs(f); };
    auto T = GradedPoly::variable(R, 0);
    REQUIRE(spv_membership(xi, {}));
    REQUIRE(spv_membership(xi, {GradedPoly::one(R)}));
    REQUIRE_FALSE(spv_membership(xi, {T}));  // |T| = 2 > 1

    // integrality: a = T in B = ring/(T^2 - T): monic T^2 - T kills it... check
    // via monic X^2 - X evaluated at a: coefficients (0, -1)
    auto B = GradedIdeal::make(R, {T * T - T});
    std::vector<GradedPoly> lower{GradedPoly::zero(R, BiDegree::one() * BiDegree::one()), -GradedPoly::one(R)};
    // degree bookkeeping: X has the degree of a = T (here 1), so coefficients are
    // c0 of degree 1*1, c1 of degree 1
    REQUIRE(integrality_witness_check(B, T, lower));
    // random monic almost never kills a random element
    std::vector<GradedPoly> silly{GradedPoly::one(R), GradedPoly::one(R)};
    REQUIRE_FALSE(integrality_witness_check(B, T, silly));
}

TEST_CASE("tilde multiplicativity on 500 random pairs per field") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> c(1, 40);
    std::uniform_int_distribution<int> e(-3, 3);

    SECTION("Q2") {
        auto v = q2();
        auto C = Corpoid::trivial(v.field());
        auto gv = GradedValuation::make(C, v, {});
        auto rc = residue_corpoid(gv);
        for (int i = 0; i < 500; ++i) {
            Rat qa = Rat(c(rng)) * rat_pow(Rat(2), e(rng));
            Rat qb = Rat(c(rng), 1 + 2 * (c(rng) % 5)) * rat_pow(Rat(2), e(rng));
            auto a = CorpoidElem::from_coeff(C, FElem::from_rat(v.field(), qa));
            auto b = CorpoidElem::from_coeff(C, FElem::from_rat(v.field(), qb));
            REQUIRE(rc.tilde(a * b) == rc.tilde(a) * rc.tilde(b));
        }
    }
    SECTION("F3((t)) flavoured") {
        auto v = f3t();
        auto K = v.field();
        auto C = Corpoid::trivial(K);
        auto gv = GradedValuation::make(C, v, {});
        auto rc = residue_corpoid(gv);
        auto t = FElem::generator(K);
        for (int i = 0; i < 500; ++i) {
            FElem ua = FElem::from_int(K, Int(1 + c(rng) % 2)) + t * FElem::from_int(K, Int(c(rng)));
            FElem ub = FElem::from_int(K, Int(1 + c(rng) % 2)) + t * t * FElem::from_int(K, Int(c(rng)));
            auto a = CorpoidElem::from_coeff(C, ua * t.pow(Int(e(rng))));
            auto b = CorpoidElem::from_coeff(C, ub * t.pow(Int(e(rng))));
            REQUIRE(rc.tilde(a * b) == rc.tilde(a) * rc.tilde(b));
        }
    }
    SECTION("trivially valued") {
        auto Q = Field::rationals();
        auto C = Corpoid::trivial(Q);
        auto gv = GradedValuation::make(C, ValuedField::trivial(Q), {});
        auto rc = residue_corpoid(gv);
        for (int i = 0; i < 500; ++i) {
            auto a = CorpoidElem::from_coeff(C, FElem::from_rat(Q, Rat(c(rng), c(rng))));
            auto b = CorpoidElem::from_coeff(C, FElem::from_rat(Q, Rat(c(rng))));
            REQUIRE(rc.tilde(a * b) == rc.tilde(a) * rc.tilde(b));
        }
    }
}
