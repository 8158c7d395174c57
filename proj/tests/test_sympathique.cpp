#include <catch2/catch_amalgamated.hpp>

#include <gradal/sympathique.hpp>

using namespace gradal;

namespace {

TateBase q_trivial() {
    return TateBase(ValuedField::trivial(Field::rationals()),
                    {RealValue::from_rat(Rat(2)), RealValue::from_rat(Rat(3))});
}
TateBase q2_base() {
    return TateBase(ValuedField::padic(Int(2), RealValue::from_rat(Rat(1, 2))),
                    {RealValue::from_rat(Rat(1, 2))});
}
TateBase f3t_base() {
    auto F3 = Field::prime_field(Int(3));
    auto F3t = Field::rational_functions(F3, "t");
    return TateBase(ValuedField::tadic(F3t, RealValue::from_rat(Rat(1, 3))),
                    {RealValue::from_rat(Rat(1, 3))});
}

RealValue eps20() { return RealValue::from_rat(Rat(1, 1048576)); }

// B = A{T/1}/(relator built from S,T exponent pairs) over A = k{S/1}
RelativePresentation two_var_presentation(const TateBase& base,
                                          std::initializer_list<std::tuple<int, int, long>> rel_terms) {
    auto R = TateRing::make(base, {"S", "T"}, {RealValue::one(), RealValue::one()});
    TateSeries a(R);
    for (auto& [es, et, c] : rel_terms) a.add_term({es, et}, FElem::from_rat(base.k.field(), Rat(c)));
    auto P = RelativePresentation::make(R, 1, {a});
    auto k = base.k.field();
    P.add_sample({FElem::from_rat(k, Rat(0))}, "S=0");
    P.add_sample({FElem::from_rat(k, Rat(1))}, "S=1");
    return P;
}

}  // namespace

TEST_CASE("sympathique: T^2 - T passes all six conditions") {
    for (auto base : {q_trivial(), q2_base(), f3t_base()}) {
        auto P = two_var_presentation(base, {{0, 2, 1}, {0, 1, -1}});
        auto rep = check_sympathique(P, eps20());
        INFO(base.k.describe());
        for (auto& c : rep.conditions) {
            INFO("condition " << c.condition << ": " << verdict_str(c.verdict) << " " << c.witness);
            REQUIRE(c.verdict == Verdict::True);
        }
        REQUIRE(rep.overall_pass());
    }
}

TEST_CASE("sympathique: T^2 - S fails condition 4 at the witness prime") {
    auto P = two_var_presentation(q_trivial(), {{0, 2, 1}, {1, 0, -1}});
    auto rep = check_sympathique(P, eps20());
    REQUIRE(rep.conditions[3].condition == 4);
    REQUIRE(rep.conditions[3].verdict == Verdict::False);
    REQUIRE(rep.conditions[3].witness.find("S=0") != std::string::npos);
    REQUIRE_FALSE(rep.overall_pass());
}

TEST_CASE("sympathique: S*T fails fiber norms at S=0") {
    auto P = two_var_presentation(q_trivial(), {{1, 1, 1}});
    auto rep = check_sympathique(P, eps20());
    REQUIRE(rep.conditions[1].condition == 2);
    REQUIRE(rep.conditions[1].verdict == Verdict::False);
    REQUIRE(rep.conditions[1].witness.find("S=0") != std::string::npos);
}

TEST_CASE("sympathique report is deterministic") {
    auto run = [&] {
        auto P = two_var_presentation(q2_base(), {{0, 2, 1}, {0, 1, -1}});
        auto rep = check_sympathique(P, eps20());
        std::string out;
        for (auto& c : rep.conditions) out += std::to_string(c.condition) + verdict_str(c.verdict) + c.witness + ";";
        return out;
    };
    REQUIRE(run() == run());
}

TEST_CASE("empty relator list passes") {
    auto base = q_trivial();
    auto R = TateRing::make(base, {"S", "T"}, {RealValue::one(), RealValue::one()});
    auto P = RelativePresentation::make(R, 1, {});
    P.add_sample({FElem::from_rat(base.k.field(), Rat(0))}, "S=0");
    auto rep = check_sympathique(P, eps20());
    REQUIRE(rep.overall_pass());
}

TEST_CASE("radius outside Gamma fails condition 1") {
    auto base = q2_base();  // Gamma^Q = <2>^Q
    auto R = TateRing::make(base, {"S", "T"}, {RealValue::one(), RealValue::from_rat(Rat(1, 3))});
    TateSeries a(R);
    a.add_term({0, 1}, FElem::one(base.k.field()));
    auto P = RelativePresentation::make(R, 1, {a});
    auto rep = check_radii(P);
    REQUIRE(rep.verdict == Verdict::False);
}

TEST_CASE("universal distinguishedness") {
    auto base = q2_base();
    auto R = TateRing::make(base, {"T"}, {RealValue::one()});
    auto eps = eps20();
    SECTION("(T^2 - T): alpha route") {
        TateSeries a(R);
        a.add_term({2}, FElem::one(base.k.field()));
        a.add_term({1}, -FElem::one(base.k.field()));
        auto P = TatePresentation::make(R, {a});
        auto rep = check_universally_distinguished(P, {}, eps);
        REQUIRE(rep.verdict == Verdict::True);
        REQUIRE(P.strongly_generating);
        REQUIRE(P.distinguished);
    }
    SECTION("(ST - 1) Laurent presentation") {
        auto baseT = q_trivial();
        auto r = RealValue::from_rat(Rat(2));
        auto R2 = TateRing::make(baseT, {"T", "S"}, {r, r.pow(Rat(-1))});
        TateSeries st1(R2);
        st1.add_term({1, 1}, FElem::one(baseT.k.field()));
        st1.add_term({0, 0}, -FElem::one(baseT.k.field()));
        auto P = TatePresentation::make(R2, {st1});
        auto rep = check_universally_distinguished(P, {}, eps);
        REQUIRE(rep.verdict == Verdict::True);
    }
    SECTION("(T^2 + 1) over a Q-flavoured base: alpha fails, no witnesses") {
        auto baseT = q_trivial();
        auto R3 = TateRing::make(baseT, {"T"}, {RealValue::one()});
        TateSeries a(R3);
        a.add_term({2}, FElem::one(baseT.k.field()));
        a.add_term({0}, FElem::one(baseT.k.field()));
        auto P = TatePresentation::make(R3, {a});
        auto rep = check_universally_distinguished(P, {}, eps);
        REQUIRE(rep.verdict == Verdict::Inconclusive);
    }
}

TEST_CASE("formal model torsion kill") {
    auto base = f3t_base();
    auto R = TateRing::make(base, {"T"}, {RealValue::one()});
    auto K = base.k.field();
    SECTION("flat relators need no killers") {
        TateSeries a(R);
        a.add_term({2}, FElem::one(K));
        a.add_term({1}, -FElem::one(K));
        auto P = TatePresentation::make(R, {a});
        auto M = build_formal_model(P);
        REQUIRE(M.torsion_kill.empty());
        REQUIRE(verify_formal_model(P, M));
    }
    SECTION("relator t*T yields the killer T") {
        TateSeries a(R);
        a.add_term({1}, FElem::generator(K));  // t * T
        auto P = TatePresentation::make(R, {a});
        auto M = build_formal_model(P);
        REQUIRE(M.torsion_kill.size() == 1);
        // the killer is the class of T
        REQUIRE(M.torsion_kill[0] == MPoly::var(M.model_ring, 1));
        REQUIRE(verify_formal_model(P, M));
    }
    SECTION("relators (T1, t*T2) yield the killer T2") {
        auto R2 = TateRing::make(base, {"T1", "T2"}, {RealValue::one(), RealValue::one()});
        TateSeries a1(R2), a2(R2);
        a1.add_term({1, 0}, FElem::one(K));
        a2.add_term({0, 1}, FElem::generator(K));
        auto P = TatePresentation::make(R2, {a1, a2});
        auto M = build_formal_model(P);
        REQUIRE(M.torsion_kill.size() == 1);
        REQUIRE(M.torsion_kill[0] == MPoly::var(M.model_ring, 2));
        REQUIRE(verify_formal_model(P, M));
    }
    SECTION("flatness of the corrected model via the annuloid test") {
        TateSeries a(R);
        a.add_term({1}, FElem::generator(K));
        auto P = TatePresentation::make(R, {a});
        auto M = build_formal_model(P);
        auto X = FOAlgebra::make(base.k, {"T"});
        // model relators use (t, T); FOAlgebra uses (T, @t): remap indices
        for (auto& g : M.relators) {
            MPoly h = MPoly::zero(X.model_ring());
            for (auto& [m, c] : g.terms()) h.add_term({m[1], m[0]}, c);
            X.add_gen(h);
        }
        for (auto& g : M.torsion_kill) {
            MPoly h = MPoly::zero(X.model_ring());
            for (auto& [m, c] : g.terms()) h.add_term({m[1], m[0]}, c);
            X.add_gen(h);
        }
        REQUIRE(is_flat_module(X));
    }
}

TEST_CASE("verdict monotonicity: extra samples never turn fail into pass") {
    auto base = q_trivial();
    auto R = TateRing::make(base, {"S", "T"}, {RealValue::one(), RealValue::one()});
    TateSeries a(R);
    a.add_term({0, 2}, FElem::one(base.k.field()));
    a.add_term({1, 0}, -FElem::one(base.k.field()));  // T^2 - S
    auto P1 = RelativePresentation::make(R, 1, {a});
    P1.add_sample({FElem::from_rat(base.k.field(), Rat(0))}, "S=0");
    auto rep1 = check_sympathique(P1, eps20());

    auto P2 = RelativePresentation::make(R, 1, {a});
    P2.add_sample({FElem::from_rat(base.k.field(), Rat(0))}, "S=0");
    P2.add_sample({FElem::from_rat(base.k.field(), Rat(1))}, "S=1");
    P2.add_sample({FElem::from_rat(base.k.field(), Rat(1, 2))}, "S=1/2");
    auto rep2 = check_sympathique(P2, eps20());

    for (size_t i = 0; i < rep1.conditions.size(); ++i) {
        if (rep1.conditions[i].verdict == Verdict::False) REQUIRE(rep2.conditions[i].verdict == Verdict::False);
    }
    REQUIRE_FALSE(rep2.overall_pass());
}
