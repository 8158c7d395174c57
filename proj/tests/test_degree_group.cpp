#include <catch2/catch_amalgamated.hpp>

#include <gradal/degree.hpp>

#include <random>

using namespace gradal;

namespace {

DegreeElement elem(const MultRealGroupPtr& g, std::vector<Rat> e) { return DegreeElement(g, std::move(e)); }

}  // namespace

TEST_CASE("compare decides real order exactly") {
    auto g = MultRealGroup::make({Rat(2), Rat(3)});
    // 2^(1/2) vs 3^(1/3): cross-exponentiate, 2^3 = 8 < 9 = 3^2
    auto a = elem(g, {Rat(1, 2), Rat(0)});
    auto b = elem(g, {Rat(0), Rat(1, 3)});
    REQUIRE(compare(a, b) == Ordering::Less);
    REQUIRE(compare(b, a) == Ordering::Greater);
    REQUIRE(compare(a, a) == Ordering::Equal);
}

TEST_CASE("elements with equal real value compare equal across generator words") {
    auto g = MultRealGroup::make({Rat(4), Rat(2)});
    auto a = elem(g, {Rat(1, 2), Rat(0)});  // 4^(1/2)
    auto b = elem(g, {Rat(0), Rat(1)});     // 2
    REQUIRE(compare(a, b) == Ordering::Equal);
}

TEST_CASE("compare is a total order compatible with the group law") {
    auto g = MultRealGroup::make({Rat(2), Rat(3), Rat(5, 7)});
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    auto rand_elem = [&] {
        std::vector<Rat> e;
        for (int i = 0; i < 3; ++i) e.emplace_back(num(rng), den(rng));
        return elem(g, e);
    };
    for (int trial = 0; trial < 60; ++trial) {
        auto a = rand_elem(), b = rand_elem(), c = rand_elem();
        auto ab = compare(a, b), ba = compare(b, a);
        REQUIRE(static_cast<int>(ab) == -static_cast<int>(ba));
        // transitivity on a sorted triple
        if (ab != Ordering::Greater && compare(b, c) != Ordering::Greater)
            REQUIRE(compare(a, c) != Ordering::Greater);
        // translation invariance
        REQUIRE(compare(a * c, b * c) == ab);
    }
}

TEST_CASE("order_modulo finds the exact order") {
    auto g = MultRealGroup::make({Rat(2), Rat(3)});
    auto two = RealValue::from_rat(Rat(2));
    auto three = RealValue::from_rat(Rat(3));

    SECTION("sqrt(2) has order 2 modulo <2>") {
        auto r = two.pow(Rat(1, 2));
        auto res = order_modulo(r, {two});
        REQUIRE(res.finite);
        REQUIRE(res.n == 2);
    }
    SECTION("members have order 1") {
        auto res = order_modulo(two, {two});
        REQUIRE(res.finite);
        REQUIRE(res.n == 1);
    }
    SECTION("3 is log-independent of 2") {
        auto res = order_modulo(three, {two});
        REQUIRE_FALSE(res.finite);
    }
    SECTION("order found against a two-generator subgroup") {
        auto r = two.pow(Rat(1, 3)) * three.pow(Rat(1, 2));
        auto res = order_modulo(r, {two, three});
        REQUIRE(res.finite);
        REQUIRE(res.n == 6);
    }
    SECTION("order_modulo certificate: r^n in H, smaller powers not") {
        auto r = two.pow(Rat(2, 3));
        auto res = order_modulo(r, {two});
        REQUIRE(res.finite);
        REQUIRE(res.n == 3);
        for (unsigned long m = 1; m < res.n; ++m) {
            auto resm = order_modulo(r.pow(Rat(static_cast<long>(m))), {two});
            REQUIRE(resm.n != 1);
        }
        auto hit = order_modulo(r.pow(Rat(static_cast<long>(res.n))), {two});
        REQUIRE(hit.finite);
        REQUIRE(hit.n == 1);
    }
}

TEST_CASE("is_free_family detects rational dependence") {
    auto two = RealValue::from_rat(Rat(2));
    auto three = RealValue::from_rat(Rat(3));
    auto four = RealValue::from_rat(Rat(4));
    REQUIRE(is_free_family({two.pow(Rat(1, 2))}, {}));
    REQUIRE_FALSE(is_free_family({two, four}, {}));
    REQUIRE(is_free_family({two, three}, {}));
    REQUIRE_FALSE(is_free_family({two.pow(Rat(1, 2))}, {two}));
    REQUIRE(is_free_family({three}, {two}));
}

TEST_CASE("coarsen projects lex values along convex subgroups") {
    auto H = convex_subgroup_from_generators(2, {LexValue{{Rat(0), Rat(1)}}});
    REQUIRE(H.has_value());
    LexValue v{{Rat(2), Rat(-5)}};
    auto img = coarsen(v, *H);
    REQUIRE(img.coords.size() == 1);
    REQUIRE(img.coords[0] == Rat(2));

    LexValue inside{{Rat(0), Rat(7)}};
    auto img2 = coarsen(inside, *H);
    REQUIRE(img2.coords[0] == Rat(0));

    // non-convex: span of (1,0) is not a suffix
    REQUIRE_FALSE(convex_subgroup_from_generators(2, {LexValue{{Rat(1), Rat(0)}}}).has_value());
    // mixed generator spanning a slanted line: not convex either
    REQUIRE_FALSE(convex_subgroup_from_generators(2, {LexValue{{Rat(1), Rat(1)}}}).has_value());
}

TEST_CASE("RealValue arithmetic and order") {
    auto v = RealValue::from_rat(Rat(1, 2));
    REQUIRE(v < RealValue::one());
    REQUIRE(RealValue::zero() < v);
    REQUIRE(v * v == RealValue::from_rat(Rat(1, 4)));
    REQUIRE(v.pow(Rat(-1)) == RealValue::from_rat(Rat(2)));
    REQUIRE((v / v).is_one());
    auto r = RealValue::from_rat(Rat(8)).pow(Rat(1, 3));
    REQUIRE(r == RealValue::from_rat(Rat(2)));
    REQUIRE(r.as_rational().has_value());
    REQUIRE(*r.as_rational() == Rat(2));
    REQUIRE_FALSE(RealValue::from_rat(Rat(2)).pow(Rat(1, 2)).as_rational().has_value());
}
