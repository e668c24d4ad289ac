#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/contfrac_oracle.hpp"
#include "dal/realspec.hpp"

using namespace dal;

TEST_CASE("rational literals parse and round-trip") {
    CHECK(rat_from_string("3/2") == Rat(3, 2));
    CHECK(rat_from_string("-7") == Rat(-7));
    CHECK(rat_from_string("0.34") == Rat(17, 50));
    CHECK(rat_to_string(Rat(3, 2)) == "3/2");
    CHECK(rat_to_string(make_rat(Int(-4), Int(2))) == "-2");
    CHECK_THROWS_AS(rat_from_string("1/0"), SpecError);
}

TEST_CASE("eval_real: exact rational is a point") {
    RealSpec s = RealSpec::parse("rational:3/2");
    Interval iv = eval_real(s, 10);
    CHECK(iv.is_point());
    CHECK(iv.lo == Rat(3, 2));
}

TEST_CASE("eval_real: sqrt(2) endpoints straddle 2 when squared") {
    RealSpec s = RealSpec::parse("sqrt:2");
    Interval iv = eval_real(s, 20);
    CHECK(iv.width() <= Rat(1, Int(1) << 20));
    CHECK(iv.lo * iv.lo <= 2);
    CHECK(iv.hi * iv.hi >= 2);
}

TEST_CASE("eval_real: liouville w=3 base=2 matches the partial-sum oracle") {
    RealSpec s = RealSpec::parse("liouville:w=3,base=2");
    Interval iv = eval_real(s, 60);
    CHECK(iv.width() <= Rat(1, Int(1) << 60));
    // oracle: partial sum with exponents ceil(3^k) = 3, 9, 27, 81, plus a
    // crude tail bound 2*2^-243
    Rat partial = Rat(1, Int(1) << 3) + Rat(1, Int(1) << 9) + Rat(1, Int(1) << 27) +
                  Rat(1, Int(1) << 81);
    Rat tail = make_rat(Int(2), Int(1) << 243);
    CHECK(iv.lo <= partial + tail);
    CHECK(iv.hi >= partial);
}

TEST_CASE("eval_real: nestedness across precisions") {
    for (const char* text : {"sqrt:2", "cbrt:2", "golden", "liouville:w=3,base=2",
                             "algebraic:poly=x^3-x-1,lo=1,hi=2", "cfpow:w=3",
                             "cfrand:seed=7,bound=9"}) {
        RealSpec s = RealSpec::parse(text);
        Interval coarse = eval_real(s, 16);
        Interval fine = eval_real(s, 80);
        CAPTURE(text);
        CHECK(coarse.lo <= fine.lo);
        CHECK(fine.hi <= coarse.hi);
        CHECK(fine.width() <= Rat(1, Int(1) << 80));
    }
}

TEST_CASE("nearest_int_certified") {
    auto r1 = nearest_int_certified(Interval(Rat(49, 100), Rat(495, 1000)));
    REQUIRE(r1.has_value());
    CHECK(r1->m == 0);
    CHECK(r1->dist.lo >= Rat(49, 100));
    CHECK(r1->dist.hi <= Rat(99, 200));

    auto r2 = nearest_int_certified(Interval(Rat(19, 10), Rat(21, 10)));
    REQUIRE(r2.has_value());
    CHECK(r2->m == 2);
    CHECK(r2->dist.lo == 0);
    CHECK(r2->dist.hi <= Rat(1, 10));

    auto r3 = nearest_int_certified(Interval(Rat(4999, 10000), Rat(5001, 10000)));
    CHECK(!r3.has_value());  // straddles the half-integer: refine request

    auto r4 = nearest_int_certified(Interval::point(Rat(1, 2)));
    REQUIRE(r4.has_value());  // exact point decides deterministically
    CHECK(r4->dist.lo == Rat(1, 2));
}

TEST_CASE("cf_convergents oracle: golden and sqrt2") {
    // oracle: brute-force continued fraction expansion of the enclosures
    auto golden = cf_convergents(RealSpec::parse("golden"), 6);
    REQUIRE(golden.convergents.size() == 6);
    std::vector<std::pair<long, long>> want = {{1, 1}, {2, 1}, {3, 2}, {5, 3}, {8, 5}, {13, 8}};
    for (size_t i = 0; i < want.size(); ++i) {
        CHECK(golden.convergents[i].p == want[i].first);
        CHECK(golden.convergents[i].q == want[i].second);
    }
    CHECK(!golden.exhausted);

    auto s2 = cf_convergents(RealSpec::parse("sqrt:2"), 4);
    std::vector<std::pair<long, long>> want2 = {{1, 1}, {3, 2}, {7, 5}, {17, 12}};
    for (size_t i = 0; i < want2.size(); ++i) {
        CHECK(s2.convergents[i].p == want2[i].first);
        CHECK(s2.convergents[i].q == want2[i].second);
    }
}

TEST_CASE("cf_convergents: rational expansion exhausts with a flag") {
    auto r = cf_convergents(RealSpec::parse("rational:3/2"), 10);
    CHECK(r.exhausted);
    REQUIRE(r.convergents.size() == 2);
    CHECK(r.convergents[0].p == 1);
    CHECK(r.convergents[0].q == 1);
    CHECK(r.convergents[1].p == 3);
    CHECK(r.convergents[1].q == 2);
}

TEST_CASE("convergent determinant identity (property)") {
    for (const char* text : {"golden", "sqrt:2", "cbrt:2", "cfrand:seed=11,bound=6", "cfpow:w=2"}) {
        auto e = cf_convergents(RealSpec::parse(text), 12);
        CAPTURE(text);
        REQUIRE(e.convergents.size() >= 2);
        for (size_t k = 1; k < e.convergents.size(); ++k) {
            Int det = e.convergents[k].p * e.convergents[k - 1].q -
                      e.convergents[k - 1].p * e.convergents[k].q;
            CHECK(abs(det) == 1);
        }
        // convergents agree with the independent interval-Euclid oracle
        auto oracle = test_oracle::cf_expand_interval(e.convergents.back().q * e.convergents.back().q,
                                                      RealSpec::parse(text),
                                                      static_cast<int>(e.quotients.size()));
        for (size_t k = 0; k < std::min(oracle.size(), e.quotients.size()); ++k)
            CHECK(oracle[k] == e.quotients[k]);
    }
}

TEST_CASE("spec grammar round-trips and rejects malformed input") {
    for (const char* text :
         {"rational:3/2", "sqrt:2", "cbrt:2", "golden", "algebraic:poly=x^3-x-1,lo=1,hi=2",
          "liouville:w=3,base=2", "cf:1,2,2,2,...", "cfpow:w=3", "cfrand:seed=1001,bound=10"}) {
        RealSpec s = RealSpec::parse(text);
        RealSpec t = RealSpec::parse(s.str());
        CHECK(s.str() == t.str());
    }
    CHECK(RealSpec::parse("SQRT:2").str() == "sqrt:2");  // case-insensitive
    CHECK(RealSpec::parse("sqrt:4").exact_rational().value() == 2);  // perfect square folds
    CHECK_THROWS_AS(RealSpec::parse("algebraic:poly=x^2-2,lo=-2,hi=2"), SpecError);  // two roots
    CHECK_THROWS_AS(RealSpec::parse("algebraic:poly=x^2+1,lo=0,hi=1"), SpecError);   // no root
    CHECK_THROWS_AS(RealSpec::parse("liouville:w=1,base=2"), SpecError);
    CHECK_THROWS_AS(RealSpec::parse("nonsense:1"), SpecError);
}

TEST_CASE("exact_zero_test over algebraic forms") {
    CHECK(exact_zero_test(RealSpec::parse("sqrt:2"), poly_parse("x^2-2")));
    CHECK(!exact_zero_test(RealSpec::parse("sqrt:2"), poly_parse("x^2-3")));
    CHECK(exact_zero_test(RealSpec::parse("golden"), poly_parse("x^2-x-1")));
    CHECK(exact_zero_test(RealSpec::parse("cbrt:2"), poly_parse("x^3-2")));
    CHECK(!exact_zero_test(RealSpec::parse("cbrt:2"), poly_parse("x^2-2")));
    CHECK(exact_zero_test(RealSpec::parse("algebraic:poly=x^3-x-1,lo=1,hi=2"),
                          poly_parse("x^3-x-1")));
    // a multiple of the defining polynomial also vanishes
    CHECK(exact_zero_test(RealSpec::parse("golden"), poly_parse("x^3-x^2-x")));
    CHECK(!exact_zero_test(RealSpec::parse("liouville:w=3,base=2"), poly_parse("x^2-2")));
}

TEST_CASE("cf literal with repeated tail is sqrt(2)") {
    RealSpec s = RealSpec::parse("cf:1,2,...");
    Interval iv = eval_real(s, 40);
    CHECK(iv.lo * iv.lo <= 2);
    CHECK(iv.hi * iv.hi >= 2);
}

TEST_CASE("log2_approx sanity") {
    Rat l8 = log2_approx(Rat(8));
    CHECK(abs(l8 - 3) < Rat(1, 1 << 20));
    Rat l = log2_approx(Rat(1, 1024));
    CHECK(abs(l + 10) < Rat(1, 1 << 20));
    Rat lr = log_ratio(Rat(27), Rat(3));
    CHECK(abs(lr - 3) < Rat(1, 1 << 16));
}
