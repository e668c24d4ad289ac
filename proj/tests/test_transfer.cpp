#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dal/transfer.hpp"

using namespace dal;
using namespace dal::transfer;

TEST_CASE("find_small_form: sqrt2 hits its defining polynomial") {
    LinearForm f = find_small_form(RealSpec::parse("sqrt:2"), 2, Int(5), WMode::All);
    CHECK(f.algebraic_hit);
    REQUIRE(f.a.size() == 3);
    CHECK(f.a[0] == -2);
    CHECK(f.a[1] == 0);
    CHECK(f.a[2] == 1);
}

TEST_CASE("find_small_form: golden box of height 8") {
    LinearForm f = find_small_form(RealSpec::parse("golden"), 1, Int(8), WMode::All);
    CHECK(!f.algebraic_hit);
    // |5 phi - 8| = 0.0901... is the exhaustive minimum over the box
    REQUIRE(f.a.size() == 2);
    CHECK(f.a[0] == -8);
    CHECK(f.a[1] == 5);
    CHECK(f.height == 8);
    CHECK(f.rho.hi < Rat(91, 1000));
    CHECK(f.rho.lo > Rat(90, 1000));
}

TEST_CASE("find_small_form: lead mode pins the top coefficient") {
    LinearForm f = find_small_form(RealSpec::parse("cbrt:2"), 2, Int(10), WMode::Lead);
    CHECK(!f.algebraic_hit);
    Int maxabs(0);
    for (const auto& c : f.a) maxabs = std::max(maxabs, Int(abs(c)));
    CHECK(abs(f.a[2]) == maxabs);
    CHECK(abs(f.a[2]) == f.height);
    CHECK(sgn(f.rho.lo) > 0);
}

TEST_CASE("minkowski_lift rejects k = 1 and algebraic hits") {
    LinearForm f;
    f.k = 1;
    f.a = {Int(-3), Int(2)};
    f.height = 3;
    f.rho = Interval(Rat(1, 10));
    CHECK_THROWS_AS(minkowski_lift(f, RealSpec::parse("rational:3/2"), 3), SpecError);
    LinearForm g = find_small_form(RealSpec::parse("sqrt:2"), 2, Int(5), WMode::All);
    CHECK_THROWS_AS(minkowski_lift(g, RealSpec::parse("sqrt:2"), 4), SpecError);
}

TEST_CASE("minkowski_lift: cbrt2, k = 2, n = 4") {
    RealSpec spec = RealSpec::parse("cbrt:2");
    LinearForm f = find_small_form(spec, 2, Int(10), WMode::Lead);
    LiftWitness w = minkowski_lift(f, spec, 4);
    REQUIRE(w.found);
    REQUIRE(w.v.size() == 5);
    CHECK(w.v[0] >= 1);
    // recurrence residuals vanish exactly
    REQUIRE(w.residuals.size() == 3);
    for (const auto& r : w.residuals) CHECK(r == 0);
    // displacement targets hold for j <= k
    for (int j = 1; j <= 2; ++j) CHECK(w.displacement[j - 1].hi <= w.target.hi);
    CHECK(w.v0_ok);
    // tail bounds are reported as ratios against the target
    REQUIRE(w.tail_ratio.size() == 2);
}

TEST_CASE("minkowski_lift: liouville w=5, k = 2, n = 3") {
    RealSpec spec = RealSpec::parse("liouville:w=5,base=2");
    LinearForm f = find_small_form(spec, 2, Int(32), WMode::Lead);
    CHECK(!f.algebraic_hit);
    LiftWitness w = minkowski_lift(f, spec, 3);
    REQUIRE(w.found);
    for (const auto& r : w.residuals) CHECK(r == 0);
    for (int j = 1; j <= 2; ++j) CHECK(w.displacement[j - 1].hi <= w.target.hi);
    CHECK(w.v0_ok);
}

TEST_CASE("going_up_witness from a deep liouville record") {
    RealSpec spec = RealSpec::parse("liouville:w=5,base=2");
    ScanResult scan = best_approx_scan(spec, 1, Int(1000000));
    REQUIRE(!scan.records.empty());
    const ApproxVector& deep = scan.records.back();
    CHECK(deep.q == 32);
    GoingUpWitness w = going_up_witness(spec, 1, deep);
    REQUIRE(w.found);
    REQUIRE(w.a.size() == 2);
    // exact orthogonality a_0 q = a_1 p_1
    CHECK(w.a[0] * deep.q == w.a[1] * deep.p[0]);
    CHECK(w.a[1] != 0);
    CHECK(w.new_record.q == abs(w.a[1]) * deep.q);
    // degree-2 record carries at least the telescoped exponent
    Rat target = (w.pointwise_exponent - 1) / 2 - Rat(3, 10);
    CHECK(w.new_exponent >= target);
    // the displayed lifted bound has nonpositive measured slack here
    CHECK(w.eps_measured <= Rat(1, 10));
}

TEST_CASE("going_up_witness at k = 2 reaches the dimension-3 structure") {
    RealSpec spec = RealSpec::parse("liouville:w=5,base=2");
    ScanResult scan = best_approx_scan(spec, 2, Int(10000));
    const ApproxVector& deep = scan.records.back();
    CHECK(deep.q == 1024);
    GoingUpWitness w = going_up_witness(spec, 2, deep);
    REQUIRE(w.found);
    // exact orthogonality a_0 q = a_1 p_1 + a_2 p_2
    CHECK(w.a[0] * deep.q == w.a[1] * deep.p[0] + w.a[2] * deep.p[1]);
    CHECK(w.new_record.q == abs(w.a[2]) * deep.q);
    CHECK(w.new_record.q == 32768);
    // the lifted record carries the honest dimension-3 exponent 2/3
    CHECK(w.new_exponent > Rat(3, 5));
    CHECK(w.new_exponent < Rat(3, 4));
}

TEST_CASE("going_up_witness from a golden record stays near the trivial bound") {
    RealSpec spec = RealSpec::parse("golden");
    ScanResult scan = best_approx_scan(spec, 1, Int(100));
    const ApproxVector& rec = scan.records.back();  // q = 89
    GoingUpWitness w = going_up_witness(spec, 1, rec);
    REQUIRE(w.found);
    CHECK(w.new_exponent < Rat(3, 4));  // of interest only for very approximable numbers
    CHECK(w.new_exponent > Rat(0));
}

TEST_CASE("going_up_witness rejects rho = 0 records") {
    ApproxVector rec;
    rec.q = 3;
    rec.p = {Int(1)};
    rec.n = 1;
    rec.rho = Interval(Rat(0));
    CHECK_THROWS_AS(going_up_witness(RealSpec::parse("rational:1/3"), 1, rec), SpecError);
}

TEST_CASE("inequality audit") {
    EstimateSet est;
    est.lambda[1] = Rat(1);
    est.lambda[2] = Rat(1, 2);
    est.lambda[3] = Rat(1, 3);
    est.uniform_lambda[2] = Rat(1, 2);
    est.w_all[2] = Rat(2);
    est.w_lead[2] = Rat(2);
    InequalityReport rep = inequality_audit(est, Rat(3, 10));
    CHECK(rep.all_pass);
    bool saw_goingup = false, saw_chain = false, saw_uniform = false, saw_lead = false,
         saw_khintchine = false;
    for (const auto& row : rep.rows) {
        if (row.name.rfind("going-up", 0) == 0) saw_goingup = true;
        if (row.name.rfind("chain", 0) == 0) saw_chain = true;
        if (row.name.rfind("uniform", 0) == 0) saw_uniform = true;
        if (row.name.rfind("lead-transfer", 0) == 0) saw_lead = true;
        if (row.name.rfind("khintchine", 0) == 0) saw_khintchine = true;
    }
    CHECK(saw_goingup);
    CHECK(saw_chain);
    CHECK(saw_uniform);
    CHECK(saw_lead);
    CHECK(saw_khintchine);
    // margins: going-up k=1 reads 2(1 + 1/2) = 3 >= 1(1 + 1) = 2 with slack 1
    for (const auto& row : rep.rows)
        if (row.name == "going-up k=1") CHECK(row.margin == Rat(1));
}

TEST_CASE("inequality audit: infinite estimates are skipped with a note") {
    EstimateSet est;
    est.lambda[1] = Rat(100);
    est.lambda_infinite[1] = true;
    est.uniform_lambda[2] = Rat(1, 2);
    InequalityReport rep = inequality_audit(est, Rat(1, 5));
    CHECK(!rep.skipped.empty());
    // 1/inf is read as 0: the uniform row bound becomes 1/2
    for (const auto& row : rep.rows)
        if (row.name == "uniform n=2") CHECK(row.rhs == Rat(1, 2));
}

TEST_CASE("inequality audit with nothing to check throws") {
    EstimateSet est;
    CHECK_THROWS_AS(inequality_audit(est, Rat(1, 5)), SpecError);
}
