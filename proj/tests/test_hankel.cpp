#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dal/hankel.hpp"
#include "dal/util.hpp"
#include "support/det_oracle.hpp"

using namespace dal;

namespace {

std::vector<Int> tup(std::initializer_list<long> xs) {
    std::vector<Int> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("delta profile on an exact geometric tuple") {
    auto prof = hankel::delta_profile(tup({8, 12, 18, 27}), {2});
    REQUIRE(prof.delta2.size() == 2);
    CHECK(prof.delta2[0] == 0);
    CHECK(prof.delta2[1] == 0);
    // a 3x3 window needs five consecutive entries
    auto prof5 = hankel::delta_profile(tup({16, 24, 36, 54, 81}), {2, 3});
    CHECK(prof5.minors.at({3, 2}) == 0);
    for (const auto& d : prof5.delta2) CHECK(d == 0);
}

TEST_CASE("delta profile: signed 2x2 values") {
    auto prof = hankel::delta_profile(tup({4, 6, 9, 13}), {2});
    CHECK(prof.delta2[0] == 0);       // 36 - 36
    CHECK(prof.delta2[1] == 3);       // 81 - 78
    CHECK(prof.minors.at({2, 1}) == 0);
    CHECK(prof.minors.at({2, 2}) == -3);  // matrix determinant carries the other sign
}

TEST_CASE("delta profile rejects out-of-range orders") {
    CHECK_THROWS_AS(hankel::minor(tup({1, 0, 0, 1}), 3, 1), SpecError);
    CHECK_THROWS_AS(hankel::delta_profile(tup({1, 2, 3}), {4}), SpecError);
    auto prof = hankel::delta_profile(tup({1, 0, 0, 1}), {2});
    CHECK(prof.delta2[0] == 0);
    CHECK(prof.delta2[1] == 0);
}

TEST_CASE("hankel and selection determinants match the cofactor oracle") {
    uint64_t state = 12345;
    for (int iter = 0; iter < 300; ++iter) {
        int n = 2 + static_cast<int>(splitmix64(state) % 5);  // tuple length n+1 <= 7
        std::vector<Int> p;
        for (int i = 0; i <= n; ++i)
            p.emplace_back(static_cast<long>(splitmix64(state) % 2000001) - 1000000);
        for (int m = 1; m <= n; ++m) {
            for (int k = m - 1; k + m - 1 <= n; ++k) {
                CAPTURE(iter);
                CHECK(hankel::minor(p, m, k) ==
                      test_oracle::cofactor_det(test_oracle::hankel_matrix(p, m, k)));
            }
        }
        // a couple of row selections
        int m = 2 + static_cast<int>(splitmix64(state) % 2);
        if (n - m + 1 >= m) {
            std::vector<int> rows;
            for (int i = 0; i < m; ++i) rows.push_back(i);
            std::vector<std::vector<Int>> mat;
            for (int c : rows) {
                std::vector<Int> row;
                for (int j = 0; j < m; ++j) row.push_back(p[static_cast<size_t>(c + j)]);
                mat.push_back(row);
            }
            CHECK(hankel::selection_det(p, m, rows) == test_oracle::cofactor_det(mat));
        }
    }
}

TEST_CASE("rank and kernel: geometric sequence has order 1") {
    auto prof = hankel::rank_recurrence(tup({8, 12, 18, 27}));
    CHECK(prof.h == 1);
    REQUIRE(prof.kernel.size() == 2);
    CHECK(prof.kernel[0] == -3);
    CHECK(prof.kernel[1] == 2);
}

TEST_CASE("rank and kernel: Fibonacci has order 2") {
    auto prof = hankel::rank_recurrence(tup({1, 1, 2, 3, 5, 8}));
    CHECK(prof.h == 2);
    REQUIRE(prof.kernel.size() == 3);
    // sign convention: the last nonzero kernel entry is positive, so the
    // classical relation p_i + p_{i+1} - p_{i+2} = 0 appears negated.
    CHECK(prof.kernel[0] == -1);
    CHECK(prof.kernel[1] == -1);
    CHECK(prof.kernel[2] == 1);
}

TEST_CASE("rank and kernel: sparse tuple") {
    auto prof = hankel::rank_recurrence(tup({1, 0, 0, 1}));
    CHECK(prof.h == 2);
    REQUIRE(prof.kernel.size() == 3);
    CHECK(prof.kernel[0] == 0);
    CHECK(prof.kernel[1] == 1);
    CHECK(prof.kernel[2] == 0);
}

TEST_CASE("kernel properties on random tuples (property)") {
    uint64_t state = 777;
    for (int iter = 0; iter < 400; ++iter) {
        int n = 3 + static_cast<int>(splitmix64(state) % 4);
        std::vector<Int> p;
        for (int i = 0; i <= n; ++i)
            p.emplace_back(static_cast<long>(splitmix64(state) % 2000001) - 1000000);
        bool allzero = true;
        for (const auto& x : p) allzero &= (x == 0);
        if (allzero) continue;
        auto prof = hankel::rank_recurrence(p);
        CAPTURE(iter);
        CHECK(prof.h >= 1);
        CHECK(prof.h <= (n + 2) / 2);
        // exact recurrence across the whole window
        for (int i = 0; i + prof.h <= n; ++i) {
            Int s(0);
            for (int j = 0; j <= prof.h; ++j)
                s += prof.kernel[static_cast<size_t>(j)] * p[static_cast<size_t>(i + j)];
            CHECK(s == 0);
        }
        // primitive, sign-normalized
        Int g(0);
        for (const auto& x : prof.kernel) g = gcd(g, x);
        CHECK(g == 1);
        Int last(0);
        for (auto it = prof.kernel.rbegin(); it != prof.kernel.rend(); ++it)
            if (*it != 0) {
                last = *it;
                break;
            }
        CHECK(last > 0);
        // minimality: no shorter band admits a kernel (rank stays full below h)
        // is implied by construction; spot-check h = 3 generic expectation
        if (prof.h == 3) CHECK(prof.Z != 0);
    }
}

TEST_CASE("generic random 6-tuples have maximal order and usable height data") {
    uint64_t state = 31337;
    int checked = 0;
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<Int> p;
        for (int i = 0; i < 6; ++i)
            p.emplace_back(static_cast<long>(splitmix64(state) % 1999) - 999);
        auto prof = hankel::rank_recurrence(p);  // n = 5
        if (prof.h == 3) {
            CHECK(prof.Z != 0);
            REQUIRE(prof.ds_ratio.has_value());
            CHECK(sgn(prof.ds_ratio->lo) > 0);
            ++checked;
        }
    }
    CHECK(checked >= 30);  // almost every tuple is generic
}

TEST_CASE("davenport-schmidt family audit stays bounded") {
    auto fams = hankel::ds_family_audit(25, 99, 12, 50);
    REQUIRE(fams.size() == 25);
    for (const auto& f : fams) {
        CAPTURE(f.family_seed);
        CHECK(f.max_over_median <= 10);
    }
}

TEST_CASE("displacement roundtrip on an exact Veronese point") {
    ApproxVector v;
    v.q = 8;
    v.p = tup({12, 18, 27});
    v.n = 3;
    v.rho = Interval(Rat(0));
    RealSpec spec = RealSpec::parse("rational:3/2");
    auto rep = hankel::roundtrip_audit(v, spec, Rat(2), Rat(1));
    CHECK(rep.comparability_ok);
    CHECK(rep.hypothesis_ok);
    CHECK(rep.forward_pass);
    CHECK(rep.reconstructed_xi_num == 3);
    CHECK(rep.reconstructed_xi_den == 2);
    CHECK(rep.converse_constant == 0);
}

TEST_CASE("roundtrip comparability violation") {
    ApproxVector v;
    v.q = 1;
    v.p = tup({10, 1});
    v.n = 2;
    v.rho = Interval(Rat(1, 10));
    RealSpec spec = RealSpec::parse("golden");
    auto rep = hankel::roundtrip_audit(v, spec, Rat(1), Rat(1));
    CHECK(!rep.comparability_ok);
}

TEST_CASE("displacement roundtrip on golden records") {
    RealSpec spec = RealSpec::parse("golden");
    ScanResult r = best_approx_scan(spec, 2, Int(2000));
    for (const auto& rec : r.records) {
        if (rec.q < 100) continue;
        Rat e = -log2_approx(rec.rho.hi) / log2_approx(Rat(rec.q));
        auto rep = hankel::roundtrip_audit(rec, spec, e, Rat(1));
        CAPTURE(rec.q.get_str());
        CHECK(rep.comparability_ok);
        CHECK(rep.forward_pass);
        CHECK(rep.forward_constant <= 8);
        CHECK(rep.delta_constant <= 8);
        CHECK(rep.converse_constant <= 8);
    }
}

TEST_CASE("displacement roundtrip on liouville records with the derived constant") {
    // xi ~ 0.127 breaks the standalone ratio default, but scan-produced
    // tuples use the enclosure-derived constant; both directions stay small
    RealSpec spec = RealSpec::parse("liouville:w=3,base=2");
    ScanResult r = best_approx_scan(spec, 2, Int(5000));
    int audited = 0;
    for (const auto& rec : r.records) {
        if (rec.q < 512) continue;
        Rat e = -log2_approx(rec.rho.hi) / log2_approx(Rat(rec.q));
        auto rep = hankel::roundtrip_audit(rec, spec, e, Rat(1), Rat(0));
        CAPTURE(rec.q.get_str());
        CHECK(rep.comparability_ok);
        CHECK(rep.forward_pass);
        CHECK(rep.forward_constant <= 4);
        CHECK(rep.delta_constant <= 4);
        CHECK(rep.converse_constant <= 4);
        ++audited;
    }
    CHECK(audited >= 1);
}

TEST_CASE("minor growth audit holds on scan records") {
    RealSpec spec = RealSpec::parse("cbrt:2");
    ScanResult r = best_approx_scan(spec, 3, Int(5000));
    for (const auto& rec : r.records) {
        if (rec.q < 10) continue;
        Rat e = -log2_approx(rec.rho.hi) / log2_approx(Rat(rec.q));
        auto audit = hankel::minor_growth_audit(rec, spec, e, Rat(1));
        CAPTURE(rec.q.get_str());
        CHECK(audit.all_pass);
    }
}

TEST_CASE("small polynomial: Fibonacci against the golden ratio is exactly zero") {
    ApproxVector v;
    v.q = 1;
    v.p = tup({1, 2, 3, 5, 8});
    v.n = 5;
    v.rho = Interval(Rat(1, 2));
    RealSpec spec = RealSpec::parse("golden");
    auto res = hankel::small_polynomial(v, spec, Rat(1));
    CHECK(res.exact_zero);
    CHECK(res.value.is_point());
    CHECK(sgn(res.value.lo) == 0);
    CHECK(res.height == 1);
}

TEST_CASE("small polynomial on a deep liouville record") {
    RealSpec spec = RealSpec::parse("liouville:w=5,base=2");
    ScanResult r = best_approx_scan(spec, 3, Int(1000000));
    REQUIRE(!r.records.empty());
    const ApproxVector& deep = r.records.back();
    CHECK(deep.q == 32768);
    Rat e = -log2_approx(deep.rho.hi) / log2_approx(Rat(deep.q));
    auto res = hankel::small_polynomial(deep, spec, e);
    CHECK(!res.exact_zero);
    REQUIRE(res.coeffs.size() == 2);
    CHECK(res.coeffs[0] == -1);
    CHECK(res.coeffs[1] == 32);
    CHECK(res.height == 32);
    // |32 xi - 1| sits exactly at H q^(-1-lambda) for this record
    CHECK(res.ratio.lo > Rat(9, 10));
    CHECK(res.ratio.hi < Rat(11, 10));
    CHECK(res.ratio.hi <= 10);
}

TEST_CASE("small polynomial on an exact rational point") {
    ApproxVector v;
    v.q = 8;
    v.p = tup({12, 18, 27});
    v.n = 3;
    v.rho = Interval(Rat(0));
    RealSpec spec = RealSpec::parse("rational:3/2");
    auto res = hankel::small_polynomial(v, spec, Rat(2));
    CHECK(res.exact_zero);
}
