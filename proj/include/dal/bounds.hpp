#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dal/rational.hpp"

namespace dal {
namespace bounds {

// Closed-form Hausdorff-dimension bound formulas, exact rational arithmetic.
Rat jarnik_besicovitch(const Rat& w);            // 2/(1+w)
Rat bernik(int n, const Rat& w);                 // (n+1)/(w+1), valid w >= n
Rat lower16(int n, const Rat& lambda);           // 2/(n(1+lambda))
Rat lower17(int n, const Rat& lambda);           // (n+1)(1-lambda(n-1))/(1+lambda)
Rat lower_beresnevich(int n, const Rat& lambda); // (n+1)/(lambda+1) - (n-1)
Rat lower23_term(int n, int k, const Rat& lambda);     // (k+1)(1-(k-1)lambda)/((n-k+1)(1+lambda))
Rat upper23_term(int n, int h, const Rat& lambda);     // (h+1)(1-(h-1)lambda)/((n-2h+2)(1+lambda))

// m = min(1 + floor(1/lambda), floor((n+1)/2)); the upper bound maximizes
// upper23_term over 1 <= h <= m and is valid for lambda > 1/floor((n+1)/2) (the
// cap argument needs lambda above 1/m).
int index_bound_m(int n, const Rat& lambda);

// lambda value past which the upper bound collapses to 2/(n(1+lambda)).
Rat tight_from(int n);  // (n+4)/(3n) for n >= 3, otherwise 1

struct BoundPoint {
    int n = 0;
    Rat lambda;
    bool lambda_infinite = false;
    Rat jb;       // 2/(1+lambda), the n = 1 reference curve
    Rat lower16;  // always valid for lambda >= 1/n
    Rat lower17;
    bool lower17_valid = false;  // lambda < 1/(n-1)
    Rat lower_ber;
    bool ber_valid = false;  // 1/n <= lambda < 3/(2n-1)
    Rat lower23;             // max over k of lower23_term, clipped to [0, 1]
    int k_star = 0;
    std::optional<Rat> upper23;  // absent outside validity
    int h_star = 0;
    int m = 0;
    bool tight = false;  // lower23 == upper23
};

// Exact evaluation at (n, lambda); requires lambda >= 1/n.
BoundPoint evaluate(int n, const Rat& lambda);
BoundPoint evaluate_infinite(int n);  // lambda = +infinity: every bound is 0

struct Threshold {
    Rat lambda;
    std::string what;  // which argmax/validity changed across this grid step
};

struct BoundCurve {
    int n = 0;
    std::vector<BoundPoint> points;
    std::vector<Threshold> thresholds;  // bracketed at the right grid point
    Rat tight_start;                    // exact threshold from tight_from(n)
};

BoundCurve curve(int n, const Rat& lo, const Rat& hi, const Rat& step);

struct ThresholdIdentity {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct ThresholdReport {
    int n = 0;
    std::vector<ThresholdIdentity> identities;
    std::vector<std::string> skipped;
    bool all_hold = true;
};

// Verifies the exact crossover identities at the threshold and +-1/1000.
ThresholdReport threshold_report(int n);

// CSV columns: n,lambda,jb,lower16,lower17,lower_ber,lower23,k_star,upper23,h_star,tight
void write_csv(std::ostream& os, const BoundCurve& c);
// Deterministic standalone SVG, one polyline per bound.
void write_svg(std::ostream& os, const BoundCurve& c);

}  // namespace bounds
}  // namespace dal
