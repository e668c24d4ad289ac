#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dal/approx.hpp"

namespace dal {
namespace hankel {

// Determinant of the m x m Hankel matrix with entry (r, c) = p[k-m+1+r+c],
// i.e. p_k on the antidiagonal. Legal when k-m+1 >= 0 and k+m-1 <= n.
Int minor(const std::vector<Int>& p, int m, int k);

// Determinant of the m x m matrix whose rows are the windows
// y_c = (p_c, ..., p_{c+m-1}) for the given row starts.
Int selection_det(const std::vector<Int>& p, int m, const std::vector<int>& rows);

struct Profile {
    int n = 0;
    std::vector<Int> delta2;  // index i-1 holds p_i^2 - p_{i-1} p_{i+1}, i = 1..n-1
    std::map<std::pair<int, int>, Int> minors;  // (m, k) -> matrix determinant
    int h = 0;                // smallest h >= 1 with rank(P_h) <= h
    std::vector<Int> kernel;  // primitive (a_0..a_h), last nonzero entry positive
    Int height;               // max |a_i|
    Int Z;                    // max |h x h| determinant over windows y_i
    bool ds_skipped = false;  // Z = 0: the height bound does not apply
    std::optional<Interval> ds_ratio;  // H / Z^(1/(n-2h+2))
};

// Requested Hankel minors of every legal center, plus the 2x2 antidiagonal
// profile. `sizes` lists the orders m.
Profile delta_profile(const std::vector<Int>& p, const std::vector<int>& sizes);

// Full rank/recurrence analysis: h, the primitive recurrence kernel of the
// band matrix P_h, and the Davenport-Schmidt height-bound data.
Profile rank_recurrence(const std::vector<Int>& p);

struct RoundtripReport {
    bool comparability_ok = true;
    Rat comparability_bound;     // the tested constant R
    bool hypothesis_ok = false;  // rho <= C q^-lambda held
    // forward direction
    Rat forward_constant;        // max measured |p_i xi - p_{i+1}| q^lambda (upper bound)
    Rat delta_constant;          // max measured |Delta_{2,i}| q^(lambda-1) (upper bound)
    Rat derived_linear_bound;    // C (1 + |xi|)
    Rat derived_delta_bound;     // 2 max|p|/q * C (1 + |xi|)
    bool forward_pass = false;   // measured <= derived, certified
    // converse: xi* = p_1 / p_0
    Rat reconstructed_xi_num, reconstructed_xi_den;
    Rat converse_constant;       // max measured |p_0 xi*^j - p_j| q^lambda
};

// Audits both directions of the equivalence between small simultaneous
// displacements and small consecutive-quotient determinants. The
// comparability precondition p_0 =~ ... =~ p_n is tested with the explicit
// constant; passing 0 derives it from the spec enclosure instead, which is
// the right reading for scan-produced tuples (a standalone tuple gets the
// strict default).
RoundtripReport roundtrip_audit(const ApproxVector& v, const RealSpec& spec, const Rat& lambda,
                              const Rat& C, const Rat& comparability = Rat(8));

struct MinorAuditRow {
    int m = 0;
    int k = -1;                  // -1 for selection rows
    std::vector<int> selection;  // row starts when k < 0
    Rat measured;                // |det| q^((m-1)lambda - 1), upper bound
    Rat derived;                 // m! (max|p|/q) (C(1+|xi|))^(m-1)
    bool pass = false;
};

struct MinorAudit {
    std::vector<MinorAuditRow> rows;
    Rat max_measured;
    bool all_pass = true;
};

// Growth audit of every legal Hankel minor and (for n <= 8) every row
// selection: |det| <= derived * q^(1-(m-1)lambda), constants reported.
MinorAudit minor_growth_audit(const ApproxVector& v, const RealSpec& spec, const Rat& lambda,
                              const Rat& C);

struct SmallPolyResult {
    std::vector<Int> coeffs;
    Int height;
    Interval value;     // |a_h xi^h + ... + a_0|
    Interval ratio;     // value / (H q^(-1-lambda))
    bool exact_zero = false;
};

// Evaluates the recurrence kernel as a polynomial at the described real and
// reports its size against H q^(-1-lambda).
SmallPolyResult small_polynomial(const ApproxVector& v, const RealSpec& spec, const Rat& lambda);

struct DsFamilyResult {
    uint64_t family_seed = 0;
    int h = 0;
    std::vector<Int> kernel;
    std::vector<Rat> ratios;  // ds_ratio upper bounds per window length
    int skipped = 0;          // windows with Z = 0
    Rat max_over_median;      // 0 when fewer than 2 usable windows
};

// Seeded recurrence-generated families: each family fixes a primitive kernel
// (monic in the top coefficient so the integer recurrence rolls forward) and
// grows the window, recording how the height bound behaves.
std::vector<DsFamilyResult> ds_family_audit(int families, uint64_t seed, int max_n = 12,
                                            long coeff_bound = 50);

}  // namespace hankel
}  // namespace dal
