#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dal/approx.hpp"

namespace dal {
namespace transfer {

struct LinearForm {
    std::vector<Int> a;  // a_0..a_k
    int k = 0;
    Int height;      // max |a_i|
    Interval rho;    // |a_k xi^k + ... + a_1 xi + a_0|
    WMode mode = WMode::All;
    bool algebraic_hit = false;
};

// The form minimizing |a_k xi^k + ... + a_0| over height <= H under the mode
// constraint, certified minimal by exhaustion.
LinearForm find_small_form(const RealSpec& spec, int k, const Int& H, WMode mode,
                           const ScanOptions& opts = {});

struct LiftWitness {
    bool found = false;
    std::vector<Int> v;  // v_0..v_n, v_0 >= 1
    Interval target;     // T = |a_k|^((n-k)/k) rho^(1/k)
    std::vector<Interval> displacement;  // |v_0 xi^j - v_j|, j = 1..n
    std::vector<Int> residuals;          // a_0 v_i + ... + a_k v_{i+k}, all exactly 0
    Rat v0_bound;                        // k H^(n/k) rho^(1/k - 1), upper enclosure
    bool v0_ok = false;
    std::vector<Rat> tail_ratio;  // |v_0 xi^(i+k) - v_{i+k}| / T for i = 1..n-k
    Int searched_to;              // last v_0 tried when not found
    uint64_t visited = 0;
};

// Materializes the integer vector whose existence the convex-body argument
// guarantees: j <= k displacements below the target, exact recurrence
// relations against the form's coefficients, and the derived v_0 and tail
// bounds reported with their measured constants.
LiftWitness minkowski_lift(const LinearForm& form, const RealSpec& spec, int n,
                           uint64_t budget = 100000000ULL, const ScanOptions& opts = {});

struct GoingUpWitness {
    bool found = false;
    std::vector<Int> a;  // a_0..a_k with a_0 q = a_1 p_1 + ... + a_k p_k
    int h = 0;           // index attaining rho among the record's components
    Rat pointwise_exponent;  // exponent surrogate e with rho = q^-e
    Interval form_value;     // |-a_0 + a_1 xi + ... + a_k xi^k|
    Rat form_bound;          // rho^(1 + (k-1)/(k e)), upper enclosure
    Rat coeff_bound;         // rho^(-1/(k e)), upper enclosure (j != h)
    Rat ah_bound;            // q rho^((k-1)/(k e)) + k rho^(-1/(k e))
    ApproxVector new_record;  // dimension k+1 at denominator |a_k| q
    Interval lifted_dist;     // |q' xi^(k+1) - nearest|
    Rat eps_measured;         // log_q(lifted_dist) - (1/k - e)
    Rat new_exponent;         // pointwise exponent of the new record
    Int searched_to;
    uint64_t visited = 0;
};

// One going-up step: from a dimension-k best record, produce the dual form
// and the dimension-(k+1) record with denominator a_k q.
GoingUpWitness going_up_witness(const RealSpec& spec, int k, const ApproxVector& record,
                                uint64_t budget = 100000000ULL, const ScanOptions& opts = {});

struct EstimateSet {
    std::map<int, Rat> lambda;     // ordinary estimates by dimension
    std::map<int, bool> lambda_infinite;
    std::map<int, Rat> uniform_lambda;
    std::map<int, Rat> w_all, w_lead, w_cst;
};

struct InequalityRow {
    std::string name;
    Rat lhs, rhs;
    Rat margin;  // lhs - rhs for >=-type rows, rhs - lhs for <=-type rows
    bool pass = false;
};

struct InequalityReport {
    std::vector<InequalityRow> rows;
    std::vector<std::string> skipped;
    bool all_pass = true;
};

// Checks every transference inequality whose inputs are present, each with
// the supplied tolerance on the margin.
InequalityReport inequality_audit(const EstimateSet& est, const Rat& tol);

}  // namespace transfer
}  // namespace dal
