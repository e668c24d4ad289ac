#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dal/approx.hpp"

namespace dal {
namespace veronese {

// Whether a tuple (q, p_1..p_n) is of the form t*(b^n, a b^{n-1}, ..., a^n),
// i.e. the rational point (p_1/q, ..., p_n/q) lies on x -> (x, ..., x^n).
struct Classification {
    bool on_curve = false;
    Int a, b;                   // reduced ratio a/b with b > 0, gcd(a, b) = 1
    bool divisibility = false;  // b^n | q (b^{d_l} | q in the general case)
    int fail_j = 0;             // first failing index when off the curve
    Int fail_delta;             // the nonvanishing determinant there
    std::string diagnostic;
    std::optional<Interval> distance;  // |xi - a/b| when a spec is supplied
};

Classification classify(const ApproxVector& v, const RealSpec* spec = nullptr);

// Monomial-curve generalization (x^{d_1}, ..., x^{d_l}) with d_1 = 1 and the
// hypothesis lambda > d_{j+1} - d_j for every gap; rejects otherwise.
Classification classify_general(const Int& q, const std::vector<Int>& p,
                                const std::vector<int>& degrees, const Rat& lambda,
                                const RealSpec* spec = nullptr);

struct CollapseMember {
    ApproxVector vec;
    Classification cls;
    bool divisibility_ok = false;
    bool displacement_ok = false;  // |xi - a/b| < C q^(-1-lambda), certified
};

struct CollapseReport {
    bool inconclusive = false;  // empty enumeration
    bool degenerate = false;    // exact rho = 0 hit propagated from the scan
    Int q0;                     // threshold: beyond it every member is on-curve
    bool q0_user_supplied = false;
    std::vector<CollapseMember> members;
    size_t on_curve_past_q0 = 0;
    std::vector<Int> counterexamples;  // off-curve member q >= q0
    bool pass = true;
};

// Enumerates good approximations at level (lambda, C) and audits the
// collapse onto the Veronese curve past a measured (or supplied) threshold.
CollapseReport collapse_audit(const RealSpec& spec, int n, const Rat& lambda, const Rat& C,
                              const Int& qmax, std::optional<Int> q0_override = {},
                              const ScanOptions& opts = {});

struct UniformReport {
    Rat uniform_estimate;  // liminf-mode estimate for dimension n
    Rat lambda1_estimate;  // limsup estimate for dimension 1
    bool lambda1_infinite = false;
    Rat bound;      // max(1/n, 1/lambda1)
    Rat tolerance;  // 0.2 scaled by log(1e6)/log(qmax)
    bool pass = false;
    bool insufficient = false;
};

// Checks the uniform-exponent bound lambda-hat_n <= max(1/n, 1/lambda_1)
// on measured estimates.
UniformReport uniform_bound_audit(const RealSpec& spec, int n, const Int& qmax,
                                  std::optional<Rat> tolerance = {}, const ScanOptions& opts = {});

struct DivisibilityStep {
    int j = 0;
    Int det;        // |q^j x_j - p^j x|
    Int threshold;  // q^(j-1)
    bool forced = false;   // det below threshold, so it vanishes
    bool divides = false;  // q^j | x after this step
};

struct DivisibilityTrace {
    Int q, p;  // the dimension-1 approximation pair, ||q xi|| = |q xi - p|
    bool coprime = false;
    Int X;  // floor(q^v')
    Int x;  // best candidate below X
    std::vector<Int> xs;
    Rat premise_bound;          // X^(-1/v') (upper enclosure)
    Rat candidate_quality;      // max_j |x xi^j - x_j| (upper enclosure)
    bool premise_holds = false;
    std::vector<DivisibilityStep> steps;
    bool contradiction = false;  // chain forced q^n | x with 1 <= x < q^n
    std::string note;
};

// Concrete walk through the determinant/divisibility argument behind the
// uniform-exponent bound, for one (q, v') at desk scale.
DivisibilityTrace divisibility_trace(const RealSpec& spec, int n, const Int& q, const Rat& v_prime,
                                     const ScanOptions& opts = {});

// Exact consequence of a vanishing centered 3x3 Hankel minor:
// Delta_{k-1} Delta_{k+1} = Delta_k^2 (checked wherever the minor vanishes).
bool dodgson_chain_holds(const std::vector<Int>& tuple);

}  // namespace veronese
}  // namespace dal
