#pragma once

#include <vector>

#include "dal/realspec.hpp"

namespace dal {

// Integer tuple (q, p_1..p_n) approximating (q*xi, ..., q*xi^n), with the
// certified quality rho = max_j |q xi^j - p_j|.
struct ApproxVector {
    Int q;
    std::vector<Int> p;  // p[j-1] = nearest integer to q*xi^j
    int n = 0;
    Interval rho;

    std::vector<Int> full_tuple() const {  // (p_0, p_1, ..., p_n) with p_0 = q
        std::vector<Int> t;
        t.reserve(p.size() + 1);
        t.push_back(q);
        for (const auto& x : p) t.push_back(x);
        return t;
    }
};

struct ScanOptions {
    unsigned threads = 0;            // 0: hardware concurrency
    long bits_override = 0;          // 0: policy bits
    int max_refine_doublings = 8;    // context doublings before giving up
};

struct ScanResult {
    std::vector<ApproxVector> records;
    bool degenerate_hit = false;  // exact rho = 0 was reached (value or a power rational)
    Int degenerate_q;
};

// Working precision policy: enough bits that q*xi^j enclosures stay far
// narrower than any quantity compared against them, plus guard bits.
long scan_bits(int n, const Int& qmax);

// Strictly-improving records of rho(q) for q = 1..qmax.
ScanResult best_approx_scan(const RealSpec& spec, int n, const Int& qmax,
                            const ScanOptions& opts = {});

// All q <= qmax with rho(q) <= C * q^-lambda (exact comparison).
ScanResult good_approx_enum(const RealSpec& spec, int n, const Rat& lambda, const Rat& C,
                            const Int& qmax, const ScanOptions& opts = {});

// Certified tuple at a single q, with rho refined to good relative width.
ApproxVector approx_at(const RealSpec& spec, int n, const Int& q, const ScanOptions& opts = {});

// Per-power distances |q xi^j - nearest|, j = 1..n, refined like approx_at.
std::vector<Interval> component_dists(const RealSpec& spec, int n, const Int& q,
                                      const ScanOptions& opts = {});

// Read-only certified dyadic enclosures of xi^1..xi^n at scale 2^-P.
struct RealCtx {
    long P = 0;
    std::vector<Int> lo, hi;  // index j-1 holds xi^j
    Interval power(int j) const {
        Int den = Int(1) << P;
        return Interval(make_rat(lo[j - 1], den), make_rat(hi[j - 1], den));
    }
};
RealCtx build_real_ctx(const RealSpec& spec, int n, long bits);

enum class ExponentMode { LambdaN, WN, WNLead, WNCst, UniformLambdaN };

// Windowed log-ratio estimates from a best-record list. The per-record
// series are all reported so convergence can be judged:
//   pointwise  e_i = -log rho_i / log q_i
//   slope      s_i = (log rho_{i-1} - log rho_i) / (log q_i - log q_{i-1})
//   cross      u_i = -log rho_i / log q_{i+1}   (uniform-mode staircase)
// The headline estimate takes, over the tail window, max of min(e_i, s_i)
// for limsup-type modes and min of u_i for the uniform mode. min(e, s)
// guards against the two finite-scale failure modes: e overstates the
// exponent when the implied constant is small, s blows up across records
// with nearly equal q.
struct ExponentEstimate {
    ExponentMode mode = ExponentMode::LambdaN;
    std::vector<Rat> pointwise;
    std::vector<Rat> slopes;
    std::vector<Rat> cross;
    Rat estimate;
    bool infinite = false;  // an exact rho = 0 record was present
    int window = 0;
    size_t record_count = 0;
};

ExponentEstimate estimate_exponent(const std::vector<ApproxVector>& records, ExponentMode mode,
                                   int window = 0, const Int& qmax = Int(0));

enum class WMode { All, Lead, Cst };

// Minimal nonzero |a_k xi^k + ... + a_1 xi + a_0| over the coefficient box
// max|a_i| <= H, subject to the mode constraint (Lead: |a_k| is the max,
// Cst: |a_0| is the max). Certified by exhaustion. The minimizer is reported
// with its last nonzero coefficient positive (negation gives the same value).
struct BoxMin {
    std::vector<Int> coeffs;
    Interval value;
    bool exact_zero = false;
};
BoxMin box_min_form(const RealSpec& spec, int k, const Int& H, WMode mode,
                    const ScanOptions& opts = {});

struct WLadderStep {
    Int height;
    std::vector<Int> coeffs;
    Interval value;
    Rat exponent;  // -log value_hi / log H
};

struct WEstimate {
    int k = 0;
    WMode mode = WMode::All;
    std::vector<WLadderStep> ladder;
    bool algebraic_hit = false;      // exact zero found: xi algebraic of degree <= k
    std::vector<Int> zero_coeffs;
    Rat estimate;
};

// Heights on a geometric ladder 2, 4, ..., hmax; windowed estimate as above.
WEstimate estimate_w(const RealSpec& spec, int k, const Int& hmax, WMode mode,
                     const ScanOptions& opts = {});

}  // namespace dal
