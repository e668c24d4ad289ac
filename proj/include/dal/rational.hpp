#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "dal/util.hpp"

namespace dal {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class comparisons require canonical form; every two-argument rational
// built from possibly non-coprime parts must go through here.
inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "3/2", "-7", "0.34" into an exact rational.
Rat rat_from_string(const std::string& s);

// Canonical form: "n" for integers, "p/q" otherwise. Round-trips exactly.
std::string rat_to_string(const Rat& x);

// Deterministic fixed-point decimal, truncated toward zero.
std::string dec_str(const Rat& x, int digits);

// ceil(log2(v)) for v >= 1.
long ilog2_ceil(const Int& v);

// floor(v^(1/k)) for v >= 0.
Int iroot_floor(const Int& v, unsigned long k);

// ceil(x^e) for rational x >= 1 and rational exponent e >= 0.
Int ceil_rat_pow(const Rat& x, const Rat& e);

Int floor_rat(const Rat& x);

// log2(x) for x > 0, absolute error below 2^-frac_bits (plus a few ulps of
// slack from the digit recurrence; frac_bits includes generous guard).
Rat log2_approx(const Rat& x, int frac_bits = 48);

// ln(a)/ln(b) for a > 0, b > 1, as log2(a)/log2(b).
Rat log_ratio(const Rat& a, const Rat& b);

// Closed interval with exact rational endpoints. Every real-valued quantity
// in the trusted path is carried as one of these; no floating point.
struct Interval {
    Rat lo, hi;

    Interval() : lo(0), hi(0) {}
    Interval(const Rat& v) : lo(v), hi(v) {}
    Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw SpecError("interval endpoints out of order");
    }

    static Interval point(const Rat& v) { return Interval(v); }

    Rat width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    bool strictly_positive() const { return sgn(lo) > 0; }
    bool strictly_negative() const { return sgn(hi) < 0; }
    Rat mid() const { return (lo + hi) / 2; }
};

Interval iv_add(const Interval& a, const Interval& b);
Interval iv_sub(const Interval& a, const Interval& b);
Interval iv_neg(const Interval& a);
Interval iv_mul(const Interval& a, const Interval& b);
Interval iv_mul_int(const Interval& a, const Int& k);
Interval iv_abs(const Interval& a);
Interval iv_pow_ui(const Interval& a, unsigned long e);
Interval iv_add_rat(const Interval& a, const Rat& r);

// Certified three-way comparison of possibly-overlapping intervals.
// Returns -1 if a < b surely, +1 if a > b surely, 0 if undecided.
int iv_compare(const Interval& a, const Interval& b);

// log2(x) as an interval, inflated by the digit-recurrence error bound.
Interval log2_interval(const Rat& x, int frac_bits = 48);

// 2^t enclosure via the square-root digit chain.
Interval exp2_interval(const Rat& t, long frac_bits = 96);

struct NearestInt {
    Int m;          // nearest integer (ties round half up; exact only for point inputs)
    Interval dist;  // encloses |x - m|, i.e. the distance to the nearest integer
};

// Decides the nearest integer of the real enclosed by iv. Returns nullopt
// (a refine request) when the enclosure straddles a half-integer, except for
// point intervals which are decided exactly.
std::optional<NearestInt> nearest_int_certified(const Interval& iv);

// x^e <= y^f decided exactly for x, y >= 0 rationals and integer e, f >= 0.
bool pow_le(const Rat& x, unsigned long e, const Rat& y, unsigned long f);

// Certified enclosure of q^e for integer q >= 1 and rational e (any sign),
// via integer root extraction at 2^-bits resolution.
Interval pow_interval(const Int& q, const Rat& e, long bits = 32);

// Certified enclosure of x^e for rational x > 0 and rational e (any sign).
Interval rat_pow_q(const Rat& x, const Rat& e, long bits = 48);

Rat rat_pow_int(const Rat& x, long e);  // exact x^e for integer e (x != 0 when e < 0)

}  // namespace dal
