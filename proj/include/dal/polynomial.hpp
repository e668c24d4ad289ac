#pragma once

#include <string>
#include <vector>

#include "dal/rational.hpp"

namespace dal {

// Integer polynomial, coefficients in ascending degree order. The zero
// polynomial is the empty vector; otherwise the leading coefficient is
// nonzero after normalize().
using IntPoly = std::vector<Int>;

void poly_normalize(IntPoly& p);
int poly_degree(const IntPoly& p);  // -1 for the zero polynomial
bool poly_is_zero(const IntPoly& p);

Rat poly_eval(const IntPoly& p, const Rat& x);
Interval poly_eval_iv(const IntPoly& p, const Interval& x);
IntPoly poly_derivative(const IntPoly& p);

// Parses e.g. "x^3-x-1", "2x^2+3", "-x+4". Integer coefficients only.
IntPoly poly_parse(const std::string& s);
std::string poly_format(const IntPoly& p);

// Number of distinct real roots in the open interval (lo, hi).
// Requires p(lo) != 0 and p(hi) != 0.
int sturm_count(const IntPoly& p, const Rat& lo, const Rat& hi);

// Primitive integer gcd of two integer polynomials (up to sign).
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

// Bisects an isolating interval with a strict sign change down to width
// <= 2^-bits. Returns a point interval when an exact rational root is hit.
Interval bisect_root(const IntPoly& p, Rat lo, Rat hi, long bits);

}  // namespace dal
