#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dal/polynomial.hpp"
#include "dal/rational.hpp"

namespace dal {

enum class SpecKind {
    Rational,
    Sqrt,       // sqrt:k, k >= 2 not a perfect square (perfect squares fold to Rational)
    Cbrt,       // cbrt:k
    Golden,     // (1+sqrt 5)/2
    Algebraic,  // integer polynomial + isolating rational interval with a sign change
    Liouville,  // sum_k base^(-ceil(w^k)), w > 1
    CfLiteral,  // explicit partial quotients; optional trailing ",..." repeats the last one
    CfPow,      // a0 = 1, a_{k+1} = ceil(q_k^(w-1)); realizes a prescribed lambda_1 = w
    CfRand,     // a0 = 1, bounded pseudo-random quotients from a fixed seed
};

// A finitely-described real number, evaluable to any requested certified
// precision. Values are immutable after parse; all operations are pure.
struct RealSpec {
    SpecKind kind = SpecKind::Rational;

    Rat rational;                    // Rational
    unsigned long radicand = 0;      // Sqrt, Cbrt
    IntPoly poly;                    // Algebraic
    Rat iso_lo, iso_hi;              // Algebraic isolating interval
    Rat liou_w;                      // Liouville
    unsigned long liou_base = 2;     // Liouville
    std::vector<Int> cf_terms;       // CfLiteral
    bool cf_repeat_last = false;     // CfLiteral
    Rat cfpow_w;                     // CfPow
    uint64_t seed = 0;               // CfRand
    unsigned long quotient_bound = 10;  // CfRand

    std::string str() const;  // canonical grammar form; parse(str()) round-trips
    static RealSpec parse(const std::string& text);

    // Exact rational value when the described number is rational.
    std::optional<Rat> exact_rational() const;

    // Minimal-polynomial style reduction is available (value algebraic with a
    // known defining polynomial): Rational, Sqrt, Cbrt, Golden, Algebraic.
    bool has_algebraic_form() const;
};

// Certified enclosure of the described real with width <= 2^-bits.
// Deterministic for fixed (spec, bits).
Interval eval_real(const RealSpec& spec, long bits);

// Decides whether the integer polynomial vanishes at the described real.
// Exact for algebraic-form specs; for series/cf specs refines an enclosure
// until zero is excluded (throws PrecisionError past the bit cap, which for a
// transcendental value can only happen on pathological inputs).
bool exact_zero_test(const RealSpec& spec, const IntPoly& poly);

// Partial quotients a_0..a_{count-1} of the continued fraction expansion.
// Second member is true when the expansion is finite (rational value) and was
// exhausted before `count` terms.
std::pair<std::vector<Int>, bool> cf_quotients(const RealSpec& spec, int count);

struct Convergent {
    Int p, q;
};

struct CfExpansion {
    std::vector<Convergent> convergents;
    std::vector<Int> quotients;
    bool exhausted = false;  // rational value, expansion ended early
};

// First `count` convergents in lowest terms.
CfExpansion cf_convergents(const RealSpec& spec, int count);

}  // namespace dal
