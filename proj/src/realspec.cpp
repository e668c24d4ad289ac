#include "dal/realspec.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace dal {

namespace {

std::string lower_nospace(const std::string& in) {
    std::string s;
    s.reserve(in.size());
    for (char c : in) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return s;
}

std::map<std::string, std::string> parse_kv(const std::string& body, const std::string& ctx) {
    std::map<std::string, std::string> kv;
    size_t pos = 0;
    while (pos < body.size()) {
        size_t comma = body.find(',', pos);
        std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        size_t eq = item.find('=');
        if (eq == std::string::npos) throw SpecError("expected key=value in " + ctx);
        kv[item.substr(0, eq)] = item.substr(eq + 1);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return kv;
}

// Divisors of |n| up to `limit`, for rational-root candidate generation.
std::vector<Int> small_divisors(const Int& n, unsigned long limit) {
    std::vector<Int> out;
    Int a = abs(n);
    if (a == 0) return out;
    for (unsigned long d = 1; d <= limit; ++d) {
        if (mpz_divisible_ui_p(a.get_mpz_t(), d)) out.emplace_back(d);
        if (Int(d) * d > a) break;
    }
    return out;
}

Rat cf_value(const std::vector<Int>& terms) {
    // p/q of the finite continued fraction [a0; a1, ..., am].
    Int p0(0), q0(1);
    Int p1(terms.empty() ? Int(0) : terms[0]), q1(1);
    for (size_t i = 1; i < terms.size(); ++i) {
        Int p2 = terms[i] * p1 + p0;
        Int q2 = terms[i] * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    return make_rat(p1, q1);
}

}  // namespace

bool RealSpec::has_algebraic_form() const {
    switch (kind) {
        case SpecKind::Rational:
        case SpecKind::Sqrt:
        case SpecKind::Cbrt:
        case SpecKind::Golden:
        case SpecKind::Algebraic:
            return true;
        default:
            return false;
    }
}

std::string RealSpec::str() const {
    switch (kind) {
        case SpecKind::Rational:
            return "rational:" + rat_to_string(rational);
        case SpecKind::Sqrt:
            return "sqrt:" + std::to_string(radicand);
        case SpecKind::Cbrt:
            return "cbrt:" + std::to_string(radicand);
        case SpecKind::Golden:
            return "golden";
        case SpecKind::Algebraic:
            return "algebraic:poly=" + poly_format(poly) + ",lo=" + rat_to_string(iso_lo) +
                   ",hi=" + rat_to_string(iso_hi);
        case SpecKind::Liouville:
            return "liouville:w=" + rat_to_string(liou_w) + ",base=" + std::to_string(liou_base);
        case SpecKind::CfLiteral: {
            std::string s = "cf:";
            for (size_t i = 0; i < cf_terms.size(); ++i) {
                if (i) s += ",";
                s += cf_terms[i].get_str();
            }
            if (cf_repeat_last) s += ",...";
            return s;
        }
        case SpecKind::CfPow:
            return "cfpow:w=" + rat_to_string(cfpow_w);
        case SpecKind::CfRand:
            return "cfrand:seed=" + std::to_string(seed) + ",bound=" + std::to_string(quotient_bound);
    }
    throw SpecError("unreachable spec kind");
}

RealSpec RealSpec::parse(const std::string& text) {
    std::string s = lower_nospace(text);
    RealSpec spec;
    auto colon = s.find(':');
    std::string head = colon == std::string::npos ? s : s.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : s.substr(colon + 1);

    if (head == "golden") {
        spec.kind = SpecKind::Golden;
        return spec;
    }
    if (head == "rational") {
        spec.kind = SpecKind::Rational;
        spec.rational = rat_from_string(body);
        return spec;
    }
    if (head == "sqrt" || head == "cbrt") {
        Int k;
        if (k.set_str(body, 10) != 0 || sgn(k) < 0) throw SpecError("bad radicand: " + text);
        unsigned long e = head == "sqrt" ? 2 : 3;
        Int r = iroot_floor(k, e);
        Int re;
        mpz_pow_ui(re.get_mpz_t(), r.get_mpz_t(), e);
        if (re == k) {  // perfect power folds to its rational value
            spec.kind = SpecKind::Rational;
            spec.rational = Rat(r);
            return spec;
        }
        spec.kind = head == "sqrt" ? SpecKind::Sqrt : SpecKind::Cbrt;
        if (!k.fits_ulong_p()) throw SpecError("radicand too large: " + text);
        spec.radicand = k.get_ui();
        return spec;
    }
    if (head == "algebraic") {
        auto kv = parse_kv(body, text);
        if (!kv.count("poly") || !kv.count("lo") || !kv.count("hi"))
            throw SpecError("algebraic spec needs poly, lo, hi: " + text);
        spec.kind = SpecKind::Algebraic;
        spec.poly = poly_parse(kv["poly"]);
        spec.iso_lo = rat_from_string(kv["lo"]);
        spec.iso_hi = rat_from_string(kv["hi"]);
        if (poly_degree(spec.poly) < 1) throw SpecError("polynomial must be nonconstant: " + text);
        if (!(spec.iso_lo < spec.iso_hi)) throw SpecError("need lo < hi: " + text);
        if (sgn(poly_eval(spec.poly, spec.iso_lo)) == 0 || sgn(poly_eval(spec.poly, spec.iso_hi)) == 0)
            throw SpecError("isolating interval endpoints must not be roots: " + text);
        if (sgn(poly_eval(spec.poly, spec.iso_lo)) == sgn(poly_eval(spec.poly, spec.iso_hi)))
            throw SpecError("no sign change over the isolating interval: " + text);
        if (sturm_count(spec.poly, spec.iso_lo, spec.iso_hi) != 1)
            throw SpecError("interval does not isolate exactly one root: " + text);
        return spec;
    }
    if (head == "liouville") {
        auto kv = parse_kv(body, text);
        if (!kv.count("w")) throw SpecError("liouville spec needs w: " + text);
        spec.kind = SpecKind::Liouville;
        spec.liou_w = rat_from_string(kv["w"]);
        spec.liou_base = kv.count("base") ? std::stoul(kv["base"]) : 2;
        if (!(spec.liou_w > 1)) throw SpecError("liouville needs w > 1: " + text);
        if (spec.liou_base < 2) throw SpecError("liouville needs base >= 2: " + text);
        return spec;
    }
    if (head == "cf") {
        spec.kind = SpecKind::CfLiteral;
        size_t pos = 0;
        while (pos <= body.size()) {
            size_t comma = body.find(',', pos);
            std::string tok =
                body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (tok == "...") {
                if (comma != std::string::npos) throw SpecError("'...' must be last: " + text);
                spec.cf_repeat_last = true;
                break;
            }
            Int a;
            if (tok.empty() || a.set_str(tok, 10) != 0) throw SpecError("bad cf term: " + text);
            spec.cf_terms.push_back(a);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (spec.cf_terms.empty()) throw SpecError("cf spec needs at least one term: " + text);
        for (size_t i = 1; i < spec.cf_terms.size(); ++i)
            if (spec.cf_terms[i] < 1) throw SpecError("cf partial quotients must be >= 1: " + text);
        if (spec.cf_repeat_last && (spec.cf_terms.back() < 1 || spec.cf_terms.size() < 2))
            throw SpecError("repeated tail needs a positive final quotient: " + text);
        return spec;
    }
    if (head == "cfpow") {
        auto kv = parse_kv(body, text);
        if (!kv.count("w")) throw SpecError("cfpow spec needs w: " + text);
        spec.kind = SpecKind::CfPow;
        spec.cfpow_w = rat_from_string(kv["w"]);
        if (!(spec.cfpow_w > 1)) throw SpecError("cfpow needs w > 1: " + text);
        return spec;
    }
    if (head == "cfrand") {
        auto kv = parse_kv(body, text);
        if (!kv.count("seed")) throw SpecError("cfrand spec needs seed: " + text);
        spec.kind = SpecKind::CfRand;
        spec.seed = std::stoull(kv["seed"]);
        spec.quotient_bound = kv.count("bound") ? std::stoul(kv["bound"]) : 10;
        if (spec.quotient_bound < 1) throw SpecError("cfrand needs bound >= 1: " + text);
        return spec;
    }
    throw SpecError("unknown real spec: " + text);
}

std::optional<Rat> RealSpec::exact_rational() const {
    switch (kind) {
        case SpecKind::Rational:
            return rational;
        case SpecKind::CfLiteral:
            if (!cf_repeat_last) return cf_value(cf_terms);
            return std::nullopt;
        case SpecKind::Algebraic: {
            // Desk-scale rational root detection via candidate divisors.
            const Int& lead = poly.back();
            const Int& cst = poly.front();
            if (cst == 0) {
                if (iso_lo < 0 && 0 < iso_hi && sgn(poly_eval(poly, Rat(0))) == 0) return Rat(0);
            }
            for (const Int& b : small_divisors(lead, 1000)) {
                for (const Int& a : small_divisors(cst, 1000)) {
                    for (int sign = 1; sign >= -1; sign -= 2) {
                        Rat cand(sign > 0 ? a : Int(-a), b);
                        cand.canonicalize();
                        if (iso_lo < cand && cand < iso_hi && sgn(poly_eval(poly, cand)) == 0)
                            return cand;
                    }
                }
            }
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

namespace {

// Streams partial quotients for the cf-family kinds.
struct QuotientStream {
    const RealSpec& spec;
    size_t idx = 0;
    uint64_t rng_state;
    // convergent denominators (q_{k-1}, q_k) after emitting a_k; the seeds
    // are the standard q_{-2} = 1, q_{-1} = 0
    Int qk1{1}, qk{0};

    explicit QuotientStream(const RealSpec& s) : spec(s), rng_state(s.seed) {}

    // Returns the next partial quotient, or nullopt when a finite literal
    // expansion is exhausted.
    std::optional<Int> next() {
        switch (spec.kind) {
            case SpecKind::CfLiteral: {
                if (idx < spec.cf_terms.size()) return advance(spec.cf_terms[idx]);
                if (spec.cf_repeat_last) return advance(spec.cf_terms.back());
                return std::nullopt;
            }
            case SpecKind::CfPow: {
                if (idx == 0) return advance(Int(1));
                Int a = ceil_rat_pow(Rat(qk), spec.cfpow_w - 1);
                if (a < 1) a = 1;
                return advance(a);
            }
            case SpecKind::CfRand: {
                if (idx == 0) return advance(Int(1));
                uint64_t v = splitmix64(rng_state);
                return advance(Int(1 + static_cast<unsigned long>(v % spec.quotient_bound)));
            }
            default:
                throw SpecError("not a cf-family spec");
        }
    }

  private:
    Int advance(const Int& a) {
        Int q2 = a * qk + qk1;
        qk1 = qk;
        qk = q2;
        ++idx;
        return a;
    }
};

Interval eval_cf(const RealSpec& spec, long bits) {
    if (auto r = spec.exact_rational()) return Interval::point(*r);
    QuotientStream qs(spec);
    Int p0(0), q0(1), p1(1), q1(0);  // seeds: p_k = a_k p_{k-1} + p_{k-2}; first step lands a0/1
    bool have_two = false;
    Rat prev, cur;
    Rat target(Int(1), Int(1) << bits);
    for (size_t iter = 0; iter < 1000000; ++iter) {
        auto a = qs.next();
        if (!a) throw SpecError("finite continued fraction reached eval; rational path expected");
        Int p2 = *a * p1 + p0;
        Int q2 = *a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (q0 > 0) {
            prev = make_rat(p0, q0);
            cur = make_rat(p1, q1);
            have_two = true;
            // consecutive convergents bracket the value; gap is 1/(q0*q1)
            if (Rat(Int(1), q0 * q1) <= target) break;
        }
    }
    if (!have_two) throw PrecisionError("cf eval failed to bracket");
    return prev < cur ? Interval(prev, cur) : Interval(cur, prev);
}

Interval eval_liouville(const RealSpec& spec, long bits) {
    const Rat& w = spec.liou_w;
    const unsigned long b = spec.liou_base;
    Rat sum(0);
    Rat wk = w;  // w^k
    for (int k = 1;; ++k) {
        Int ek;
        mpz_cdiv_q(ek.get_mpz_t(), wk.get_num().get_mpz_t(), wk.get_den().get_mpz_t());
        if (!ek.fits_ulong_p()) throw BudgetError("liouville exponent too large");
        Int den;
        mpz_ui_pow_ui(den.get_mpz_t(), b, ek.get_ui());
        sum += make_rat(Int(1), den);
        Rat wk_next = wk * w;
        Int ek_next;
        mpz_cdiv_q(ek_next.get_mpz_t(), wk_next.get_num().get_mpz_t(), wk_next.get_den().get_mpz_t());
        // Past this point exponents rise by at least one per term, so the
        // tail is dominated by a geometric series: tail <= 2 * b^-e_{k+1}.
        bool strict = wk_next * (w - 1) >= 2;
        if (strict && ek_next >= bits + 2) {
            if (!ek_next.fits_ulong_p()) throw BudgetError("liouville exponent too large");
            Int dent;
            mpz_ui_pow_ui(dent.get_mpz_t(), b, ek_next.get_ui());
            Rat tail = make_rat(Int(2), dent);
            return Interval(sum, sum + tail);
        }
        wk = wk_next;
        if (k > 100000) throw BudgetError("liouville eval did not converge");
    }
}

}  // namespace

Interval eval_real(const RealSpec& spec, long bits) {
    if (bits < 1) throw SpecError("eval_real needs bits >= 1");
    switch (spec.kind) {
        case SpecKind::Rational:
            return Interval::point(spec.rational);
        case SpecKind::Sqrt: {
            Int scaled = Int(spec.radicand) << (2 * bits);
            Int s = iroot_floor(scaled, 2);
            Int den = Int(1) << bits;
            return Interval(make_rat(s, den), make_rat(s + 1, den));
        }
        case SpecKind::Cbrt: {
            Int scaled = Int(spec.radicand) << (3 * bits);
            Int s = iroot_floor(scaled, 3);
            Int den = Int(1) << bits;
            return Interval(make_rat(s, den), make_rat(s + 1, den));
        }
        case SpecKind::Golden: {
            Int scaled = Int(5) << (2 * bits);
            Int s = iroot_floor(scaled, 2);
            Int den = Int(1) << (bits + 1);
            Int one = Int(1) << bits;
            return Interval(make_rat(one + s, den), make_rat(one + s + 1, den));
        }
        case SpecKind::Algebraic: {
            if (auto r = spec.exact_rational()) return Interval::point(*r);
            return bisect_root(spec.poly, spec.iso_lo, spec.iso_hi, bits);
        }
        case SpecKind::Liouville:
            return eval_liouville(spec, bits);
        case SpecKind::CfLiteral:
        case SpecKind::CfPow:
        case SpecKind::CfRand:
            return eval_cf(spec, bits);
    }
    throw SpecError("unreachable spec kind");
}

bool exact_zero_test(const RealSpec& spec, const IntPoly& cand) {
    if (poly_is_zero(cand)) return true;
    switch (spec.kind) {
        case SpecKind::Rational:
            return sgn(poly_eval(cand, spec.rational)) == 0;
        case SpecKind::Sqrt: {
            // Reduce modulo x^2 - k: value is A + B*sqrt(k) with integer A, B.
            Int A(0), B(0), kp(1);
            for (size_t i = 0; i < cand.size(); ++i) {
                if (i >= 2 && i % 2 == 0) kp *= spec.radicand;
                if (i % 2 == 0) A += cand[i] * kp;
                else B += cand[i] * kp;
            }
            return A == 0 && B == 0;
        }
        case SpecKind::Cbrt: {
            Int A(0), B(0), C(0), kp(1);
            for (size_t i = 0; i < cand.size(); ++i) {
                if (i >= 3 && i % 3 == 0) kp *= spec.radicand;
                if (i % 3 == 0) A += cand[i] * kp;
                else if (i % 3 == 1) B += cand[i] * kp;
                else C += cand[i] * kp;
            }
            return A == 0 && B == 0 && C == 0;
        }
        case SpecKind::Golden: {
            // x^i = u_i + v_i * phi with x^2 = x + 1.
            Int A(0), B(0), u(1), v(0);
            for (size_t i = 0; i < cand.size(); ++i) {
                A += cand[i] * u;
                B += cand[i] * v;
                Int u2 = v, v2 = u + v;
                u = u2;
                v = v2;
            }
            return A == 0 && B == 0;
        }
        case SpecKind::Algebraic: {
            if (auto r = spec.exact_rational()) return sgn(poly_eval(cand, *r)) == 0;
            IntPoly g = poly_gcd(cand, spec.poly);
            if (poly_degree(g) < 1) return false;
            if (sgn(poly_eval(g, spec.iso_lo)) == 0 || sgn(poly_eval(g, spec.iso_hi)) == 0) return true;
            return sturm_count(g, spec.iso_lo, spec.iso_hi) >= 1;
        }
        default: {
            if (auto r = spec.exact_rational()) return sgn(poly_eval(cand, *r)) == 0;
            for (long bits = 256; bits <= (1L << 20); bits *= 2) {
                Interval v = poly_eval_iv(cand, eval_real(spec, bits));
                if (!v.contains_zero()) return false;
            }
            throw PrecisionError("zero test undecided at precision cap for " + spec.str());
        }
    }
}

std::pair<std::vector<Int>, bool> cf_quotients(const RealSpec& spec, int count) {
    if (count < 1) throw SpecError("cf_quotients needs count >= 1");
    std::vector<Int> terms;

    if (auto r = spec.exact_rational()) {
        // Exact Euclidean expansion; finite, possibly shorter than count.
        Int num = r->get_num(), den = r->get_den();
        while (static_cast<int>(terms.size()) < count) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            terms.push_back(q);
            Int rem = num - q * den;
            if (rem == 0) return {terms, true};
            num = den;
            den = rem;
        }
        return {terms, false};
    }

    switch (spec.kind) {
        case SpecKind::CfLiteral:
        case SpecKind::CfPow:
        case SpecKind::CfRand: {
            QuotientStream qs(spec);
            for (int i = 0; i < count; ++i) {
                auto a = qs.next();
                if (!a) return {terms, true};
                terms.push_back(*a);
            }
            return {terms, false};
        }
        default: {
            // Interval Euclid with restarts at doubled precision.
            for (long bits = std::max(128L, 16L * count + 64); bits <= (1L << 22); bits *= 2) {
                terms.clear();
                Interval x = eval_real(spec, bits);
                bool ok = true;
                for (int i = 0; i < count; ++i) {
                    Int flo = floor_rat(x.lo), fhi = floor_rat(x.hi);
                    if (flo != fhi) {
                        ok = false;
                        break;
                    }
                    terms.push_back(flo);
                    Interval frac(x.lo - Rat(flo), x.hi - Rat(flo));
                    if (!(sgn(frac.lo) > 0)) {
                        ok = false;  // cannot certify the reciprocal yet
                        break;
                    }
                    x = Interval(Rat(1) / frac.hi, Rat(1) / frac.lo);
                }
                if (ok) return {terms, false};
            }
            throw PrecisionError("cf expansion undecided at precision cap for " + spec.str());
        }
    }
}

CfExpansion cf_convergents(const RealSpec& spec, int count) {
    auto [terms, exhausted] = cf_quotients(spec, count);
    CfExpansion out;
    out.quotients = terms;
    out.exhausted = exhausted;
    Int p0(0), q0(1), p1(1), q1(0);
    for (const Int& a : terms) {
        Int p2 = a * p1 + p0;
        Int q2 = a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        Int g = gcd(p1, q1);
        (void)g;  // convergents from the recurrence are already in lowest terms
        out.convergents.push_back({p1, q1});
    }
    return out;
}

}  // namespace dal
