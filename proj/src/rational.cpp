#include "dal/rational.hpp"

#include <algorithm>
#include <cctype>

namespace dal {

Rat rat_from_string(const std::string& raw) {
    std::string s = raw;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw SpecError("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw SpecError("bad rational literal: " + raw);
        Int n, d;
        if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0)
            throw SpecError("bad rational literal: " + raw);
        if (sgn(d) <= 0) throw SpecError("denominator must be positive: " + raw);
        Rat r(n, d);
        r.canonicalize();
        return r;
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = false;
        if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) {
            neg = ip[0] == '-';
            ip = ip.substr(1);
        }
        if (ip.empty()) ip = "0";
        if (fp.empty()) fp = "0";
        Int n;
        if (n.set_str(ip + fp, 10) != 0) throw SpecError("bad decimal literal: " + raw);
        Int d = 1;
        for (size_t i = 0; i < fp.size(); ++i) d *= 10;
        Rat r(n, d);
        r.canonicalize();
        return neg ? Rat(-r) : r;
    }
    Int n;
    if (n.set_str(s, 10) != 0) throw SpecError("bad integer literal: " + raw);
    return Rat(n);
}

std::string rat_to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string dec_str(const Rat& x, int digits) {
    Rat ax = abs(x);
    Int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Int total = Int(ax.get_num() * scale / ax.get_den());
    Int ip = total / scale, fp = total % scale;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), static_cast<size_t>(digits) - frac.size(), '0');
    std::string out = ip.get_str();
    if (digits > 0) out += "." + frac;
    if (sgn(x) < 0 && (ip != 0 || fp != 0)) out = "-" + out;
    return out;
}

long ilog2_ceil(const Int& v) {
    if (sgn(v) <= 0) throw SpecError("ilog2_ceil needs v >= 1");
    size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);  // floor(log2 v) + 1
    Int pow2 = Int(1) << (bits - 1);
    return pow2 == v ? static_cast<long>(bits - 1) : static_cast<long>(bits);
}

Int iroot_floor(const Int& v, unsigned long k) {
    if (sgn(v) < 0) throw SpecError("iroot_floor needs v >= 0");
    Int r;
    mpz_root(r.get_mpz_t(), v.get_mpz_t(), k);
    return r;
}

Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

Int ceil_rat_pow(const Rat& x, const Rat& e) {
    if (x < 1 || sgn(e) < 0) throw SpecError("ceil_rat_pow needs x >= 1, e >= 0");
    // x^(a/b): integer-root bracket on x_num^a / x_den^a.
    unsigned long a = e.get_num().get_ui();
    unsigned long b = e.get_den().get_ui();
    if (e.get_num().fits_ulong_p() == 0 || e.get_den().fits_ulong_p() == 0)
        throw SpecError("exponent too large");
    Int pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), x.get_num().get_mpz_t(), a);
    mpz_pow_ui(pd.get_mpz_t(), x.get_den().get_mpz_t(), a);
    if (b == 1) {
        Int q;
        mpz_cdiv_q(q.get_mpz_t(), pn.get_mpz_t(), pd.get_mpz_t());
        return q;
    }
    // ceil of the b-th root of pn/pd: binary search above the floor root.
    Int lo = iroot_floor(pn / pd, b);
    // lo^b <= pn/pd < (lo+2)^b; test lo then lo+1.
    for (Int c = lo;; ++c) {
        Int cb;
        mpz_pow_ui(cb.get_mpz_t(), c.get_mpz_t(), b);
        if (cb * pd >= pn) return c;
    }
}

Rat log2_approx(const Rat& x, int frac_bits) {
    if (sgn(x) <= 0) throw SpecError("log2_approx needs x > 0");
    // Normalize x = m * 2^e with m in [1, 2), then extract fractional bits by
    // the squaring recurrence on a fixed-point mantissa with guard bits.
    long e = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
    Rat m = e >= 0 ? Rat(x / make_rat(Int(1) << e, Int(1)))
                   : Rat(x * make_rat(Int(1) << (-e), Int(1)));
    while (m >= 2) {
        m /= 2;
        ++e;
    }
    while (m < 1) {
        m *= 2;
        --e;
    }
    const int F = frac_bits + 64;
    Int Y = Int((m.get_num() << F) / m.get_den());
    Rat frac(0);
    Rat bit(1, 2);
    const Int two = Int(1) << (F + 1);
    for (int i = 0; i < frac_bits; ++i) {
        Y = (Y * Y) >> F;
        if (Y >= two) {
            Y >>= 1;
            frac += bit;
        }
        bit /= 2;
    }
    return Rat(e) + frac;
}

Rat log_ratio(const Rat& a, const Rat& b) {
    Rat lb = log2_approx(b);
    if (sgn(lb) == 0) throw SpecError("log_ratio with log(b) = 0");
    return log2_approx(a) / lb;
}

Interval log2_interval(const Rat& x, int frac_bits) {
    Rat l = log2_approx(x, frac_bits);
    Rat err = make_rat(Int(1), Int(1) << (frac_bits - 2));
    return Interval(l - err, l + err);
}

Interval exp2_interval(const Rat& t, long F) {
    Int ip = floor_rat(t);
    Rat f = t - Rat(ip);  // in [0, 1)
    const int D = 48;
    Int digits = floor_rat(f * Rat(Int(1) << D));
    // chains for c_j = 2^(2^-j) at fixed point 2^-F, rounded outward
    Int clo = Int(1) << (F + 1), chi = Int(1) << (F + 1);
    Int plo = Int(1) << F, phi = Int(1) << F;
    for (int j = 1; j <= D; ++j) {
        clo = iroot_floor(clo << F, 2);
        chi = iroot_floor(chi << F, 2) + 1;
        if (mpz_tstbit(digits.get_mpz_t(), static_cast<mp_bitcnt_t>(D - j))) {
            plo = (plo * clo) >> F;
            phi = ((phi * chi) >> F) + 1;
        }
    }
    // digits beyond D contribute a factor below 2^(2^-D) <= c_D
    phi = ((phi * chi) >> F) + 1;
    Rat lo = make_rat(plo, Int(1) << F);
    Rat hi = make_rat(phi, Int(1) << F);
    if (sgn(ip) >= 0) {
        if (!ip.fits_ulong_p()) throw SpecError("exp2_interval exponent too large");
        Rat scale(Int(1) << ip.get_ui());
        return Interval(lo * scale, hi * scale);
    }
    Int down = -ip;
    if (!down.fits_ulong_p()) throw SpecError("exp2_interval exponent too small");
    Rat scale = make_rat(Int(1), Int(1) << down.get_ui());
    return Interval(lo * scale, hi * scale);
}

Interval iv_add(const Interval& a, const Interval& b) { return Interval(a.lo + b.lo, a.hi + b.hi); }
Interval iv_sub(const Interval& a, const Interval& b) { return Interval(a.lo - b.hi, a.hi - b.lo); }
Interval iv_neg(const Interval& a) { return Interval(-a.hi, -a.lo); }

Interval iv_mul(const Interval& a, const Interval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    Rat lo = std::min(std::min(p1, p2), std::min(p3, p4));
    Rat hi = std::max(std::max(p1, p2), std::max(p3, p4));
    return Interval(lo, hi);
}

Interval iv_mul_int(const Interval& a, const Int& k) {
    if (sgn(k) >= 0) return Interval(a.lo * k, a.hi * k);
    return Interval(a.hi * k, a.lo * k);
}

Interval iv_abs(const Interval& a) {
    if (sgn(a.lo) >= 0) return a;
    if (sgn(a.hi) <= 0) return iv_neg(a);
    return Interval(Rat(0), std::max(Rat(-a.lo), a.hi));
}

Interval iv_pow_ui(const Interval& a, unsigned long e) {
    Interval acc(Rat(1));
    Interval base = a;
    while (e > 0) {
        if (e & 1) acc = iv_mul(acc, base);
        e >>= 1;
        if (e) base = iv_mul(base, base);
    }
    return acc;
}

Interval iv_add_rat(const Interval& a, const Rat& r) { return Interval(a.lo + r, a.hi + r); }

int iv_compare(const Interval& a, const Interval& b) {
    if (a.hi < b.lo) return -1;
    if (a.lo > b.hi) return 1;
    if (a.is_point() && b.is_point()) return 0;  // exact equality
    return 0;
}

std::optional<NearestInt> nearest_int_certified(const Interval& iv) {
    Rat half(1, 2);
    Int mlo = floor_rat(iv.lo + half);
    Int mhi = floor_rat(iv.hi + half);
    if (mlo != mhi) return std::nullopt;
    NearestInt out;
    out.m = mlo;
    Rat m(mlo);
    if (iv.lo >= m) {
        out.dist = Interval(iv.lo - m, iv.hi - m);
    } else if (iv.hi <= m) {
        out.dist = Interval(m - iv.hi, m - iv.lo);
    } else {
        out.dist = Interval(Rat(0), std::max(Rat(m - iv.lo), Rat(iv.hi - m)));
    }
    return out;
}

Rat rat_pow_int(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    bool inv = e < 0;
    unsigned long ee = static_cast<unsigned long>(inv ? -e : e);
    Rat acc(1), base = x;
    while (ee) {
        if (ee & 1) acc *= base;
        ee >>= 1;
        if (ee) base *= base;
    }
    if (inv) {
        if (sgn(acc) == 0) throw SpecError("zero base with negative exponent");
        return Rat(1) / acc;
    }
    return acc;
}

Interval pow_interval(const Int& q, const Rat& e, long bits) {
    if (q < 1) throw SpecError("pow_interval needs q >= 1");
    if (sgn(e) == 0 || q == 1) return Interval(Rat(1));
    Int a = abs(e.get_num());
    // exact/root path for small exponents, log-exp enclosure otherwise
    if (a <= 512 && e.get_den() <= 64) {
        unsigned long b = e.get_den().get_ui();
        Int num;
        mpz_pow_ui(num.get_mpz_t(), q.get_mpz_t(), a.get_ui());
        Interval root;
        if (b == 1) {
            root = Interval::point(Rat(num));
        } else {
            Int s = iroot_floor(num << static_cast<unsigned long>(bits) * b, b);
            Int den = Int(1) << bits;
            root = Interval(make_rat(s, den), make_rat(s + 1, den));
        }
        if (sgn(e) < 0) return Interval(Rat(1) / root.hi, Rat(1) / root.lo);
        return root;
    }
    Interval lg = log2_interval(Rat(q));
    Interval t = sgn(e) > 0 ? Interval(e * lg.lo, e * lg.hi) : Interval(e * lg.hi, e * lg.lo);
    return Interval(exp2_interval(t.lo).lo, exp2_interval(t.hi).hi);
}

Interval rat_pow_q(const Rat& x, const Rat& e, long bits) {
    if (sgn(x) <= 0) throw SpecError("rat_pow_q needs x > 0");
    if (sgn(e) == 0 || x == 1) return Interval(Rat(1));
    Int a = abs(e.get_num());
    if (a <= 512 && e.get_den() <= 64) {
        unsigned long b = e.get_den().get_ui();
        Rat xa = rat_pow_int(x, a.get_si());  // x^|a|, exact
        Interval root;
        if (b == 1) {
            root = Interval::point(xa);
        } else {
            // adaptive scale so the fixed-point root never underflows
            long eff = bits;
            if (xa < 1) {
                long deficit = static_cast<long>(mpz_sizeinbase(xa.get_den().get_mpz_t(), 2)) -
                               static_cast<long>(mpz_sizeinbase(xa.get_num().get_mpz_t(), 2));
                eff += deficit / static_cast<long>(b) + 2;
            }
            Int scaled = floor_rat(xa * Rat(Int(1) << static_cast<unsigned long>(eff) * b));
            if (scaled < 1) throw PrecisionError("rat_pow_q underflow; raise bits");
            Int s = iroot_floor(scaled, b);
            Int den = Int(1) << eff;
            root = Interval(make_rat(s, den), make_rat(s + 2, den));
        }
        if (sgn(e) < 0) {
            if (sgn(root.lo) <= 0) throw PrecisionError("rat_pow_q reciprocal underflow; raise bits");
            return Interval(Rat(1) / root.hi, Rat(1) / root.lo);
        }
        return root;
    }
    Interval lg = log2_interval(x);
    Interval t = sgn(e) > 0 ? Interval(e * lg.lo, e * lg.hi) : Interval(e * lg.hi, e * lg.lo);
    return Interval(exp2_interval(t.lo).lo, exp2_interval(t.hi).hi);
}

bool pow_le(const Rat& x, unsigned long e, const Rat& y, unsigned long f) {
    if (sgn(x) < 0 || sgn(y) < 0) throw SpecError("pow_le needs nonnegative arguments");
    Rat xe(1), yf(1);
    Rat bx = x, by = y;
    unsigned long ee = e, ff = f;
    while (ee) {
        if (ee & 1) xe *= bx;
        ee >>= 1;
        if (ee) bx *= bx;
    }
    while (ff) {
        if (ff & 1) yf *= by;
        ff >>= 1;
        if (ff) by *= by;
    }
    return xe <= yf;
}

}  // namespace dal
