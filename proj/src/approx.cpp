#include "dal/approx.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <mutex>

#include "dal/util.hpp"

namespace dal {

long scan_bits(int n, const Int& qmax) {
    long lg = ilog2_ceil(qmax < 2 ? Int(2) : qmax);
    return static_cast<long>(n + 2) * lg + 64;
}

namespace {

Int floor_scaled(const Rat& x, long P) {
    Int num = x.get_num() << P;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

Int ceil_scaled(const Rat& x, long P) {
    Int num = x.get_num() << P;
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

}  // namespace

RealCtx build_real_ctx(const RealSpec& spec, int n, long bits) {
    RealCtx ctx;
    ctx.P = bits;
    Interval xi = eval_real(spec, bits + 8);
    Int xlo = floor_scaled(xi.lo, bits), xhi = ceil_scaled(xi.hi, bits);
    ctx.lo.resize(n);
    ctx.hi.resize(n);
    ctx.lo[0] = xlo;
    ctx.hi[0] = xhi;
    for (int j = 2; j <= n; ++j) {
        const Int& a = ctx.lo[j - 2];
        const Int& b = ctx.hi[j - 2];
        Int p1 = a * xlo, p2 = a * xhi, p3 = b * xlo, p4 = b * xhi;
        Int lo = std::min(std::min(p1, p2), std::min(p3, p4));
        Int hi = std::max(std::max(p1, p2), std::max(p3, p4));
        mpz_fdiv_q_2exp(ctx.lo[j - 1].get_mpz_t(), lo.get_mpz_t(), bits);
        mpz_cdiv_q_2exp(ctx.hi[j - 1].get_mpz_t(), hi.get_mpz_t(), bits);
    }
    return ctx;
}

namespace {

// rho enclosure at one denominator, in scale-2^-P integer units.
struct RawRho {
    Int lo, hi;
    long P = 0;
};

int cmp_scaled(const Int& a, long pa, const Int& b, long pb) {
    if (pa == pb) return cmp(a, b);
    if (pa < pb) return cmp(Int(a << (pb - pa)), b);
    return cmp(a, Int(b << (pa - pb)));
}

bool raw_lt(const RawRho& a, const RawRho& b) { return cmp_scaled(a.hi, a.P, b.lo, b.P) < 0; }
bool raw_gt(const RawRho& a, const RawRho& b) { return cmp_scaled(a.lo, a.P, b.hi, b.P) > 0; }

Interval raw_to_interval(const RawRho& r) {
    Int den = Int(1) << r.P;
    return Interval(make_rat(r.lo, den), make_rat(r.hi, den));
}

// Lazily built contexts at doubled precisions, shared across workers.
// Deque keeps references stable under growth.
struct CtxLadder {
    const RealSpec* spec;
    int n;
    long base_bits;
    int cap;
    std::deque<RealCtx> levels;
    std::mutex mu;

    CtxLadder(const RealSpec* s, int nn, long bits, int c) : spec(s), n(nn), base_bits(bits), cap(c) {}

    const RealCtx& level(int L) {
        std::lock_guard<std::mutex> g(mu);
        while (static_cast<int>(levels.size()) <= L) {
            long bits = base_bits << levels.size();
            levels.push_back(build_real_ctx(*spec, n, bits));
        }
        return levels[static_cast<size_t>(L)];
    }
};

struct QKernel {
    const RealCtx* ctx;
    int n;
    Int t_lo, t_hi, mlo, mhi, ms, dl, dh;

    explicit QKernel(const RealCtx& c, int nn) : ctx(&c), n(nn) {}

    // Nearest-integer tuple and rho enclosure for one q; false when some
    // nearest integer is undecided at this scale.
    bool eval(unsigned long q, std::vector<Int>& m_out, RawRho& rho) {
        const long P = ctx->P;
        rho.P = P;
        rho.lo = 0;
        rho.hi = 0;
        Int half = Int(1) << (P - 1);
        for (int j = 1; j <= n; ++j) {
            mpz_mul_ui(t_lo.get_mpz_t(), ctx->lo[j - 1].get_mpz_t(), q);
            mpz_mul_ui(t_hi.get_mpz_t(), ctx->hi[j - 1].get_mpz_t(), q);
            Int a = t_lo + half, b = t_hi + half;
            mpz_fdiv_q_2exp(mlo.get_mpz_t(), a.get_mpz_t(), P);
            mpz_fdiv_q_2exp(mhi.get_mpz_t(), b.get_mpz_t(), P);
            if (mlo != mhi) return false;
            mpz_mul_2exp(ms.get_mpz_t(), mlo.get_mpz_t(), P);
            dl = t_lo - ms;
            dh = t_hi - ms;
            Int dist_lo, dist_hi;
            if (sgn(dl) >= 0) {
                dist_lo = dl;
                dist_hi = dh;
            } else if (sgn(dh) <= 0) {
                dist_lo = -dh;
                dist_hi = -dl;
            } else {
                dist_lo = 0;
                dist_hi = std::max(Int(-dl), dh);
            }
            if (dist_lo > rho.lo) rho.lo = dist_lo;
            if (dist_hi > rho.hi) rho.hi = dist_hi;
            m_out[static_cast<size_t>(j - 1)] = mlo;
        }
        return true;
    }
};

// Evaluate one q, escalating precision until every nearest integer is decided.
void eval_q_refined(CtxLadder& ladder, unsigned long q, std::vector<Int>& m_out, RawRho& rho,
                    int start_level) {
    for (int L = start_level; L <= ladder.cap; ++L) {
        QKernel k(ladder.level(L), ladder.n);
        if (k.eval(q, m_out, rho)) return;
    }
    throw PrecisionError("nearest integer undecided at precision cap (q=" + std::to_string(q) + ")");
}

// Improve the relative width of a record's rho enclosure (target 2^-36).
void refine_record(CtxLadder& ladder, unsigned long q, std::vector<Int>& m_inout, RawRho& rho) {
    for (int L = 1; L <= ladder.cap; ++L) {
        Int slack = (rho.hi - rho.lo) << 36;
        if (slack <= rho.hi) return;
        QKernel k(ladder.level(L), ladder.n);
        RawRho r2;
        std::vector<Int> m2(static_cast<size_t>(ladder.n));
        if (k.eval(q, m2, r2)) {
            rho = r2;
            m_inout = m2;
        }
    }
}

struct Candidate {
    unsigned long q;
    std::vector<Int> p;
    RawRho rho;
};

Rat rat_pow(const Rat& x, unsigned long e) {
    Rat acc(1), base = x;
    while (e) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return acc;
}

// Exact-arithmetic path for rational-valued specs.
ScanResult scan_exact_rational(const Rat& x, int n, const Int& qmax, bool best_mode,
                               const Rat& lambda, const Rat& C) {
    ScanResult out;
    std::vector<Rat> powers(static_cast<size_t>(n));
    Rat acc(1);
    for (int j = 1; j <= n; ++j) {
        acc *= x;
        powers[static_cast<size_t>(j - 1)] = acc;
    }
    Rat half(1, 2);
    Rat best;
    bool have_best = false;
    unsigned long a = 0, b = 1;
    if (!best_mode) {
        if (!lambda.get_num().fits_ulong_p() || !lambda.get_den().fits_ulong_p())
            throw SpecError("lambda too large for exact comparison");
        a = lambda.get_num().get_ui();
        b = lambda.get_den().get_ui();
        if (b > 64) throw SpecError("lambda denominator too large (desk-scale limit 64)");
    }
    for (Int q = 1; q <= qmax; ++q) {
        ApproxVector v;
        v.q = q;
        v.n = n;
        Rat rho(0);
        for (int j = 1; j <= n; ++j) {
            Rat val = powers[static_cast<size_t>(j - 1)] * Rat(q);
            Int m = floor_rat(val + half);
            Rat d = abs(val - Rat(m));
            v.p.push_back(m);
            if (d > rho) rho = d;
        }
        v.rho = Interval::point(rho);
        if (sgn(rho) == 0) {
            out.records.push_back(v);
            out.degenerate_hit = true;
            out.degenerate_q = q;
            return out;
        }
        if (best_mode) {
            if (!have_best || rho < best) {
                out.records.push_back(v);
                best = rho;
                have_best = true;
            }
        } else {
            if (rat_pow(rho, b) * rat_pow(Rat(q), a) <= rat_pow(C, b)) out.records.push_back(v);
        }
    }
    return out;
}

}  // namespace

ScanResult best_approx_scan(const RealSpec& spec, int n, const Int& qmax, const ScanOptions& opts) {
    if (n < 1) throw SpecError("best_approx_scan needs n >= 1");
    if (qmax < 2) throw SpecError("best_approx_scan needs qmax >= 2");
    if (!qmax.fits_ulong_p()) throw SpecError("qmax too large");
    if (auto r = spec.exact_rational()) return scan_exact_rational(*r, n, qmax, true, Rat(0), Rat(1));

    const unsigned long Q = qmax.get_ui();
    CtxLadder ladder(&spec, n, opts.bits_override > 0 ? opts.bits_override : scan_bits(n, qmax),
                     opts.max_refine_doublings);
    ladder.level(0);

    const uint64_t block = 1 << 15;
    const size_t nblocks = block_count(1, Q + 1, block);
    std::vector<std::vector<Candidate>> per_block(nblocks);
    unsigned threads = opts.threads ? opts.threads : default_thread_count();

    run_blocks(1, Q + 1, block, threads, [&](size_t bi, uint64_t lo, uint64_t hi) {
        QKernel kern(ladder.level(0), n);
        std::vector<Int> ms(static_cast<size_t>(n));
        RawRho rho;
        RawRho local_best;
        bool have_local = false;
        auto& out = per_block[bi];
        for (uint64_t q = lo; q < hi; ++q) {
            if (!kern.eval(static_cast<unsigned long>(q), ms, rho))
                eval_q_refined(ladder, static_cast<unsigned long>(q), ms, rho, 1);
            // keep q when it may beat the block-prefix minimum (superset of
            // the true records within this block)
            if (have_local && raw_gt(rho, local_best)) continue;
            out.push_back(Candidate{static_cast<unsigned long>(q), ms, rho});
            if (!have_local) {
                local_best = rho;
                have_local = true;
            } else {
                long P = std::max(rho.P, local_best.P);
                Int blo = local_best.lo << (P - local_best.P);
                Int bhi = local_best.hi << (P - local_best.P);
                Int rlo = rho.lo << (P - rho.P);
                Int rhi = rho.hi << (P - rho.P);
                local_best.P = P;
                local_best.lo = std::min(blo, rlo);
                local_best.hi = std::min(bhi, rhi);
            }
        }
    });

    // Ordered merge against the true global prefix minimum.
    ScanResult out;
    RawRho best;
    bool have_best = false;
    for (auto& blockv : per_block) {
        for (auto& cand : blockv) {
            if (have_best) {
                if (raw_gt(cand.rho, best)) continue;
                if (!raw_lt(cand.rho, best)) {
                    // Undecided against the incumbent: refine the candidate.
                    refine_record(ladder, cand.q, cand.p, cand.rho);
                    // Still undecided at the cap means the two rho values
                    // agree to thousands of bits. That happens exactly for
                    // algebraic coincidences (e.g. powers of a quadratic
                    // repeat distances, so rho can tie across q), and a tie
                    // is not a strict improvement.
                    if (!raw_lt(cand.rho, best)) continue;
                }
            }
            std::vector<Int> ms = cand.p;
            RawRho r = cand.rho;
            refine_record(ladder, cand.q, ms, r);
            ApproxVector v;
            v.q = Int(cand.q);
            v.n = n;
            v.p = ms;
            v.rho = raw_to_interval(r);
            out.records.push_back(std::move(v));
            best = r;
            have_best = true;
        }
    }
    return out;
}

ScanResult good_approx_enum(const RealSpec& spec, int n, const Rat& lambda, const Rat& C,
                            const Int& qmax, const ScanOptions& opts) {
    if (n < 1) throw SpecError("good_approx_enum needs n >= 1");
    if (sgn(lambda) < 0) throw SpecError("good_approx_enum needs lambda >= 0");
    if (sgn(C) <= 0) throw SpecError("good_approx_enum needs C > 0");
    if (!qmax.fits_ulong_p()) throw SpecError("qmax too large");
    if (auto r = spec.exact_rational()) return scan_exact_rational(*r, n, qmax, false, lambda, C);

    if (!lambda.get_num().fits_ulong_p() || !lambda.get_den().fits_ulong_p())
        throw SpecError("lambda too large");
    const unsigned long a = lambda.get_num().get_ui();
    const unsigned long b = lambda.get_den().get_ui();
    if (b > 64) throw SpecError("lambda denominator too large (desk-scale limit 64)");
    Int Cn_b, Cd_b;
    mpz_pow_ui(Cn_b.get_mpz_t(), C.get_num().get_mpz_t(), b);
    mpz_pow_ui(Cd_b.get_mpz_t(), C.get_den().get_mpz_t(), b);

    const unsigned long Q = qmax.get_ui();
    CtxLadder ladder(&spec, n, opts.bits_override > 0 ? opts.bits_override : scan_bits(n, qmax),
                     opts.max_refine_doublings);
    ladder.level(0);

    // accept iff rho^b * q^a <= C^b, that is rho_num^b * q^a * Cd^b <= Cn^b * 2^(P b)
    auto decide = [&](const RawRho& rho, unsigned long q) -> int {
        Int qa;
        mpz_ui_pow_ui(qa.get_mpz_t(), q, a);
        Int rhs = Cn_b << static_cast<unsigned long>(rho.P) * b;
        Int hi_b;
        mpz_pow_ui(hi_b.get_mpz_t(), rho.hi.get_mpz_t(), b);
        if (hi_b * qa * Cd_b <= rhs) return 1;
        Int lo_b;
        mpz_pow_ui(lo_b.get_mpz_t(), rho.lo.get_mpz_t(), b);
        if (lo_b * qa * Cd_b > rhs) return -1;
        return 0;
    };

    const uint64_t block = 1 << 15;
    const size_t nblocks = block_count(1, Q + 1, block);
    std::vector<std::vector<Candidate>> per_block(nblocks);
    unsigned threads = opts.threads ? opts.threads : default_thread_count();

    run_blocks(1, Q + 1, block, threads, [&](size_t bi, uint64_t lo, uint64_t hi) {
        QKernel kern(ladder.level(0), n);
        std::vector<Int> ms(static_cast<size_t>(n));
        RawRho rho;
        auto& out = per_block[bi];
        for (uint64_t q = lo; q < hi; ++q) {
            if (!kern.eval(static_cast<unsigned long>(q), ms, rho))
                eval_q_refined(ladder, static_cast<unsigned long>(q), ms, rho, 1);
            int d = decide(rho, static_cast<unsigned long>(q));
            for (int L = 1; L <= ladder.cap && d == 0; ++L) {
                eval_q_refined(ladder, static_cast<unsigned long>(q), ms, rho, L);
                d = decide(rho, static_cast<unsigned long>(q));
            }
            if (d == 0)
                throw PrecisionError("membership undecided at precision cap (q=" + std::to_string(q) +
                                     ")");
            if (d > 0) out.push_back(Candidate{static_cast<unsigned long>(q), ms, rho});
        }
    });

    ScanResult out;
    for (auto& blockv : per_block) {
        for (auto& cand : blockv) {
            std::vector<Int> ms = cand.p;
            RawRho r = cand.rho;
            refine_record(ladder, cand.q, ms, r);
            ApproxVector v;
            v.q = Int(cand.q);
            v.n = n;
            v.p = ms;
            v.rho = raw_to_interval(r);
            out.records.push_back(std::move(v));
        }
    }
    return out;
}

ApproxVector approx_at(const RealSpec& spec, int n, const Int& q, const ScanOptions& opts) {
    if (n < 1 || sgn(q) <= 0) throw SpecError("approx_at needs n >= 1, q >= 1");
    if (auto r = spec.exact_rational()) {
        ApproxVector v;
        v.q = q;
        v.n = n;
        Rat half(1, 2);
        Rat rho(0);
        Rat acc(1);
        for (int j = 1; j <= n; ++j) {
            acc *= *r;
            Rat val = acc * Rat(q);
            Int m = floor_rat(val + half);
            v.p.push_back(m);
            Rat d = abs(val - Rat(m));
            if (d > rho) rho = d;
        }
        v.rho = Interval::point(rho);
        return v;
    }
    if (!q.fits_ulong_p()) throw SpecError("q too large for direct evaluation");
    CtxLadder ladder(&spec, n, opts.bits_override > 0 ? opts.bits_override : scan_bits(n, q),
                     opts.max_refine_doublings);
    ladder.level(0);
    std::vector<Int> ms(static_cast<size_t>(n));
    RawRho rho;
    eval_q_refined(ladder, q.get_ui(), ms, rho, 0);
    refine_record(ladder, q.get_ui(), ms, rho);
    ApproxVector v;
    v.q = q;
    v.n = n;
    v.p = ms;
    v.rho = raw_to_interval(rho);
    return v;
}

std::vector<Interval> component_dists(const RealSpec& spec, int n, const Int& q,
                                      const ScanOptions& opts) {
    if (n < 1 || sgn(q) <= 0) throw SpecError("component_dists needs n >= 1, q >= 1");
    if (auto r = spec.exact_rational()) {
        std::vector<Interval> out;
        Rat half(1, 2);
        Rat acc(1);
        for (int j = 1; j <= n; ++j) {
            acc *= *r;
            Rat val = acc * Rat(q);
            Int m = floor_rat(val + half);
            out.push_back(Interval::point(abs(val - Rat(m))));
        }
        return out;
    }
    if (!q.fits_ulong_p()) throw SpecError("q too large for direct evaluation");
    long bits = opts.bits_override > 0 ? opts.bits_override : scan_bits(n, q);
    for (int attempt = 0;; ++attempt) {
        RealCtx ctx = build_real_ctx(spec, n, bits);
        const long P = ctx.P;
        Int half = Int(1) << (P - 1);
        std::vector<Interval> out;
        bool ok = true;
        bool sharp = true;
        for (int j = 1; j <= n && ok; ++j) {
            Int t_lo = ctx.lo[static_cast<size_t>(j - 1)] * q;
            Int t_hi = ctx.hi[static_cast<size_t>(j - 1)] * q;
            Int mlo, mhi;
            mpz_fdiv_q_2exp(mlo.get_mpz_t(), Int(t_lo + half).get_mpz_t(), P);
            mpz_fdiv_q_2exp(mhi.get_mpz_t(), Int(t_hi + half).get_mpz_t(), P);
            if (mlo != mhi) {
                ok = false;
                break;
            }
            Int ms = mlo << P;
            Int dl = t_lo - ms, dh = t_hi - ms;
            Int dist_lo, dist_hi;
            if (sgn(dl) >= 0) {
                dist_lo = dl;
                dist_hi = dh;
            } else if (sgn(dh) <= 0) {
                dist_lo = -dh;
                dist_hi = -dl;
            } else {
                dist_lo = 0;
                dist_hi = std::max(Int(-dl), dh);
            }
            if (Int((dist_hi - dist_lo) << 36) > dist_hi && dist_hi != 0) sharp = false;
            Int den = Int(1) << P;
            out.push_back(Interval(make_rat(dist_lo, den), make_rat(dist_hi, den)));
        }
        if (ok && (sharp || attempt >= opts.max_refine_doublings)) return out;
        if (attempt >= opts.max_refine_doublings && !ok)
            throw PrecisionError("component distances undecided at precision cap");
        bits *= 2;
    }
}

ExponentEstimate estimate_exponent(const std::vector<ApproxVector>& records, ExponentMode mode,
                                   int window, const Int& qmax) {
    if (records.size() < 3) throw SpecError("too few records: need >= 3");
    ExponentEstimate out;
    out.mode = mode;
    out.record_count = records.size();

    for (const auto& rec : records)
        if (sgn(rec.rho.hi) == 0) out.infinite = true;
    if (out.infinite) {
        out.estimate = Rat(0);
        return out;
    }

    const size_t m = records.size();
    std::vector<Rat> lq(m), lr(m);
    for (size_t i = 0; i < m; ++i) {
        lq[i] = log2_approx(Rat(records[i].q));
        lr[i] = log2_approx(records[i].rho.hi);
    }

    if (mode == ExponentMode::UniformLambdaN) {
        for (size_t i = 0; i + 1 < m; ++i) out.cross.push_back(Rat(-lr[i] / lq[i + 1]));
        if (qmax > records.back().q) out.cross.push_back(Rat(-lr[m - 1] / log2_approx(Rat(qmax))));
        size_t len = out.cross.size();
        if (len == 0) throw SpecError("too few records for uniform estimate");
        size_t W = window > 0 ? static_cast<size_t>(window)
                              : static_cast<size_t>(std::ceil(std::sqrt(static_cast<double>(len))));
        W = std::min(std::max<size_t>(W, 1), len);
        out.window = static_cast<int>(W);
        Rat best = out.cross[len - W];
        for (size_t i = len - W; i < len; ++i) best = std::min(best, out.cross[i]);
        out.estimate = best;
        return out;
    }

    // The slope between consecutive records corrects the pointwise value's
    // constant bias, but it is only meaningful when the records are well
    // separated in both coordinates: with nearly equal q it blows up, with
    // nearly equal rho it collapses toward zero.
    const Rat quarter(1, 4);
    std::vector<Rat> vals;
    for (size_t i = 1; i < m; ++i) {
        Rat e = -lr[i] / lq[i];
        Rat dq = lq[i] - lq[i - 1];
        Rat dr = lr[i - 1] - lr[i];
        Rat s = sgn(dq) > 0 ? Rat(dr / dq) : e;
        out.pointwise.push_back(e);
        out.slopes.push_back(s);
        bool slope_usable = dq >= quarter && dr >= quarter;
        vals.push_back(slope_usable ? std::min(e, s) : e);
    }
    size_t len = vals.size();
    size_t W = window > 0 ? static_cast<size_t>(window)
                          : static_cast<size_t>(std::ceil(std::sqrt(static_cast<double>(len))));
    W = std::min(std::max<size_t>(W, 1), len);
    out.window = static_cast<int>(W);
    Rat best = vals[len - W];
    for (size_t i = len - W; i < len; ++i) best = std::max(best, vals[i]);
    out.estimate = best;
    return out;
}

namespace {

// Exact enumeration for rational-valued specs: ties are real here (distinct
// forms can share a value), resolved first-found in lexicographic order.
BoxMin box_min_exact(const Rat& x, int k, long Hl, WMode mode) {
    std::vector<Rat> powers(static_cast<size_t>(k) + 1, Rat(1));
    for (int j = 1; j <= k; ++j) powers[static_cast<size_t>(j)] = powers[static_cast<size_t>(j - 1)] * x;
    BoxMin best;
    Rat best_val;
    bool have = false;
    std::vector<long> a(static_cast<size_t>(k) + 1, -Hl);
    for (;;) {
        long last = 0;
        for (int i = k; i >= 0; --i)
            if (a[static_cast<size_t>(i)] != 0) {
                last = a[static_cast<size_t>(i)];
                break;
            }
        if (last > 0) {
            long maxabs = 0;
            for (int i = 0; i <= k; ++i) maxabs = std::max(maxabs, std::abs(a[static_cast<size_t>(i)]));
            bool mode_ok = true;
            if (mode == WMode::Lead)
                mode_ok = a[static_cast<size_t>(k)] != 0 && std::abs(a[static_cast<size_t>(k)]) == maxabs;
            if (mode == WMode::Cst) mode_ok = a[0] != 0 && std::abs(a[0]) == maxabs;
            if (mode_ok) {
                Rat val(0);
                for (int i = 0; i <= k; ++i) val += powers[static_cast<size_t>(i)] * a[static_cast<size_t>(i)];
                val = abs(val);
                if (sgn(val) == 0) {
                    best.coeffs.clear();
                    for (int i = 0; i <= k; ++i) best.coeffs.emplace_back(a[static_cast<size_t>(i)]);
                    best.value = Interval(Rat(0));
                    best.exact_zero = true;
                    return best;
                }
                if (!have || val < best_val) {
                    best.coeffs.clear();
                    for (int i = 0; i <= k; ++i) best.coeffs.emplace_back(a[static_cast<size_t>(i)]);
                    best_val = val;
                    have = true;
                }
            }
        }
        size_t i = 0;
        while (i <= static_cast<size_t>(k) && a[i] == Hl) a[i++] = -Hl;
        if (i > static_cast<size_t>(k)) break;
        ++a[i];
    }
    if (!have) throw SpecError("empty coefficient box under the mode constraint");
    best.value = Interval::point(best_val);
    return best;
}

}  // namespace

BoxMin box_min_form(const RealSpec& spec, int k, const Int& H, WMode mode,
                    const ScanOptions& opts) {
    if (k < 1) throw SpecError("box_min_form needs k >= 1");
    if (H < 1) throw SpecError("box_min_form needs H >= 1");
    if (!H.fits_slong_p()) throw SpecError("H too large");
    const long Hl = H.get_si();
    {
        // feasibility guard: (2H+1)^(k+1) <= 1e9
        double boxlog = (k + 1) * std::log2(2.0 * static_cast<double>(Hl) + 1.0);
        if (boxlog > 29.9) throw BudgetError("coefficient box exceeds desk-scale budget");
    }
    if (auto r = spec.exact_rational()) return box_min_exact(*r, k, Hl, mode);
    long bits = opts.bits_override > 0 ? opts.bits_override : 3 * ilog2_ceil(H) + 96;

    for (int attempt = 0; attempt <= opts.max_refine_doublings; ++attempt, bits *= 2) {
        RealCtx ctx = build_real_ctx(spec, k, bits);
        const long P = ctx.P;
        const Int one = Int(1) << P;

        BoxMin best;
        Int best_lo, best_hi;
        bool have = false;
        bool restart = false;

        std::vector<long> a(static_cast<size_t>(k) + 1, 0);
        // partial[j]: value interval of the terms with index > j, scale 2^-P
        std::vector<Int> partial_lo(static_cast<size_t>(k) + 1, Int(0));
        std::vector<Int> partial_hi(static_cast<size_t>(k) + 1, Int(0));

        std::function<void(int)> rec = [&](int j) {
            if (restart) return;
            if (j >= 1) {
                for (long c = -Hl; c <= Hl && !restart; ++c) {
                    a[static_cast<size_t>(j)] = c;
                    Int t1 = ctx.lo[static_cast<size_t>(j - 1)] * c;
                    Int t2 = ctx.hi[static_cast<size_t>(j - 1)] * c;
                    partial_lo[static_cast<size_t>(j - 1)] =
                        partial_lo[static_cast<size_t>(j)] + std::min(t1, t2);
                    partial_hi[static_cast<size_t>(j - 1)] =
                        partial_hi[static_cast<size_t>(j)] + std::max(t1, t2);
                    rec(j - 1);
                }
                return;
            }
            for (long c = -Hl; c <= Hl; ++c) {
                a[0] = c;
                long last = 0;
                for (int i = k; i >= 0; --i)
                    if (a[static_cast<size_t>(i)] != 0) {
                        last = a[static_cast<size_t>(i)];
                        break;
                    }
                if (last <= 0) continue;  // zero vector or negated duplicate
                long maxabs = 0;
                for (int i = 0; i <= k; ++i)
                    maxabs = std::max(maxabs, std::abs(a[static_cast<size_t>(i)]));
                if (mode == WMode::Lead &&
                    (a[static_cast<size_t>(k)] == 0 || std::abs(a[static_cast<size_t>(k)]) != maxabs))
                    continue;
                if (mode == WMode::Cst && (a[0] == 0 || std::abs(a[0]) != maxabs)) continue;

                Int vlo = partial_lo[0] + Int(c) * one;
                Int vhi = partial_hi[0] + Int(c) * one;
                Int alo, ahi;
                if (sgn(vlo) >= 0) {
                    alo = vlo;
                    ahi = vhi;
                } else if (sgn(vhi) <= 0) {
                    alo = -vhi;
                    ahi = -vlo;
                } else {
                    IntPoly cand;
                    cand.reserve(static_cast<size_t>(k) + 1);
                    for (int i = 0; i <= k; ++i) cand.emplace_back(a[static_cast<size_t>(i)]);
                    poly_normalize(cand);
                    if (exact_zero_test(spec, cand)) {
                        best.coeffs.clear();
                        for (int i = 0; i <= k; ++i) best.coeffs.emplace_back(a[static_cast<size_t>(i)]);
                        best.value = Interval(Rat(0));
                        best.exact_zero = true;
                        restart = true;  // unwind; the exact zero wins outright
                        return;
                    }
                    restart = true;  // nonzero but straddling: retry at higher precision
                    return;
                }
                if (!have || cmp(ahi, best_lo) < 0) {
                    best.coeffs.clear();
                    for (int i = 0; i <= k; ++i) best.coeffs.emplace_back(a[static_cast<size_t>(i)]);
                    best_lo = alo;
                    best_hi = ahi;
                    have = true;
                } else if (cmp(alo, best_hi) <= 0) {
                    // overlap with the incumbent minimum: ordering uncertified
                    restart = true;
                    return;
                }
            }
        };
        rec(k);
        if (best.exact_zero) return best;
        if (!restart && have) {
            Int den = Int(1) << P;
            best.value = Interval(make_rat(best_lo, den), make_rat(best_hi, den));
            return best;
        }
    }
    throw PrecisionError("box minimization undecided at precision cap");
}

WEstimate estimate_w(const RealSpec& spec, int k, const Int& hmax, WMode mode,
                     const ScanOptions& opts) {
    if (k < 1) throw SpecError("estimate_w needs k >= 1");
    if (hmax < 2) throw SpecError("estimate_w needs hmax >= 2");
    WEstimate out;
    out.k = k;
    out.mode = mode;
    std::vector<Int> heights;
    for (Int h = 2; h < hmax; h *= 2) heights.push_back(h);
    heights.push_back(hmax);
    for (const Int& H : heights) {
        BoxMin bm = box_min_form(spec, k, H, mode, opts);
        if (bm.exact_zero) {
            out.algebraic_hit = true;
            out.zero_coeffs = bm.coeffs;
            return out;
        }
        WLadderStep step;
        step.height = H;
        step.coeffs = bm.coeffs;
        step.value = bm.value;
        step.exponent = -log2_approx(bm.value.hi) / log2_approx(Rat(H));
        out.ladder.push_back(std::move(step));
    }
    std::vector<Rat> vals;
    for (size_t i = 0; i < out.ladder.size(); ++i) {
        Rat e = out.ladder[i].exponent;
        if (i == 0) {
            vals.push_back(e);
            continue;
        }
        Rat dh = log2_approx(Rat(out.ladder[i].height)) - log2_approx(Rat(out.ladder[i - 1].height));
        Rat s = (log2_approx(out.ladder[i - 1].value.hi) - log2_approx(out.ladder[i].value.hi)) / dh;
        vals.push_back(std::min(e, s));
    }
    size_t len = vals.size();
    size_t W = static_cast<size_t>(std::ceil(std::sqrt(static_cast<double>(len))));
    W = std::min(std::max<size_t>(W, 1), len);
    Rat best = vals[len - W];
    for (size_t i = len - W; i < len; ++i) best = std::max(best, vals[i]);
    out.estimate = best;
    return out;
}

}  // namespace dal
