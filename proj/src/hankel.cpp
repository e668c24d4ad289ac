#include "dal/hankel.hpp"

#include <algorithm>

#include "dal/util.hpp"

namespace dal {
namespace hankel {

namespace {

// Fraction-free (Bareiss) determinant.
Int det_bareiss(std::vector<std::vector<Int>> m) {
    const size_t n = m.size();
    if (n == 0) return Int(1);
    Int sign(1), prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return Int(0);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Rank over the rationals by exact elimination.
int rank_exact(std::vector<std::vector<Rat>> m) {
    const size_t rows = m.size();
    if (rows == 0) return 0;
    const size_t cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (sgn(m[i][c]) == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

// Basis of the right kernel of m (exact, primitive integer vectors).
std::vector<std::vector<Int>> kernel_basis(const std::vector<std::vector<Rat>>& m_in) {
    std::vector<std::vector<Rat>> m = m_in;
    const size_t rows = m.size();
    const size_t cols = rows == 0 ? 0 : m[0].size();
    std::vector<long> pivot_col;  // pivot column per reduced row
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        Rat inv = m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(static_cast<long>(c));
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (long c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<Int>> basis;
    for (size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free_c] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i)
            v[static_cast<size_t>(pivot_col[i])] = -m[i][free_c];
        // clear denominators, strip content
        Int den(1);
        for (const auto& x : v) den = den / gcd(den, x.get_den()) * x.get_den();
        std::vector<Int> iv;
        iv.reserve(cols);
        for (const auto& x : v) iv.push_back(Int(x.get_num() * (den / x.get_den())));
        Int content(0);
        for (const auto& x : iv) content = gcd(content, x);
        if (content > 1)
            for (auto& x : iv) x /= content;
        basis.push_back(std::move(iv));
    }
    return basis;
}

void sign_normalize(std::vector<Int>& v) {
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
        if (*it != 0) {
            if (sgn(*it) < 0)
                for (auto& x : v) x = -x;
            return;
        }
    }
}

Int height_of(const std::vector<Int>& v) {
    Int h(0);
    for (const auto& x : v) h = std::max(h, Int(abs(x)));
    return h;
}

bool lex_less(const std::vector<Int>& a, const std::vector<Int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void check_tuple(const std::vector<Int>& p) {
    if (p.size() < 2) throw SpecError("tuple needs at least two entries");
}

}  // namespace

Int minor(const std::vector<Int>& p, int m, int k) {
    check_tuple(p);
    const int n = static_cast<int>(p.size()) - 1;
    if (m < 1 || k - m + 1 < 0 || k + m - 1 > n)
        throw SpecError("hankel minor index out of bounds (m=" + std::to_string(m) +
                        ", k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    std::vector<std::vector<Int>> mat(static_cast<size_t>(m), std::vector<Int>(static_cast<size_t>(m)));
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
            mat[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                p[static_cast<size_t>(k - m + 1 + r + c)];
    return det_bareiss(std::move(mat));
}

Int selection_det(const std::vector<Int>& p, int m, const std::vector<int>& rows) {
    check_tuple(p);
    const int n = static_cast<int>(p.size()) - 1;
    if (static_cast<int>(rows.size()) != m) throw SpecError("selection needs m row starts");
    std::vector<std::vector<Int>> mat;
    for (int c : rows) {
        if (c < 0 || c + m - 1 > n) throw SpecError("selection row out of bounds");
        std::vector<Int> row;
        for (int j = 0; j < m; ++j) row.push_back(p[static_cast<size_t>(c + j)]);
        mat.push_back(std::move(row));
    }
    return det_bareiss(std::move(mat));
}

Profile delta_profile(const std::vector<Int>& p, const std::vector<int>& sizes) {
    check_tuple(p);
    Profile prof;
    prof.n = static_cast<int>(p.size()) - 1;
    for (int i = 1; i <= prof.n - 1; ++i)
        prof.delta2.push_back(p[static_cast<size_t>(i)] * p[static_cast<size_t>(i)] -
                              p[static_cast<size_t>(i - 1)] * p[static_cast<size_t>(i + 1)]);
    for (int m : sizes) {
        bool any = false;
        for (int k = m - 1; k + m - 1 <= prof.n; ++k) {
            prof.minors[{m, k}] = minor(p, m, k);
            any = true;
        }
        if (!any)
            throw SpecError("no legal center for Hankel order m=" + std::to_string(m) +
                            " at n=" + std::to_string(prof.n));
    }
    return prof;
}

Profile rank_recurrence(const std::vector<Int>& p) {
    check_tuple(p);
    bool nonzero = false;
    for (const auto& x : p) nonzero |= (x != 0);
    if (!nonzero) throw SpecError("rank_recurrence needs a nonzero tuple");

    Profile prof;
    prof.n = static_cast<int>(p.size()) - 1;
    const int n = prof.n;
    for (int i = 1; i <= n - 1; ++i)
        prof.delta2.push_back(p[static_cast<size_t>(i)] * p[static_cast<size_t>(i)] -
                              p[static_cast<size_t>(i - 1)] * p[static_cast<size_t>(i + 1)]);

    const int hmax = (n + 2) / 2;  // ceil((n+1)/2)
    int h = 0;
    for (int ell = 1; ell <= hmax; ++ell) {
        // P_ell is (ell+1) x (n-ell+1) with entry (r, c) = p_{r+c}
        std::vector<std::vector<Rat>> mat(static_cast<size_t>(ell) + 1,
                                          std::vector<Rat>(static_cast<size_t>(n - ell + 1)));
        for (int r = 0; r <= ell; ++r)
            for (int c = 0; c <= n - ell; ++c)
                mat[static_cast<size_t>(r)][static_cast<size_t>(c)] = Rat(p[static_cast<size_t>(r + c)]);
        if (rank_exact(mat) <= ell) {
            h = ell;
            break;
        }
    }
    if (h == 0) throw SpecError("no band rank collapse found (internal)");
    prof.h = h;

    // Left kernel of P_h: right kernel of its transpose.
    std::vector<std::vector<Rat>> tr(static_cast<size_t>(n - h + 1),
                                     std::vector<Rat>(static_cast<size_t>(h) + 1));
    for (int r = 0; r <= h; ++r)
        for (int c = 0; c <= n - h; ++c)
            tr[static_cast<size_t>(c)][static_cast<size_t>(r)] = Rat(p[static_cast<size_t>(r + c)]);
    auto basis = kernel_basis(tr);
    if (basis.empty()) throw SpecError("empty recurrence kernel (internal)");
    std::vector<Int> best;
    if (basis.size() == 1) {
        best = basis[0];
        sign_normalize(best);
    } else {
        // Degenerate case: kernel dimension above one. Search small integer
        // combinations for the minimal height, ties lexicographic.
        const long B = 32;
        std::vector<long> c(basis.size(), -B);
        std::vector<Int> cand(static_cast<size_t>(h) + 1);
        bool have = false;
        Int best_h;
        for (;;) {
            bool allzero = true;
            for (long x : c) allzero &= (x == 0);
            if (!allzero) {
                for (size_t j = 0; j <= static_cast<size_t>(h); ++j) {
                    cand[j] = 0;
                    for (size_t b = 0; b < basis.size(); ++b) cand[j] += Int(c[b]) * basis[b][j];
                }
                bool cz = true;
                for (const auto& x : cand) cz &= (x == 0);
                if (!cz) {
                    std::vector<Int> v = cand;
                    Int content(0);
                    for (const auto& x : v) content = gcd(content, x);
                    if (content > 1)
                        for (auto& x : v) x /= content;
                    sign_normalize(v);
                    Int hh = height_of(v);
                    if (!have || hh < best_h || (hh == best_h && lex_less(v, best))) {
                        best = v;
                        best_h = hh;
                        have = true;
                    }
                }
            }
            size_t i = 0;
            while (i < c.size() && c[i] == B) c[i++] = -B;
            if (i == c.size()) break;
            ++c[i];
        }
        if (!have) {
            best = basis[0];
            sign_normalize(best);
        }
    }
    prof.kernel = best;
    prof.height = height_of(best);

    // Z: max |h x h| determinant over windows y_i = (p_i .. p_{i+h-1}),
    // i = 0 .. n-h+1, any h of them as rows.
    const int nv = n - h + 2;  // number of windows
    std::vector<int> idx(static_cast<size_t>(h));
    for (int i = 0; i < h; ++i) idx[static_cast<size_t>(i)] = i;
    Int Z(0);
    if (h <= nv) {
        for (;;) {
            std::vector<std::vector<Int>> mat;
            for (int i : idx) {
                std::vector<Int> row;
                for (int j = 0; j < h; ++j) row.push_back(p[static_cast<size_t>(i + j)]);
                mat.push_back(std::move(row));
            }
            Z = std::max(Z, Int(abs(det_bareiss(std::move(mat)))));
            int i = h - 1;
            while (i >= 0 && idx[static_cast<size_t>(i)] == nv - h + i) --i;
            if (i < 0) break;
            ++idx[static_cast<size_t>(i)];
            for (int j = i + 1; j < h; ++j)
                idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
        }
    }
    prof.Z = Z;
    if (Z == 0) {
        prof.ds_skipped = true;
    } else {
        long e = n - 2 * h + 2;
        if (e < 1) {
            prof.ds_skipped = true;
        } else {
            Interval root = pow_interval(Z, Rat(1, e), 32);
            prof.ds_ratio = Interval(Rat(prof.height) / root.hi, Rat(prof.height) / root.lo);
        }
    }
    return prof;
}

namespace {

// xi^lambda is irrational in general: certified q^e enclosures come from
// pow_interval; displacement intervals come from the spec's power context.
struct AuditCtx {
    Interval xi;
    std::vector<Interval> powers;  // xi^j, j = 1..n
};

AuditCtx make_audit_ctx(const RealSpec& spec, int n, const Int& q) {
    AuditCtx ctx;
    long bits = scan_bits(n, q) + 64;
    RealCtx rc = build_real_ctx(spec, std::max(1, n), bits);
    ctx.xi = rc.power(1);
    for (int j = 1; j <= n; ++j) ctx.powers.push_back(rc.power(j));
    return ctx;
}

}  // namespace

RoundtripReport roundtrip_audit(const ApproxVector& v, const RealSpec& spec, const Rat& lambda,
                              const Rat& C, const Rat& comparability) {
    RoundtripReport rep;
    const int n = v.n;
    std::vector<Int> t = v.full_tuple();

    AuditCtx ctx = make_audit_ctx(spec, n, v.q);
    Rat bound = comparability;
    if (sgn(bound) <= 0) {
        // derive the ratio constant from the enclosure: |p_j| =~ q |xi|^j
        Rat hi = std::max(Rat(abs(ctx.xi.lo)), Rat(abs(ctx.xi.hi)));
        Rat lo = std::min(Rat(abs(ctx.xi.lo)), Rat(abs(ctx.xi.hi)));
        if (ctx.xi.contains_zero() || sgn(lo) == 0)
            throw SpecError("cannot derive a comparability constant near zero");
        Rat m = std::max(hi, Rat(Rat(1) / lo));
        bound = 2 * rat_pow_int(m + 1, n);
    }
    rep.comparability_bound = bound;

    Int maxp(0), minp(0);
    bool first = true;
    for (const auto& x : t) {
        Int a = abs(x);
        maxp = std::max(maxp, a);
        if (first || a < minp) minp = a;
        first = false;
    }
    rep.comparability_ok = (minp > 0) && (Rat(maxp) <= bound * Rat(minp));
    if (!rep.comparability_ok) return rep;
    Interval q_lam = pow_interval(v.q, lambda);        // q^lambda
    Interval q_lam_m1 = pow_interval(v.q, lambda - 1); // q^(lambda-1)

    // hypothesis rho <= C q^-lambda, i.e. rho * q^lambda <= C. When lambda is
    // the record's own pointwise exponent this holds with equality, so the
    // audit only rejects a certified violation.
    Interval lhs = iv_mul(v.rho, q_lam);
    rep.hypothesis_ok = !(lhs.lo > C);

    Rat abs_xi_hi = std::max(Rat(abs(ctx.xi.lo)), Rat(abs(ctx.xi.hi)));
    rep.derived_linear_bound = C * (1 + abs_xi_hi);
    rep.derived_delta_bound = 2 * rep.derived_linear_bound * Rat(maxp) / Rat(v.q);

    Rat fwd(0), del(0);
    bool pass = true;
    for (int i = 0; i <= n - 1; ++i) {
        // |p_i xi - p_{i+1}| * q^lambda
        Interval d = iv_abs(iv_sub(iv_mul_int(ctx.xi, t[static_cast<size_t>(i)]),
                                   Interval(Rat(t[static_cast<size_t>(i + 1)]))));
        Interval scaled = iv_mul(d, q_lam);
        fwd = std::max(fwd, scaled.hi);
        if (!(scaled.hi <= rep.derived_linear_bound)) pass = false;
    }
    for (int i = 1; i <= n - 1; ++i) {
        Int delta = t[static_cast<size_t>(i)] * t[static_cast<size_t>(i)] -
                    t[static_cast<size_t>(i - 1)] * t[static_cast<size_t>(i + 1)];
        Interval scaled = iv_mul(Interval(Rat(abs(delta))), q_lam_m1);
        del = std::max(del, scaled.hi);
        if (!(scaled.hi <= rep.derived_delta_bound)) pass = false;
    }
    rep.forward_constant = fwd;
    rep.delta_constant = del;
    rep.forward_pass = pass && rep.hypothesis_ok;

    // converse with xi* = p_1 / p_0 (exact rational arithmetic)
    Rat xs(v.p[0], v.q);
    xs.canonicalize();
    rep.reconstructed_xi_num = Rat(xs.get_num());
    rep.reconstructed_xi_den = Rat(xs.get_den());
    Rat conv(0);
    Rat acc(1);
    for (int j = 1; j <= n; ++j) {
        acc *= xs;
        Rat d = abs(Rat(v.q) * acc - Rat(t[static_cast<size_t>(j)]));
        Interval scaled = iv_mul(Interval(d), q_lam);
        conv = std::max(conv, scaled.hi);
    }
    rep.converse_constant = conv;
    return rep;
}

MinorAudit minor_growth_audit(const ApproxVector& v, const RealSpec& spec, const Rat& lambda,
                              const Rat& C) {
    MinorAudit audit;
    audit.max_measured = Rat(0);
    const int n = v.n;
    std::vector<Int> t = v.full_tuple();
    AuditCtx ctx = make_audit_ctx(spec, n, v.q);
    Rat abs_xi_hi = std::max(Rat(abs(ctx.xi.lo)), Rat(abs(ctx.xi.hi)));
    Rat cprime = C * (1 + abs_xi_hi);
    Int maxp(0);
    for (const auto& x : t) maxp = std::max(maxp, Int(abs(x)));

    auto add_row = [&](int m, int k, const std::vector<int>& sel, const Int& det) {
        MinorAuditRow row;
        row.m = m;
        row.k = k;
        row.selection = sel;
        // measured = |det| * q^((m-1)lambda - 1)
        Interval qe = pow_interval(v.q, (m - 1) * lambda - 1);
        row.measured = iv_mul(Interval(Rat(abs(det))), qe).hi;
        Rat fact(1);
        for (int i = 2; i <= m; ++i) fact *= i;
        row.derived = fact * (Rat(maxp) / Rat(v.q)) * rat_pow_int(cprime, m - 1);
        row.pass = row.measured <= row.derived;
        audit.max_measured = std::max(audit.max_measured, row.measured);
        audit.all_pass = audit.all_pass && row.pass;
        audit.rows.push_back(std::move(row));
    };

    for (int m = 2; m <= (n + 2) / 2 + 1; ++m) {
        for (int k = m - 1; k + m - 1 <= n; ++k) add_row(m, k, {}, minor(t, m, k));
    }
    if (n <= 8) {
        for (int m = 2; m <= n; ++m) {
            // all selections of m distinct row starts in 0..n-m+1
            std::vector<int> idx(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) idx[static_cast<size_t>(i)] = i;
            const int top = n - m + 1;
            if (top + 1 < m) continue;
            for (;;) {
                add_row(m, -1, idx, selection_det(t, m, idx));
                int i = m - 1;
                while (i >= 0 && idx[static_cast<size_t>(i)] == top - (m - 1 - i)) --i;
                if (i < 0) break;
                ++idx[static_cast<size_t>(i)];
                for (int j = i + 1; j < m; ++j)
                    idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
            }
        }
    }
    return audit;
}

SmallPolyResult small_polynomial(const ApproxVector& v, const RealSpec& spec, const Rat& lambda) {
    Profile prof = rank_recurrence(v.full_tuple());
    SmallPolyResult res;
    res.coeffs = prof.kernel;
    res.height = prof.height;
    IntPoly poly = prof.kernel;
    poly_normalize(poly);
    if (exact_zero_test(spec, poly)) {
        res.exact_zero = true;
        res.value = Interval(Rat(0));
        res.ratio = Interval(Rat(0));
        return res;
    }
    long bits = scan_bits(v.n, v.q) + 64;
    for (int attempt = 0; attempt < 8; ++attempt, bits *= 2) {
        Interval xi = eval_real(spec, bits);
        Interval val = iv_abs(poly_eval_iv(poly, xi));
        if (val.contains_zero()) continue;  // refine until sign is certain
        res.value = val;
        // ratio = value / (H q^(-1-lambda)) = value * q^(1+lambda) / H
        Interval qe = pow_interval(v.q, 1 + lambda);
        Interval num = iv_mul(val, qe);
        res.ratio = Interval(num.lo / Rat(res.height), num.hi / Rat(res.height));
        return res;
    }
    throw PrecisionError("small_polynomial value undecided at precision cap");
}

std::vector<DsFamilyResult> ds_family_audit(int families, uint64_t seed, int max_n,
                                            long coeff_bound) {
    std::vector<DsFamilyResult> out;
    uint64_t state = seed;
    int made = 0;
    int guard = 0;
    while (made < families && guard < families * 50) {
        ++guard;
        uint64_t family_seed = splitmix64(state);
        uint64_t s = family_seed;
        int h = 1 + static_cast<int>(splitmix64(s) % 3);
        std::vector<Int> a(static_cast<size_t>(h) + 1);
        for (int i = 0; i < h; ++i) {
            long c = static_cast<long>(splitmix64(s) % static_cast<uint64_t>(2 * coeff_bound + 1)) -
                     coeff_bound;
            a[static_cast<size_t>(i)] = c;
        }
        a[static_cast<size_t>(h)] = 1;  // monic top keeps the recurrence integral
        if (a[0] == 0) continue;        // keep full-length dependence
        std::vector<Int> p(static_cast<size_t>(h));
        bool zero_start = true;
        for (int i = 0; i < h; ++i) {
            long x = 1 + static_cast<long>(splitmix64(s) % static_cast<uint64_t>(coeff_bound));
            p[static_cast<size_t>(i)] = x;
            zero_start &= (x == 0);
        }
        if (zero_start) continue;
        for (int i = h; i <= max_n; ++i) {
            Int next(0);
            for (int j = 0; j < h; ++j) next += a[static_cast<size_t>(j)] * p[static_cast<size_t>(i - h + j)];
            p.push_back(-next);
        }
        DsFamilyResult fam;
        fam.family_seed = family_seed;
        fam.h = h;
        fam.kernel = a;
        for (int n = 2 * h + 1; n <= max_n; ++n) {
            std::vector<Int> window(p.begin(), p.begin() + n + 1);
            bool nz = false;
            for (const auto& x : window) nz |= (x != 0);
            if (!nz) {
                ++fam.skipped;
                continue;
            }
            Profile prof = rank_recurrence(window);
            if (prof.ds_skipped || !prof.ds_ratio) {
                ++fam.skipped;
                continue;
            }
            fam.ratios.push_back(prof.ds_ratio->hi);
        }
        if (fam.ratios.size() < 2) continue;  // not enough usable windows
        std::vector<Rat> sorted = fam.ratios;
        std::sort(sorted.begin(), sorted.end());
        Rat median = sorted[sorted.size() / 2];
        Rat mx = sorted.back();
        fam.max_over_median = sgn(median) > 0 ? Rat(mx / median) : Rat(0);
        out.push_back(std::move(fam));
        ++made;
    }
    if (made < families) throw BudgetError("could not generate enough usable recurrence families");
    return out;
}

}  // namespace hankel
}  // namespace dal
