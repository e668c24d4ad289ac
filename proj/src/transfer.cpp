#include "dal/transfer.hpp"

#include <algorithm>

#include "dal/util.hpp"

namespace dal {
namespace transfer {

LinearForm find_small_form(const RealSpec& spec, int k, const Int& H, WMode mode,
                           const ScanOptions& opts) {
    BoxMin bm = box_min_form(spec, k, H, mode, opts);
    LinearForm f;
    f.k = k;
    f.mode = mode;
    f.a = bm.coeffs;
    Int h(0);
    for (const auto& c : f.a) h = std::max(h, Int(abs(c)));
    f.height = h;
    f.rho = bm.value;
    f.algebraic_hit = bm.exact_zero;
    return f;
}

namespace {

Int ceil_of(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

// Integer range [ceil(lo), floor(hi)] of candidates certified to cover all
// integers within distance T of v0 * xi^j.
std::pair<Int, Int> candidate_range(const Interval& center, const Rat& T) {
    return {ceil_of(center.lo - T), floor_rat(center.hi + T)};
}

}  // namespace

LiftWitness minkowski_lift(const LinearForm& form, const RealSpec& spec, int n, uint64_t budget,
                           const ScanOptions&) {
    const int k = form.k;
    if (k < 2 || k > n) throw SpecError("minkowski_lift needs 2 <= k <= n");
    if (form.algebraic_hit) throw SpecError("minkowski_lift needs rho > 0 (no algebraic hit)");
    if (form.a[static_cast<size_t>(k)] == 0) throw SpecError("minkowski_lift needs a_k != 0");
    if (!(sgn(form.rho.lo) > 0)) throw SpecError("minkowski_lift needs a certified positive rho");

    LiftWitness wit;
    const Int ak = abs(form.a[static_cast<size_t>(k)]);
    // T = |a_k|^((n-k)/k) * rho^(1/k)
    Interval akp = pow_interval(ak, make_rat(Int(n - k), Int(k)), 64);
    Interval rho_root = Interval(rat_pow_q(form.rho.lo, Rat(1, k)).lo, rat_pow_q(form.rho.hi, Rat(1, k)).hi);
    wit.target = iv_mul(akp, rho_root);
    const Rat T = wit.target.hi;

    // every body point obeys |rho v_0| <= k H T, so the search is complete
    // within |v_0| <= k H T / rho
    wit.v0_bound = Rat(k) * Rat(form.height) * T / form.rho.lo;
    Int B = ceil_of(wit.v0_bound);

    long bits = std::max<long>(128, ilog2_ceil(B + 2) * (n + 2) + 96);
    RealCtx ctx = build_real_ctx(spec, n, bits);
    std::vector<Interval> pw;
    for (int j = 1; j <= n; ++j) pw.push_back(ctx.power(j));

    uint64_t visited = 0;
    std::vector<Int> v(static_cast<size_t>(n) + 1);

    std::function<bool(int)> search = [&](int j) -> bool {
        // levels j = 1..k-1 choose v_j within the target window; v_k and the
        // tail are forced by the recurrences and only checked.
        if (j <= k - 1) {
            Interval center = iv_mul_int(pw[static_cast<size_t>(j - 1)], v[0]);
            auto [lo, hi] = candidate_range(center, T);
            for (Int c = lo; c <= hi; ++c) {
                if (++visited > budget) throw BudgetError("lift enumeration budget exceeded");
                v[static_cast<size_t>(j)] = c;
                if (search(j + 1)) return true;
            }
            return false;
        }
        // recurrences i = 0..n-k determine v_k..v_n (integrality filters)
        for (int i = 0; i + k <= n; ++i) {
            Int s(0);
            for (int t = 0; t < k; ++t) s += form.a[static_cast<size_t>(t)] * v[static_cast<size_t>(i + t)];
            Int num = -s;
            if (!mpz_divisible_p(num.get_mpz_t(), form.a[static_cast<size_t>(k)].get_mpz_t()))
                return false;
            v[static_cast<size_t>(i + k)] = num / form.a[static_cast<size_t>(k)];
        }
        if (++visited > budget) throw BudgetError("lift enumeration budget exceeded");
        // j <= k displacement targets (j < k held by construction of ranges;
        // verify all of them certified anyway)
        for (int j2 = 1; j2 <= k; ++j2) {
            Interval d = iv_abs(iv_sub(iv_mul_int(pw[static_cast<size_t>(j2 - 1)], v[0]),
                                       Interval(Rat(v[static_cast<size_t>(j2)]))));
            if (!(d.hi <= T)) return false;
        }
        return true;
    };

    bool found = false;
    Int v0(1);
    try {
        for (; v0 <= B && !found; ++v0) {
            v[0] = v0;
            found = search(1);
        }
    } catch (const BudgetError&) {
        wit.searched_to = v0;
        wit.visited = visited;
        return wit;
    }
    wit.visited = visited;
    if (!found) {
        wit.searched_to = B;
        return wit;
    }
    wit.found = true;
    wit.v = v;

    for (int j = 1; j <= n; ++j)
        wit.displacement.push_back(iv_abs(iv_sub(iv_mul_int(pw[static_cast<size_t>(j - 1)], v[0]),
                                                 Interval(Rat(v[static_cast<size_t>(j)])))));
    for (int i = 0; i + k <= n; ++i) {
        Int s(0);
        for (int t = 0; t <= k; ++t) s += form.a[static_cast<size_t>(t)] * v[static_cast<size_t>(i + t)];
        wit.residuals.push_back(s);
    }
    wit.v0_ok = Rat(abs(v[0])) <= wit.v0_bound;
    for (int i = 1; i + k <= n; ++i) {
        const Interval& d = wit.displacement[static_cast<size_t>(i + k - 1)];
        wit.tail_ratio.push_back(sgn(wit.target.lo) > 0 ? Rat(d.hi / wit.target.lo) : Rat(0));
    }
    return wit;
}

GoingUpWitness going_up_witness(const RealSpec& spec, int k, const ApproxVector& record,
                                uint64_t budget, const ScanOptions& opts) {
    if (k < 1) throw SpecError("going_up_witness needs k >= 1");
    if (record.n != k) throw SpecError("record dimension must equal k");
    if (!(sgn(record.rho.hi) > 0)) throw SpecError("going_up_witness needs rho > 0");

    GoingUpWitness wit;
    const Int& q = record.q;
    std::vector<Interval> dists = component_dists(spec, k, q, opts);
    int h = 1;
    for (int j = 2; j <= k; ++j)
        if (dists[static_cast<size_t>(j - 1)].hi > dists[static_cast<size_t>(h - 1)].hi) h = j;
    wit.h = h;

    const Rat rho = record.rho.hi;
    Rat e = -log2_approx(rho) / log2_approx(Rat(q));
    if (sgn(e) <= 0) throw SpecError("record exponent not positive");
    wit.pointwise_exponent = e;

    // displayed bounds with the pointwise exponent standing in for lambda_k
    Rat exp_form = 1 + Rat(k - 1) / (Rat(k) * e);
    wit.form_bound = rat_pow_q(rho, exp_form).hi;
    wit.coeff_bound = rat_pow_q(rho, -Rat(1) / (Rat(k) * e)).hi;
    wit.ah_bound = Rat(q) * rat_pow_q(rho, Rat(k - 1) / (Rat(k) * e)).hi + Rat(k) * wit.coeff_bound;

    Int A = ceil_of(wit.coeff_bound);
    Int Ah = ceil_of(wit.ah_bound);

    long bits = scan_bits(k + 1, q) + 2 * ilog2_ceil(Ah + 2) + 64;
    RealCtx ctx = build_real_ctx(spec, k, bits);
    std::vector<Interval> pw;
    for (int j = 1; j <= k; ++j) pw.push_back(ctx.power(j));

    // enumerate free coefficients a_j (j = 1..k, j != h) in [-A, A] and
    // a_h in [-Ah, Ah]; the exact orthogonality a_0 q = sum a_j p_j fixes a_0
    std::vector<int> free_idx;
    for (int j = 1; j <= k; ++j)
        if (j != h) free_idx.push_back(j);
    free_idx.push_back(h);

    std::vector<Int> a(static_cast<size_t>(k) + 1);
    uint64_t visited = 0;
    bool found = false;

    std::function<bool(size_t)> search = [&](size_t level) -> bool {
        if (level == free_idx.size()) {
            bool allzero = true;
            for (int j = 1; j <= k; ++j) allzero &= (a[static_cast<size_t>(j)] == 0);
            if (allzero) return false;
            if (++visited > budget) throw BudgetError("going-up enumeration budget exceeded");
            Int s(0);
            for (int j = 1; j <= k; ++j) s += a[static_cast<size_t>(j)] * record.p[static_cast<size_t>(j - 1)];
            if (!mpz_divisible_p(s.get_mpz_t(), q.get_mpz_t())) return false;
            a[0] = s / q;
            // |-a_0 + a_1 xi + ... + a_k xi^k| <= rho^(1+(k-1)/(k e))
            Interval val(Rat(-a[0]), Rat(-a[0]));
            for (int j = 1; j <= k; ++j)
                val = iv_add(val, iv_mul_int(pw[static_cast<size_t>(j - 1)], a[static_cast<size_t>(j)]));
            Interval av = iv_abs(val);
            if (!(av.hi <= wit.form_bound)) return false;
            if (a[static_cast<size_t>(k)] == 0) return false;  // degenerate: retry with the next witness
            wit.form_value = av;
            return true;
        }
        int j = free_idx[level];
        const Int bound = (j == h) ? Ah : A;
        for (Int c = -bound; c <= bound; ++c) {
            a[static_cast<size_t>(j)] = c;
            if (search(level + 1)) return true;
        }
        return false;
    };

    try {
        found = search(0);
    } catch (const BudgetError&) {
        wit.visited = visited;
        return wit;
    }
    wit.visited = visited;
    if (!found) return wit;
    wit.found = true;
    wit.a = a;

    Int qprime = abs(a[static_cast<size_t>(k)]) * q;
    wit.new_record = approx_at(spec, k + 1, qprime, opts);
    std::vector<Interval> newdists = component_dists(spec, k + 1, qprime, opts);
    wit.lifted_dist = newdists[static_cast<size_t>(k)];
    // eps' with ||a_k q xi^(k+1)|| <= q^(1/k - e + eps')
    Rat lg = log2_approx(Rat(q));
    Rat measured = log2_approx(wit.lifted_dist.hi) / lg;  // log_q of the distance
    wit.eps_measured = measured - (make_rat(Int(1), Int(k)) - e);
    wit.new_exponent = -log2_approx(wit.new_record.rho.hi) / log2_approx(Rat(qprime));
    return wit;
}

namespace {

void add_ge_row(InequalityReport& rep, const std::string& name, const Rat& lhs, const Rat& rhs,
                const Rat& tol) {
    InequalityRow row;
    row.name = name;
    row.lhs = lhs;
    row.rhs = rhs;
    row.margin = lhs - rhs;
    row.pass = row.margin >= -tol;
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(std::move(row));
}

void add_le_row(InequalityReport& rep, const std::string& name, const Rat& lhs, const Rat& rhs,
                const Rat& tol) {
    InequalityRow row;
    row.name = name;
    row.lhs = lhs;
    row.rhs = rhs;
    row.margin = rhs - lhs;
    row.pass = row.margin >= -tol;
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(std::move(row));
}

}  // namespace

InequalityReport inequality_audit(const EstimateSet& est, const Rat& tol) {
    InequalityReport rep;
    auto inf = [&](int n) {
        auto it = est.lambda_infinite.find(n);
        return it != est.lambda_infinite.end() && it->second;
    };
    bool any_infinite = false;
    for (const auto& [n, flag] : est.lambda_infinite) any_infinite |= flag;
    if (any_infinite) {
        rep.skipped.push_back("degenerate estimates: some lambda is infinite (1/inf read as 0)");
    }

    // going-up: (k+1)(1 + lambda_{k+1}) >= k (1 + lambda_k)
    for (const auto& [k, lk] : est.lambda) {
        auto it = est.lambda.find(k + 1);
        if (it == est.lambda.end()) continue;
        if (inf(k) || inf(k + 1)) continue;
        add_ge_row(rep, "going-up k=" + std::to_string(k), Rat(k + 1) * (1 + it->second),
                   Rat(k) * (1 + lk), tol);
    }
    // chain: lambda_n >= (k lambda_k - n + k)/n for k < n
    for (const auto& [k, lk] : est.lambda) {
        for (const auto& [n, ln] : est.lambda) {
            if (n <= k || inf(k) || inf(n)) continue;
            add_ge_row(rep,
                       "chain k=" + std::to_string(k) + ",n=" + std::to_string(n), ln,
                       (Rat(k) * lk - Rat(n) + Rat(k)) / Rat(n), tol);
        }
    }
    // lead-form transfer: lambda_n >= (w_k^lead - n + k)/((k-1) w_k^lead + n), k >= 2
    for (const auto& [k, wk] : est.w_lead) {
        if (k < 2) continue;
        for (const auto& [n, ln] : est.lambda) {
            if (n < k || inf(n)) continue;
            Rat den = Rat(k - 1) * wk + Rat(n);
            if (sgn(den) <= 0) continue;
            add_ge_row(rep, "lead-transfer k=" + std::to_string(k) + ",n=" + std::to_string(n), ln,
                       (wk - Rat(n) + Rat(k)) / den, tol);
        }
    }
    // Khintchine: lambda_n >= w_n / ((n-1) w_n + n)
    for (const auto& [n, wn] : est.w_all) {
        auto it = est.lambda.find(n);
        if (it == est.lambda.end() || inf(n)) continue;
        Rat den = Rat(n - 1) * wn + Rat(n);
        if (sgn(den) <= 0) continue;
        add_ge_row(rep, "khintchine n=" + std::to_string(n), it->second, wn / den, tol);
    }
    // uniform bound: uniform lambda_n <= max(1/n, 1/lambda_1)
    for (const auto& [n, un] : est.uniform_lambda) {
        auto it = est.lambda.find(1);
        if (it == est.lambda.end()) continue;
        Rat inv = (inf(1) || sgn(it->second) <= 0) ? Rat(0) : Rat(1) / it->second;
        add_le_row(rep, "uniform n=" + std::to_string(n), un, std::max(make_rat(Int(1), Int(n)), inv), tol);
    }
    if (rep.rows.empty()) {
        if (rep.skipped.empty()) throw SpecError("inequality_audit: no checkable estimates");
    }
    return rep;
}

}  // namespace transfer
}  // namespace dal
