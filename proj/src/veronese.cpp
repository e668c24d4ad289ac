#include "dal/veronese.hpp"

#include <algorithm>

#include "dal/hankel.hpp"
#include "dal/util.hpp"

namespace dal {
namespace veronese {

namespace {

// |xi - a/b| with enough refinement that zero is either excluded or exact.
std::optional<Interval> distance_to(const RealSpec& spec, const Rat& ab) {
    if (auto r = spec.exact_rational()) return Interval::point(abs(*r - ab));
    for (long bits = 192; bits <= (1L << 20); bits *= 2) {
        Interval xi = eval_real(spec, bits);
        Interval d = iv_abs(iv_add_rat(xi, -ab));
        if (!d.contains_zero()) return d;
    }
    return std::nullopt;  // could not separate (pathological)
}

Classification geometric_check(const Int& q, const std::vector<Int>& p,
                               const std::vector<long>& degs, const RealSpec* spec) {
    // Verifies p_j * b^{d_j} = q * a^{d_j} for the reduced ratio a/b = p_1/q.
    Classification cls;
    if (p.empty() || p[0] == 0) {
        cls.diagnostic = "zero interior coefficient: ratio undefined";
        return cls;
    }
    Rat ab(p[0], q);
    ab.canonicalize();
    Int a = ab.get_num(), b = ab.get_den();
    for (size_t j = 0; j < p.size(); ++j) {
        Int bd, ad;
        mpz_pow_ui(bd.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(degs[j]));
        mpz_pow_ui(ad.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(degs[j]));
        if (p[j] * bd != q * ad) {
            cls.fail_j = static_cast<int>(j + 1);
            cls.diagnostic = "ratios do not telescope to a single a/b";
            return cls;
        }
    }
    cls.on_curve = true;
    cls.a = a;
    cls.b = b;
    Int bl;
    mpz_pow_ui(bl.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(degs.back()));
    cls.divisibility = mpz_divisible_p(q.get_mpz_t(), bl.get_mpz_t()) != 0;
    if (spec) cls.distance = distance_to(*spec, ab);
    return cls;
}

}  // namespace

Classification classify(const ApproxVector& v, const RealSpec* spec) {
    if (sgn(v.q) <= 0) throw SpecError("classify needs q >= 1");
    std::vector<Int> t = v.full_tuple();
    const int n = v.n;
    for (int j = 1; j <= n - 1; ++j) {
        Int delta = t[static_cast<size_t>(j)] * t[static_cast<size_t>(j)] -
                    t[static_cast<size_t>(j - 1)] * t[static_cast<size_t>(j + 1)];
        if (delta != 0) {
            Classification cls;
            cls.fail_j = j;
            cls.fail_delta = delta;
            cls.diagnostic = "nonvanishing 2x2 determinant";
            return cls;
        }
    }
    std::vector<long> degs;
    for (int j = 1; j <= n; ++j) degs.push_back(j);
    return geometric_check(v.q, v.p, degs, spec);
}

Classification classify_general(const Int& q, const std::vector<Int>& p,
                                const std::vector<int>& degrees, const Rat& lambda,
                                const RealSpec* spec) {
    if (sgn(q) <= 0) throw SpecError("classify_general needs q >= 1");
    const size_t l = degrees.size();
    if (l < 1 || degrees[0] != 1) throw SpecError("degree vector must start at d_1 = 1");
    for (size_t j = 1; j < l; ++j)
        if (degrees[j] <= degrees[j - 1]) throw SpecError("degrees must increase strictly");
    if (p.size() != l) throw SpecError("tuple length must match the degree vector");
    for (size_t j = 1; j < l; ++j) {
        int gap = degrees[j] - degrees[j - 1];
        if (!(lambda > gap))
            throw SpecError("hypothesis rejected: lambda <= d_" + std::to_string(j + 1) + " - d_" +
                            std::to_string(j) + " = " + std::to_string(gap));
    }

    // Generalized 2x2 determinants with p_0 = q, d_0 = 0.
    std::vector<Int> full;
    full.push_back(q);
    for (const auto& x : p) full.push_back(x);
    std::vector<int> d;
    d.push_back(0);
    for (int x : degrees) d.push_back(x);
    for (size_t j = 1; j + 1 < full.size(); ++j) {
        unsigned long g_next = static_cast<unsigned long>(d[j + 1] - d[j]);
        unsigned long g_prev = static_cast<unsigned long>(d[j] - d[j - 1]);
        Int t1, t2, t3;
        mpz_pow_ui(t1.get_mpz_t(), full[j - 1].get_mpz_t(), g_next);
        mpz_pow_ui(t2.get_mpz_t(), full[j + 1].get_mpz_t(), g_prev);
        mpz_pow_ui(t3.get_mpz_t(), full[j].get_mpz_t(), g_next + g_prev);
        Int det = t1 * t2 - t3;
        if (det != 0) {
            Classification cls;
            cls.fail_j = static_cast<int>(j);
            cls.fail_delta = det;
            cls.diagnostic = "nonvanishing generalized determinant";
            return cls;
        }
    }
    std::vector<long> degs;
    for (int x : degrees) degs.push_back(x);
    return geometric_check(q, p, degs, spec);
}

CollapseReport collapse_audit(const RealSpec& spec, int n, const Rat& lambda, const Rat& C,
                              const Int& qmax, std::optional<Int> q0_override,
                              const ScanOptions& opts) {
    if (!(lambda > 1)) throw SpecError("collapse_audit needs lambda > 1");
    CollapseReport rep;
    ScanResult scan = good_approx_enum(spec, n, lambda, C, qmax, opts);
    if (scan.degenerate_hit) {
        rep.degenerate = true;
        rep.pass = false;
        return rep;
    }
    if (scan.records.empty()) {
        rep.inconclusive = true;
        rep.q0 = qmax + 1;
        return rep;
    }
    for (const auto& v : scan.records) {
        CollapseMember m;
        m.vec = v;
        m.cls = classify(v, &spec);
        rep.members.push_back(std::move(m));
    }
    if (q0_override) {
        rep.q0 = *q0_override;
        rep.q0_user_supplied = true;
    } else {
        // Measured threshold: just past the last off-curve member.
        Int q0(1);
        for (const auto& m : rep.members)
            if (!m.cls.on_curve) q0 = std::max(q0, Int(m.vec.q + 1));
        rep.q0 = q0;
    }
    for (auto& m : rep.members) {
        if (m.vec.q < rep.q0) continue;
        if (!m.cls.on_curve) {
            rep.counterexamples.push_back(m.vec.q);
            rep.pass = false;
            continue;
        }
        ++rep.on_curve_past_q0;
        m.divisibility_ok = m.cls.divisibility;
        if (!m.divisibility_ok) rep.pass = false;
        // displacement: |xi - a/b| < C q^(-1-lambda)
        if (m.cls.distance) {
            Interval bound = pow_interval(m.vec.q, -(1 + lambda));
            Rat allowed = C * bound.lo;
            m.displacement_ok = m.cls.distance->hi < allowed;
            if (!m.displacement_ok) {
                // try the upper enclosure of the bound before failing
                Rat allowed_hi = C * bound.hi;
                if (!(m.cls.distance->lo > allowed_hi)) {
                    // undecided against the enclosure; tighten the power
                    Interval bound2 = pow_interval(m.vec.q, -(1 + lambda), 96);
                    m.displacement_ok = m.cls.distance->hi < C * bound2.lo;
                }
            }
            if (!m.displacement_ok) rep.pass = false;
        } else {
            m.displacement_ok = false;
            rep.pass = false;
        }
    }
    return rep;
}

UniformReport uniform_bound_audit(const RealSpec& spec, int n, const Int& qmax,
                                  std::optional<Rat> tolerance, const ScanOptions& opts) {
    if (n < 2) throw SpecError("uniform_bound_audit needs n >= 2");
    UniformReport rep;
    ScanResult sn = best_approx_scan(spec, n, qmax, opts);
    ScanResult s1 = best_approx_scan(spec, 1, qmax, opts);
    if (sn.records.size() < 3 || s1.records.size() < 3) {
        rep.insufficient = true;
        return rep;
    }
    ExponentEstimate un = estimate_exponent(sn.records, ExponentMode::UniformLambdaN, 0, qmax);
    ExponentEstimate l1 = estimate_exponent(s1.records, ExponentMode::LambdaN, 0, qmax);
    rep.uniform_estimate = un.estimate;
    rep.lambda1_estimate = l1.estimate;
    rep.lambda1_infinite = l1.infinite;
    Rat inv_l1 = (l1.infinite || sgn(l1.estimate) <= 0) ? Rat(0) : Rat(1) / l1.estimate;
    rep.bound = std::max(make_rat(Int(1), Int(n)), inv_l1);
    if (tolerance) {
        rep.tolerance = *tolerance;
    } else {
        // 0.2 at qmax = 1e6, scaling like 1/log(qmax)
        rep.tolerance = Rat(1, 5) * log2_approx(Rat(1000000)) / log2_approx(Rat(qmax));
    }
    rep.pass = rep.uniform_estimate <= rep.bound + rep.tolerance;
    return rep;
}

DivisibilityTrace divisibility_trace(const RealSpec& spec, int n, const Int& q, const Rat& v_prime,
                                     const ScanOptions& opts) {
    if (n < 2) throw SpecError("divisibility_trace needs n >= 2");
    if (!(v_prime > 1)) throw SpecError("divisibility_trace needs v' > 1");
    if (!(Rat(v_prime) < Rat(n))) throw SpecError("divisibility_trace needs v' < n");
    DivisibilityTrace tr;
    tr.q = q;
    ApproxVector base = approx_at(spec, 1, q, opts);
    tr.p = base.p[0];
    tr.coprime = gcd(tr.p, tr.q) == 1;

    Interval Xiv = pow_interval(q, v_prime, 64);
    tr.X = floor_rat(Xiv.lo);
    if (tr.X < 2) {
        tr.note = "X too small for a nontrivial candidate";
        return tr;
    }

    // Best simultaneous candidate x < X.
    ScanResult scan = best_approx_scan(spec, n, tr.X - 1, opts);
    if (scan.records.empty()) {
        tr.note = "no candidates below X";
        return tr;
    }
    const ApproxVector& cand = scan.records.back();
    tr.x = cand.q;
    tr.xs = cand.p;
    tr.candidate_quality = cand.rho.hi;
    // premise: quality <= X^(-1/v')
    Interval pb = pow_interval(tr.X, -Rat(1) / v_prime, 64);
    tr.premise_bound = pb.hi;
    tr.premise_holds = cand.rho.hi <= pb.lo;
    if (!tr.premise_holds) {
        tr.note = "premise unsatisfiable at this scale: best candidate quality exceeds X^(-1/v')";
        return tr;
    }

    if (!tr.coprime) {
        tr.note = "gcd(p, q) > 1: the forcing argument does not start";
        return tr;
    }
    // Determinant chain: once q^(j-1) | x, D_j = |q^j x_j - p^j x| is a
    // multiple of q^(j-1); strictly below that threshold it must vanish,
    // and with gcd(p, q) = 1 this forces q^j | x.
    Int qpow_prev(1);  // q^(j-1)
    for (int j = 1; j <= n; ++j) {
        DivisibilityStep step;
        step.j = j;
        Int qj = qpow_prev * q;
        Int pj;
        mpz_pow_ui(pj.get_mpz_t(), tr.p.get_mpz_t(), static_cast<unsigned long>(j));
        step.det = abs(qj * tr.xs[static_cast<size_t>(j - 1)] - pj * tr.x);
        step.threshold = qpow_prev;
        step.forced = step.det < step.threshold || step.det == 0;
        if (step.det == 0) step.divides = mpz_divisible_p(tr.x.get_mpz_t(), qj.get_mpz_t()) != 0;
        tr.steps.push_back(step);
        if (!step.forced || step.det != 0 || !step.divides) {
            tr.note = "chain breaks at power " + std::to_string(j);
            return tr;
        }
        qpow_prev = qj;
    }
    // q^n | x with 1 <= x < X <= q^n: impossible, so the premise contradicts.
    Int qn;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
    if (tr.x >= 1 && tr.x < qn) {
        tr.contradiction = true;
        tr.note = "q^n divides x yet 1 <= x < q^n: premise refuted";
    }
    return tr;
}

bool dodgson_chain_holds(const std::vector<Int>& tuple) {
    const int n = static_cast<int>(tuple.size()) - 1;
    auto delta = [&](int j) -> Int {
        return tuple[static_cast<size_t>(j)] * tuple[static_cast<size_t>(j)] -
               tuple[static_cast<size_t>(j - 1)] * tuple[static_cast<size_t>(j + 1)];
    };
    for (int k = 2; k + 2 <= n; ++k) {
        if (hankel::minor(tuple, 3, k) != 0) continue;
        if (delta(k - 1) * delta(k + 1) != delta(k) * delta(k)) return false;
    }
    return true;
}

}  // namespace veronese
}  // namespace dal
