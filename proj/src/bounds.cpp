#include "dal/bounds.hpp"

#include <algorithm>

#include "dal/util.hpp"

namespace dal {
namespace bounds {

Rat jarnik_besicovitch(const Rat& w) { return Rat(2) / (1 + w); }

Rat bernik(int n, const Rat& w) { return Rat(n + 1) / (w + 1); }

Rat lower16(int n, const Rat& lambda) { return Rat(2) / (Rat(n) * (1 + lambda)); }

Rat lower17(int n, const Rat& lambda) {
    return Rat(n + 1) * (1 - lambda * Rat(n - 1)) / (1 + lambda);
}

Rat lower_beresnevich(int n, const Rat& lambda) { return Rat(n + 1) / (lambda + 1) - Rat(n - 1); }

Rat lower23_term(int n, int k, const Rat& lambda) {
    return Rat(k + 1) * (1 - Rat(k - 1) * lambda) / (Rat(n - k + 1) * (1 + lambda));
}

Rat upper23_term(int n, int h, const Rat& lambda) {
    return Rat(h + 1) * (1 - Rat(h - 1) * lambda) / (Rat(n - 2 * h + 2) * (1 + lambda));
}

int index_bound_m(int n, const Rat& lambda) {
    if (sgn(lambda) <= 0) throw SpecError("index_bound_m needs lambda > 0");
    Int fl = floor_rat(Rat(1) / lambda);
    Int m1 = fl + 1;
    Int m2((n + 1) / 2);
    Int m = std::min(m1, m2);
    return static_cast<int>(m.get_si());
}

Rat tight_from(int n) {
    if (n >= 3) return make_rat(Int(n + 4), Int(3 * n));
    return Rat(1);  // n <= 2: the single upper branch opens at lambda > 1
}

namespace {

Rat clip01(const Rat& x) {
    if (sgn(x) < 0) return Rat(0);
    if (x > 1) return Rat(1);
    return x;
}

}  // namespace

BoundPoint evaluate(int n, const Rat& lambda) {
    if (n < 1) throw SpecError("evaluate needs n >= 1");
    if (lambda < make_rat(Int(1), Int(n))) throw SpecError("lambda below the Dirichlet floor 1/n");
    BoundPoint pt;
    pt.n = n;
    pt.lambda = lambda;
    pt.jb = clip01(jarnik_besicovitch(lambda));
    pt.lower16 = clip01(lower16(n, lambda));
    pt.lower17 = clip01(lower17(n, lambda));
    pt.lower17_valid = n == 1 || lambda < make_rat(Int(1), Int(n - 1));
    pt.lower_ber = clip01(lower_beresnevich(n, lambda));
    pt.ber_valid = n >= 2 && make_rat(Int(1), Int(n)) <= lambda &&
                   lambda < make_rat(Int(3), Int(2 * n - 1));

    Rat best(-1);
    for (int k = 1; k <= n; ++k) {
        Rat t = clip01(lower23_term(n, k, lambda));
        if (t > best) {
            best = t;
            pt.k_star = k;
        }
    }
    pt.lower23 = best;

    // The upper bound maximizes over h <= m with m capped at floor((n+1)/2),
    // and the vanishing-minor argument behind the cap needs lambda > 1/m.
    // For even n that is stricter than 1/ceil((n+1)/2); quoting the weaker
    // threshold would put the n = 2 upper bound below the exact dimension
    // (2-lambda)/(1+lambda) on (1/2, 1).
    int floor_half = (n + 1) / 2;
    if (lambda > make_rat(Int(1), Int(floor_half))) {
        pt.m = index_bound_m(n, lambda);
        Rat up(-1);
        for (int h = 1; h <= pt.m; ++h) {
            Rat t = upper23_term(n, h, lambda);
            if (t > up) {
                up = t;
                pt.h_star = h;
            }
        }
        pt.upper23 = clip01(up);
        pt.tight = pt.lower23 == *pt.upper23;
    }
    return pt;
}

BoundPoint evaluate_infinite(int n) {
    if (n < 1) throw SpecError("evaluate needs n >= 1");
    BoundPoint pt;
    pt.n = n;
    pt.lambda_infinite = true;
    pt.jb = 0;
    pt.lower16 = 0;
    pt.lower17 = 0;
    pt.lower_ber = 0;
    pt.lower23 = 0;
    pt.k_star = 1;
    pt.upper23 = Rat(0);
    pt.h_star = 1;
    pt.m = 1;
    pt.tight = true;
    return pt;
}

BoundCurve curve(int n, const Rat& lo, const Rat& hi, const Rat& step) {
    if (!(make_rat(Int(1), Int(n)) <= lo) || !(lo < hi)) throw SpecError("curve needs 1/n <= lo < hi");
    if (sgn(step) <= 0) throw SpecError("curve needs step > 0");
    BoundCurve c;
    c.n = n;
    c.tight_start = tight_from(n);
    for (Rat x = lo; x <= hi; x += step) c.points.push_back(evaluate(n, x));
    for (size_t i = 1; i < c.points.size(); ++i) {
        const BoundPoint& a = c.points[i - 1];
        const BoundPoint& b = c.points[i];
        if (a.k_star != b.k_star)
            c.thresholds.push_back({b.lambda, "k_star " + std::to_string(a.k_star) + "->" +
                                                  std::to_string(b.k_star)});
        if (a.h_star != b.h_star && a.upper23 && b.upper23)
            c.thresholds.push_back({b.lambda, "h_star " + std::to_string(a.h_star) + "->" +
                                                  std::to_string(b.h_star)});
        if (a.upper23.has_value() != b.upper23.has_value())
            c.thresholds.push_back({b.lambda, "upper validity"});
        if (a.tight != b.tight) c.thresholds.push_back({b.lambda, a.tight ? "tight->open" : "open->tight"});
        if (a.ber_valid != b.ber_valid) c.thresholds.push_back({b.lambda, "beresnevich validity"});
        if (a.lower17_valid != b.lower17_valid) c.thresholds.push_back({b.lambda, "khintchine validity"});
    }
    return c;
}

ThresholdReport threshold_report(int n) {
    if (n < 2) throw SpecError("threshold_report needs n >= 2");
    ThresholdReport rep;
    rep.n = n;
    const Rat eps(1, 1000);

    // (i) 2/(n(1+x)) >= 3(1-x)/((n-2)(1+x))  iff  x >= (n+4)/(3n), n >= 3
    if (n >= 3) {
        Rat thr = make_rat(Int(n + 4), Int(3 * n));
        auto h1_ge_h2 = [&](const Rat& x) { return upper23_term(n, 1, x) >= upper23_term(n, 2, x); };
        ThresholdIdentity id;
        id.name = "upper branch crossover at (n+4)/(3n)";
        bool at = h1_ge_h2(thr) && upper23_term(n, 1, thr) == upper23_term(n, 2, thr);
        bool left = !h1_ge_h2(thr - eps);
        bool right = h1_ge_h2(thr + eps);
        id.holds = at && left && right;
        id.detail = "equality at " + rat_to_string(thr) + ", strict on either side";
        rep.identities.push_back(id);
        rep.all_hold = rep.all_hold && id.holds;
    } else {
        rep.skipped.push_back("branch crossover skipped for n = 2 (single branch)");
    }

    // (ii) lower16 == lower_beresnevich at lambda = 2/n, both equal 2/(n+2)
    {
        Rat thr = make_rat(Int(2), Int(n));
        ThresholdIdentity id;
        id.name = "lower bounds coincide at 2/n";
        Rat a = lower16(n, thr), b = lower_beresnevich(n, thr);
        bool at = a == b && a == make_rat(Int(2), Int(n + 2));
        bool left = lower16(n, thr - eps) != lower_beresnevich(n, thr - eps);
        bool right = lower16(n, thr + eps) != lower_beresnevich(n, thr + eps);
        id.holds = at && left && right;
        id.detail = "common value 2/(n+2) = " + rat_to_string(make_rat(Int(2), Int(n + 2)));
        rep.identities.push_back(id);
        rep.all_hold = rep.all_hold && id.holds;
    }

    // (iii) lower23_term(n, m, 1/m) == 1/(n-m+1) for every m <= n
    {
        ThresholdIdentity id;
        id.name = "k = m at lambda = 1/m gives 1/(n-m+1)";
        bool ok = true;
        for (int m = 1; m <= n; ++m) {
            Rat lm = make_rat(Int(1), Int(m));
            Rat target = make_rat(Int(1), Int(n - m + 1));
            if (lower23_term(n, m, lm) != target) ok = false;
            if (m >= 2 && lower23_term(n, m, lm + eps) >= target) ok = false;
            if (lower23_term(n, m, lm - eps) <= target) ok = false;
        }
        id.holds = ok;
        id.detail = "checked m = 1.." + std::to_string(n) + " with +-1/1000 probes";
        rep.identities.push_back(id);
        rep.all_hold = rep.all_hold && id.holds;
    }
    return rep;
}

void write_csv(std::ostream& os, const BoundCurve& c) {
    os << "n,lambda,jb,lower16,lower17,lower_ber,lower23,k_star,upper23,h_star,tight\n";
    for (const auto& p : c.points) {
        os << p.n << "," << dec_str(p.lambda, 9) << "," << dec_str(p.jb, 9) << ","
           << dec_str(p.lower16, 9) << ",";
        if (p.lower17_valid) os << dec_str(p.lower17, 9);
        os << ",";
        if (p.ber_valid) os << dec_str(p.lower_ber, 9);
        os << "," << dec_str(p.lower23, 9) << "," << p.k_star << ",";
        if (p.upper23) os << dec_str(*p.upper23, 9);
        os << ",";
        if (p.upper23) os << p.h_star;
        os << "," << (p.tight ? 1 : 0) << "\n";
    }
}

namespace {

struct SvgMap {
    Rat xlo, xhi;
    int width = 760, height = 460, margin = 50;

    std::string x(const Rat& v) const {
        Rat t = (v - xlo) / (xhi - xlo);
        return dec_str(Rat(margin) + t * Rat(width - 2 * margin), 2);
    }
    std::string y(const Rat& v) const {  // v in [0, 1], flipped
        Rat t = 1 - v;
        return dec_str(Rat(margin) + t * Rat(height - 2 * margin), 2);
    }
};

void polyline(std::ostream& os, const SvgMap& m, const BoundCurve& c, const std::string& color,
              const std::string& name, const std::function<std::optional<Rat>(const BoundPoint&)>& f) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& p : c.points) {
        auto v = f(p);
        if (!v) continue;
        if (!first) os << " ";
        os << m.x(p.lambda) << "," << m.y(*v);
        first = false;
    }
    os << "\"><title>" << name << "</title></polyline>\n";
}

}  // namespace

void write_svg(std::ostream& os, const BoundCurve& c) {
    SvgMap m;
    m.xlo = c.points.front().lambda;
    m.xhi = c.points.back().lambda;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << m.width << "\" height=\""
       << m.height << "\" viewBox=\"0 0 " << m.width << " " << m.height << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << m.width << "\" height=\"" << m.height
       << "\" fill=\"white\"/>\n";
    // axes
    os << "<line x1=\"" << m.margin << "\" y1=\"" << m.height - m.margin << "\" x2=\""
       << m.width - m.margin << "\" y2=\"" << m.height - m.margin
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << m.margin << "\" y1=\"" << m.margin << "\" x2=\"" << m.margin << "\" y2=\""
       << m.height - m.margin << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        Rat v = make_rat(Int(i), Int(4));
        os << "<text x=\"8\" y=\"" << m.y(v) << "\" font-size=\"11\">" << dec_str(v, 2)
           << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        Rat v = m.xlo + (m.xhi - m.xlo) * make_rat(Int(i), Int(5));
        os << "<text x=\"" << m.x(v) << "\" y=\"" << m.height - m.margin + 16
           << "\" font-size=\"11\">" << dec_str(v, 2) << "</text>\n";
    }
    os << "<text x=\"" << m.width / 2 - 60 << "\" y=\"20\" font-size=\"13\">dimension bounds, n="
       << c.n << "</text>\n";
    // tight-region marker
    if (c.tight_start >= m.xlo && c.tight_start <= m.xhi) {
        os << "<line x1=\"" << m.x(c.tight_start) << "\" y1=\"" << m.margin << "\" x2=\""
           << m.x(c.tight_start) << "\" y2=\"" << m.height - m.margin
           << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
        os << "<text x=\"" << m.x(c.tight_start) << "\" y=\"" << m.margin - 6
           << "\" font-size=\"11\">tight from " << dec_str(c.tight_start, 4) << "</text>\n";
    }
    polyline(os, m, c, "#888888", "jb", [](const BoundPoint& p) { return std::optional<Rat>(p.jb); });
    polyline(os, m, c, "#1f77b4", "lower16",
             [](const BoundPoint& p) { return std::optional<Rat>(p.lower16); });
    polyline(os, m, c, "#2ca02c", "lower17", [](const BoundPoint& p) {
        return p.lower17_valid ? std::optional<Rat>(p.lower17) : std::nullopt;
    });
    polyline(os, m, c, "#9467bd", "lower_ber", [](const BoundPoint& p) {
        return p.ber_valid ? std::optional<Rat>(p.lower_ber) : std::nullopt;
    });
    polyline(os, m, c, "#d62728", "lower23",
             [](const BoundPoint& p) { return std::optional<Rat>(p.lower23); });
    polyline(os, m, c, "#ff7f0e", "upper23", [](const BoundPoint& p) { return p.upper23; });
    // legend
    const char* names[] = {"jb", "lower16", "lower17", "lower_ber", "lower23", "upper23"};
    const char* colors[] = {"#888888", "#1f77b4", "#2ca02c", "#9467bd", "#d62728", "#ff7f0e"};
    for (int i = 0; i < 6; ++i) {
        int yy = m.margin + 14 * (i + 1);
        os << "<line x1=\"" << m.width - 150 << "\" y1=\"" << yy << "\" x2=\"" << m.width - 130
           << "\" y2=\"" << yy << "\" stroke=\"" << colors[i] << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << m.width - 124 << "\" y=\"" << yy + 4 << "\" font-size=\"11\">"
           << names[i] << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace bounds
}  // namespace dal
