#include "dal/polynomial.hpp"

#include <algorithm>
#include <cctype>

namespace dal {

void poly_normalize(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int poly_degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

bool poly_is_zero(const IntPoly& p) {
    for (const auto& c : p)
        if (c != 0) return false;
    return true;
}

Rat poly_eval(const IntPoly& p, const Rat& x) {
    Rat acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

Interval poly_eval_iv(const IntPoly& p, const Interval& x) {
    Interval acc{Rat(0)};
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = iv_add_rat(iv_mul(acc, x), Rat(*it));
    return acc;
}

IntPoly poly_derivative(const IntPoly& p) {
    IntPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    poly_normalize(d);
    return d;
}

IntPoly poly_parse(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
    if (s.empty()) throw SpecError("empty polynomial");
    IntPoly p;
    size_t i = 0;
    auto bump = [&](size_t deg, const Int& coef) {
        if (p.size() <= deg) p.resize(deg + 1, Int(0));
        p[deg] += coef;
    };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+') {
            ++i;
        } else if (s[i] == '-') {
            sign = -1;
            ++i;
        }
        if (i >= s.size()) throw SpecError("dangling sign in polynomial: " + raw);
        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
        Int coef = digits.empty() ? Int(1) : Int(digits);
        size_t deg = 0;
        if (i < s.size() && s[i] == 'x') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string ed;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed += s[i++];
                if (ed.empty()) throw SpecError("missing exponent in polynomial: " + raw);
                deg = std::stoul(ed);
            }
        } else if (digits.empty()) {
            throw SpecError("cannot parse polynomial term: " + raw);
        }
        bump(deg, sign < 0 ? Int(-coef) : coef);
    }
    poly_normalize(p);
    return p;
}

std::string poly_format(const IntPoly& p) {
    if (poly_is_zero(p)) return "0";
    std::string out;
    for (int d = poly_degree(p); d >= 0; --d) {
        const Int& c = p[static_cast<size_t>(d)];
        if (c == 0) continue;
        if (!out.empty()) out += sgn(c) > 0 ? "+" : "-";
        else if (sgn(c) < 0) out += "-";
        Int a = abs(c);
        if (a != 1 || d == 0) out += a.get_str();
        if (d >= 1) out += "x";
        if (d >= 2) out += "^" + std::to_string(d);
    }
    return out;
}

namespace {

using RatPoly = std::vector<Rat>;

void rnormalize(RatPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Rat reval(const RatPoly& p, const Rat& x) {
    Rat acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Remainder of a by b (degrees >= 0), standard long division over Q.
RatPoly rrem(RatPoly a, const RatPoly& b) {
    rnormalize(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        rnormalize(a);
    }
    return a;
}

RatPoly to_rat(const IntPoly& p) {
    RatPoly r;
    r.reserve(p.size());
    for (const auto& c : p) r.emplace_back(c);
    rnormalize(r);
    return r;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rat& x) {
    int vars = 0, prev = 0;
    for (const auto& q : chain) {
        int s = sgn(reval(q, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++vars;
        prev = s;
    }
    return vars;
}

}  // namespace

int sturm_count(const IntPoly& p, const Rat& lo, const Rat& hi) {
    if (poly_is_zero(p)) throw SpecError("sturm_count on zero polynomial");
    if (!(lo < hi)) throw SpecError("sturm_count needs lo < hi");
    if (sgn(poly_eval(p, lo)) == 0 || sgn(poly_eval(p, hi)) == 0)
        throw SpecError("sturm_count endpoints must not be roots");
    std::vector<RatPoly> chain;
    chain.push_back(to_rat(p));
    RatPoly d = to_rat(poly_derivative(p));
    if (!d.empty()) chain.push_back(d);
    while (chain.back().size() > 1) {
        RatPoly r = rrem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    RatPoly x = to_rat(a), y = to_rat(b);
    if (x.empty()) x.swap(y);
    while (!y.empty()) {
        RatPoly r = rrem(x, y);
        x.swap(y);
        y = std::move(r);
    }
    if (x.empty()) return {};
    // Clear denominators and strip content.
    Int den(1);
    for (const auto& c : x) den = den / gcd(den, c.get_den()) * c.get_den();
    IntPoly g;
    g.reserve(x.size());
    for (const auto& c : x) g.push_back(Int(c.get_num() * (den / c.get_den())));
    Int content(0);
    for (const auto& c : g) content = gcd(content, c);
    if (content > 1)
        for (auto& c : g) c /= content;
    if (sgn(g.back()) < 0)
        for (auto& c : g) c = -c;
    return g;
}

Interval bisect_root(const IntPoly& p, Rat lo, Rat hi, long bits) {
    int slo = sgn(poly_eval(p, lo));
    int shi = sgn(poly_eval(p, hi));
    if (slo == 0) return Interval::point(lo);
    if (shi == 0) return Interval::point(hi);
    if (slo == shi) throw SpecError("bisect_root needs a sign change");
    Rat target(Int(1), Int(1) << bits);
    while (hi - lo > target) {
        Rat mid = (lo + hi) / 2;
        int sm = sgn(poly_eval(p, mid));
        if (sm == 0) return Interval::point(mid);
        if (sm == slo) lo = mid;
        else hi = mid;
    }
    return Interval(lo, hi);
}

}  // namespace dal
