#include "dal/numbers.hpp"

namespace dal {

RealSpec make_prescribed_lambda1(const Rat& w) {
    if (!(w > 1)) throw SpecError("prescribed lambda_1 needs w > 1");
    RealSpec spec;
    spec.kind = SpecKind::CfPow;
    spec.cfpow_w = w;
    spec.cfpow_w.canonicalize();
    return spec;
}

std::vector<CatalogEntry> catalog(uint64_t seed) {
    std::vector<CatalogEntry> out;
    auto add = [&](const std::string& name, const std::string& spec_text,
                   std::optional<Rat> l1, bool slow, const std::string& notes) {
        CatalogEntry e;
        e.name = name;
        e.spec = RealSpec::parse(spec_text);
        e.expected_lambda1 = std::move(l1);
        e.slow_convergent = slow;
        e.notes = notes;
        out.push_back(std::move(e));
    };

    add("golden", "golden", Rat(1), false,
        "all partial quotients 1; the extremal badly approximable number");
    add("sqrt2", "sqrt:2", Rat(1), false,
        "quadratic; xi^2 = 2 makes every even power exactly rational");
    add("cbrt2", "cbrt:2", Rat(1), true,
        "cubic algebraic; lambda_1 = 1 by Roth, but sporadic large partial "
        "quotients keep the windowed estimate near 1 + log(a)/log(q); "
        "settles within 0.25 only past Q ~ 1e8");
    add("quartic", "algebraic:poly=x^4-x-1,lo=1,hi=2", Rat(1), true,
        "quartic algebraic; lambda_1 = 1 by Roth, same estimate spikes as cbrt2");
    // The series sum 2^-ceil(w^k) has |xi - p_K/q_K| ~ q_K^-w at the partial
    // sums, i.e. ||q xi|| ~ q^(1-w): measured lambda_1 is w - 1.
    add("liouville-w3", "liouville:w=3,base=2", Rat(2), false,
        "very well approximable; partial-sum denominators 2^ceil(3^k)");
    add("liouville-w5", "liouville:w=5,base=2", Rat(4), false, "very well approximable");
    add("liouville-w7", "liouville:w=7,base=2", Rat(6), false, "very well approximable");
    for (int w : {2, 3, 6}) {
        RealSpec spec = make_prescribed_lambda1(Rat(w));
        CatalogEntry e;
        e.name = "prescribed-w" + std::to_string(w);
        e.spec = spec;
        e.expected_lambda1 = Rat(w);
        e.notes = "continued-fraction rule a_{k+1} = ceil(q_k^(w-1))";
        out.push_back(std::move(e));
    }
    for (int i = 0; i < 3; ++i) {
        uint64_t s = seed * 1000 + static_cast<uint64_t>(i) + 1;
        CatalogEntry e;
        e.name = std::string("random-") + static_cast<char>('a' + i);
        e.spec = RealSpec::parse("cfrand:seed=" + std::to_string(s) + ",bound=10");
        e.expected_lambda1 = Rat(1);
        e.slow_convergent = true;
        e.notes =
            "seeded bounded partial quotients; badly approximable, with the "
            "same finite-scale limsup spikes up to 1 + log(11)/log(q)";
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace dal
