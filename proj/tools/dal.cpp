// dal: exact-arithmetic toolkit for simultaneous rational approximation
// experiments. Subcommands: scan, exponents, hankel, classify, collapse,
// transfer, bounds, verify, catalog.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dal/bounds.hpp"
#include "dal/hankel.hpp"
#include "dal/numbers.hpp"
#include "dal/records.hpp"
#include "dal/transfer.hpp"
#include "dal/util.hpp"
#include "dal/veronese.hpp"

using json = nlohmann::ordered_json;
using namespace dal;

namespace {

json iv_json(const Interval& iv) {
    return json{{"lo", rat_to_string(iv.lo)}, {"hi", rat_to_string(iv.hi)},
                {"dec", dec_str(iv.hi, 9)}};
}

std::vector<Int> parse_tuple(const std::string& text) {
    std::vector<Int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        Int v;
        if (tok.empty() || v.set_str(tok, 10) != 0) throw SpecError("bad integer tuple: " + text);
        out.push_back(v);
    }
    if (out.size() < 2) throw SpecError("tuple needs at least two entries");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

void emit(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
        std::cout << bytes;
    } else {
        atomic_write(path, bytes);
    }
}

ApproxVector tuple_to_vector(const std::vector<Int>& t) {
    ApproxVector v;
    v.q = t[0];
    v.p.assign(t.begin() + 1, t.end());
    v.n = static_cast<int>(v.p.size());
    v.rho = Interval(Rat(0), Rat(1, 2));
    return v;
}

json estimate_json(const ExponentEstimate& est) {
    json j;
    j["estimate"] = dec_str(est.estimate, 6);
    j["estimate_exact"] = rat_to_string(est.estimate);
    j["infinite"] = est.infinite;
    j["records"] = est.record_count;
    j["window"] = est.window;
    json pw = json::array(), sl = json::array(), cr = json::array();
    for (const auto& v : est.pointwise) pw.push_back(dec_str(v, 6));
    for (const auto& v : est.slopes) sl.push_back(dec_str(v, 6));
    for (const auto& v : est.cross) cr.push_back(dec_str(v, 6));
    j["pointwise"] = pw;
    j["slopes"] = sl;
    j["cross"] = cr;
    return j;
}

struct VerifyState {
    int checked = 0;
    int failed = 0;
    void line(const std::string& name, bool pass, const std::string& detail = "") {
        ++checked;
        if (!pass) ++failed;
        std::cout << (pass ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) std::cout << " - " << detail;
        std::cout << "\n";
    }
};

Rat record_exponent(const ApproxVector& rec) {
    return -log2_approx(rec.rho.hi) / log2_approx(Rat(rec.q));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for simultaneous rational approximation"};
    app.set_config("--config", "", "key=value configuration file (flags win)");
    unsigned threads = default_thread_count();
    app.add_option("--threads", threads, "worker pool size");
    uint64_t seed = 2024;
    app.add_option("--seed", seed, "seed for the pseudo-random catalog entries");
    app.require_subcommand(1);

    ScanOptions opts;

    auto* scan = app.add_subcommand("scan", "best-record or good-approximation scan");
    std::string scan_xi, scan_out;
    int scan_n = 1;
    std::string scan_qmax = "1000";
    std::string scan_lambda, scan_c = "1";
    scan->add_option("--xi", scan_xi, "real number spec")->required();
    scan->add_option("--n", scan_n, "dimension (number of powers)")->required();
    scan->add_option("--qmax", scan_qmax, "largest denominator");
    scan->add_option("--lambda", scan_lambda, "good-approximation level (enables enumeration mode)");
    scan->add_option("--c", scan_c, "implied constant C");
    scan->add_option("--out", scan_out, "output record file (JSONL)");

    auto* expo = app.add_subcommand("exponents", "windowed exponent estimates from scans");
    std::string ex_xi, ex_qmax = "100000", ex_json;
    int ex_n = 1, ex_k = 2;
    std::string ex_mode = "lambda", ex_hmax = "50";
    expo->add_option("--xi", ex_xi)->required();
    expo->add_option("--n", ex_n, "dimension for lambda/uniform modes");
    expo->add_option("--qmax", ex_qmax);
    expo->add_option("--mode", ex_mode, "lambda | uniform | w | wlead | wcst");
    expo->add_option("--k", ex_k, "degree for the w modes");
    expo->add_option("--hmax", ex_hmax, "height ladder top for the w modes");
    expo->add_option("--json", ex_json, "write the full report as JSON");

    auto* hank = app.add_subcommand("hankel", "determinant profiles and recurrence kernels");
    std::string h_tuple, h_in, h_sizes = "2,3", h_json;
    hank->add_option("--tuple", h_tuple, "integer tuple p0,p1,...");
    hank->add_option("--in", h_in, "record file to profile");
    hank->add_option("--sizes", h_sizes, "Hankel orders for the minor map");
    hank->add_option("--json", h_json, "write profiles as JSON");

    auto* cls = app.add_subcommand("classify", "Veronese / monomial-curve classification");
    std::string c_tuple, c_in, c_xi, c_degrees, c_lambda = "2", c_json;
    cls->add_option("--tuple", c_tuple, "integer tuple q,p1,...");
    cls->add_option("--in", c_in, "record file to classify");
    cls->add_option("--xi", c_xi, "spec for the distance report");
    cls->add_option("--degrees", c_degrees, "monomial curve degrees d1,d2,... (d1 = 1)");
    cls->add_option("--lambda", c_lambda, "hypothesis level for the degree-vector case");
    cls->add_option("--json", c_json);

    auto* col = app.add_subcommand("collapse", "curve-collapse audit of good approximations");
    std::string col_xi, col_qmax = "1000000", col_lambda = "2", col_c = "1", col_q0, col_json;
    int col_n = 2;
    col->add_option("--xi", col_xi)->required();
    col->add_option("--n", col_n);
    col->add_option("--lambda", col_lambda);
    col->add_option("--c", col_c);
    col->add_option("--qmax", col_qmax);
    col->add_option("--q0", col_q0, "threshold override (measured when absent)");
    col->add_option("--json", col_json);

    auto* tra = app.add_subcommand("transfer", "convex-body witnesses and going-up steps");
    std::string t_xi, t_height = "10", t_mode = "lead", t_qmax = "100000", t_json;
    std::string t_kind = "lift";
    int t_k = 2, t_n = 3;
    tra->add_option("--kind", t_kind, "lift | goingup");
    tra->add_option("--xi", t_xi)->required();
    tra->add_option("--k", t_k);
    tra->add_option("--n", t_n, "target dimension for lift");
    tra->add_option("--height", t_height, "form height bound for lift");
    tra->add_option("--mode", t_mode, "all | lead | cst");
    tra->add_option("--qmax", t_qmax, "scan depth for goingup record selection");
    tra->add_option("--json", t_json);

    auto* bnd = app.add_subcommand("bounds", "closed-form dimension bounds");
    std::string b_grid, b_point, b_csv, b_svg, b_json;
    int b_n = 3;
    bool b_thresholds = false;
    bnd->add_option("--n", b_n)->required();
    bnd->add_option("--grid", b_grid, "lo:hi:step (rationals or decimals)");
    bnd->add_option("--point", b_point, "single lambda");
    bnd->add_option("--csv", b_csv);
    bnd->add_option("--svg", b_svg);
    bnd->add_option("--json", b_json);
    bnd->add_flag("--thresholds", b_thresholds, "verify the exact threshold identities");

    auto* ver = app.add_subcommand("verify", "aggregated audit suites");
    std::string v_xi = "golden", v_qmax = "100000", v_suite = "all", v_lambda = "2", v_c = "1";
    int v_n = 2;
    ver->add_option("--suite", v_suite,
                    "all | roundtrip | minors | collapse | uniform | inequalities | ds");
    ver->add_option("--xi", v_xi);
    ver->add_option("--n", v_n);
    ver->add_option("--qmax", v_qmax);
    ver->add_option("--lambda", v_lambda);
    ver->add_option("--c", v_c);

    auto* cat = app.add_subcommand("catalog", "test-number catalog");
    std::string cat_out;
    cat->add_option("--out", cat_out, "write as JSONL");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    opts.threads = threads;

    try {
        if (*scan) {
            Int qmax(scan_qmax);
            bool good_mode = !scan_lambda.empty();
            RecordHeader header =
                make_header(RealSpec::parse(scan_xi).str(), scan_n, qmax,
                            good_mode ? "good" : "best", rat_from_string(scan_c),
                            good_mode ? rat_from_string(scan_lambda) : Rat(0));
            std::string bytes;
            if (auto hit = cache_lookup(header)) {
                bytes = *hit;
            } else {
                RealSpec spec = RealSpec::parse(scan_xi);
                ScanResult res = good_mode
                                     ? good_approx_enum(spec, scan_n, rat_from_string(scan_lambda),
                                                        rat_from_string(scan_c), qmax, opts)
                                     : best_approx_scan(spec, scan_n, qmax, opts);
                bytes = records_to_jsonl(header, res.records);
                if (res.degenerate_hit)
                    std::cerr << "note: exact rho = 0 at q = " << res.degenerate_q.get_str()
                              << " (degenerate hit)\n";
                cache_store(header, bytes);
            }
            emit(scan_out, bytes);
            if (!scan_out.empty())
                std::cout << "wrote " << scan_out << " (" << bytes.size() << " bytes)\n";
            return 0;
        }

        if (*expo) {
            RealSpec spec = RealSpec::parse(ex_xi);
            json out;
            out["spec"] = spec.str();
            if (ex_mode == "lambda" || ex_mode == "uniform") {
                Int qmax(ex_qmax);
                ScanResult res = best_approx_scan(spec, ex_n, qmax, opts);
                ExponentEstimate est = estimate_exponent(
                    res.records,
                    ex_mode == "uniform" ? ExponentMode::UniformLambdaN : ExponentMode::LambdaN, 0,
                    qmax);
                out["mode"] = ex_mode;
                out["n"] = ex_n;
                out["qmax"] = qmax.get_str();
                out["result"] = estimate_json(est);
                std::cout << "spec " << spec.str() << " mode " << ex_mode << " n=" << ex_n
                          << ": estimate " << dec_str(est.estimate, 4) << " from "
                          << est.record_count << " records\n";
            } else if (ex_mode == "w" || ex_mode == "wlead" || ex_mode == "wcst") {
                WMode m =
                    ex_mode == "w" ? WMode::All : (ex_mode == "wlead" ? WMode::Lead : WMode::Cst);
                WEstimate w = estimate_w(spec, ex_k, Int(ex_hmax), m, opts);
                out["mode"] = ex_mode;
                out["k"] = ex_k;
                if (w.algebraic_hit) {
                    out["algebraic_hit"] = true;
                    json z = json::array();
                    for (const auto& c : w.zero_coeffs) z.push_back(c.get_str());
                    out["zero_coeffs"] = z;
                    std::cout << "algebraic hit: a degree-" << ex_k
                              << " integer polynomial vanishes exactly\n";
                } else {
                    out["estimate"] = dec_str(w.estimate, 6);
                    json ladder = json::array();
                    for (const auto& step : w.ladder) {
                        json s;
                        s["H"] = step.height.get_str();
                        json cs = json::array();
                        for (const auto& c : step.coeffs) cs.push_back(c.get_str());
                        s["coeffs"] = cs;
                        s["value"] = iv_json(step.value);
                        s["exponent"] = dec_str(step.exponent, 6);
                        ladder.push_back(s);
                    }
                    out["ladder"] = ladder;
                    std::cout << "spec " << spec.str() << " mode " << ex_mode << " k=" << ex_k
                              << ": estimate " << dec_str(w.estimate, 4) << "\n";
                }
            } else {
                throw SpecError("unknown mode: " + ex_mode);
            }
            if (!ex_json.empty()) emit(ex_json, out.dump(2) + "\n");
            return 0;
        }

        if (*hank) {
            std::vector<std::vector<Int>> tuples;
            bool from_file = !h_in.empty();
            if (!h_tuple.empty()) tuples.push_back(parse_tuple(h_tuple));
            if (from_file) {
                RecordFile rf = parse_jsonl(read_file(h_in));
                for (const auto& r : rf.records) tuples.push_back(r.full_tuple());
            }
            if (tuples.empty()) {
                if (from_file) {
                    std::cout << "inconclusive: no records\n";
                    return 0;
                }
                throw SpecError("hankel needs --tuple or --in");
            }
            std::vector<int> sizes = parse_int_list(h_sizes);
            json out = json::array();
            for (const auto& t : tuples) {
                auto prof = hankel::rank_recurrence(t);
                json j;
                json tj = json::array();
                for (const auto& x : t) tj.push_back(x.get_str());
                j["tuple"] = tj;
                json d2 = json::array();
                for (const auto& d : prof.delta2) d2.push_back(d.get_str());
                j["delta2"] = d2;
                json minors = json::array();
                for (int m : sizes) {
                    for (int k = m - 1; k + m - 1 <= prof.n; ++k)
                        minors.push_back(
                            json{{"m", m}, {"k", k}, {"det", hankel::minor(t, m, k).get_str()}});
                }
                j["minors"] = minors;
                j["h"] = prof.h;
                json ker = json::array();
                for (const auto& a : prof.kernel) ker.push_back(a.get_str());
                j["kernel"] = ker;
                j["height"] = prof.height.get_str();
                j["Z"] = prof.Z.get_str();
                j["ds_skipped"] = prof.ds_skipped;
                if (prof.ds_ratio) j["ds_ratio"] = iv_json(*prof.ds_ratio);
                out.push_back(j);
                std::cout << "tuple n=" << prof.n << ": h=" << prof.h << ", kernel (";
                for (size_t i = 0; i < prof.kernel.size(); ++i)
                    std::cout << (i ? ", " : "") << prof.kernel[i].get_str();
                std::cout << "), Z=" << prof.Z.get_str() << "\n";
            }
            if (!h_json.empty()) emit(h_json, out.dump(2) + "\n");
            return 0;
        }

        if (*cls) {
            std::vector<ApproxVector> vecs;
            bool from_file = !c_in.empty();
            if (!c_tuple.empty()) vecs.push_back(tuple_to_vector(parse_tuple(c_tuple)));
            if (from_file) {
                RecordFile rf = parse_jsonl(read_file(c_in));
                for (const auto& r : rf.records) vecs.push_back(r);
            }
            if (vecs.empty()) {
                if (from_file) {
                    std::cout << "inconclusive: no records\n";
                    return 0;
                }
                throw SpecError("classify needs --tuple or --in");
            }
            std::optional<RealSpec> spec;
            if (!c_xi.empty()) spec = RealSpec::parse(c_xi);
            json out = json::array();
            for (const auto& v : vecs) {
                veronese::Classification c =
                    c_degrees.empty()
                        ? veronese::classify(v, spec ? &*spec : nullptr)
                        : veronese::classify_general(v.q, v.p, parse_int_list(c_degrees),
                                                     rat_from_string(c_lambda),
                                                     spec ? &*spec : nullptr);
                json j;
                j["q"] = v.q.get_str();
                j["on_curve"] = c.on_curve;
                if (c.on_curve) {
                    j["a"] = c.a.get_str();
                    j["b"] = c.b.get_str();
                    j["divisibility"] = c.divisibility;
                    if (c.distance) j["distance"] = iv_json(*c.distance);
                } else {
                    j["fail_j"] = c.fail_j;
                    j["fail_delta"] = c.fail_delta.get_str();
                    j["diagnostic"] = c.diagnostic;
                }
                out.push_back(j);
                std::cout << "q=" << v.q.get_str() << ": "
                          << (c.on_curve
                                  ? "on_curve(" + c.a.get_str() + "/" + c.b.get_str() + ")"
                                  : "off_curve at j=" + std::to_string(c.fail_j))
                          << "\n";
            }
            if (!c_json.empty()) emit(c_json, out.dump(2) + "\n");
            return 0;
        }

        if (*col) {
            RealSpec spec = RealSpec::parse(col_xi);
            std::optional<Int> q0;
            if (!col_q0.empty()) q0 = Int(col_q0);
            auto rep = veronese::collapse_audit(spec, col_n, rat_from_string(col_lambda),
                                                rat_from_string(col_c), Int(col_qmax), q0, opts);
            json out;
            out["spec"] = spec.str();
            out["n"] = col_n;
            out["lambda"] = col_lambda;
            out["degenerate"] = rep.degenerate;
            out["inconclusive"] = rep.inconclusive;
            out["q0"] = rep.q0.get_str();
            out["members"] = rep.members.size();
            out["on_curve_past_q0"] = rep.on_curve_past_q0;
            json cex = json::array();
            for (const auto& q : rep.counterexamples) cex.push_back(q.get_str());
            out["counterexamples"] = cex;
            out["pass"] = rep.pass;
            json rows = json::array();
            for (const auto& m : rep.members) {
                json j;
                j["q"] = m.vec.q.get_str();
                j["on_curve"] = m.cls.on_curve;
                if (m.cls.on_curve) {
                    j["a"] = m.cls.a.get_str();
                    j["b"] = m.cls.b.get_str();
                    j["divisibility_ok"] = m.divisibility_ok;
                    j["displacement_ok"] = m.displacement_ok;
                }
                rows.push_back(j);
            }
            out["rows"] = rows;
            if (!col_json.empty()) emit(col_json, out.dump(2) + "\n");
            std::cout << (rep.inconclusive
                              ? std::string("inconclusive: no good approximations at this level")
                              : "q0 = " + rep.q0.get_str() + ", " +
                                    std::to_string(rep.on_curve_past_q0) + " on-curve past it, " +
                                    std::to_string(rep.counterexamples.size()) +
                                    " counterexamples")
                      << (rep.pass ? " [pass]" : " [fail]") << "\n";
            return rep.pass || rep.inconclusive ? 0 : 1;
        }

        if (*tra) {
            RealSpec spec = RealSpec::parse(t_xi);
            json out;
            out["spec"] = spec.str();
            if (t_kind == "lift") {
                WMode m =
                    t_mode == "all" ? WMode::All : (t_mode == "cst" ? WMode::Cst : WMode::Lead);
                transfer::LinearForm f =
                    transfer::find_small_form(spec, t_k, Int(t_height), m, opts);
                if (f.algebraic_hit) {
                    std::cout << "algebraic hit: no positive form value at this degree\n";
                    out["algebraic_hit"] = true;
                    if (!t_json.empty()) emit(t_json, out.dump(2) + "\n");
                    return 0;
                }
                transfer::LiftWitness w =
                    transfer::minkowski_lift(f, spec, t_n, 100000000ULL, opts);
                json fj;
                json fa = json::array();
                for (const auto& a : f.a) fa.push_back(a.get_str());
                fj["coeffs"] = fa;
                fj["height"] = f.height.get_str();
                fj["rho"] = iv_json(f.rho);
                out["form"] = fj;
                out["found"] = w.found;
                if (w.found) {
                    json vj = json::array();
                    for (const auto& x : w.v) vj.push_back(x.get_str());
                    out["witness"] = vj;
                    out["target"] = iv_json(w.target);
                    json res = json::array();
                    for (const auto& r : w.residuals) res.push_back(r.get_str());
                    out["residuals"] = res;
                    out["v0_bound"] = dec_str(w.v0_bound, 6);
                    out["v0_ok"] = w.v0_ok;
                    json tails = json::array();
                    for (const auto& r : w.tail_ratio) tails.push_back(dec_str(r, 6));
                    out["tail_ratio"] = tails;
                    bool zero = std::all_of(w.residuals.begin(), w.residuals.end(),
                                            [](const Int& r) { return r == 0; });
                    std::cout << "witness v = (";
                    for (size_t i = 0; i < w.v.size(); ++i)
                        std::cout << (i ? ", " : "") << w.v[i].get_str();
                    std::cout << "), residuals all zero: " << (zero ? "yes" : "no") << "\n";
                } else {
                    out["searched_to"] = w.searched_to.get_str();
                    std::cout << "no witness found within budget (searched to v0 = "
                              << w.searched_to.get_str() << ")\n";
                }
            } else if (t_kind == "goingup") {
                ScanResult scan_res = best_approx_scan(spec, t_k, Int(t_qmax), opts);
                if (scan_res.records.empty()) throw SpecError("no records to lift");
                const ApproxVector& deep = scan_res.records.back();
                transfer::GoingUpWitness w =
                    transfer::going_up_witness(spec, t_k, deep, 100000000ULL, opts);
                out["record_q"] = deep.q.get_str();
                out["found"] = w.found;
                if (w.found) {
                    json aj = json::array();
                    for (const auto& a : w.a) aj.push_back(a.get_str());
                    out["form"] = aj;
                    out["h"] = w.h;
                    out["pointwise_exponent"] = dec_str(w.pointwise_exponent, 6);
                    out["new_q"] = w.new_record.q.get_str();
                    out["new_exponent"] = dec_str(w.new_exponent, 6);
                    out["eps_measured"] = dec_str(w.eps_measured, 6);
                    std::cout << "lifted q = " << deep.q.get_str() << " (exponent "
                              << dec_str(w.pointwise_exponent, 4)
                              << ") to q' = " << w.new_record.q.get_str() << " (exponent "
                              << dec_str(w.new_exponent, 4) << ")\n";
                } else {
                    std::cout << "no witness found within budget\n";
                }
            } else {
                throw SpecError("unknown transfer kind: " + t_kind);
            }
            if (!t_json.empty()) emit(t_json, out.dump(2) + "\n");
            return 0;
        }

        if (*bnd) {
            if (!b_point.empty()) {
                bounds::BoundPoint pt = b_point == "inf" ? bounds::evaluate_infinite(b_n)
                                                         : bounds::evaluate(b_n, rat_from_string(b_point));
                std::cout << "n=" << pt.n << " lambda="
                          << (pt.lambda_infinite ? std::string("inf") : rat_to_string(pt.lambda))
                          << " lower23=" << rat_to_string(pt.lower23) << " (k*=" << pt.k_star
                          << ")";
                if (pt.upper23)
                    std::cout << " upper23=" << rat_to_string(*pt.upper23) << " (h*=" << pt.h_star
                              << ")" << (pt.tight ? " tight" : "");
                std::cout << "\n";
            }
            if (b_thresholds) {
                bounds::ThresholdReport rep = bounds::threshold_report(b_n);
                for (const auto& id : rep.identities)
                    std::cout << (id.holds ? "PASS " : "FAIL ") << id.name << " - " << id.detail
                              << "\n";
                for (const auto& s : rep.skipped) std::cout << "SKIP " << s << "\n";
                if (!rep.all_hold) return 1;
            }
            if (!b_grid.empty()) {
                auto c1 = b_grid.find(':');
                auto c2 = b_grid.find(':', c1 + 1);
                if (c1 == std::string::npos || c2 == std::string::npos)
                    throw SpecError("grid must be lo:hi:step");
                bounds::BoundCurve c =
                    bounds::curve(b_n, rat_from_string(b_grid.substr(0, c1)),
                                  rat_from_string(b_grid.substr(c1 + 1, c2 - c1 - 1)),
                                  rat_from_string(b_grid.substr(c2 + 1)));
                if (!b_csv.empty()) {
                    std::ostringstream os;
                    bounds::write_csv(os, c);
                    emit(b_csv, os.str());
                }
                if (!b_svg.empty()) {
                    std::ostringstream os;
                    bounds::write_svg(os, c);
                    emit(b_svg, os.str());
                }
                if (!b_json.empty()) {
                    json out;
                    out["n"] = c.n;
                    out["tight_start"] = rat_to_string(c.tight_start);
                    json th = json::array();
                    for (const auto& t : c.thresholds)
                        th.push_back(json{{"lambda", rat_to_string(t.lambda)}, {"what", t.what}});
                    out["thresholds"] = th;
                    out["points"] = c.points.size();
                    emit(b_json, out.dump(2) + "\n");
                }
                std::cout << "sampled " << c.points.size() << " points; tight from "
                          << rat_to_string(c.tight_start) << "; " << c.thresholds.size()
                          << " grid threshold events\n";
            }
            return 0;
        }

        if (*ver) {
            RealSpec spec = RealSpec::parse(v_xi);
            Int qmax(v_qmax);
            Rat lambda = rat_from_string(v_lambda);
            Rat C = rat_from_string(v_c);
            VerifyState st;
            bool all = v_suite == "all";

            std::vector<ApproxVector> records;
            if (all || v_suite == "roundtrip" || v_suite == "minors") {
                records = best_approx_scan(spec, v_n, qmax, opts).records;
            }

            if (all || v_suite == "roundtrip") {
                bool ok = true;
                Rat worst(0);
                for (const auto& rec : records) {
                    if (rec.q < 100) continue;
                    Rat e = record_exponent(rec);
                    auto rep = hankel::roundtrip_audit(rec, spec, e, Rat(1));
                    ok = ok && rep.comparability_ok && rep.forward_pass;
                    worst = std::max(
                        std::max(worst, rep.forward_constant),
                        std::max(rep.delta_constant, rep.converse_constant));
                }
                st.line("displacement roundtrip", ok, "max constant " + dec_str(worst, 3));
            }
            if (all || v_suite == "minors") {
                bool ok = true;
                Rat worst(0);
                for (const auto& rec : records) {
                    if (rec.q < 100) continue;
                    Rat e = record_exponent(rec);
                    auto audit = hankel::minor_growth_audit(rec, spec, e, Rat(1));
                    ok = ok && audit.all_pass;
                    worst = std::max(worst, audit.max_measured);
                }
                bool chain = true;
                for (const auto& rec : records)
                    chain = chain && veronese::dodgson_chain_holds(rec.full_tuple());
                st.line("minor growth", ok, "max measured " + dec_str(worst, 3));
                st.line("determinant product chain", chain);
            }
            if (all || v_suite == "collapse") {
                if (lambda > 1) {
                    auto rep = veronese::collapse_audit(spec, v_n, lambda, C, qmax, {}, opts);
                    if (rep.degenerate) {
                        st.line("collapse", false, "degenerate hit (rational value)");
                    } else if (rep.inconclusive) {
                        st.line("collapse", true, "inconclusive: empty enumeration");
                    } else {
                        st.line("collapse", rep.pass,
                                "q0 = " + rep.q0.get_str() + ", on-curve past q0: " +
                                    std::to_string(rep.on_curve_past_q0));
                    }
                } else {
                    st.line("collapse", true, "skipped: needs lambda > 1");
                }
            }
            if ((all || v_suite == "uniform") && v_n >= 2) {
                auto rep = veronese::uniform_bound_audit(spec, v_n, qmax, {}, opts);
                if (rep.insufficient)
                    st.line("uniform bound", true, "insufficient records, skipped");
                else
                    st.line("uniform bound", rep.pass,
                            dec_str(rep.uniform_estimate, 3) + " <= " + dec_str(rep.bound, 3) +
                                " + " + dec_str(rep.tolerance, 3));
                // concrete determinant/divisibility walk from the deepest record
                ScanResult one = best_approx_scan(spec, 1, qmax, opts);
                if (!one.records.empty() && one.records.back().q > 1) {
                    auto tr = veronese::divisibility_trace(spec, v_n, one.records.back().q,
                                                           Rat(3, 2), opts);
                    std::string what = tr.contradiction
                                           ? "chain forced to the contradiction"
                                           : (tr.note.empty() ? "chain incomplete" : tr.note);
                    st.line("divisibility trace", true,
                            "q = " + tr.q.get_str() + ", x = " + tr.x.get_str() + ": " + what);
                }
            }
            if (all || v_suite == "inequalities") {
                transfer::EstimateSet est;
                for (int n = 1; n <= std::max(3, v_n); ++n) {
                    ScanResult r = best_approx_scan(spec, n, qmax, opts);
                    if (r.records.size() < 3) continue;
                    auto le = estimate_exponent(r.records, ExponentMode::LambdaN, 0, qmax);
                    est.lambda[n] = le.estimate;
                    est.lambda_infinite[n] = le.infinite;
                    auto ue = estimate_exponent(r.records, ExponentMode::UniformLambdaN, 0, qmax);
                    est.uniform_lambda[n] = ue.estimate;
                }
                auto rep = transfer::inequality_audit(est, Rat(3, 10));
                for (const auto& row : rep.rows)
                    st.line("inequality " + row.name, row.pass,
                            dec_str(row.lhs, 3) + " vs " + dec_str(row.rhs, 3) + " margin " +
                                dec_str(row.margin, 3));
                for (const auto& s : rep.skipped) std::cout << "SKIP " << s << "\n";
            }
            if (all || v_suite == "ds") {
                auto fams = hankel::ds_family_audit(20, seed, 12, 50);
                bool ok = true;
                Rat worst(0);
                for (const auto& f : fams) {
                    ok = ok && f.max_over_median <= 10;
                    worst = std::max(worst, f.max_over_median);
                }
                st.line("height-bound families", ok, "max/median up to " + dec_str(worst, 3));
            }
            std::cout << st.checked << " checks, " << st.failed << " failed\n";
            return st.failed == 0 ? 0 : 1;
        }

        if (*cat) {
            auto entries = catalog(seed);
            std::ostringstream os;
            for (const auto& e : entries) {
                json j;
                j["name"] = e.name;
                j["spec"] = e.spec.str();
                if (e.expected_lambda1)
                    j["expected_lambda1"] = rat_to_string(*e.expected_lambda1);
                else
                    j["expected_lambda1"] = nullptr;
                j["slow_convergent"] = e.slow_convergent;
                j["notes"] = e.notes;
                os << j.dump() << "\n";
            }
            if (!cat_out.empty()) {
                emit(cat_out, os.str());
                std::cout << "wrote " << entries.size() << " entries\n";
            } else {
                std::cout << os.str();
            }
            return 0;
        }
    } catch (const BudgetError& e) {
        json err{{"error", {{"code", 4}, {"kind", "budget"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 4;
    } catch (const PrecisionError& e) {
        json err{{"error", {{"code", 4}, {"kind", "precision"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 4;
    } catch (const SpecError& e) {
        json err{{"error", {{"code", 3}, {"kind", "precondition"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        json err{{"error", {{"code", 3}, {"kind", "error"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 3;
    }
    return 0;
}
