#include "dal/records.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dal/util.hpp"

namespace dal {

using json = nlohmann::ordered_json;

std::string RecordHeader::cache_key() const {
    return version + "|" + spec + "|" + std::to_string(n) + "|" + qmax.get_str() + "|" +
           rat_to_string(c) + "|" + rat_to_string(lambda) + "|" + kind;
}

bool RecordHeader::same_run(const RecordHeader& other) const {
    return version == other.version && spec == other.spec && n == other.n && qmax == other.qmax &&
           c == other.c && lambda == other.lambda && kind == other.kind;
}

RecordHeader make_header(const std::string& spec, int n, const Int& qmax, const std::string& kind,
                         const Rat& c, const Rat& lambda) {
    RecordHeader h;
    h.spec = spec;
    h.n = n;
    h.qmax = qmax;
    h.c = c;
    h.lambda = lambda;
    h.kind = kind;
    h.created = hex64(fnv1a64(h.cache_key()));
    return h;
}

std::string records_to_jsonl(const RecordHeader& h, const std::vector<ApproxVector>& records) {
    std::ostringstream os;
    json hd;
    hd["version"] = h.version;
    hd["spec"] = h.spec;
    hd["n"] = h.n;
    hd["qmax"] = h.qmax.get_str();
    hd["c"] = rat_to_string(h.c);
    hd["lambda"] = rat_to_string(h.lambda);
    hd["kind"] = h.kind;
    hd["created"] = h.created;
    os << hd.dump() << "\n";
    for (const auto& r : records) {
        json j;
        j["q"] = r.q.get_str();
        json ps = json::array();
        for (const auto& p : r.p) ps.push_back(p.get_str());
        j["p"] = ps;
        j["rho_lo"] = rat_to_string(r.rho.lo);
        j["rho_hi"] = rat_to_string(r.rho.hi);
        // derived, for human consumption: -log rho_hi / log q
        if (r.q > 1 && sgn(r.rho.hi) > 0) {
            Rat e = -log2_approx(r.rho.hi) / log2_approx(Rat(r.q));
            j["exponent"] = dec_str(e, 6);
        } else {
            j["exponent"] = sgn(r.rho.hi) == 0 ? "inf" : "";
        }
        os << j.dump() << "\n";
    }
    return os.str();
}

RecordFile parse_jsonl(const std::string& text) {
    RecordFile out;
    std::istringstream is(text);
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (!have_header) {
            if (!j.contains("version")) throw SpecError("record file: header missing");
            out.header.version = j["version"].get<std::string>();
            out.header.spec = j["spec"].get<std::string>();
            out.header.n = j["n"].get<int>();
            out.header.qmax = Int(j["qmax"].get<std::string>());
            out.header.c = rat_from_string(j["c"].get<std::string>());
            out.header.lambda = rat_from_string(j["lambda"].get<std::string>());
            out.header.kind = j["kind"].get<std::string>();
            out.header.created = j["created"].get<std::string>();
            have_header = true;
            continue;
        }
        ApproxVector v;
        v.q = Int(j["q"].get<std::string>());
        for (const auto& s : j["p"]) v.p.emplace_back(s.get<std::string>());
        v.n = static_cast<int>(v.p.size());
        v.rho = Interval(rat_from_string(j["rho_lo"].get<std::string>()),
                         rat_from_string(j["rho_hi"].get<std::string>()));
        out.records.push_back(std::move(v));
    }
    if (!have_header) throw SpecError("record file: empty or missing header");
    return out;
}

void atomic_write(const std::string& path, const std::string& bytes) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (p.has_parent_path() && !p.parent_path().empty()) fs::create_directories(p.parent_path());
    std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw SpecError("cannot open for write: " + tmp);
        os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!os) throw SpecError("short write: " + tmp);
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw SpecError("rename failed for " + path + ": " + ec.message());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw SpecError("cannot open: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

namespace {

std::optional<std::string> cache_path(const RecordHeader& h) {
    const char* dir = std::getenv("DAL_CACHE_DIR");
    if (!dir || !*dir) return std::nullopt;
    return std::string(dir) + "/" + hex64(fnv1a64(h.cache_key())) + ".jsonl";
}

}  // namespace

std::optional<std::string> cache_lookup(const RecordHeader& h) {
    auto path = cache_path(h);
    if (!path) return std::nullopt;
    std::error_code ec;
    if (!std::filesystem::exists(*path, ec)) return std::nullopt;
    std::string bytes = read_file(*path);
    try {
        RecordFile rf = parse_jsonl(bytes);
        if (!rf.header.same_run(h)) return std::nullopt;  // hash collision or stale version
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return bytes;
}

void cache_store(const RecordHeader& h, const std::string& bytes) {
    auto path = cache_path(h);
    if (!path) return;
    std::filesystem::create_directories(std::filesystem::path(*path).parent_path());
    atomic_write(*path, bytes);
}

}  // namespace dal
