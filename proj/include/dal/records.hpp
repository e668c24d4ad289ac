#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dal/approx.hpp"

namespace dal {

inline constexpr const char* kFormatVersion = "1";

struct RecordHeader {
    std::string version = kFormatVersion;
    std::string spec;
    int n = 0;
    Int qmax;
    Rat c{1};
    Rat lambda{0};
    std::string kind;     // "best" or "good"
    std::string created;  // deterministic config fingerprint, not wall time

    std::string cache_key() const;
    bool same_run(const RecordHeader& other) const;
};

RecordHeader make_header(const std::string& spec, int n, const Int& qmax, const std::string& kind,
                         const Rat& c = Rat(1), const Rat& lambda = Rat(0));

// One header object, then one JSON object per record. Written atomically
// (temp file + rename). Round-trips bit-identically.
std::string records_to_jsonl(const RecordHeader& h, const std::vector<ApproxVector>& records);
struct RecordFile {
    RecordHeader header;
    std::vector<ApproxVector> records;
};
RecordFile parse_jsonl(const std::string& text);

void atomic_write(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

// Cache keyed by the full header tuple under DAL_CACHE_DIR (disabled when
// the variable is unset). A hit is served only when the stored header
// matches field by field.
std::optional<std::string> cache_lookup(const RecordHeader& h);
void cache_store(const RecordHeader& h, const std::string& bytes);

}  // namespace dal
