#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dal/realspec.hpp"

namespace dal {

struct CatalogEntry {
    std::string name;  // unique within the catalog
    RealSpec spec;
    std::optional<Rat> expected_lambda1;
    bool slow_convergent = false;  // estimator needs more than Q = 1e5 to settle
    std::string notes;
};

// Continued-fraction construction with partial quotients a_{k+1} = ceil(q_k^(w-1)),
// so convergent denominators satisfy ||q xi|| ~ q^-w and the measured
// lambda_1 comes out at w. Rejects w <= 1 (Dirichlet already gives 1).
RealSpec make_prescribed_lambda1(const Rat& w);

// Deterministic catalog of test reals with known or measured behavior.
std::vector<CatalogEntry> catalog(uint64_t seed = 2024);

}  // namespace dal
