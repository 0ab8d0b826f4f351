#pragma once

#include "root_data.hpp"

#include <string>
#include <vector>

namespace gkm {

struct NamedMatrix {
    std::string name;
    std::vector<std::vector<std::int64_t>> entries;
};

// Small matrices used by the bundled invariant suite.
inline std::vector<NamedMatrix> bundled_matrices() {
    return {
        {"imaginary rank 1 (-1)", {{-1}}},
        {"imaginary rank 1 (0)", {{0}}},
        {"imaginary rank 1 (-2)", {{-2}}},
        {"real rank 1", {{2}}},
        {"mixed rank 2", {{2, -1}, {-1, -2}}},
        {"mixed rank 2, skew", {{2, -1}, {-2, -2}}},
        {"imaginary rank 2, orthogonal", {{-1, 0}, {0, -1}}},
        {"imaginary rank 2", {{-1, -1}, {-1, -2}}},
        {"imaginary rank 2, zero diagonal", {{0, -1}, {-1, -2}}},
    };
}

// Context with bases named after the given pairing vectors ("lambda", "mu", ...).
inline ContextPtr context_with(const std::vector<std::vector<std::int64_t>>& entries,
                               const std::vector<std::pair<std::string, std::vector<std::int64_t>>>& bases = {}) {
    std::vector<BaseWeight> bs;
    for (auto& [name, p] : bases) {
        BaseWeight b;
        b.name = name;
        for (auto x : p) b.pairings.emplace_back(static_cast<long>(x));
        bs.push_back(std::move(b));
    }
    return make_context(validate_matrix(entries), std::move(bs));
}

}  // namespace gkm
