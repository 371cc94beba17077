// Helpers shared by the unit tests.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "latenum/lattice.hpp"

namespace latenum::testing {

/// LATENUM_SEED overrides the fixed default.
inline std::uint64_t test_seed() {
    if (const char* s = std::getenv("LATENUM_SEED")) return std::stoull(s, nullptr, 0);
    return 0x5eed;
}

inline Mask m(const char* digits, int k = 9) { return parse_subset(digits, GroundSize{k}); }

inline Configuration cfg_of(int k, std::string_view relations) {
    return closure(GroundSize{k}, parse_relations(relations, GroundSize{k}));
}

/// Random proper family with k sets over at most `universe` letters.
inline SetFamily random_proper_family(std::mt19937_64& rng, int k, int universe) {
    std::uniform_int_distribution<ElementSet> pick(1, (ElementSet{1} << universe) - 1);
    for (;;) {
        std::vector<ElementSet> sets(k);
        ElementSet used = 0;
        for (auto& s : sets) used |= (s = pick(rng));
        bool proper = true;
        for (int i = 0; i < k && proper; ++i)
            for (int j = 0; j < k && proper; ++j)
                if (i != j && (sets[i] & ~sets[j]) == 0) proper = false;
        if (!proper) continue;
        std::vector<std::vector<std::string>> labeled(k);
        for (int i = 0; i < k; ++i)
            for (int e = 0; e < universe; ++e)
                if (sets[i] >> e & 1) labeled[i].push_back(std::string(1, static_cast<char>('a' + e)));
        return SetFamily::from_labels(labeled);
    }
}

}  // namespace latenum::testing
