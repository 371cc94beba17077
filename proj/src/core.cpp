#include "latenum/core.hpp"

#include <algorithm>

namespace latenum {

void require_ground_size(GroundSize k, int max_k, std::string_view what) {
    if (k.k < 1 || k.k > max_k) {
        throw DomainError(std::string(what) + ": k=" + std::to_string(k.k) +
                          " outside supported range 1.." + std::to_string(max_k));
    }
}

Mask parse_subset(std::string_view text, GroundSize k) {
    if (text.empty()) throw MalformedInput("empty subset literal");
    Mask m = 0;
    for (char c : text) {
        if (c < '1' || c > '9' || c - '0' > k.k) {
            throw MalformedInput("subset literal '" + std::string(text) + "': digit '" +
                                 std::string(1, c) + "' not in 1.." + std::to_string(k.k));
        }
        const Mask b = bit(c - '0');
        if (m & b) {
            throw MalformedInput("subset literal '" + std::string(text) + "': repeated digit '" +
                                 std::string(1, c) + "'");
        }
        m |= b;
    }
    return m;
}

std::string format_subset(Mask m) {
    std::string out;
    for (int i = 1; m != 0; ++i, m >>= 1) {
        if (m & 1) out += i <= 9 ? static_cast<char>('0' + i) : '?';
    }
    return out;
}

std::vector<Mask> all_subsets_canonical(GroundSize k) {
    std::vector<Mask> out(k.mask_count());
    for (Mask m = 0; m < out.size(); ++m) out[m] = m;
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

SubsetDomain subset_domain(GroundSize k) {
    require_ground_size(k, kMaxEnumerationK, "subset_domain");
    SubsetDomain d{k, {}};
    for (Mask m : all_subsets_canonical(k)) {
        if (popcount(m) >= 2) d.members.push_back(m);
    }
    return d;
}

}  // namespace latenum
