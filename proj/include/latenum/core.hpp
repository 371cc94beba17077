// Subset algebra over the index set [k] = {1, ..., k}.
//
// A subset S of [k] is packed into an unsigned integer with bit i-1 set iff
// i is in S.  Everything else in the library is expressed in terms of these
// masks.

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace latenum {

/// Raised when a textual input does not follow the expected grammar.
class MalformedInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an argument is outside the supported domain of an operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Raised when an external resource (file, corpus) is missing or corrupt.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Mask = std::uint32_t;

inline constexpr int kMaxEnumerationK = 9;
inline constexpr int kMaxTaylorK = 20;

/// Number of indices k.  Range checks are per-operation.
struct GroundSize {
    int k = 0;

    constexpr Mask full() const { return k >= 32 ? ~Mask{0} : (Mask{1} << k) - 1; }
    constexpr std::size_t mask_count() const { return std::size_t{1} << k; }

    friend constexpr bool operator==(GroundSize, GroundSize) = default;
};

inline constexpr int popcount(Mask m) { return std::popcount(m); }
inline constexpr Mask bit(int index) { return Mask{1} << (index - 1); }  // index in 1..k
inline constexpr bool contains(Mask m, int index) { return (m & bit(index)) != 0; }

/// Canonical subset order: by cardinality, then by numeric value.
inline constexpr bool canonical_less(Mask a, Mask b) {
    const int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
}

struct CanonicalLess {
    constexpr bool operator()(Mask a, Mask b) const { return canonical_less(a, b); }
};

/// Throws DomainError unless 1 <= k <= max_k.
void require_ground_size(GroundSize k, int max_k, std::string_view what);

/// Parses a digit string such as "123" into a mask.  Digits must be in 1..k
/// and pairwise distinct; order is irrelevant.
Mask parse_subset(std::string_view text, GroundSize k);

/// Ascending digit string for a mask ("" for the empty set).
std::string format_subset(Mask m);

/// All masks of [k] in canonical order.
std::vector<Mask> all_subsets_canonical(GroundSize k);

/// The subsets of [k] of cardinality at least 2, in canonical order.
struct SubsetDomain {
    GroundSize k;
    std::vector<Mask> members;

    std::size_t size() const { return members.size(); }
};

SubsetDomain subset_domain(GroundSize k);

}  // namespace latenum
