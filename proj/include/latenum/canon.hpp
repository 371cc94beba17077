// The symmetric group S_k acting on configurations by relabeling indices,
// and a permutation-invariant key: the lexicographically least
// representative vector over all k! relabelings.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latenum/lattice.hpp"

namespace latenum {

/// image[i] = sigma(i + 1), a permutation of 1..k.
class IndexPermutation {
  public:
    static IndexPermutation identity(GroundSize k);
    /// Throws DomainError unless image is a permutation of 1..k.
    explicit IndexPermutation(std::vector<int> image);

    GroundSize k() const { return GroundSize{static_cast<int>(image_.size())}; }
    const std::vector<int>& image() const { return image_; }
    Mask apply(Mask m) const;
    IndexPermutation inverse() const;

    /// All k! permutations in lexicographic order of their images.
    static std::vector<IndexPermutation> all(GroundSize k);

  private:
    std::vector<int> image_;
};

struct CanonicalKey {
    std::vector<std::uint8_t> bytes;

    std::string hex() const;
    static CanonicalKey from_hex(const std::string& hex);

    friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

/// sigma(S) ~' sigma(T) iff S ~ T.
Configuration permute_config(const Configuration& cfg, const IndexPermutation& sigma);

/// Serializes the representative vector: one byte per domain member, or two
/// big-endian bytes per member when k = 9.
CanonicalKey encode_representatives(const Configuration& cfg);

/// Inverse of encode_representatives.  Throws MalformedInput if the bytes do
/// not describe a configuration of size k.
Configuration decode_representatives(GroundSize k, const CanonicalKey& key);

CanonicalKey canonical_key(const Configuration& cfg);

/// The relabeling of cfg whose encoding is the canonical key.
Configuration canonical_form(const Configuration& cfg);

bool are_equivalent(const Configuration& a, const Configuration& b);

/// Precomputed relabeling tables for repeated canonicalization at fixed k.
class Canonicalizer {
  public:
    explicit Canonicalizer(GroundSize k);

    GroundSize k() const { return k_; }
    CanonicalKey key(const Configuration& cfg) const;
    Configuration form(const Configuration& cfg) const;
    /// True iff cfg is its own canonical form.  Stops at the first
    /// relabeling that beats the identity, so rejection is usually cheap.
    bool is_canonical(const Configuration& cfg) const;

  private:
    struct Tables {
        std::vector<Mask> image, preimage;
    };

    std::size_t best_permutation(const Configuration& cfg) const;
    void relabeled(const Configuration& cfg, const Tables& t, std::vector<Mask>& out) const;
    Tables tables(std::size_t perm) const;

    GroundSize k_;
    std::vector<Mask> domain_;
    std::vector<IndexPermutation> perms_;
    // Image and preimage of every mask, cached per permutation for k <= 7.
    std::vector<Tables> cache_;
};

}  // namespace latenum
