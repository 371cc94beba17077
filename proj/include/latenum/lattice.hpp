// Configurations: equivalence relations on the subsets of [k] of size >= 2
// that are closed under adjoining a common index to both sides
// (S ~ T implies S+i ~ T+i).  The same partition describes which unions
// M_S = X_i1 u ... u X_ir of a set family coincide.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latenum/core.hpp"

namespace latenum {

/// Elements of a family's universe, one bit per element.
using ElementSet = std::uint64_t;

inline constexpr int kMaxUniverse = 64;

/// k labeled nonempty sets X_1..X_k over a labeled universe.  Every universe
/// element belongs to at least one X_i.
class SetFamily {
  public:
    SetFamily() = default;
    SetFamily(std::vector<std::string> universe, std::vector<ElementSet> sets);

    /// Builds a family from element labels; the universe is the sorted set of
    /// labels that occur.
    static SetFamily from_labels(const std::vector<std::vector<std::string>>& sets);

    int k() const { return static_cast<int>(sets_.size()); }
    GroundSize ground() const { return GroundSize{k()}; }
    const std::vector<std::string>& universe() const { return universe_; }
    const std::vector<ElementSet>& sets() const { return sets_; }
    ElementSet set(int index) const { return sets_.at(index - 1); }  // 1-based

    /// M_S, the union of X_i over i in S.
    ElementSet union_of(Mask s) const;

    /// First (i, j), i != j, 1-based, with X_i contained in X_j (equality counts).
    std::optional<std::pair<int, int>> first_containment() const;

    std::vector<std::vector<std::string>> labeled_sets() const;
    /// Concatenated labels of X_i, e.g. "ace".
    std::string format_set(int index) const;

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

  private:
    std::vector<std::string> universe_;
    std::vector<ElementSet> sets_;
};

/// A candidate partition of subset_domain(k): block_of[p] is the block label
/// of the p-th domain member.  Not required to satisfy the union rule.
struct Partition {
    GroundSize k;
    std::vector<int> block_of;
};

/// A union-closed partition.  Every mask of [k] has a class representative,
/// the canonically least member of its block; masks of size < 2 are their
/// own representatives.
class Configuration {
  public:
    /// The discrete configuration on [k].
    explicit Configuration(GroundSize k = GroundSize{1});

    /// Throws DomainError if the partition violates the union rule.
    static Configuration from_partition(const Partition& p);

    GroundSize k() const { return k_; }
    Mask class_of(Mask s) const { return rep_[s]; }
    bool equivalent(Mask a, Mask b) const { return rep_[a] == rep_[b]; }
    bool is_discrete() const;

    /// Blocks with at least two members, each listed in canonical order.
    std::vector<std::vector<Mask>> nontrivial_blocks() const;

    /// class_of for each member of subset_domain(k), in canonical order.
    std::vector<Mask> representative_vector() const;

    friend bool operator==(const Configuration&, const Configuration&) = default;

  private:
    friend class ClosureBuilder;
    Configuration(GroundSize k, std::vector<Mask> rep) : k_(k), rep_(std::move(rep)) {}

    GroundSize k_;
    std::vector<Mask> rep_;
};

/// Incremental union-rule closure.  Each merge propagates S+i ~ T+i until the
/// relation is closed again, so the state is always a valid configuration.
class ClosureBuilder {
  public:
    explicit ClosureBuilder(GroundSize k);
    explicit ClosureBuilder(const Configuration& cfg);

    bool related(Mask a, Mask b) const { return rep_[a] == rep_[b]; }
    /// Asserts a ~ b and closes.  Returns true if the relation grew.
    bool merge(Mask a, Mask b);

    Configuration configuration() const { return Configuration(k_, rep_); }

  private:
    GroundSize k_;
    std::vector<Mask> rep_;
    std::vector<std::pair<Mask, Mask>> pending_;
};

/// The assertion base ~ base + {added}.
struct CoverPair {
    Mask base = 0;
    int added = 0;

    Mask top() const { return base | bit(added); }
    friend bool operator==(const CoverPair&, const CoverPair&) = default;
};

using Relation = std::pair<Mask, Mask>;

/// Configuration induced by a family: S ~ T iff M_S = M_T.
Configuration config_from_family(const SetFamily& family);

/// Least configuration containing the generators.  Throws DomainError for
/// masks outside subset_domain(k).
Configuration closure(GroundSize k, const std::vector<Relation>& generators);
Configuration closure(GroundSize k, const std::vector<CoverPair>& generators);

bool is_valid_configuration(const Partition& p);

/// block_of[p] = domain position of the class representative.
Partition to_partition(const Configuration& cfg);

/// All (S, i) with i not in S and S ~ S + i, ordered by S canonically, then i.
std::vector<CoverPair> cover_pairs(const Configuration& cfg);

/// The candidate cover pairs (S, i), |S| >= 2, i not in S, in the same order.
std::vector<CoverPair> candidate_cover_pairs(GroundSize k);

/// An irredundant subset of cover_pairs(cfg) whose closure is cfg.
std::vector<CoverPair> generating_pairs(const Configuration& cfg);

/// Order test S <= T, i.e. S u T ~ T.  Masks of size < 2 are only
/// equivalent to themselves.
bool leq(const Configuration& cfg, Mask s, Mask t);

/// Parses "123~1234, 12-124" (pairs separated by commas or whitespace, sides
/// by '~' or '-'; "A~B~C" chains).  Sides must be in subset_domain(k).
std::vector<Relation> parse_relations(std::string_view text, GroundSize k);

std::string format_pair(const CoverPair& p, char sep = '~');

}  // namespace latenum
