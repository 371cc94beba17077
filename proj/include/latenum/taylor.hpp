// Square-free monomial ideals, their simplicial complexes, and the Taylor
// cochain complex that computes the bigraded Tor of the Stanley-Reisner ring.
//
// A proper set family X_1..X_k over a universe of n elements is read as the
// monomials m_i = prod_{x in X_i} x.  The cochain complex has one generator
// e_S per S subset of [k], in homological degree j = |S| and internal degree
// 2|M_S|.  The differential sends e_S to
//
//     sum over m in S with M_{S-m} = M_S of (-1)^{#(s in S, s < m)} e_{S-m}
//
// and preserves internal degree.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latenum/lattice.hpp"

namespace latenum {

using VertexSet = std::uint64_t;

inline constexpr int kMaxComplexVertices = 24;

/// A simplicial complex on vertices 0..n-1 given by its facets.  A complex
/// with no facets is void (no faces at all); the complex whose only face is
/// the empty simplex has the single facet 0.
class SimplicialComplex {
  public:
    SimplicialComplex(std::vector<std::string> vertex_labels, std::vector<VertexSet> facets);

    int vertex_count() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    /// Maximal faces in canonical order.
    const std::vector<VertexSet>& facets() const { return facets_; }
    bool is_void() const { return facets_.empty(); }
    bool has_face(VertexSet face) const;

    friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

  private:
    std::vector<std::string> labels_;
    std::vector<VertexSet> facets_;
};

/// Faces are the vertex sets containing no X_i.
SimplicialComplex complex_from_generators(const SetFamily& family);

/// Inclusion-minimal non-faces, in canonical order, over the vertices that
/// occur in them.  Throws DomainError for the void complex.
SetFamily minimal_nonfaces(const SimplicialComplex& complex);

enum class Field { Q, F2 };

std::string field_name(Field f);

struct BoundaryEntry {
    int row = 0;  // index among (j-1)-generators
    int col = 0;  // index among j-generators
    int sign = 0;
};

class TaylorComplex {
  public:
    int k() const { return k_; }
    /// Masks S with |S| = j, increasing.
    const std::vector<Mask>& generators(int j) const { return generators_.at(j); }
    int internal_degree(Mask s) const { return 2 * std::popcount(unions_.at(s)); }
    ElementSet union_of(Mask s) const { return unions_.at(s); }
    /// Nonzero entries of d_j : C_j -> C_{j-1}, j = 1..k, ordered by column.
    const std::vector<BoundaryEntry>& boundary(int j) const { return boundary_.at(j); }
    std::vector<std::vector<int>> dense_boundary(int j) const;

  private:
    friend TaylorComplex build_taylor_complex(const SetFamily& family);

    int k_ = 0;
    std::vector<ElementSet> unions_;
    std::vector<std::vector<Mask>> generators_;
    std::vector<std::vector<BoundaryEntry>> boundary_;  // index 0 unused
};

/// Throws DomainError for improper families or k > 20, and std::logic_error
/// if d o d != 0.
TaylorComplex build_taylor_complex(const SetFamily& family);

/// True iff every composite d_{j-1} d_j vanishes.
bool boundary_squares_to_zero(const TaylorComplex& complex);

/// Exact ranks.
using IntMatrix = std::vector<std::vector<int>>;
std::size_t rank_q(const IntMatrix& m);
std::size_t rank_f2(const IntMatrix& m);
std::size_t rank_over(Field f, const IntMatrix& m);

/// rank of d_j restricted to internal degree deg, keyed by (j, deg); only
/// blocks with at least one generator on both sides are listed.
std::map<std::pair<int, int>, std::size_t> boundary_ranks(const TaylorComplex& complex, Field field);

struct BettiTable {
    Field field = Field::Q;
    /// (j, internal degree) -> rank, nonzero entries only.
    std::map<std::pair<int, int>, std::int64_t> entries;
    /// per_j[j] for j = 0..k.
    std::vector<std::int64_t> per_j;
};

BettiTable betti_table(const TaylorComplex& complex, Field field);
BettiTable betti_table(const SetFamily& family, Field field);

/// Ranks by total degree 2d - j, nonzero entries only.
std::map<int, std::int64_t> total_cohomology_ranks(const BettiTable& table);

/// sum_j (-1)^j rank, per internal degree.
std::map<int, std::int64_t> euler_characteristics(const BettiTable& table);
/// The same sums over generator counts.
std::map<int, std::int64_t> generator_euler_characteristics(const TaylorComplex& complex);

}  // namespace latenum
