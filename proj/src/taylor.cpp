#include "latenum/taylor.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace latenum {

namespace {

bool canonical_less64(VertexSet a, VertexSet b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
}

VertexSet all_vertices(int n) { return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1; }

void require_enumerable(int n) {
    if (n > kMaxComplexVertices) {
        throw DomainError("simplicial complex on " + std::to_string(n) + " vertices; at most " +
                          std::to_string(kMaxComplexVertices) + " supported");
    }
}

}  // namespace

// -------------------------------------------------------- SimplicialComplex

SimplicialComplex::SimplicialComplex(std::vector<std::string> vertex_labels, std::vector<VertexSet> facets)
    : labels_(std::move(vertex_labels)) {
    if (labels_.size() > 64) throw DomainError("at most 64 vertices supported");
    const VertexSet all = all_vertices(vertex_count());
    std::sort(facets.begin(), facets.end(), canonical_less64);
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    for (VertexSet f : facets) {
        if (f & ~all) throw DomainError("facet uses a vertex outside the vertex set");
        const bool dominated = std::any_of(facets.begin(), facets.end(),
                                           [f](VertexSet g) { return g != f && (f & ~g) == 0; });
        if (!dominated) facets_.push_back(f);
    }
}

bool SimplicialComplex::has_face(VertexSet face) const {
    return std::any_of(facets_.begin(), facets_.end(), [face](VertexSet f) { return (face & ~f) == 0; });
}

SimplicialComplex complex_from_generators(const SetFamily& family) {
    const int n = static_cast<int>(family.universe().size());
    require_enumerable(n);
    auto is_face = [&](VertexSet s) {
        return std::none_of(family.sets().begin(), family.sets().end(),
                            [s](ElementSet x) { return (x & ~s) == 0; });
    };
    std::vector<VertexSet> facets;
    for (VertexSet s = 0; s <= all_vertices(n); ++s) {
        if (!is_face(s)) continue;
        bool maximal = true;
        for (int v = 0; v < n && maximal; ++v) {
            if (!(s >> v & 1) && is_face(s | VertexSet{1} << v)) maximal = false;
        }
        if (maximal) facets.push_back(s);
    }
    return SimplicialComplex(family.universe(), std::move(facets));
}

SetFamily minimal_nonfaces(const SimplicialComplex& complex) {
    if (complex.is_void()) throw DomainError("the void complex has the empty set as a non-face");
    const int n = complex.vertex_count();
    require_enumerable(n);
    std::vector<VertexSet> found;
    for (VertexSet s = 1; s <= all_vertices(n); ++s) {
        if (complex.has_face(s)) continue;
        bool minimal = true;
        for (int v = 0; v < n && minimal; ++v) {
            if ((s >> v & 1) && !complex.has_face(s & ~(VertexSet{1} << v))) minimal = false;
        }
        if (minimal) found.push_back(s);
    }
    std::sort(found.begin(), found.end(), canonical_less64);

    VertexSet used = 0;
    for (VertexSet s : found) used |= s;
    std::vector<std::string> universe;
    std::vector<int> remap(n, -1);
    for (int v = 0; v < n; ++v) {
        if (used >> v & 1) {
            remap[v] = static_cast<int>(universe.size());
            universe.push_back(complex.labels()[v]);
        }
    }
    std::vector<ElementSet> sets;
    for (VertexSet s : found) {
        ElementSet e = 0;
        for (int v = 0; v < n; ++v) {
            if (s >> v & 1) e |= ElementSet{1} << remap[v];
        }
        sets.push_back(e);
    }
    return SetFamily(std::move(universe), std::move(sets));
}

// ------------------------------------------------------------ Taylor complex

std::string field_name(Field f) { return f == Field::Q ? "Q" : "F2"; }

std::vector<std::vector<int>> TaylorComplex::dense_boundary(int j) const {
    std::vector<std::vector<int>> m(generators(j - 1).size(), std::vector<int>(generators(j).size(), 0));
    for (const auto& e : boundary(j)) m[e.row][e.col] = e.sign;
    return m;
}

TaylorComplex build_taylor_complex(const SetFamily& family) {
    const int k = family.k();
    if (k > kMaxTaylorK) {
        throw DomainError("Taylor complex on " + std::to_string(k) + " generators; at most 20 supported");
    }
    if (auto c = family.first_containment()) {
        throw DomainError("family is not proper: X_" + std::to_string(c->first) + " ⊆ X_" +
                          std::to_string(c->second));
    }
    TaylorComplex tc;
    tc.k_ = k;
    const std::size_t n = std::size_t{1} << k;
    tc.unions_.assign(n, 0);
    for (Mask s = 1; s < n; ++s) {
        const int low = std::countr_zero(s);
        tc.unions_[s] = tc.unions_[s & (s - 1)] | family.sets()[low];
    }
    tc.generators_.assign(k + 1, {});
    std::vector<int> position(n);
    for (Mask s = 0; s < n; ++s) {
        auto& gens = tc.generators_[std::popcount(s)];
        position[s] = static_cast<int>(gens.size());
        gens.push_back(s);
    }
    tc.boundary_.assign(k + 1, {});
    for (int j = 1; j <= k; ++j) {
        const auto& cols = tc.generators_[j];
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const Mask s = cols[c];
            int before = 0;
            for (Mask rest = s; rest != 0; rest &= rest - 1, ++before) {
                const Mask m = rest & (~rest + 1);
                const Mask t = s & ~m;
                if (tc.unions_[t] == tc.unions_[s]) {
                    tc.boundary_[j].push_back({position[t], static_cast<int>(c), before % 2 == 0 ? 1 : -1});
                }
            }
        }
    }
    if (!boundary_squares_to_zero(tc)) throw std::logic_error("Taylor differential does not square to zero");
    return tc;
}

bool boundary_squares_to_zero(const TaylorComplex& tc) {
    for (int j = 2; j <= tc.k(); ++j) {
        // Group d_{j-1} entries by column for lookup.
        const auto& lower = tc.boundary(j - 1);
        std::vector<std::vector<std::pair<int, int>>> by_col(tc.generators(j - 1).size());
        for (const auto& e : lower) by_col[e.col].emplace_back(e.row, e.sign);

        const auto& upper = tc.boundary(j);
        std::vector<long> acc(tc.generators(j - 2).size(), 0);
        std::vector<int> touched;
        std::size_t i = 0;
        while (i < upper.size()) {
            const int col = upper[i].col;
            for (; i < upper.size() && upper[i].col == col; ++i) {
                for (auto [row, sign] : by_col[upper[i].row]) {
                    if (acc[row] == 0) touched.push_back(row);
                    acc[row] += static_cast<long>(sign) * upper[i].sign;
                }
            }
            for (int row : touched) {
                if (acc[row] != 0) return false;
            }
            touched.clear();
        }
    }
    return true;
}

// ------------------------------------------------------------------- ranks

std::size_t rank_q(const IntMatrix& input) {
    using boost::multiprecision::cpp_int;
    if (input.empty()) return 0;
    const std::size_t rows = input.size(), cols = input[0].size();
    std::vector<std::vector<cpp_int>> a(rows, std::vector<cpp_int>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) a[r][c] = input[r][c];
    }
    // Fraction-free (Bareiss) elimination: every intermediate entry is a
    // minor of the input, so the divisions are exact.
    cpp_int prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t cc = c + 1; cc < cols; ++cc) {
                a[r][cc] = (a[rank][c] * a[r][cc] - a[r][c] * a[rank][cc]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

std::size_t rank_f2(const IntMatrix& input) {
    if (input.empty()) return 0;
    const std::size_t rows = input.size(), cols = input[0].size();
    const std::size_t words = (cols + 63) / 64;
    std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(words, 0));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (input[r][c] % 2 != 0) a[r][c / 64] |= std::uint64_t{1} << (c % 64);
        }
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t b = std::uint64_t{1} << (c % 64);
        std::size_t p = rank;
        while (p < rows && !(a[p][w] & b)) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r != rank && (a[r][w] & b)) {
                for (std::size_t x = w; x < words; ++x) a[r][x] ^= a[rank][x];
            }
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_over(Field f, const IntMatrix& m) { return f == Field::Q ? rank_q(m) : rank_f2(m); }

namespace {

/// Per homological degree j: internal degree -> generator indices.
std::vector<std::map<int, std::vector<int>>> degree_blocks(const TaylorComplex& tc) {
    std::vector<std::map<int, std::vector<int>>> out(tc.k() + 1);
    for (int j = 0; j <= tc.k(); ++j) {
        const auto& gens = tc.generators(j);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            out[j][tc.internal_degree(gens[i])].push_back(static_cast<int>(i));
        }
    }
    return out;
}

}  // namespace

std::map<std::pair<int, int>, std::size_t> boundary_ranks(const TaylorComplex& tc, Field field) {
    const auto blocks = degree_blocks(tc);
    std::map<std::pair<int, int>, std::size_t> out;
    for (int j = 1; j <= tc.k(); ++j) {
        const auto& gens_lo = tc.generators(j - 1);
        const auto& gens_hi = tc.generators(j);
        std::vector<int> local_row(gens_lo.size(), -1), local_col(gens_hi.size(), -1);
        std::vector<int> col_degree(gens_hi.size());
        for (const auto& [deg, idx] : blocks[j - 1]) {
            for (std::size_t r = 0; r < idx.size(); ++r) local_row[idx[r]] = static_cast<int>(r);
        }
        for (const auto& [deg, idx] : blocks[j]) {
            for (std::size_t c = 0; c < idx.size(); ++c) {
                local_col[idx[c]] = static_cast<int>(c);
                col_degree[idx[c]] = deg;
            }
        }
        std::map<int, IntMatrix> mats;
        for (const auto& [deg, idx] : blocks[j]) {
            auto lo = blocks[j - 1].find(deg);
            if (lo == blocks[j - 1].end()) continue;
            mats[deg] = IntMatrix(lo->second.size(), std::vector<int>(idx.size(), 0));
        }
        for (const auto& e : tc.boundary(j)) {
            const int deg = col_degree[e.col];
            if (tc.internal_degree(gens_lo[e.row]) != deg) {
                throw std::logic_error("Taylor differential does not preserve internal degree");
            }
            mats.at(deg)[local_row[e.row]][local_col[e.col]] = e.sign;
        }
        for (const auto& [deg, m] : mats) out[{j, deg}] = rank_over(field, m);
    }
    return out;
}

BettiTable betti_table(const TaylorComplex& tc, Field field) {
    const auto blocks = degree_blocks(tc);
    const auto ranks = boundary_ranks(tc, field);
    auto rank_at = [&](int j, int deg) -> std::int64_t {
        auto it = ranks.find({j, deg});
        return it == ranks.end() ? 0 : static_cast<std::int64_t>(it->second);
    };
    BettiTable table;
    table.field = field;
    table.per_j.assign(tc.k() + 1, 0);
    for (int j = 0; j <= tc.k(); ++j) {
        for (const auto& [deg, idx] : blocks[j]) {
            const std::int64_t h = static_cast<std::int64_t>(idx.size()) - rank_at(j, deg) - rank_at(j + 1, deg);
            if (h < 0) throw std::logic_error("negative cohomology rank");
            if (h > 0) table.entries[{j, deg}] = h;
            table.per_j[j] += h;
        }
    }
    return table;
}

BettiTable betti_table(const SetFamily& family, Field field) {
    return betti_table(build_taylor_complex(family), field);
}

std::map<int, std::int64_t> total_cohomology_ranks(const BettiTable& table) {
    std::map<int, std::int64_t> out;
    for (const auto& [slot, rank] : table.entries) out[slot.second - slot.first] += rank;
    return out;
}

namespace {

std::map<int, std::int64_t> drop_zeros(std::map<int, std::int64_t> m) {
    std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
    return m;
}

}  // namespace

std::map<int, std::int64_t> euler_characteristics(const BettiTable& table) {
    std::map<int, std::int64_t> out;
    for (const auto& [slot, rank] : table.entries) out[slot.second] += slot.first % 2 == 0 ? rank : -rank;
    return drop_zeros(std::move(out));
}

std::map<int, std::int64_t> generator_euler_characteristics(const TaylorComplex& tc) {
    std::map<int, std::int64_t> out;
    for (int j = 0; j <= tc.k(); ++j) {
        for (Mask s : tc.generators(j)) out[tc.internal_degree(s)] += j % 2 == 0 ? 1 : -1;
    }
    return drop_zeros(std::move(out));
}

}  // namespace latenum
