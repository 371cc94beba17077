#include <doctest.h>

#include <random>

#include "latenum/realize.hpp"
#include "latenum/taylor.hpp"
#include "support.hpp"

using namespace latenum;

namespace {

SetFamily words(std::initializer_list<const char*> ws) {
    std::vector<std::vector<std::string>> sets;
    for (const char* w : ws) {
        sets.emplace_back();
        for (const char* c = w; *c; ++c) sets.back().push_back(std::string(1, *c));
    }
    return SetFamily::from_labels(sets);
}

// Rank modulo the prime 2^61 - 1.  For entries in {-1, 0, 1} and at most 7
// rows every minor is below 7^3.5 in absolute value (Hadamard), so no
// nonzero minor vanishes mod p and this equals the rank over Q.
std::size_t modular_rank(const IntMatrix& in) {
    constexpr std::uint64_t p = (std::uint64_t{1} << 61) - 1;
    auto mul = [](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % p);
    };
    auto inv = [&](std::uint64_t x) {
        std::uint64_t r = 1;
        for (std::uint64_t e = p - 2; e; e >>= 1, x = mul(x, x))
            if (e & 1) r = mul(r, x);
        return r;
    };
    std::vector<std::vector<std::uint64_t>> a;
    for (const auto& row : in) {
        a.emplace_back();
        for (int x : row) a.back().push_back(x >= 0 ? static_cast<std::uint64_t>(x) : p - static_cast<std::uint64_t>(-x));
    }
    std::size_t rank = 0;
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        const std::uint64_t scale = inv(a[rank][c]);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            const std::uint64_t f = mul(a[r][c], scale);
            for (std::size_t x = c; x < cols; ++x) a[r][x] = (a[r][x] + p - mul(f, a[rank][x])) % p;
        }
        ++rank;
    }
    return rank;
}

std::int64_t binomial(int n, int r) {
    std::int64_t v = 1;
    for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
    return v;
}

// per_j computed from the full, unblocked boundary matrices.
std::vector<std::int64_t> unblocked_per_j(const TaylorComplex& tc, Field f) {
    const int k = tc.k();
    std::vector<std::int64_t> rank(k + 2, 0);
    for (int j = 1; j <= k; ++j) rank[j] = static_cast<std::int64_t>(rank_over(f, tc.dense_boundary(j)));
    std::vector<std::int64_t> out(k + 1);
    for (int j = 0; j <= k; ++j) out[j] = binomial(k, j) - rank[j] - rank[j + 1];
    return out;
}

IntMatrix product(const IntMatrix& a, const IntMatrix& b) {
    if (a.empty() || b.empty()) return {};
    IntMatrix c(a.size(), std::vector<int>(b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t l = 0; l < b.size(); ++l)
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

}  // namespace

TEST_CASE("complex_from_generators examples") {
    const auto points = complex_from_generators(words({"ab", "ac", "bc"}));
    CHECK(points.facets() == std::vector<VertexSet>{0b001, 0b010, 0b100});
    CHECK(points.has_face(0));
    CHECK_FALSE(points.has_face(0b011));
    const auto boundary = complex_from_generators(words({"abc"}));
    CHECK(boundary.facets() == std::vector<VertexSet>{0b011, 0b101, 0b110});
    const auto empty = complex_from_generators(words({"a"}));
    CHECK(empty.facets() == std::vector<VertexSet>{0});
    CHECK_FALSE(empty.is_void());
    CHECK_FALSE(empty.has_face(0b1));
}

TEST_CASE("minimal_nonfaces examples") {
    const SimplicialComplex boundary({"a", "b", "c"}, {0b011, 0b101, 0b110});
    CHECK(minimal_nonfaces(boundary) == words({"abc"}));
    const SimplicialComplex points({"a", "b", "c"}, {0b001, 0b010, 0b100});
    CHECK(minimal_nonfaces(points) == words({"ab", "ac", "bc"}));
    const SimplicialComplex simplex({"a", "b", "c"}, {0b111});
    CHECK(minimal_nonfaces(simplex).k() == 0);
    CHECK_THROWS_AS(minimal_nonfaces(SimplicialComplex({"a"}, {})), DomainError);
}

TEST_CASE("SimplicialComplex keeps maximal facets only") {
    const SimplicialComplex c({"a", "b", "c"}, {0b001, 0b011, 0b011, 0b100});
    CHECK(c.facets() == std::vector<VertexSet>{0b100, 0b011});
    CHECK(c.has_face(0b010));
    CHECK_FALSE(c.has_face(0b101));
}

TEST_CASE("minimal_nonfaces inverts complex_from_generators") {
    std::mt19937_64 rng(latenum::testing::test_seed());
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = latenum::testing::random_proper_family(rng, 1 + trial % 5, 7);
        auto back = minimal_nonfaces(complex_from_generators(f)).labeled_sets();
        auto orig = f.labeled_sets();
        std::sort(back.begin(), back.end());
        std::sort(orig.begin(), orig.end());
        CHECK(back == orig);
    }
}

TEST_CASE("Taylor complex of disjoint singletons") {
    const auto tc = build_taylor_complex(words({"a", "b", "c"}));
    for (int j = 1; j <= 3; ++j) CHECK(tc.boundary(j).empty());
    const auto t = betti_table(tc, Field::Q);
    CHECK(t.per_j == std::vector<std::int64_t>{1, 3, 3, 1});
    CHECK(t.entries == std::map<std::pair<int, int>, std::int64_t>{{{0, 0}, 1}, {{1, 2}, 3}, {{2, 4}, 3}, {{3, 6}, 1}});
    CHECK(total_cohomology_ranks(t) == std::map<int, std::int64_t>{{0, 1}, {1, 3}, {2, 3}, {3, 1}});
}

TEST_CASE("Taylor complex of the triangle family") {
    const auto tc = build_taylor_complex(words({"ab", "bc", "ca"}));
    CHECK(tc.dense_boundary(3) == IntMatrix{{1}, {-1}, {1}});
    CHECK(tc.boundary(1).empty());
    CHECK(tc.boundary(2).empty());
    const auto t = betti_table(tc, Field::Q);
    CHECK(t.per_j == std::vector<std::int64_t>{1, 3, 2, 0});
    CHECK(t.entries == std::map<std::pair<int, int>, std::int64_t>{{{0, 0}, 1}, {{1, 4}, 3}, {{2, 6}, 2}});
    CHECK(total_cohomology_ranks(t) == std::map<int, std::int64_t>{{0, 1}, {3, 3}, {4, 2}});
    CHECK(betti_table(tc, Field::F2).per_j == t.per_j);
}

TEST_CASE("two realizations of the discrete k = 3 configuration") {
    const auto small = build_taylor_complex(words({"a", "b", "c"}));
    const auto big = build_taylor_complex(words({"abc", "cde", "efa"}));
    std::vector<int> degrees;
    for (int j = 0; j <= 3; ++j)
        for (Mask s : big.generators(j)) degrees.push_back(big.internal_degree(s));
    CHECK(degrees == std::vector<int>{0, 6, 6, 6, 10, 10, 10, 12});
    degrees.clear();
    for (int j = 0; j <= 3; ++j)
        for (Mask s : small.generators(j)) degrees.push_back(small.internal_degree(s));
    CHECK(degrees == std::vector<int>{0, 2, 2, 2, 4, 4, 4, 6});
    for (int j = 1; j <= 3; ++j) CHECK(big.boundary(j).empty());
    const auto a = betti_table(small, Field::Q), b = betti_table(big, Field::Q);
    CHECK(a.per_j == b.per_j);
    CHECK(a.entries != b.entries);
}

TEST_CASE("empty family") {
    const SetFamily none({}, {});
    const auto t = betti_table(none, Field::Q);
    CHECK(t.per_j == std::vector<std::int64_t>{1});
    CHECK(total_cohomology_ranks(t) == std::map<int, std::int64_t>{{0, 1}});
}

TEST_CASE("improper and oversized families are refused") {
    CHECK_THROWS_AS(build_taylor_complex(words({"a", "ab"})), DomainError);
    std::vector<std::vector<std::string>> many;
    for (int i = 0; i < 21; ++i) many.push_back({"v" + std::to_string(i)});
    CHECK_THROWS_AS(build_taylor_complex(SetFamily::from_labels(many)), DomainError);
}

TEST_CASE("rank routines") {
    CHECK(rank_q({}) == 0);
    CHECK(rank_q({{0, 0}, {0, 0}}) == 0);
    CHECK(rank_q({{1, 1}, {1, -1}}) == 2);
    CHECK(rank_f2({{1, 1}, {1, -1}}) == 1);
    CHECK(rank_f2({{2, 0}, {0, 3}}) == 1);
    std::mt19937_64 rng(latenum::testing::test_seed() + 1);
    std::uniform_int_distribution<int> entry(-1, 1), dim(1, 7);
    for (int trial = 0; trial < 300; ++trial) {
        IntMatrix a(dim(rng), std::vector<int>(dim(rng)));
        for (auto& row : a)
            for (int& x : row) x = entry(rng);
        CHECK(rank_q(a) == modular_rank(a));
        CHECK(rank_f2(a) <= rank_q(a));
    }
}

TEST_CASE("random proper families: d o d = 0 and field comparisons") {
    std::mt19937_64 rng(latenum::testing::test_seed() + 2);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 1 + trial % 5;
        const auto f = latenum::testing::random_proper_family(rng, k, 4 + trial % 5);
        const auto tc = build_taylor_complex(f);
        CHECK(boundary_squares_to_zero(tc));
        for (int j = 2; j <= k; ++j) {
            for (const auto& row : product(tc.dense_boundary(j - 1), tc.dense_boundary(j)))
                for (int x : row) CHECK(x == 0);
        }
        for (int j = 1; j <= k; ++j)
            for (const auto& e : tc.boundary(j))
                CHECK(tc.internal_degree(tc.generators(j - 1)[e.row]) == tc.internal_degree(tc.generators(j)[e.col]));

        const auto rq = boundary_ranks(tc, Field::Q), r2 = boundary_ranks(tc, Field::F2);
        for (const auto& [slot, rank] : rq) CHECK(r2.at(slot) <= rank);

        const auto q = betti_table(tc, Field::Q), f2 = betti_table(tc, Field::F2);
        CHECK(euler_characteristics(q) == euler_characteristics(f2));
        CHECK(euler_characteristics(q) == generator_euler_characteristics(tc));
        CHECK(q.per_j == unblocked_per_j(tc, Field::Q));
        CHECK(f2.per_j == unblocked_per_j(tc, Field::F2));
        for (const auto& [slot, rank] : q.entries) CHECK(rank > 0);
    }
}

TEST_CASE("families with the same configuration have the same per-j totals") {
    std::mt19937_64 rng(latenum::testing::test_seed() + 3);
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 2 + trial % 3;
        const auto f = latenum::testing::random_proper_family(rng, k, 6);
        const auto w = find_witness(config_from_family(f));
        REQUIRE(w.checked);
        REQUIRE(config_from_family(*w.witness) == config_from_family(f));
        for (Field field : {Field::Q, Field::F2})
            CHECK(betti_table(f, field).per_j == betti_table(*w.witness, field).per_j);
    }
}
