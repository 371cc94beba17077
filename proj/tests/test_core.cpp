#include <doctest.h>

#include "latenum/core.hpp"

using namespace latenum;

TEST_CASE("parse_subset encodes digits as bits") {
    const GroundSize k4{4};
    CHECK(parse_subset("123", k4) == 0b0111u);
    CHECK(parse_subset("1234", k4) == 0b1111u);
    CHECK(parse_subset("13", k4) == 0b0101u);
    CHECK(parse_subset("31", k4) == 0b0101u);
}

TEST_CASE("parse_subset rejects malformed text") {
    const GroundSize k4{4};
    CHECK_THROWS_AS(parse_subset("", k4), MalformedInput);
    CHECK_THROWS_AS(parse_subset("15", k4), MalformedInput);
    CHECK_THROWS_AS(parse_subset("10", k4), MalformedInput);
    CHECK_THROWS_AS(parse_subset("1a", k4), MalformedInput);
    CHECK_THROWS_AS(parse_subset("121", k4), MalformedInput);
}

TEST_CASE("parse and format round trip on sorted digit strings") {
    for (int k = 1; k <= 9; ++k) {
        const GroundSize g{k};
        for (Mask s = 1; s <= g.full(); ++s) {
            const std::string text = format_subset(s);
            CHECK(parse_subset(text, g) == s);
        }
    }
    CHECK(format_subset(0) == "");
}

TEST_CASE("subset_domain lists sets of size at least two canonically") {
    const auto d3 = subset_domain(GroundSize{3});
    REQUIRE(d3.size() == 4);
    CHECK(d3.members == std::vector<Mask>{0b011, 0b101, 0b110, 0b111});
    CHECK(subset_domain(GroundSize{4}).size() == 11);
    CHECK(subset_domain(GroundSize{1}).members.empty());
    for (int k = 1; k <= 9; ++k) {
        const auto d = subset_domain(GroundSize{k});
        CHECK(d.size() == (std::size_t{1} << k) - k - 1);
        for (std::size_t i = 1; i < d.size(); ++i) CHECK(canonical_less(d.members[i - 1], d.members[i]));
        for (Mask s : d.members) CHECK(popcount(s) >= 2);
    }
    CHECK_THROWS_AS(subset_domain(GroundSize{0}), DomainError);
    CHECK_THROWS_AS(subset_domain(GroundSize{10}), DomainError);
}

TEST_CASE("canonical order is by cardinality then value") {
    CHECK(canonical_less(0b100, 0b011));
    CHECK(canonical_less(0b011, 0b101));
    CHECK_FALSE(canonical_less(0b101, 0b101));
    const auto all = all_subsets_canonical(GroundSize{3});
    CHECK(all == std::vector<Mask>{0, 1, 2, 4, 3, 5, 6, 7});
}

TEST_CASE("require_ground_size") {
    CHECK_NOTHROW(require_ground_size(GroundSize{20}, kMaxTaylorK, "x"));
    CHECK_THROWS_AS(require_ground_size(GroundSize{21}, kMaxTaylorK, "x"), DomainError);
    CHECK_THROWS_AS(require_ground_size(GroundSize{0}, kMaxEnumerationK, "x"), DomainError);
}
