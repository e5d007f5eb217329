#include <doctest.h>

#include <algorithm>
#include <map>

#include "rsklab/young.hpp"

using rsklab::YoungDiagram;

TEST_CASE("diagram basics") {
    YoungDiagram empty;
    CHECK(empty.valid());
    CHECK(empty.box_count() == 0);
    CHECK(empty.addable(0));
    CHECK_FALSE(empty.addable(1));

    YoungDiagram lam({4, 3, 2});
    CHECK(lam.valid());
    CHECK(lam.box_count() == 9);
    CHECK(lam.row(0) == 4);
    CHECK(lam.row(3) == 0);
    CHECK(lam.conjugate() == std::vector<std::uint32_t>{3, 3, 2, 1});

    CHECK_FALSE(YoungDiagram({2, 3}).valid());
    CHECK_FALSE(YoungDiagram({2, 0}).valid());
}

TEST_CASE("addable and removable rows") {
    YoungDiagram lam({4, 3, 3});
    // Rows 0, 1 and the fresh row 3 can take a box; row 2 cannot (would pass
    // row 1).  Rows 0 and 2 can lose a box.
    CHECK(lam.addable_rows() == std::vector<std::size_t>{0, 1, 3});
    CHECK(lam.removable(0));
    CHECK_FALSE(lam.removable(1));
    CHECK(lam.removable(2));

    CHECK(lam.with_box(1).rows == std::vector<std::uint32_t>{4, 4, 3});
    CHECK(lam.with_box(3).rows == std::vector<std::uint32_t>{4, 3, 3, 1});
    CHECK(lam.without_box(2).rows == std::vector<std::uint32_t>{4, 3, 2});
    CHECK(YoungDiagram({1}).without_box(0).rows.empty());
    CHECK_THROWS_AS((void)lam.with_box(2), std::invalid_argument);
    CHECK_THROWS_AS((void)lam.without_box(1), std::invalid_argument);
}

TEST_CASE("partition enumeration") {
    CHECK(rsklab::partitions_of(0).size() == 1);
    // p(1..8) = 1, 2, 3, 5, 7, 11, 15, 22.
    const std::size_t expected[] = {1, 2, 3, 5, 7, 11, 15, 22};
    for (std::size_t n = 1; n <= 8; ++n) {
        auto parts = rsklab::partitions_of(n);
        CHECK(parts.size() == expected[n - 1]);
        CHECK(parts.size() == rsklab::partition_count(n));
        for (const auto& p : parts) {
            CHECK(p.valid());
            CHECK(p.box_count() == n);
        }
        // No duplicates.
        auto sorted = parts;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
    CHECK(rsklab::partition_count(50) == 204226);
}

TEST_CASE("conjugate is an involution") {
    for (const auto& p : rsklab::partitions_of(7)) {
        YoungDiagram conj(p.conjugate());
        CHECK(conj.valid());
        CHECK(YoungDiagram(conj.conjugate()) == p);
    }
}
