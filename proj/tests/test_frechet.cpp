#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "test_support.hpp"

using namespace chainvd;
using support::c2;
using support::c3;

TEST_CASE("walk_cost on hand-checked walks") {
    const Chain a1 = c2({{0, 0}}, "a");
    const Chain b1 = c2({{0, 1}}, "b");
    CHECK(walk_cost(a1, b1, PairedWalk{{{{1, 1}, {1, 1}}}}) == 1.0);

    const Chain a2 = c2({{0, 0}, {1, 0}}, "a");
    CHECK(walk_cost(a2, b1, PairedWalk{{{{1, 2}, {1, 1}}}}) ==
          Catch::Approx(std::sqrt(2.0)).margin(1e-15));

    const Chain a3 = c2({{0, 0}, {2, 0}, {4, 0}}, "a");
    const Chain b3 = c2({{0, 2}, {4, 2}}, "b");
    const PairedWalk w3{{{{1, 1}, {1, 1}}, {{2, 3}, {2, 2}}}};
    CHECK(walk_cost(a3, b3, w3) == Catch::Approx(2.0 * std::sqrt(2.0)).margin(1e-15));
}

TEST_CASE("walk validation rejects malformed walks") {
    const int k = 3, l = 2;
    CHECK_THROWS_AS(validate_walk(PairedWalk{}, k, l), InvalidWalk);
    // gap in coverage
    CHECK_THROWS_AS(validate_walk(PairedWalk{{{{1, 1}, {1, 1}}, {{3, 3}, {2, 2}}}}, k, l),
                    InvalidWalk);
    // overlap
    CHECK_THROWS_AS(validate_walk(PairedWalk{{{{1, 2}, {1, 1}}, {{2, 3}, {2, 2}}}}, k, l),
                    InvalidWalk);
    // both sides grow in one step
    CHECK_THROWS_AS(validate_walk(PairedWalk{{{{1, 3}, {1, 2}}}}, k, l), InvalidWalk);
    // empty range
    CHECK_THROWS_AS(validate_walk(PairedWalk{{{{1, 0}, {1, 2}}, {{1, 3}, {1, 1}}}}, k, l),
                    InvalidWalk);
    // stops short
    CHECK_THROWS_AS(validate_walk(PairedWalk{{{{1, 2}, {1, 2}}}}, k, l), InvalidWalk);
    // overshoots
    CHECK_THROWS_AS(validate_walk(PairedWalk{{{{1, 4}, {1, 1}}, {{5, 5}, {2, 2}}}}, k, l),
                    InvalidWalk);

    CHECK_NOTHROW(validate_walk(PairedWalk{{{{1, 2}, {1, 1}}, {{3, 3}, {2, 2}}}}, k, l));
}

TEST_CASE("dfd on hand-checked inputs") {
    const Chain a = c2({{0, 0}, {2, 0}}, "a");
    const Chain b = c2({{0, 1}, {1, 1}, {2, 1}}, "b");
    const FrechetResult r = dfd(a, b);
    CHECK(r.distance == Catch::Approx(std::sqrt(2.0)).margin(1e-15));
    CHECK(r.distance == support::min_walk_cost(a, b));

    CHECK(dfd(c2({{3, 3}}, "p"), c2({{0, -1}}, "q")).distance == 5.0);
    CHECK(dfd(a, a).distance == 0.0);
}

TEST_CASE("dfd alignment is deterministic on ties") {
    const Chain a = c2({{0, 0}, {1, 0}}, "a");
    const Chain b = c2({{0, 1}, {1, 1}}, "b");
    const FrechetResult r = dfd(a, b);
    CHECK(r.distance == 1.0);
    CHECK(r.alignment == PairedWalk{{{{1, 1}, {1, 1}}, {{2, 2}, {2, 2}}}});
    CHECK(r.realizing_pair == std::pair<int, int>(1, 1));
}

TEST_CASE("dfd base cases reduce to the worst vertex distance") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = uniform_int(rng, 2, 3);
        const Chain a = random_chain(rng, dim, static_cast<std::size_t>(uniform_int(rng, 1, 8)),
                                     -10, 10, "a");
        const Chain b = random_chain(rng, dim, 1, -10, 10, "b");
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, euclid(a[i], b[0]));
        REQUIRE(dfd(a, b).distance == worst);
        REQUIRE(dfd(b, a).distance == worst);
    }
}

TEST_CASE("dfd agrees exactly with the exhaustive oracle") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        const int dim = uniform_int(rng, 2, 3);
        const auto k = static_cast<std::size_t>(uniform_int(rng, 1, 6));
        const auto l = static_cast<std::size_t>(uniform_int(rng, 1, 6));
        const Chain a = random_chain(rng, dim, k, -10, 10, "a");
        const Chain b = random_chain(rng, dim, l, -10, 10, "b");
        REQUIRE(dfd(a, b).distance == dfd_oracle(a, b));
    }
}

TEST_CASE("dfd agrees with the minimum over literal walks") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 150; ++trial) {
        const int dim = uniform_int(rng, 2, 3);
        const auto k = static_cast<std::size_t>(uniform_int(rng, 1, 4));
        const auto l = static_cast<std::size_t>(uniform_int(rng, 1, 4));
        const Chain a = random_chain(rng, dim, k, -10, 10, "a");
        const Chain b = random_chain(rng, dim, l, -10, 10, "b");
        REQUIRE(dfd(a, b).distance == support::min_walk_cost(a, b));
        REQUIRE(dfd(a, b).distance == dfd_oracle(a, b));
    }
}

TEST_CASE("dfd is symmetric") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = uniform_int(rng, 2, 3);
        const Chain a = random_chain(rng, dim, static_cast<std::size_t>(uniform_int(rng, 1, 7)),
                                     -5, 5, "a");
        const Chain b = random_chain(rng, dim, static_cast<std::size_t>(uniform_int(rng, 1, 7)),
                                     -5, 5, "b");
        REQUIRE(dfd(a, b).distance == dfd(b, a).distance);
    }
}

TEST_CASE("dfd alignment validates and realizes the distance") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = uniform_int(rng, 2, 3);
        const Chain a = random_chain(rng, dim, static_cast<std::size_t>(uniform_int(rng, 1, 9)),
                                     -10, 10, "a");
        const Chain b = random_chain(rng, dim, static_cast<std::size_t>(uniform_int(rng, 1, 9)),
                                     -10, 10, "b");
        const FrechetResult r = dfd(a, b);

        REQUIRE(walk_cost(a, b, r.alignment) == r.distance);
        const auto [ri, rj] = r.realizing_pair;
        REQUIRE(euclid(a[static_cast<std::size_t>(ri - 1)], b[static_cast<std::size_t>(rj - 1)]) ==
                r.distance);

        // lexicographically smallest realizing pair along the walk
        std::pair<int, int> smallest{0, 0};
        const double worst_sq = r.distance * r.distance;
        for (const WalkStep& st : r.alignment.steps)
            for (int i = st.a.lo; i <= st.a.hi && smallest.first == 0; ++i)
                for (int j = st.b.lo; j <= st.b.hi; ++j) {
                    const double d = euclid_sq(a[static_cast<std::size_t>(i - 1)],
                                               b[static_cast<std::size_t>(j - 1)]);
                    if (d >= worst_sq * (1.0 - 1e-12) &&
                        euclid(a[static_cast<std::size_t>(i - 1)],
                               b[static_cast<std::size_t>(j - 1)]) == r.distance) {
                        smallest = {i, j};
                        break;
                    }
                }
        REQUIRE(smallest == r.realizing_pair);
    }
}

TEST_CASE("oracle refuses oversized instances") {
    std::mt19937_64 rng(29);
    const Chain a = random_chain(rng, 2, 7, -1, 1, "a");
    const Chain b = random_chain(rng, 2, 6, -1, 1, "b");
    CHECK_THROWS_AS(dfd_oracle(a, b), TooLargeForOracle);
    CHECK_NOTHROW(dfd_oracle(random_chain(rng, 2, 6, -1, 1, "a"),
                             random_chain(rng, 2, 6, -1, 1, "b")));
}

TEST_CASE("dfd_segments matches the endpoint formula") {
    const Chain a = c2({{0, 0}, {5, 0}}, "a");
    const Chain b = c2({{3, 4}, {5, 1}}, "b");
    CHECK(dfd_segments(a, b) == 5.0);
    CHECK(dfd_segments(a, a) == 0.0);

    CHECK_THROWS_AS(dfd_segments(a, c2({{0, 0}}, "short")), InvalidArity);
    CHECK_THROWS_AS(dfd_segments(c2({{0, 0}, {1, 1}, {2, 2}}, "long"), b), InvalidArity);

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = uniform_int(rng, 2, 3);
        const Chain s = random_chain(rng, dim, 2, -20, 20, "s");
        const Chain t = random_chain(rng, dim, 2, -20, 20, "t");
        REQUIRE(dfd_segments(s, t) == dfd(s, t).distance);
        REQUIRE(dfd_segments(s, t) ==
                std::max(euclid(s[0], t[0]), euclid(s[1], t[1])));
    }
}

TEST_CASE("chains of different dimension cannot be compared") {
    const Chain a = c2({{0, 0}, {1, 1}}, "a");
    const Chain b = c3({{0, 0, 0}, {1, 1, 1}}, "b");
    CHECK_THROWS_AS(dfd(a, b), DimensionError);
    CHECK_THROWS_AS(dfd_oracle(a, b), DimensionError);
    CHECK_THROWS_AS(dfd_segments(a, b), DimensionError);
    CHECK_THROWS_AS(walk_cost(a, b, PairedWalk{{{{1, 1}, {1, 1}}, {{2, 2}, {2, 2}}}}),
                    DimensionError);
}
