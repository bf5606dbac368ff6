#include <doctest.h>

#include <array>
#include <map>

#include "mlgs/access.hpp"

using namespace mlgs;

namespace {

// blue: 0-7, 1-2; red: 0-{1..6}, 1-2, 1-8, 8-9
TwoLayerGraph probe_graph() {
    GraphBuilder b(10);
    b.add_blue_edge(0, 7);
    b.add_blue_edge(1, 2);
    for (IdentityId v = 1; v <= 6; ++v) b.add_red_edge(0, v);
    b.add_red_edge(1, 2);
    b.add_red_edge(1, 8);
    b.add_red_edge(8, 9);
    return b.build();
}

} // namespace

TEST_SUITE("access") {

TEST_CASE("queries on undiscovered identities are violations") {
    const TwoLayerGraph g = probe_graph();
    RestrictedAccess acc(g, 1);
    Rng rng(1);
    CHECK_THROWS_AS(acc.blue_neighbors(0), AccessViolation);
    CHECK_THROWS_AS(acc.sample_red_neighbor(0, rng), AccessViolation);
    CHECK_THROWS_AS((void)acc.in_blue(0), AccessViolation);
    CHECK_THROWS_AS((void)acc.red_edge_between(0, 1), AccessViolation);

    acc.seed(0);
    CHECK_NOTHROW(acc.blue_neighbors(0));
    CHECK_THROWS_AS(acc.blue_neighbors(1), AccessViolation); // 1 still undiscovered (red-only reach)
}

TEST_CASE("seeding is blue-layer only for restricted walkers") {
    const TwoLayerGraph g = probe_graph();
    RestrictedAccess acc(g, 1);
    CHECK_THROWS_AS(acc.seed(9), AccessViolation); // red-only identity
    CHECK_THROWS_AS(acc.seed(99), std::invalid_argument);
    CHECK_NOTHROW(RestrictedAccess::unrestricted(g).seed(9));
}

TEST_CASE("red sampling needs a blue-visited anchor") {
    const TwoLayerGraph g = probe_graph();
    RestrictedAccess acc(g, 1);
    Rng rng(7);
    acc.seed(0);
    acc.blue_neighbors(0); // discovers 7
    // discovered is not enough: the anchor itself must be blue-visited
    CHECK_THROWS_AS(acc.sample_red_neighbor(7, rng), AccessViolation);
    acc.blue_neighbors(7); // now visited, but 7 has no red neighbors
    CHECK_THROWS_AS(acc.sample_red_neighbor(7, rng), std::invalid_argument);
    const IdentityId y = acc.sample_red_neighbor(0, rng);
    CHECK(y >= 1);
    CHECK(y <= 6);
    // a red sample is discovered but not blue-visited: sampling red from it is illegal
    CHECK_THROWS_AS(acc.sample_red_neighbor(y, rng), AccessViolation);
}

TEST_CASE("depth limits per budget") {
    const TwoLayerGraph g = probe_graph();
    Rng rng(3);

    RestrictedAccess budget1(g, 1);
    budget1.seed(1);
    budget1.blue_neighbors(1);
    IdentityId y = budget1.sample_red_neighbor(1, rng);
    CHECK_THROWS_AS(budget1.red_neighbors_of_red(y), AccessViolation); // depth 2 needs budget 2

    RestrictedAccess budget2(g, 2);
    budget2.seed(1);
    budget2.blue_neighbors(1);
    // draw until the depth-1 sample lands on 8 (red nbrs of 1 are {0,2,8})
    IdentityId y8 = 0;
    for (int i = 0; i < 64 && y8 != 8; ++i) y8 = budget2.sample_red_neighbor(1, rng);
    REQUIRE(y8 == 8);
    const auto view = budget2.red_neighbors_of_red(8);
    REQUIRE(view.neighbors.size() == 2); // {1, 9}
    // 9 is a depth-2 discovery: expanding it again would be depth 3
    CHECK_THROWS_AS(budget2.red_neighbors_of_red(9), AccessViolation);
    // blue-visited identities are not red samples; expanding them is illegal too
    CHECK_THROWS_AS(budget2.red_neighbors_of_red(1), AccessViolation);
}

TEST_CASE("a fresh red sample upgrades a stale depth-2 label") {
    // identity 2 first enters the view at depth 2 (via 3's red list), which
    // makes expanding it illegal; when the walk later reaches it as a direct
    // red sample of blue-visited 1, that new provenance must win
    GraphBuilder b(4);
    b.add_blue_edge(0, 1);
    b.add_blue_edge(1, 2);
    b.add_red_edge(0, 3);
    b.add_red_edge(3, 2);
    b.add_red_edge(2, 1);
    const TwoLayerGraph g = b.build();

    RestrictedAccess acc(g, 2);
    Rng rng(11);
    acc.seed(0);
    acc.blue_neighbors(0);
    const IdentityId y = acc.sample_red_neighbor(0, rng); // only red neighbor: 3
    REQUIRE(y == 3);
    acc.red_neighbors_of_red(3); // 2 discovered at depth 2
    CHECK_THROWS_AS(acc.red_neighbors_of_red(2), AccessViolation);

    // walk moves on, blue-visits 1 and legally samples 2 at depth 1
    acc.blue_neighbors(1);
    const IdentityId z = acc.sample_red_neighbor(1, rng); // only red neighbor: 2
    REQUIRE(z == 2);
    CHECK_NOTHROW(acc.red_neighbors_of_red(2)); // the new provenance governs
}

TEST_CASE("query stats count every probe") {
    const TwoLayerGraph g = probe_graph();
    RestrictedAccess acc(g, 2);
    Rng rng(5);
    acc.seed(0);
    CHECK(acc.stats().total() == 0); // seeding is free

    acc.blue_neighbors(0);
    CHECK(acc.stats().blue_neighbor_queries == 1);
    const IdentityId y = acc.sample_red_neighbor(0, rng);
    CHECK(acc.stats().red_of_blue_queries == 1);
    acc.red_neighbors_of_red(y);
    CHECK(acc.stats().red_of_red_queries == 1);
    acc.red_edge_between(0, y);
    CHECK(acc.stats().pair_probe_queries == 1);
    // free metadata does not move the counters
    (void)acc.in_blue(y);
    (void)acc.blue_edge_between(0, 7); // 0's list already in hand
    CHECK(acc.stats().total() == 4);
}

TEST_CASE("blue adjacency between two unvisited identities fetches one list") {
    GraphBuilder b(4);
    b.add_blue_edge(0, 1);
    b.add_blue_edge(1, 2);
    b.add_blue_edge(2, 3);
    const TwoLayerGraph g = b.build();
    RestrictedAccess acc(g, 1);
    acc.seed(1);
    acc.blue_neighbors(1); // discovers 0 and 2, neither visited
    const auto before = acc.stats().blue_neighbor_queries;
    CHECK(acc.blue_edge_between(0, 2) == false);
    CHECK(acc.stats().blue_neighbor_queries == before + 1);
    // now one of them is visited; the next probe is free
    const auto after = acc.stats().blue_neighbor_queries;
    CHECK(acc.blue_edge_between(0, 1) == true);
    CHECK(acc.stats().blue_neighbor_queries == after);
}

TEST_CASE("red neighbor sampling is uniform") {
    const TwoLayerGraph g = probe_graph();
    RestrictedAccess acc(g, 1);
    Rng rng(11);
    acc.seed(0);
    acc.blue_neighbors(0);
    std::map<IdentityId, int> freq;
    const int n = 6000;
    for (int i = 0; i < n; ++i) ++freq[acc.sample_red_neighbor(0, rng)];
    REQUIRE(freq.size() == 6);
    for (auto [v, count] : freq) {
        CHECK(count > 800);
        CHECK(count < 1200);
    }
}

TEST_CASE("red edge-neighbor sampling skips the parallel edge") {
    // blue edge 1-2; red: 1-2 (parallel), 1-3, 2-4, 2-5
    GraphBuilder b(6);
    b.add_blue_edge(1, 2);
    b.add_red_edge(1, 2);
    b.add_red_edge(1, 3);
    b.add_red_edge(2, 4);
    b.add_red_edge(2, 5);
    const TwoLayerGraph g = b.build();
    RestrictedAccess acc(g, 1);
    Rng rng(23);
    acc.seed(1);
    acc.blue_neighbors(1);
    acc.blue_neighbors(2);

    std::map<std::pair<IdentityId, IdentityId>, int> freq;
    const int n = 6000;
    for (int i = 0; i < n; ++i) ++freq[acc.sample_red_edge_neighbor(1, 2, rng)];
    REQUIRE(freq.size() == 3); // never the parallel red edge 1-2
    CHECK(freq.count({1, 3}) == 1);
    CHECK(freq.count({2, 4}) == 1);
    CHECK(freq.count({2, 5}) == 1);
    for (auto [e, count] : freq) {
        CHECK(count > 1700);
        CHECK(count < 2300);
    }
}

TEST_CASE("unrestricted mode answers everything but still counts") {
    const TwoLayerGraph g = probe_graph();
    RestrictedAccess acc = RestrictedAccess::unrestricted(g);
    acc.seed(8);
    const auto view = acc.union_neighbors(8);
    CHECK(view.blue.empty());
    CHECK(view.red.size() == 2);
    CHECK(acc.stats().blue_neighbor_queries == 1);
    CHECK(acc.stats().red_of_blue_queries == 1);

    RestrictedAccess restricted(g, 2);
    restricted.seed(0);
    CHECK_THROWS_AS(restricted.union_neighbors(0), AccessViolation);
}

} // TEST_SUITE
