#include <doctest.h>

#include <sstream>

#include "mlgs/multiplex_graph.hpp"
#include "support/random_graphs.hpp"

using namespace mlgs;

TEST_SUITE("graph") {

TEST_CASE("builder produces sorted symmetric adjacency") {
    GraphBuilder b(5);
    b.add_blue_edge(3, 1);
    b.add_blue_edge(0, 1);
    b.add_blue_edge(1, 2);
    b.add_red_edge(2, 0);
    b.add_red_edge(0, 4);
    const TwoLayerGraph g = b.build();

    CHECK(g.num_identities() == 5);
    CHECK(g.num_blue_edges() == 3);
    CHECK(g.num_red_edges() == 2);

    const auto n1 = g.blue_neighbors(1);
    REQUIRE(n1.size() == 3);
    CHECK(n1[0] == 0);
    CHECK(n1[1] == 2);
    CHECK(n1[2] == 3);
    CHECK(g.blue_degree(1) == 3);
    CHECK(g.red_degree(0) == 2);
    CHECK(g.has_blue_edge(1, 3));
    CHECK(g.has_blue_edge(3, 1));
    CHECK_FALSE(g.has_blue_edge(0, 2));
    CHECK(g.has_red_edge(0, 2));
    CHECK_FALSE(g.has_red_edge(1, 2));
}

TEST_CASE("presence follows endpoints and declarations") {
    GraphBuilder b(6);
    b.add_blue_edge(0, 1);
    b.add_red_edge(1, 2);
    b.declare_blue(3);
    b.declare_red(4);
    const TwoLayerGraph g = b.build();

    CHECK(g.in_blue(0));
    CHECK(g.in_blue(1));
    CHECK(g.in_red(1));
    CHECK(g.in_red(2));
    CHECK_FALSE(g.in_blue(2));
    CHECK(g.in_blue(3));
    CHECK(g.in_red(4));
    CHECK_FALSE(g.in_blue(5));
    CHECK_FALSE(g.in_red(5));
    CHECK(g.num_blue_present() == 3);
    CHECK(g.num_red_present() == 3);
}

TEST_CASE("builder rejects bad edges") {
    GraphBuilder b(4);
    CHECK_THROWS_AS(b.add_blue_edge(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(b.add_blue_edge(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(b.add_red_edge(9, 1), std::invalid_argument);

    b.add_blue_edge(0, 1);
    b.add_blue_edge(1, 0); // duplicate surfaces at build()
    CHECK_THROWS_AS(b.build(), std::invalid_argument);
}

TEST_CASE("pair neighbor counts subtract the shared edge") {
    // blue: 0-1, 1-2, 0-2, 2-3; red: 0-1, 1-3
    GraphBuilder b(4);
    b.add_blue_edge(0, 1);
    b.add_blue_edge(1, 2);
    b.add_blue_edge(0, 2);
    b.add_blue_edge(2, 3);
    b.add_red_edge(0, 1);
    b.add_red_edge(1, 3);
    const TwoLayerGraph g = b.build();

    // b(0,1) = b_0 + b_1 - 2 = 2 + 2 - 2
    CHECK(g.blue_edge_neighbors(0, 1) == 2);
    CHECK(g.blue_edge_neighbors(1, 2) == 3);
    // r(0,1): red edge 0-1 is parallel, excluded: 1 + 2 - 2 = 1 (edge 1-3)
    CHECK(g.red_edge_neighbors(0, 1) == 1);
    // r(1,2): no parallel red edge: r_1 + r_2 = 2 + 0
    CHECK(g.red_edge_neighbors(1, 2) == 2);
}

TEST_CASE("mlx minimal triangle") {
    std::istringstream in("mlx 1 3\nB 0 1\nB 1 2\nB 0 2\n");
    const TwoLayerGraph g = load_mlx(in);
    CHECK(g.num_identities() == 3);
    CHECK(g.num_blue_edges() == 3);
    CHECK(g.num_red_edges() == 0);
    CHECK(g.num_blue_present() == 3);
    CHECK(g.num_red_present() == 0);
}

TEST_CASE("mlx comments blanks and declarations") {
    std::istringstream in("# a comment\nmlx 1 4\n\nNB 3\nNR 0\nB 0 1   # trailing comment\nR 1 2\n");
    const TwoLayerGraph g = load_mlx(in);
    CHECK(g.num_identities() == 4);
    CHECK(g.in_blue(3));
    CHECK(g.in_red(0));
    CHECK(g.in_red(2));
    CHECK(g.has_blue_edge(0, 1));
    CHECK(g.has_red_edge(2, 1));
}

TEST_CASE("mlx parse errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            load_mlx(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t(0);
    };
    CHECK(line_of("nope\n") == 1);
    CHECK(line_of("mlx 2 3\n") == 1);                      // unsupported version
    CHECK(line_of("mlx 1 3\nB 0 3\n") == 2);               // id out of range
    CHECK(line_of("mlx 1 3\nB 0 1\nB 1 1\n") == 3);        // self loop
    CHECK(line_of("mlx 1 3\nB 0 1\nQ 1 2\n") == 3);        // unknown record
    CHECK(line_of("mlx 1 3\nB 0 1\nR 0\n") == 3);          // missing field
    CHECK(line_of("mlx 1 3\nB 0 1\nB 1 0\n") == 3);        // duplicate edge
    CHECK(line_of("B 0 1\n") == 1);                        // missing header
}

TEST_CASE("mlx round trip is lossless and canonical") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const TwoLayerGraph g = testsupport::random_two_layer(seed, 20 + seed % 7, 25, 15);
        std::ostringstream out1;
        save_mlx(g, out1);
        std::istringstream in(out1.str());
        const TwoLayerGraph h = load_mlx(in);
        CHECK(h == g);
        std::ostringstream out2;
        save_mlx(h, out2);
        CHECK(out1.str() == out2.str());
    }
}

} // TEST_SUITE
