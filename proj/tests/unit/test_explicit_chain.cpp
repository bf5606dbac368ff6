#include <doctest.h>

#include "mlgs/explicit_chain.hpp"
#include "support/random_graphs.hpp"

using namespace mlgs;

namespace {

// triangle-bearing graph so the blue walk is aperiodic and every model has
// red material to work with
TwoLayerGraph mixing_graph() {
    GraphBuilder b(6);
    b.add_blue_edge(0, 1);
    b.add_blue_edge(1, 2);
    b.add_blue_edge(0, 2);
    b.add_blue_edge(2, 3);
    b.add_blue_edge(3, 4);
    b.add_red_edge(1, 3);
    b.add_red_edge(2, 4);
    b.add_red_edge(4, 5);
    b.add_red_edge(1, 2);
    return b.build();
}

} // namespace

TEST_SUITE("chain") {

TEST_CASE("every row is a probability distribution, exactly") {
    const TwoLayerGraph g = mixing_graph();
    for (WalkModel m : kAllModels) {
        const ExplicitChain c = build_explicit_chain(g, m);
        REQUIRE(c.size() > 0);
        CHECK(rows_sum_to_one(c));
    }
}

TEST_CASE("pi-tilde satisfies the inflow identities in exact arithmetic") {
    for (std::uint64_t seed : {1ull, 6ull, 14ull}) {
        const TwoLayerGraph g = testsupport::random_connected_two_layer(seed, 8, 5, 6);
        for (WalkModel m : kAllModels) {
            const ExplicitChain c = build_explicit_chain(g, m);
            CHECK(rows_sum_to_one(c));
            CHECK(inflow_holds_exactly(c));
        }
    }
}

TEST_CASE("solved stationary vector is proportional to pi-tilde") {
    const TwoLayerGraph g = mixing_graph();
    for (WalkModel m : kAllModels) {
        const ExplicitChain c = build_explicit_chain(g, m);
        const auto pi = solve_stationary(c);
        double total = 0;
        for (double p : pi) total += p;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(proportionality_gap(c, pi) < 1e-9);
    }
}

TEST_CASE("state spaces stay within the cap or the build refuses") {
    const TwoLayerGraph g = mixing_graph();
    const ExplicitChain c = build_explicit_chain(g, WalkModel::rwnbn);
    CHECK(c.size() <= 5000);
    CHECK_THROWS_AS(build_explicit_chain(g, WalkModel::rwnbn, 3), std::runtime_error);
}

TEST_CASE("mixing time is reported when the chain mixes") {
    const TwoLayerGraph g = mixing_graph();
    const ExplicitChain c = build_explicit_chain(g, WalkModel::rwnbn);
    const auto tau = mixing_time(c, 0.125, 4096);
    REQUIRE(tau.has_value());
    CHECK(*tau >= 1);
    CHECK(*tau < 4096);
    // a tighter threshold cannot mix sooner
    const auto tau_tight = mixing_time(c, 0.01, 4096);
    REQUIRE(tau_tight.has_value());
    CHECK(*tau_tight >= *tau);
}

TEST_CASE("periodic chains never reach the threshold") {
    // pure blue path: the walk position alternates parity forever
    GraphBuilder b(3);
    b.add_blue_edge(0, 1);
    b.add_blue_edge(1, 2);
    const TwoLayerGraph g = b.build();
    const ExplicitChain c = build_explicit_chain(g, WalkModel::rwnbn);
    CHECK_FALSE(mixing_time(c, 0.125, 256).has_value());
}

TEST_CASE("rational pi-tilde mirrors the floating point weights") {
    const TwoLayerGraph g = mixing_graph();
    for (WalkModel m : kAllModels) {
        const ExplicitChain c = build_explicit_chain(g, m);
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double from_rational = double(c.pi_tilde[i]);
            const double direct = std::holds_alternative<NodeWalkState>(c.states[i])
                                      ? stationary_weight(g, m, std::get<NodeWalkState>(c.states[i]))
                                      : stationary_weight(g, std::get<EdgeWalkState>(c.states[i]));
            CHECK(from_rational == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

} // TEST_SUITE
