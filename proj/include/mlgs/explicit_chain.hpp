#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mlgs/multiplex_graph.hpp"
#include "mlgs/walk_state.hpp"

namespace mlgs {

using Rational = boost::multiprecision::cpp_rational;

using ChainState = std::variant<NodeWalkState, EdgeWalkState>;

// A walker's Markov chain spelled out: reachable states (closure of the
// initial wedge support under transitions), sparse transition rows with exact
// rational probabilities, and the exact unnormalized stationary candidate
// pi_tilde per state. Small graphs only; build throws when max_states is hit.
struct ExplicitChain {
    WalkModel model;
    std::vector<ChainState> states;
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> rows;
    std::vector<Rational> pi_tilde;

    std::size_t size() const { return states.size(); }
    Rational normalization() const; // sum of pi_tilde over reached states
};

ExplicitChain build_explicit_chain(const TwoLayerGraph& g, WalkModel m, std::size_t max_states = 5000);

// exact rational pi-tilde of one state; mirrors stationary_weight
Rational rational_pi_tilde(const TwoLayerGraph& g, WalkModel m, const ChainState& s);

// every transition row sums to exactly 1
bool rows_sum_to_one(const ExplicitChain& c);
// the balance identities: (pi_tilde * P)(S) == pi_tilde(S) exactly, every S
bool inflow_holds_exactly(const ExplicitChain& c);

// stationary distribution by lazy power iteration ((I+P)/2, same fixed
// point), iterated until the L1 step difference drops below tol
std::vector<double> solve_stationary(const ExplicitChain& c, double tol = 1e-12,
                                     std::uint64_t max_iters = 2'000'000);

// max_i |pi[i] * normalization / pi_tilde[i] - 1|: how far the solved vector
// is from proportional to the candidate
double proportionality_gap(const ExplicitChain& c, const std::vector<double>& pi);

// tau(zeta): smallest t with max over starts of TV(P^t(s,.), pi) <= zeta.
// nullopt when not reached within cap steps (periodic or slowly mixing).
std::optional<std::uint32_t> mixing_time(const ExplicitChain& c, double zeta = 0.125, std::uint32_t cap = 4096);

} // namespace mlgs
