#include "mlgs/explicit_chain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

namespace mlgs {

namespace {

std::array<IdentityId, 2> ordered(IdentityId u, IdentityId v) { return {std::min(u, v), std::max(u, v)}; }

NodeWalkState node_state(IdentityId a, IdentityId b, IdentityId c, LinkLayer l0, LinkLayer l1) {
    return {{a, b, c}, {l0, l1}};
}

// enumerate (target, probability) pairs of one transition row; mirrors the
// samplers exactly, with rational probabilities
std::vector<std::pair<ChainState, Rational>> transitions(const TwoLayerGraph& g, WalkModel m, const ChainState& cs) {
    constexpr LinkLayer B = LinkLayer::blue, R = LinkLayer::red;
    std::vector<std::pair<ChainState, Rational>> out;

    if (m == WalkModel::rwebe) {
        const auto& s = std::get<EdgeWalkState>(cs);
        auto blue_neighbor_edges = [&g](IdentityId u, IdentityId v) {
            std::vector<std::array<IdentityId, 2>> es;
            for (IdentityId x : g.blue_neighbors(u))
                if (x != v) es.push_back(ordered(u, x));
            for (IdentityId x : g.blue_neighbors(v))
                if (x != u) es.push_back(ordered(v, x));
            return es;
        };
        if (s.second_layer == B) {
            const auto [u, v] = s.second;
            const auto blues = blue_neighbor_edges(u, v);
            std::vector<std::array<IdentityId, 2>> reds;
            for (IdentityId x : g.red_neighbors(u))
                if (x != v) reds.push_back(ordered(u, x));
            for (IdentityId x : g.red_neighbors(v))
                if (x != u) reds.push_back(ordered(v, x));
            const Rational p(1, blues.size() + reds.size());
            for (const auto& e3 : blues) out.emplace_back(EdgeWalkState{s.second, e3, B}, p);
            for (const auto& f : reds) out.emplace_back(EdgeWalkState{s.second, f, R}, p);
        } else {
            const auto [a, b] = s.first;
            const auto blues = blue_neighbor_edges(a, b);
            const Rational p(1, blues.size());
            for (const auto& e3 : blues) out.emplace_back(EdgeWalkState{s.first, e3, B}, p);
        }
        return out;
    }

    const auto& s = std::get<NodeWalkState>(cs);
    const auto [n0, n1, n2] = s.node;

    if (m == WalkModel::rwnr) {
        const std::uint64_t deg = g.blue_degree(n2) + g.red_degree(n2);
        const Rational p(1, deg);
        for (IdentityId x : g.blue_neighbors(n2)) out.emplace_back(node_state(n1, n2, x, s.link[1], B), p);
        for (IdentityId x : g.red_neighbors(n2)) out.emplace_back(node_state(n1, n2, x, s.link[1], R), p);
        return out;
    }

    if (s.link[0] == B && s.link[1] == B) {
        // uniform over both layers' neighbors of the front node
        const Rational p(1, std::uint64_t(g.blue_degree(n2)) + g.red_degree(n2));
        for (IdentityId d : g.blue_neighbors(n2)) out.emplace_back(node_state(n1, n2, d, B, B), p);
        for (IdentityId y : g.red_neighbors(n2)) out.emplace_back(node_state(n1, n2, y, B, R), p);
        return out;
    }
    if (s.link[0] == B && s.link[1] == R) {
        switch (m) {
            case WalkModel::rwnbn: {
                const Rational p(1, g.blue_degree(n1));
                for (IdentityId d : g.blue_neighbors(n1)) out.emplace_back(node_state(n0, n1, d, B, B), p);
                return out;
            }
            case WalkModel::rwomrn: {
                const Rational p(1, g.red_degree(n2));
                for (IdentityId y2 : g.red_neighbors(n2)) out.emplace_back(node_state(n1, n2, y2, R, R), p);
                return out;
            }
            case WalkModel::rwmix: {
                const Rational p(1, std::uint64_t(g.blue_degree(n1)) + g.red_degree(n2));
                for (IdentityId d : g.blue_neighbors(n1)) out.emplace_back(node_state(n0, n1, d, B, B), p);
                for (IdentityId y2 : g.red_neighbors(n2)) out.emplace_back(node_state(n1, n2, y2, R, R), p);
                return out;
            }
            default: break;
        }
        throw std::logic_error("blue-red window in a model that cannot hold one");
    }
    // (red,red): ordered pair of blue neighbors of the anchor, with replacement
    const auto blues = g.blue_neighbors(n0);
    const Rational p = Rational(1, blues.size()) / blues.size();
    for (IdentityId a : blues)
        for (IdentityId c : blues) out.emplace_back(node_state(a, n0, c, B, B), Rational(p));
    return out;
}

std::vector<ChainState> initial_support(const TwoLayerGraph& g, WalkModel m) {
    std::vector<ChainState> init;
    for (IdentityId v = 0; v < g.num_identities(); ++v) {
        const auto nb = g.blue_neighbors(v);
        for (IdentityId a : nb)
            for (IdentityId c : nb) {
                if (a == c) continue;
                if (m == WalkModel::rwebe)
                    init.emplace_back(EdgeWalkState{ordered(a, v), ordered(v, c), LinkLayer::blue});
                else
                    init.emplace_back(node_state(a, v, c, LinkLayer::blue, LinkLayer::blue));
            }
    }
    return init;
}

} // namespace

Rational rational_pi_tilde(const TwoLayerGraph& g, WalkModel m, const ChainState& cs) {
    if (m == WalkModel::rwebe) {
        const auto& s = std::get<EdgeWalkState>(cs);
        if (s.second_layer == LinkLayer::blue) return 1;
        const std::uint64_t be = g.blue_edge_neighbors(s.first[0], s.first[1]);
        const std::uint64_t re = g.red_edge_neighbors(s.first[0], s.first[1]);
        return Rational(be, be + re);
    }
    const auto& s = std::get<NodeWalkState>(cs);
    const IdentityId mid = s.node[1];
    const std::uint64_t b = g.blue_degree(mid), r = g.red_degree(mid);
    if (m == WalkModel::rwnr) return Rational(1, b + r);
    if (s.link[0] == LinkLayer::blue && s.link[1] == LinkLayer::blue) return Rational(1, b);
    if (s.link[0] == LinkLayer::blue) return Rational(1, b + r);
    const std::uint64_t bx = g.blue_degree(s.node[0]), rx = g.red_degree(s.node[0]);
    if (m == WalkModel::rwomrn) return Rational(bx) / (Rational(bx + rx) * r);
    return Rational(bx) / (Rational(bx + rx) * (Rational(r) + bx)); // rwmix
}

Rational ExplicitChain::normalization() const {
    Rational sum = 0;
    for (const auto& p : pi_tilde) sum += p;
    return sum;
}

ExplicitChain build_explicit_chain(const TwoLayerGraph& g, WalkModel m, std::size_t max_states) {
    ExplicitChain c;
    c.model = m;
    std::map<ChainState, std::uint32_t> index;
    std::deque<std::uint32_t> queue;

    auto intern = [&](const ChainState& s) {
        auto [it, fresh] = index.try_emplace(s, static_cast<std::uint32_t>(c.states.size()));
        if (fresh) {
            if (c.states.size() >= max_states)
                throw std::runtime_error("explicit chain exceeds " + std::to_string(max_states) + " states");
            c.states.push_back(s);
            queue.push_back(it->second);
        }
        return it->second;
    };

    for (const ChainState& s : initial_support(g, m)) intern(s);
    if (c.states.empty()) throw std::runtime_error("no valid initial state: blue layer has no wedge");

    c.rows.resize(0);
    while (!queue.empty()) {
        const std::uint32_t i = queue.front();
        queue.pop_front();
        auto ts = transitions(g, m, c.states[i]);
        std::map<std::uint32_t, Rational> row;
        for (auto& [target, p] : ts) row[intern(target)] += p;
        if (c.rows.size() <= i) c.rows.resize(c.states.size());
        c.rows[i].assign(row.begin(), row.end());
    }
    c.rows.resize(c.states.size());

    c.pi_tilde.reserve(c.states.size());
    for (const ChainState& s : c.states) c.pi_tilde.push_back(rational_pi_tilde(g, m, s));
    return c;
}

bool rows_sum_to_one(const ExplicitChain& c) {
    for (const auto& row : c.rows) {
        Rational sum = 0;
        for (const auto& [j, p] : row) sum += p;
        if (sum != 1) return false;
    }
    return true;
}

bool inflow_holds_exactly(const ExplicitChain& c) {
    std::vector<Rational> inflow(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (const auto& [j, p] : c.rows[i]) inflow[j] += c.pi_tilde[i] * p;
    for (std::size_t j = 0; j < c.size(); ++j)
        if (inflow[j] != c.pi_tilde[j]) return false;
    return true;
}

namespace {

// double-precision CSR copy of the rows for the iterative solvers
struct Csr {
    std::vector<std::size_t> ptr;
    std::vector<std::uint32_t> col;
    std::vector<double> p;

    explicit Csr(const ExplicitChain& c) {
        ptr.assign(c.size() + 1, 0);
        for (std::size_t i = 0; i < c.size(); ++i) ptr[i + 1] = ptr[i] + c.rows[i].size();
        col.resize(ptr.back());
        p.resize(ptr.back());
        std::size_t k = 0;
        for (const auto& row : c.rows)
            for (const auto& [j, pr] : row) {
                col[k] = j;
                p[k++] = static_cast<double>(pr);
            }
    }

    void multiply(const std::vector<double>& x, std::vector<double>& out) const {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t i = 0; i < ptr.size() - 1; ++i) {
            const double xi = x[i];
            if (xi == 0) continue;
            for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k) out[col[k]] += xi * p[k];
        }
    }
};

} // namespace

std::vector<double> solve_stationary(const ExplicitChain& c, double tol, std::uint64_t max_iters) {
    const Csr P(c);
    const std::size_t n = c.size();
    std::vector<double> x(n, 1.0 / double(n)), xp(n);
    for (std::uint64_t it = 0; it < max_iters; ++it) {
        P.multiply(x, xp);
        double diff = 0;
        for (std::size_t i = 0; i < n; ++i) {
            xp[i] = 0.5 * x[i] + 0.5 * xp[i]; // lazy step kills periodicity
            diff += std::abs(xp[i] - x[i]);
        }
        x.swap(xp);
        if (diff <= tol) return x;
    }
    throw std::runtime_error("stationary solve did not converge to tolerance");
}

double proportionality_gap(const ExplicitChain& c, const std::vector<double>& pi) {
    const double M = static_cast<double>(c.normalization());
    double worst = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double expect = static_cast<double>(c.pi_tilde[i]) / M;
        worst = std::max(worst, std::abs(pi[i] / expect - 1.0));
    }
    return worst;
}

std::optional<std::uint32_t> mixing_time(const ExplicitChain& c, double zeta, std::uint32_t cap) {
    const Csr P(c);
    const std::size_t n = c.size();
    std::vector<double> target(n);
    {
        const double M = static_cast<double>(c.normalization());
        for (std::size_t i = 0; i < n; ++i) target[i] = static_cast<double>(c.pi_tilde[i]) / M;
    }
    auto tv = [&](const std::vector<double>& x) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i] - target[i]);
        return 0.5 * s;
    };
    // TV to stationarity is non-increasing in t, so each start has a first
    // crossing time; tau is the max over starts
    std::uint32_t tau = 0;
    std::vector<double> x(n), xp(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(x.begin(), x.end(), 0.0);
        x[s] = 1.0;
        std::uint32_t t = 0;
        while (tv(x) > zeta) {
            if (t >= cap) return std::nullopt;
            P.multiply(x, xp);
            x.swap(xp);
            ++t;
        }
        tau = std::max(tau, t);
    }
    return tau;
}

} // namespace mlgs
