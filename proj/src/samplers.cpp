#include "mlgs/samplers.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlgs {

WedgeSampler::WedgeSampler(const TwoLayerGraph& g) : g_(g), cum_(g.num_identities() + 1, 0), total_(0) {
    for (IdentityId v = 0; v < g.num_identities(); ++v) {
        const std::uint64_t b = g.blue_degree(v);
        cum_[v + 1] = cum_[v] + b * (b - (b > 0 ? 1 : 0));
    }
    total_ = cum_.back();
}

NodeWalkState WedgeSampler::sample(Rng& rng) const {
    if (total_ == 0) throw std::runtime_error("no valid initial state: blue layer has no wedge");
    const std::uint64_t t = rng.next_below(total_);
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), t);
    const IdentityId v = static_cast<IdentityId>((it - cum_.begin()) - 1);
    const auto nb = g_.blue_neighbors(v);
    const std::uint64_t b = nb.size();
    std::uint64_t j = t - cum_[v]; // ordered pair index in [0, b*(b-1))
    std::uint64_t ai = j / (b - 1);
    std::uint64_t ci = j % (b - 1);
    if (ci >= ai) ++ci; // skip the diagonal
    return {{nb[ai], v, nb[ci]}, {LinkLayer::blue, LinkLayer::blue}};
}

std::array<double, kNumGraphletTypes> normalize_weights(WalkModel m,
                                                        const std::array<double, kNumGraphletTypes>& w) {
    const int last = m == WalkModel::rwnr ? 16 : 14;
    double total = 0;
    for (int i = 0; i < last; ++i) total += w[i];
    std::array<double, kNumGraphletTypes> d{};
    if (total > 0)
        for (int i = 0; i < last; ++i) d[i] = w[i] / total;
    return d;
}

namespace {

struct Accum {
    std::array<double, kNumGraphletTypes> w{};
    std::uint64_t degenerate = 0;
    std::uint64_t unweighted = 0;
};

// pair color as seen by the crawler: a traversed link pins one layer, the
// other layer (and untraversed pairs) are probed through the facade
PairColor probe_color(RestrictedAccess& acc, IdentityId u, IdentityId v, std::optional<LinkLayer> traversed) {
    const bool blue = traversed == LinkLayer::blue || acc.blue_edge_between(u, v);
    const bool red = traversed == LinkLayer::red || acc.red_edge_between(u, v);
    return static_cast<PairColor>((blue ? 1 : 0) | (red ? 2 : 0));
}

// Shared by rwnbn / rwomrn / rwmix / rwnr. The window's pi-tilde is computed
// at transition time from degrees returned by the same queries that drove the
// transition, so the walker never peeks beyond its legal view.
class NodeWalker {
public:
    NodeWalker(WalkModel m, RestrictedAccess& acc, const NodeWalkState& init) : m_(m), acc_(acc), s_(init) {
        acc_.seed(init.node[0]);
        acc_.seed(init.node[1]);
        const auto mid = acc_.blue_neighbors(init.node[1]); // discovers both wedge ends
        pi_ = m_ == WalkModel::rwnr ? 1.0 / (double(mid.blue_degree) + double(mid.red_degree))
                                    : 1.0 / double(mid.blue_degree);
    }

    void step(Rng& rng) {
        switch (m_) {
            case WalkModel::rwnr: return step_rwnr(rng);
            default: break;
        }
        if (s_.link[0] == LinkLayer::blue && s_.link[1] == LinkLayer::blue) return step_from_all_blue(rng);
        if (s_.link[0] == LinkLayer::blue) return step_from_blue_red(rng);
        return step_from_red_red(rng);
    }

    void accumulate(Accum& a, const IsoCoefficientTable& alpha) {
        const GraphletType t = classify();
        if (t.degenerate()) {
            ++a.degenerate;
            return;
        }
        const std::uint32_t al = alpha[t.index() - 1];
        if (al == 0) {
            ++a.unweighted; // all-red triple under a restricted walker
            return;
        }
        a.w[t.index() - 1] += 1.0 / (double(al) * pi_);
    }

    const NodeWalkState& state() const { return s_; }
    double pi_tilde() const { return pi_; }

private:
    GraphletType classify() {
        const auto [x, y, z] = s_.node;
        if (x == y || x == z || y == z) return GraphletType::degenerate_type();
        return classify_pair_colors(probe_color(acc_, x, y, s_.link[0]), probe_color(acc_, x, z, std::nullopt),
                                    probe_color(acc_, y, z, s_.link[1]));
    }

    // all-blue (a,v,c): uniform over the b_c + r_c neighbors of c across both
    // layers; a red pick starts the detour
    void step_from_all_blue(Rng& rng) {
        const IdentityId c = s_.node[2];
        const auto view = acc_.blue_neighbors(c);
        const std::uint64_t total = view.blue_degree + view.red_degree;
        const std::uint64_t k = rng.next_below(total);
        if (k < view.blue_degree) {
            s_ = {{s_.node[1], c, view.neighbors[k]}, {LinkLayer::blue, LinkLayer::blue}};
            pi_ = 1.0 / double(view.blue_degree);
        } else {
            const IdentityId y = acc_.sample_red_neighbor(c, rng);
            s_ = {{s_.node[1], c, y}, {LinkLayer::blue, LinkLayer::red}};
            pi_ = 1.0 / double(total);
        }
    }

    // (a,v,y) with v blue, y a red sample
    void step_from_blue_red(Rng& rng) {
        const IdentityId v = s_.node[1];
        const auto view = acc_.blue_neighbors(v);
        switch (m_) {
            case WalkModel::rwnbn: {
                // retreat: replace the red detour with a blue neighbor of v
                const IdentityId d = view.neighbors[rng.next_index(view.neighbors.size())];
                s_ = {{s_.node[0], v, d}, {LinkLayer::blue, LinkLayer::blue}};
                pi_ = 1.0 / double(view.blue_degree);
                return;
            }
            case WalkModel::rwomrn: {
                // always take one more red hop
                const auto reds = acc_.red_neighbors_of_red(s_.node[2]);
                const IdentityId y2 = reds.neighbors[rng.next_index(reds.neighbors.size())];
                s_ = {{v, s_.node[2], y2}, {LinkLayer::red, LinkLayer::red}};
                const double bx = view.blue_degree, rx = view.red_degree;
                pi_ = bx / ((bx + rx) * double(reds.neighbors.size()));
                return;
            }
            case WalkModel::rwmix: {
                // one urn over v's blue neighbors and y's red neighbors
                const auto reds = acc_.red_neighbors_of_red(s_.node[2]);
                const std::uint64_t bv = view.blue_degree, ry = reds.neighbors.size();
                const std::uint64_t k = rng.next_below(bv + ry);
                if (k < bv) {
                    s_ = {{s_.node[0], v, view.neighbors[k]}, {LinkLayer::blue, LinkLayer::blue}};
                    pi_ = 1.0 / double(bv);
                } else {
                    s_ = {{v, s_.node[2], reds.neighbors[k - bv]}, {LinkLayer::red, LinkLayer::red}};
                    const double bx = view.blue_degree, rx = view.red_degree;
                    pi_ = bx / ((bx + rx) * (double(ry) + bx));
                }
                return;
            }
            default: throw std::logic_error("blue-red window in a model that cannot hold one");
        }
    }

    // (x,y,y'): resume the blue walk at x with an ordered pair of its blue
    // neighbors (with replacement, so a backtracking window is possible)
    void step_from_red_red(Rng& rng) {
        const IdentityId x = s_.node[0];
        const auto view = acc_.blue_neighbors(x);
        const IdentityId a = view.neighbors[rng.next_index(view.neighbors.size())];
        const IdentityId c = view.neighbors[rng.next_index(view.neighbors.size())];
        s_ = {{a, x, c}, {LinkLayer::blue, LinkLayer::blue}};
        pi_ = 1.0 / double(view.blue_degree);
    }

    // simple walk on the union multigraph; parallel blue and red edges are
    // distinct choices
    void step_rwnr(Rng& rng) {
        const IdentityId w = s_.node[2];
        const auto view = acc_.union_neighbors(w);
        const std::uint64_t deg = view.blue.size() + view.red.size();
        const std::uint64_t k = rng.next_below(deg);
        const bool blue = k < view.blue.size();
        const IdentityId x = blue ? view.blue[k] : view.red[k - view.blue.size()];
        s_ = {{s_.node[1], w, x}, {s_.link[1], blue ? LinkLayer::blue : LinkLayer::red}};
        pi_ = 1.0 / double(deg);
    }

    WalkModel m_;
    RestrictedAccess& acc_;
    NodeWalkState s_;
    double pi_ = 0;
};

class EdgeWalker {
public:
    EdgeWalker(RestrictedAccess& acc, const NodeWalkState& wedge) : acc_(acc) {
        const auto [a, v, c] = wedge.node;
        acc_.seed(a);
        acc_.seed(v);
        acc_.blue_neighbors(v); // discovers c; each step refreshes endpoint views itself
        s_ = {ordered(a, v), ordered(v, c), LinkLayer::blue};
        pi_ = 1.0;
    }

    void step(Rng& rng) {
        if (s_.second_layer == LinkLayer::blue)
            step_from_blue_pair(rng);
        else
            step_from_red_neighbor(rng);
    }

    void accumulate(Accum& a, const IsoCoefficientTable& alpha) {
        const GraphletType t = classify();
        // an edge pair always spans three distinct identities
        const std::uint32_t al = alpha[t.index() - 1];
        a.w[t.index() - 1] += 1.0 / (double(al) * pi_);
    }

    const EdgeWalkState& state() const { return s_; }
    double pi_tilde() const { return pi_; }

private:
    static std::array<IdentityId, 2> ordered(IdentityId u, IdentityId v) {
        return {std::min(u, v), std::max(u, v)};
    }

    GraphletType classify() {
        const auto [a, b] = s_.first;
        const IdentityId c = s_.second[0] == a || s_.second[0] == b ? s_.second[1] : s_.second[0];
        const IdentityId shared = s_.second[0] == c ? s_.second[1] : s_.second[0];
        const IdentityId far = shared == a ? b : a;
        // (far,shared) is the first edge's pair, (shared,c) the second's
        auto second_layer = std::optional<LinkLayer>(s_.second_layer);
        return classify_pair_colors(probe_color(acc_, far, shared, LinkLayer::blue),
                                    probe_color(acc_, far, c, std::nullopt),
                                    probe_color(acc_, shared, c, second_layer));
    }

    // k-th blue neighbor edge of blue edge (u,v): edges (u,x), x in B(u)\{v},
    // then (v,x), x in B(v)\{u}
    std::array<IdentityId, 2> kth_blue_neighbor_edge(IdentityId u, IdentityId v, std::uint64_t k,
                                                     const RestrictedAccess::BlueView& vu,
                                                     const RestrictedAccess::BlueView& vv) const {
        auto kth_skipping = [](std::span<const IdentityId> list, IdentityId skip, std::uint64_t idx) {
            const auto it = std::lower_bound(list.begin(), list.end(), skip);
            if (idx >= static_cast<std::uint64_t>(it - list.begin())) ++idx;
            return list[idx];
        };
        const std::uint64_t from_u = vu.blue_degree - 1;
        if (k < from_u) return ordered(u, kth_skipping(vu.neighbors, v, k));
        return ordered(v, kth_skipping(vv.neighbors, u, k - from_u));
    }

    void step_from_blue_pair(Rng& rng) {
        const auto [u, v] = s_.second;
        const auto vu = acc_.blue_neighbors(u);
        const auto vv = acc_.blue_neighbors(v);
        const bool parallel = acc_.red_edge_between(u, v);
        const std::uint64_t be = vu.blue_degree + vv.blue_degree - 2;
        const std::uint64_t re = vu.red_degree + vv.red_degree - 2 * (parallel ? 1 : 0);
        const std::uint64_t k = rng.next_below(be + re);
        if (k < be) {
            s_ = {s_.second, kth_blue_neighbor_edge(u, v, k, vu, vv), LinkLayer::blue};
            pi_ = 1.0;
        } else {
            const auto [anchor, other] = acc_.sample_red_edge_neighbor(u, v, rng);
            s_ = {s_.second, ordered(anchor, other), LinkLayer::red};
            pi_ = double(be) / double(be + re);
        }
    }

    void step_from_red_neighbor(Rng& rng) {
        const auto [a, b] = s_.first;
        const auto va = acc_.blue_neighbors(a);
        const auto vb = acc_.blue_neighbors(b);
        const std::uint64_t be = va.blue_degree + vb.blue_degree - 2;
        const std::uint64_t k = rng.next_below(be);
        s_ = {s_.first, kth_blue_neighbor_edge(a, b, k, va, vb), LinkLayer::blue};
        pi_ = 1.0;
    }

    RestrictedAccess& acc_;
    EdgeWalkState s_{};
    double pi_ = 0;
};

int default_budget(WalkModel m) {
    return m == WalkModel::rwomrn || m == WalkModel::rwmix ? 2 : 1;
}

template <class Walker>
ConcentrationEstimate drive(WalkModel m, Walker& walker, RestrictedAccess& acc, std::uint64_t steps,
                            std::uint64_t seed, Rng& rng, std::uint64_t burn_in,
                            std::span<const std::uint64_t> checkpoints, const CheckpointFn& on_checkpoint) {
    const IsoCoefficientTable& alpha = iso_coefficients(m);
    for (std::uint64_t i = 0; i < burn_in; ++i) walker.step(rng);
    Accum a;
    std::size_t next_cp = 0;
    for (std::uint64_t t = 1; t <= steps; ++t) {
        walker.step(rng);
        walker.accumulate(a, alpha);
        while (next_cp < checkpoints.size() && checkpoints[next_cp] == t) {
            on_checkpoint(t, a.w);
            ++next_cp;
        }
    }
    ConcentrationEstimate out;
    out.algo = m;
    out.steps = steps;
    out.seed = seed;
    out.weight = a.w;
    out.d_hat = normalize_weights(m, a.w);
    out.degenerate_states = a.degenerate;
    out.unweighted_states = a.unweighted;
    out.query_stats = acc.stats();
    return out;
}

} // namespace

ConcentrationEstimate run_estimator_checkpointed(WalkModel m, const TwoLayerGraph& g, std::uint64_t steps,
                                                 std::uint64_t seed, std::span<const std::uint64_t> checkpoints,
                                                 const CheckpointFn& on_checkpoint, const EstimatorOptions& opts) {
    if (g.num_identities() == 0) throw std::invalid_argument("empty graph");
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1]) throw std::invalid_argument("checkpoints must be ascending");
    if (!checkpoints.empty() && checkpoints.back() > steps)
        throw std::invalid_argument("checkpoint beyond the last step");

    Rng rng(seed);
    const WedgeSampler wedges(g);
    const NodeWalkState init = wedges.sample(rng); // throws when no wedge exists

    RestrictedAccess acc = m == WalkModel::rwnr
                               ? RestrictedAccess::unrestricted(g)
                               : RestrictedAccess(g, opts.red_hop_budget.value_or(default_budget(m)));
    if (m == WalkModel::rwebe) {
        EdgeWalker w(acc, init);
        return drive(m, w, acc, steps, seed, rng, opts.burn_in, checkpoints, on_checkpoint);
    }
    NodeWalker w(m, acc, init);
    return drive(m, w, acc, steps, seed, rng, opts.burn_in, checkpoints, on_checkpoint);
}

ConcentrationEstimate run_estimator(WalkModel m, const TwoLayerGraph& g, std::uint64_t steps, std::uint64_t seed,
                                    const EstimatorOptions& opts) {
    return run_estimator_checkpointed(m, g, steps, seed, {}, [](std::uint64_t, const auto&) {}, opts);
}

} // namespace mlgs
