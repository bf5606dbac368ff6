#include "mlgs/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "mlgs/iso_coefficients.hpp"

namespace mlgs {

std::array<double, kNumGraphletTypes> GroundTruth::concentrations() const {
    std::array<double, kNumGraphletTypes> d{};
    const double t = static_cast<double>(total());
    if (t > 0)
        for (int i = 0; i < kNumGraphletTypes; ++i) d[i] = counts[i] / t;
    return d;
}

std::array<double, kNumGraphletTypes> GroundTruth::concentrations_restricted() const {
    std::array<double, kNumGraphletTypes> d{};
    const double t = static_cast<double>(total_restricted());
    if (t > 0)
        for (int i = 0; i < 14; ++i) d[i] = counts[i] / t;
    return d;
}

namespace {

// per-identity union adjacency annotated with the pair color
struct UnionAdj {
    std::vector<std::size_t> off;
    std::vector<IdentityId> nbr;
    std::vector<PairColor> color;

    PairColor lookup(IdentityId u, IdentityId v) const {
        auto lo = nbr.begin() + off[u], hi = nbr.begin() + off[u + 1];
        auto it = std::lower_bound(lo, hi, v);
        if (it == hi || *it != v) return PairColor::none;
        return color[it - nbr.begin()];
    }
};

UnionAdj build_union(const TwoLayerGraph& g) {
    const IdentityId n = g.num_identities();
    UnionAdj u;
    u.off.assign(n + 1, 0);
    for (IdentityId v = 0; v < n; ++v) {
        // merged size = |B(v)| + |R(v)| - |overlap|; count overlap by merge
        auto b = g.blue_neighbors(v);
        auto r = g.red_neighbors(v);
        std::size_t i = 0, j = 0, m = 0;
        while (i < b.size() && j < r.size()) {
            if (b[i] == r[j]) ++i, ++j;
            else if (b[i] < r[j]) ++i;
            else ++j;
            ++m;
        }
        m += (b.size() - i) + (r.size() - j);
        u.off[v + 1] = u.off[v] + m;
    }
    u.nbr.resize(u.off[n]);
    u.color.resize(u.off[n]);
    for (IdentityId v = 0; v < n; ++v) {
        auto b = g.blue_neighbors(v);
        auto r = g.red_neighbors(v);
        std::size_t i = 0, j = 0, k = u.off[v];
        while (i < b.size() || j < r.size()) {
            if (j == r.size() || (i < b.size() && b[i] < r[j])) {
                u.nbr[k] = b[i++];
                u.color[k++] = PairColor::blue;
            } else if (i == b.size() || r[j] < b[i]) {
                u.nbr[k] = r[j++];
                u.color[k++] = PairColor::red;
            } else {
                u.nbr[k] = b[i];
                u.color[k++] = PairColor::blue_red;
                ++i, ++j;
            }
        }
    }
    return u;
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace

GroundTruth count_exact(const TwoLayerGraph& g, int threads) {
    const UnionAdj u = build_union(g);
    const IdentityId n = g.num_identities();
    const int nt = std::min<int>(resolve_threads(threads), std::max<IdentityId>(n, 1));

    auto work = [&](IdentityId lo, IdentityId hi, GroundTruth& out) {
        for (IdentityId v = lo; v < hi; ++v) {
            const std::size_t beg = u.off[v], end = u.off[v + 1];
            for (std::size_t i = beg; i < end; ++i) {
                const IdentityId a = u.nbr[i];
                for (std::size_t j = i + 1; j < end; ++j) {
                    const IdentityId c = u.nbr[j];
                    const PairColor ac = u.lookup(a, c);
                    // triangles show up centered at each corner; count them at
                    // the smallest identity (a < c already, so v < a suffices)
                    if (ac != PairColor::none && v >= a) continue;
                    const GraphletType t = classify_pair_colors(u.color[i], u.color[j], ac);
                    ++out.counts[t.index() - 1];
                }
            }
        }
    };

    if (nt <= 1 || n < 2048) {
        GroundTruth out;
        work(0, n, out);
        return out;
    }
    std::vector<GroundTruth> parts(nt);
    std::vector<std::thread> pool;
    const IdentityId chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        const IdentityId lo = std::min<IdentityId>(t * chunk, n);
        const IdentityId hi = std::min<IdentityId>(lo + chunk, n);
        pool.emplace_back(work, lo, hi, std::ref(parts[t]));
    }
    for (auto& th : pool) th.join();
    GroundTruth out;
    for (const auto& p : parts)
        for (int i = 0; i < kNumGraphletTypes; ++i) out.counts[i] += p.counts[i];
    return out;
}

double compute_M(const TwoLayerGraph& g, WalkModel m) {
    const IdentityId n = g.num_identities();
    switch (m) {
        case WalkModel::rwnbn:
        case WalkModel::rwmix: {
            double sum = 2.0 * double(g.num_blue_edges());
            for (IdentityId v = 0; v < n; ++v) {
                const double b = g.blue_degree(v), r = g.red_degree(v);
                if (b + r > 0) sum += b * r / (b + r);
            }
            if (m == WalkModel::rwnbn) return sum;
            for (IdentityId v = 0; v < n; ++v) {
                const double b = g.blue_degree(v), r = g.red_degree(v);
                if (r == 0) continue;
                for (IdentityId u : g.red_neighbors(v)) {
                    const double ru = g.red_degree(u);
                    sum += b * ru / ((b + r) * (ru + b));
                }
            }
            return sum;
        }
        case WalkModel::rwomrn: {
            double sum = 0;
            for (IdentityId v = 0; v < n; ++v) {
                const double b = g.blue_degree(v), r = g.red_degree(v);
                if (b + r > 0) sum += (b * b - b - r + 3 * b * r) / (b + r);
            }
            return sum;
        }
        case WalkModel::rwebe: {
            double sum = 0;
            for (auto [u, v] : g.blue_edge_list()) {
                const double be = g.blue_edge_neighbors(u, v);
                const double re = g.red_edge_neighbors(u, v);
                if (be + re > 0) sum += be + re * be / (be + re);
            }
            return sum;
        }
        case WalkModel::rwnr:
            return 2.0 * double(g.num_blue_edges() + g.num_red_edges());
    }
    throw std::logic_error("bad WalkModel");
}

BoundDiagnostics bound_diagnostics(const TwoLayerGraph& g, WalkModel m, const GroundTruth& truth) {
    if (g.num_blue_edges() == 0 && m != WalkModel::rwnr)
        throw std::runtime_error("bound diagnostics need a walkable blue layer");

    BoundDiagnostics d;
    d.M = compute_M(g, m);

    // max over reachable states of 1/pi_tilde
    double inv_pi_max = 0;
    const IdentityId n = g.num_identities();
    auto bump = [&inv_pi_max](double x) { inv_pi_max = std::max(inv_pi_max, x); };
    switch (m) {
        case WalkModel::rwnbn:
        case WalkModel::rwomrn:
        case WalkModel::rwmix:
            for (IdentityId v = 0; v < n; ++v) {
                const double b = g.blue_degree(v), r = g.red_degree(v);
                if (b >= 1) bump(b);
                if (b >= 1 && r >= 1) bump(b + r);
            }
            if (m != WalkModel::rwnbn) {
                for (IdentityId x = 0; x < n; ++x) {
                    const double bx = g.blue_degree(x), rx = g.red_degree(x);
                    if (bx < 1 || rx < 1) continue;
                    for (IdentityId y : g.red_neighbors(x)) {
                        const double ry = g.red_degree(y);
                        if (m == WalkModel::rwomrn) bump((bx + rx) * ry / bx);
                        else bump((bx + rx) * (ry + bx) / bx);
                    }
                }
            }
            break;
        case WalkModel::rwebe:
            for (auto [u, v] : g.blue_edge_list()) {
                const double be = g.blue_edge_neighbors(u, v);
                const double re = g.red_edge_neighbors(u, v);
                if (be >= 1) bump(1);
                if (be >= 1 && re >= 1) bump((be + re) / be);
            }
            break;
        case WalkModel::rwnr:
            for (IdentityId v = 0; v < n; ++v) {
                const double deg = double(g.blue_degree(v)) + double(g.red_degree(v));
                if (deg >= 1) bump(deg);
            }
            break;
    }
    d.H = d.M * inv_pi_max;

    // alpha_min over the types the present layers can express
    const bool has_red = g.num_red_edges() > 0;
    const bool has_blue = g.num_blue_edges() > 0;
    const auto& alpha = iso_coefficients(m);
    const int last = m == WalkModel::rwnr ? 16 : 14;
    double amin = std::numeric_limits<double>::infinity();
    for (const GraphletInfo& gi : graphlet_catalog()) {
        if (gi.index > last || alpha[gi.index - 1] == 0) continue;
        bool uses_red = false, uses_blue = false;
        for (int p = 0; p < (gi.triangle ? 3 : 2); ++p) {
            uses_red |= pair_has_red(gi.colors[p]);
            uses_blue |= pair_has_blue(gi.colors[p]);
        }
        if ((uses_red && !has_red) || (uses_blue && !has_blue)) continue;
        amin = std::min(amin, double(alpha[gi.index - 1]));
    }
    d.alpha_min = std::isfinite(amin) ? amin : 0;

    const double ctotal = m == WalkModel::rwnr ? double(truth.total()) : double(truth.total_restricted());
    for (int i = 0; i < kNumGraphletTypes; ++i) {
        const double li = std::min(double(alpha[i]) * double(truth.counts[i]), d.alpha_min * ctotal);
        d.lambda[i] = li;
        d.h_over_lambda[i] = li > 0 ? d.H / li : std::numeric_limits<double>::infinity();
    }
    return d;
}

} // namespace mlgs
