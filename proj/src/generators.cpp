#include "mlgs/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mlgs {

namespace {

using Edge = std::pair<IdentityId, IdentityId>;

Edge canon(IdentityId u, IdentityId v) { return {std::min(u, v), std::max(u, v)}; }

std::uint64_t max_edges(std::uint64_t n) { return n * (n - 1) / 2; }

// m distinct pairs over ids[0..count) by rejection; fine for the densities we
// generate (well under half full)
void sample_distinct_pairs(const std::vector<IdentityId>& ids, std::uint64_t m, Rng& rng, std::set<Edge>& out) {
    const std::uint64_t n = ids.size();
    if (m + out.size() > max_edges(n))
        throw std::invalid_argument("requested " + std::to_string(m + out.size()) + " edges over " +
                                    std::to_string(n) + " identities, more than the simple graph can hold");
    while (m > 0) {
        const IdentityId a = ids[rng.next_below(n)];
        const IdentityId b = ids[rng.next_below(n)];
        if (a == b) continue;
        if (out.insert(canon(a, b)).second) --m;
    }
}

std::vector<Edge> gen_er(const std::vector<IdentityId>& ids, std::uint64_t m, Rng& rng) {
    std::set<Edge> out;
    sample_distinct_pairs(ids, m, rng, out);
    return {out.begin(), out.end()};
}

// Watts–Strogatz: ring lattice, each node joined to k/2 successors, every
// edge's far endpoint rewired with probability rewire_p
std::vector<Edge> gen_sw(const std::vector<IdentityId>& ids, std::uint32_t k, double rewire_p, Rng& rng) {
    const std::uint64_t n = ids.size();
    if (k % 2 != 0) throw std::invalid_argument("sw ring degree k must be even");
    if (k >= n) throw std::invalid_argument("sw ring degree k must be below the node count");
    std::set<Edge> out;
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint32_t j = 1; j <= k / 2; ++j) out.insert(canon(ids[i], ids[(i + j) % n]));
    // rewire in deterministic order
    std::vector<Edge> edges(out.begin(), out.end());
    for (Edge& e : edges) {
        if (rng.next_double() >= rewire_p) continue;
        out.erase(e);
        Edge moved = e;
        for (int tries = 0; tries < 64; ++tries) {
            const IdentityId t = ids[rng.next_below(n)];
            Edge cand = canon(e.first, t);
            if (t != e.first && out.find(cand) == out.end()) {
                moved = cand;
                break;
            }
        }
        out.insert(moved); // falls back to the original edge if saturated
        e = moved;
    }
    return {out.begin(), out.end()};
}

// Barabási–Albert: seed clique on attach_m + 1 nodes, then preferential
// attachment of attach_m distinct targets per new node
std::vector<Edge> gen_ba(const std::vector<IdentityId>& ids, std::uint32_t attach_m, Rng& rng) {
    const std::uint64_t n = ids.size();
    if (attach_m == 0) throw std::invalid_argument("ba attach_m must be positive");
    if (n < attach_m + 1) throw std::invalid_argument("ba needs more nodes than attach_m");
    std::vector<Edge> edges;
    std::vector<std::uint64_t> chances; // endpoint multiset, index into ids
    for (std::uint64_t i = 0; i <= attach_m; ++i)
        for (std::uint64_t j = i + 1; j <= attach_m; ++j) {
            edges.push_back(canon(ids[i], ids[j]));
            chances.push_back(i);
            chances.push_back(j);
        }
    std::vector<std::uint64_t> targets;
    for (std::uint64_t i = attach_m + 1; i < n; ++i) {
        targets.clear();
        while (targets.size() < attach_m) {
            const std::uint64_t t = chances[rng.next_below(chances.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        for (std::uint64_t t : targets) {
            edges.push_back(canon(ids[i], ids[t]));
            chances.push_back(i);
            chances.push_back(t);
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

// largest connected component, relabeled densely preserving id order;
// returns the new edge set and node count
std::pair<std::vector<Edge>, std::uint32_t> giant_component(std::uint32_t n, const std::vector<Edge>& edges) {
    std::vector<std::vector<IdentityId>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<std::int32_t> comp(n, -1);
    std::int32_t ncomp = 0;
    std::vector<IdentityId> stack;
    std::vector<std::uint32_t> sizes;
    for (IdentityId s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        sizes.push_back(0);
        stack.push_back(s);
        comp[s] = ncomp;
        while (!stack.empty()) {
            const IdentityId u = stack.back();
            stack.pop_back();
            ++sizes[ncomp];
            for (IdentityId v : adj[u])
                if (comp[v] == -1) {
                    comp[v] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }
    const std::int32_t best =
        static_cast<std::int32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<IdentityId> relabel(n, 0);
    std::uint32_t next = 0;
    for (IdentityId u = 0; u < n; ++u)
        if (comp[u] == best) relabel[u] = next++;
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    for (auto [u, v] : edges)
        if (comp[u] == best && comp[v] == best) kept.push_back(canon(relabel[u], relabel[v]));
    std::sort(kept.begin(), kept.end());
    return {std::move(kept), next};
}

std::vector<Edge> blue_edges_for(const BlueSpec& b, Rng& rng) {
    std::vector<IdentityId> ids(b.n);
    for (std::uint32_t i = 0; i < b.n; ++i) ids[i] = i;
    switch (b.model) {
        case LayerModel::er: {
            std::uint64_t m;
            if (b.m) m = *b.m;
            else if (b.p) m = static_cast<std::uint64_t>(std::llround(*b.p * double(max_edges(b.n))));
            else throw std::invalid_argument("er blue spec needs m or p");
            return gen_er(ids, m, rng);
        }
        case LayerModel::sw: return gen_sw(ids, b.k, b.rewire_p, rng);
        case LayerModel::ba: return gen_ba(ids, b.attach_m, rng);
    }
    throw std::logic_error("bad LayerModel");
}

// uniform choice of `take` ids via partial Fisher-Yates, result sorted
std::vector<IdentityId> choose_ids(std::uint32_t n, std::uint32_t take, Rng& rng) {
    std::vector<IdentityId> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint32_t i = 0; i < take; ++i)
        std::swap(pool[i], pool[i + rng.next_below(n - i)]);
    pool.resize(take);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<Edge> red_edges_for(const RedSpec& r, const std::vector<IdentityId>& red_ids,
                                const std::vector<Edge>& blue_edges, const std::vector<std::uint8_t>& is_red,
                                Rng& rng) {
    switch (r.model) {
        case LayerModel::er: {
            std::uint64_t m;
            if (r.p) m = static_cast<std::uint64_t>(std::llround(*r.p * double(max_edges(red_ids.size()))));
            else if (r.ratio) m = static_cast<std::uint64_t>(std::llround(*r.ratio * double(blue_edges.size())));
            else throw std::invalid_argument("er red spec needs ratio or p");
            m = std::min(m, max_edges(red_ids.size()));
            std::set<Edge> out;
            // correlation knob: copy a rho-fraction of the budget onto blue
            // edges whose endpoints are both red-present
            std::uint64_t dup_target = static_cast<std::uint64_t>(std::llround(r.rho * double(m)));
            if (dup_target > 0) {
                std::vector<Edge> cand;
                for (const Edge& e : blue_edges)
                    if (is_red[e.first] && is_red[e.second]) cand.push_back(e);
                for (std::uint32_t i = 0; i < std::min<std::uint64_t>(dup_target, cand.size()); ++i)
                    std::swap(cand[i], cand[i + rng.next_below(cand.size() - i)]);
                for (std::uint64_t i = 0; i < std::min<std::uint64_t>(dup_target, cand.size()); ++i)
                    out.insert(cand[i]);
            }
            sample_distinct_pairs(red_ids, m - out.size(), rng, out);
            return {out.begin(), out.end()};
        }
        case LayerModel::sw: return gen_sw(red_ids, r.k, r.rewire_p, rng);
        case LayerModel::ba: return gen_ba(red_ids, r.attach_m, rng);
    }
    throw std::logic_error("bad LayerModel");
}

TwoLayerGraph assemble(std::uint32_t blue_n, const std::vector<Edge>& blue_edges, const RedSpec& red,
                       Coupling coupling, Rng& rng) {
    std::uint32_t total_n = blue_n;
    std::vector<IdentityId> red_ids;
    switch (coupling) {
        case Coupling::one_to_one:
            red_ids.resize(blue_n);
            for (std::uint32_t i = 0; i < blue_n; ++i) red_ids[i] = i;
            break;
        case Coupling::half_overlap: {
            // red layer of equal size: half shared with blue, half fresh
            const std::uint32_t shared = blue_n / 2;
            red_ids = choose_ids(blue_n, shared, rng);
            const std::uint32_t fresh = blue_n - shared;
            for (std::uint32_t i = 0; i < fresh; ++i) red_ids.push_back(blue_n + i);
            total_n = blue_n + fresh;
            break;
        }
        case Coupling::blue_double:
            red_ids = choose_ids(blue_n, blue_n / 2, rng);
            break;
    }
    if (red_ids.size() < 2) throw std::invalid_argument("red layer needs at least two identities");

    std::vector<std::uint8_t> is_red(total_n, 0);
    for (IdentityId u : red_ids) is_red[u] = 1;
    const std::vector<Edge> red_edges = red_edges_for(red, red_ids, blue_edges, is_red, rng);

    GraphBuilder b(total_n);
    for (IdentityId u = 0; u < blue_n; ++u) b.declare_blue(u);
    for (IdentityId u : red_ids) b.declare_red(u);
    for (auto [u, v] : blue_edges) b.add_blue_edge(u, v);
    for (auto [u, v] : red_edges) b.add_red_edge(u, v);
    return b.build();
}

} // namespace

TwoLayerGraph generate(const GeneratorSpec& spec) {
    if (spec.blue.n < 3) throw std::invalid_argument("blue layer needs at least 3 identities");
    Rng rng(splitmix64(spec.seed));
    const std::vector<Edge> raw = blue_edges_for(spec.blue, rng);
    auto [blue_edges, blue_n] = giant_component(spec.blue.n, raw);
    return assemble(blue_n, blue_edges, spec.red, spec.coupling, rng);
}

TwoLayerGraph ingest_edge_list(const std::string& path, const RedSpec& red, Coupling coupling, std::uint64_t seed) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::map<std::uint64_t, IdentityId> relabel;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    std::string line;
    std::size_t lineno = 0;
    auto intern = [&relabel](std::uint64_t raw) {
        return relabel.try_emplace(raw, static_cast<IdentityId>(relabel.size())).first->second;
    };
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::uint64_t a, b;
        if (!(ls >> a)) continue;
        if (!(ls >> b)) throw ParseError("edge line needs two ids", lineno);
        std::uint64_t extra;
        if (ls >> extra) throw ParseError("unexpected third token", lineno);
        if (a == b) continue; // drop self loops
        // sequence the interning so "first appearance" means textual order,
        // not argument evaluation order
        const IdentityId ia = intern(a);
        const IdentityId ib = intern(b);
        const Edge e = canon(ia, ib);
        if (seen.insert(e).second) edges.push_back(e);
    }
    if (edges.empty()) throw std::runtime_error("'" + path + "' holds no usable edges");
    auto [blue_edges, blue_n] = giant_component(static_cast<std::uint32_t>(relabel.size()), edges);
    Rng rng(splitmix64(seed));
    return assemble(blue_n, blue_edges, red, coupling, rng);
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& text, std::string& head) {
    const auto colon = text.find(':');
    head = text.substr(0, colon);
    std::map<std::string, std::string> kv;
    if (colon == std::string::npos) return kv;
    std::istringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected key=value in '" + item + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

LayerModel model_from(const std::string& head, const std::string& whole) {
    if (head == "er") return LayerModel::er;
    if (head == "sw") return LayerModel::sw;
    if (head == "ba") return LayerModel::ba;
    throw std::invalid_argument("unknown layer model in '" + whole + "' (expected er, sw or ba)");
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for " + key + ": '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    const double x = to_double(key, v);
    if (x < 0 || x != std::floor(x)) throw std::invalid_argument(key + " must be a non-negative integer, got '" + v + "'");
    return static_cast<std::uint64_t>(x);
}

} // namespace

BlueSpec parse_blue_spec(const std::string& text) {
    std::string head;
    auto kv = parse_kv(text, head);
    BlueSpec b;
    b.model = model_from(head, text);
    for (const auto& [k, v] : kv) {
        if (k == "n") b.n = static_cast<std::uint32_t>(to_u64(k, v));
        else if (k == "m") b.m = to_u64(k, v);
        else if (k == "p") b.p = to_double(k, v);
        else if (k == "k") b.k = static_cast<std::uint32_t>(to_u64(k, v));
        else if (k == "rewire_p") b.rewire_p = to_double(k, v);
        else if (k == "attach_m") b.attach_m = static_cast<std::uint32_t>(to_u64(k, v));
        else throw std::invalid_argument("unknown blue spec key '" + k + "'");
    }
    if (b.n == 0) throw std::invalid_argument("blue spec needs n");
    return b;
}

RedSpec parse_red_spec(const std::string& text) {
    std::string head;
    auto kv = parse_kv(text, head);
    RedSpec r;
    r.model = model_from(head, text);
    if (r.model != LayerModel::er) r.ratio.reset();
    for (const auto& [k, v] : kv) {
        if (k == "ratio") r.ratio = to_double(k, v);
        else if (k == "p") { r.p = to_double(k, v); r.ratio.reset(); }
        else if (k == "rho") r.rho = to_double(k, v);
        else if (k == "k") r.k = static_cast<std::uint32_t>(to_u64(k, v));
        else if (k == "rewire_p") r.rewire_p = to_double(k, v);
        else if (k == "attach_m") r.attach_m = static_cast<std::uint32_t>(to_u64(k, v));
        else throw std::invalid_argument("unknown red spec key '" + k + "'");
    }
    if (r.rho < 0 || r.rho > 1) throw std::invalid_argument("rho must lie in [0,1]");
    return r;
}

Coupling coupling_from_string(const std::string& name) {
    if (name == "one-to-one") return Coupling::one_to_one;
    if (name == "half-overlap") return Coupling::half_overlap;
    if (name == "blue-double") return Coupling::blue_double;
    throw std::invalid_argument("unknown coupling '" + name + "' (expected one-to-one, half-overlap or blue-double)");
}

std::string to_string(Coupling c) {
    switch (c) {
        case Coupling::one_to_one: return "one-to-one";
        case Coupling::half_overlap: return "half-overlap";
        case Coupling::blue_double: return "blue-double";
    }
    throw std::logic_error("bad Coupling");
}

std::string to_string(LayerModel m) {
    switch (m) {
        case LayerModel::er: return "er";
        case LayerModel::sw: return "sw";
        case LayerModel::ba: return "ba";
    }
    throw std::logic_error("bad LayerModel");
}

} // namespace mlgs
