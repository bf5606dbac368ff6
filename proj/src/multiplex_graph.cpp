#include "mlgs/multiplex_graph.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

namespace mlgs {

bool TwoLayerGraph::contains(std::span<const IdentityId> sorted, IdentityId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

std::vector<std::pair<IdentityId, IdentityId>>
TwoLayerGraph::edge_list(const std::vector<std::size_t>& off, const std::vector<IdentityId>& adj) const {
    std::vector<std::pair<IdentityId, IdentityId>> out;
    out.reserve(adj.size() / 2);
    for (IdentityId u = 0; u < n_; ++u)
        for (std::size_t k = off[u]; k < off[u + 1]; ++k)
            if (u < adj[k]) out.emplace_back(u, adj[k]);
    return out; // already sorted: u ascending, neighbors ascending
}

GraphBuilder::GraphBuilder(IdentityId num_identities)
    : n_(num_identities), in_blue_(num_identities, 0), in_red_(num_identities, 0) {}

void GraphBuilder::check_pair(IdentityId u, IdentityId v, const char* layer) const {
    if (u >= n_ || v >= n_)
        throw std::invalid_argument(std::string(layer) + " edge (" + std::to_string(u) + "," +
                                    std::to_string(v) + ") out of identity range [0," + std::to_string(n_) + ")");
    if (u == v)
        throw std::invalid_argument(std::string(layer) + " self loop at " + std::to_string(u));
}

void GraphBuilder::declare_blue(IdentityId u) {
    if (u >= n_) throw std::invalid_argument("NB " + std::to_string(u) + " out of identity range");
    in_blue_[u] = 1;
}

void GraphBuilder::declare_red(IdentityId u) {
    if (u >= n_) throw std::invalid_argument("NR " + std::to_string(u) + " out of identity range");
    in_red_[u] = 1;
}

void GraphBuilder::add_blue_edge(IdentityId u, IdentityId v) {
    check_pair(u, v, "blue");
    blue_edges_.emplace_back(std::min(u, v), std::max(u, v));
    in_blue_[u] = in_blue_[v] = 1;
}

void GraphBuilder::add_red_edge(IdentityId u, IdentityId v) {
    check_pair(u, v, "red");
    red_edges_.emplace_back(std::min(u, v), std::max(u, v));
    in_red_[u] = in_red_[v] = 1;
}

namespace {

void build_csr(IdentityId n, std::vector<std::pair<IdentityId, IdentityId>>& edges, const char* layer,
               std::vector<std::size_t>& off, std::vector<IdentityId>& adj) {
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end())
        throw std::invalid_argument(std::string("duplicate ") + layer + " edge (" +
                                    std::to_string(dup->first) + "," + std::to_string(dup->second) + ")");
    std::vector<std::uint32_t> deg(n, 0);
    for (auto [u, v] : edges) {
        ++deg[u];
        ++deg[v];
    }
    off.assign(n + 1, 0);
    for (IdentityId u = 0; u < n; ++u) off[u + 1] = off[u] + deg[u];
    adj.assign(off[n], 0);
    std::vector<std::size_t> cur(off.begin(), off.end() - 1);
    for (auto [u, v] : edges) {
        adj[cur[u]++] = v;
        adj[cur[v]++] = u;
    }
    for (IdentityId u = 0; u < n; ++u) std::sort(adj.begin() + off[u], adj.begin() + off[u + 1]);
}

} // namespace

TwoLayerGraph GraphBuilder::build() {
    TwoLayerGraph g;
    g.n_ = n_;
    build_csr(n_, blue_edges_, "blue", g.blue_off_, g.blue_adj_);
    build_csr(n_, red_edges_, "red", g.red_off_, g.red_adj_);
    g.in_blue_ = std::move(in_blue_);
    g.in_red_ = std::move(in_red_);
    g.blue_present_ = 0;
    g.red_present_ = 0;
    for (IdentityId u = 0; u < n_; ++u) {
        g.blue_present_ += g.in_blue_[u];
        g.red_present_ += g.in_red_[u];
    }
    return g;
}

namespace {

IdentityId parse_id(const std::string& tok, std::size_t line) {
    std::size_t pos = 0;
    unsigned long v;
    try {
        v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError("expected identity, got '" + tok + "'", line);
    }
    if (pos != tok.size()) throw ParseError("trailing characters in identity '" + tok + "'", line);
    if (v > 0xffffffffull) throw ParseError("identity '" + tok + "' too large", line);
    return static_cast<IdentityId>(v);
}

} // namespace

TwoLayerGraph load_mlx(std::istream& in) {
    std::string raw;
    std::size_t lineno = 0;
    bool have_header = false;
    IdentityId n = 0;
    // header first, then edges/declarations in any order
    std::unique_ptr<GraphBuilder> b;
    // duplicates are caught here so the error names the offending line
    std::set<std::pair<IdentityId, IdentityId>> seen_blue, seen_red;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string text = hash == std::string::npos ? raw : raw.substr(0, hash);
        std::istringstream ls(text);
        std::string tag;
        if (!(ls >> tag)) continue; // blank or comment-only
        if (!have_header) {
            if (tag != "mlx") throw ParseError("expected 'mlx 1 <N>' header, got '" + tag + "'", lineno);
            std::string ver, count, extra;
            if (!(ls >> ver >> count)) throw ParseError("truncated mlx header", lineno);
            if (ver != "1") throw ParseError("unsupported mlx version '" + ver + "'", lineno);
            n = parse_id(count, lineno);
            if (ls >> extra) throw ParseError("unexpected token '" + extra + "' after header", lineno);
            b = std::make_unique<GraphBuilder>(n);
            have_header = true;
            continue;
        }
        try {
            if (tag == "B" || tag == "R") {
                std::string su, sv, extra;
                if (!(ls >> su >> sv)) throw ParseError("edge line needs two identities", lineno);
                if (ls >> extra) throw ParseError("unexpected token '" + extra + "'", lineno);
                IdentityId u = parse_id(su, lineno), v = parse_id(sv, lineno);
                auto& seen = tag == "B" ? seen_blue : seen_red;
                if (u != v && !seen.insert({std::min(u, v), std::max(u, v)}).second)
                    throw ParseError("duplicate edge " + su + "-" + sv, lineno);
                if (tag == "B")
                    b->add_blue_edge(u, v);
                else
                    b->add_red_edge(u, v);
            } else if (tag == "NB" || tag == "NR") {
                std::string su, extra;
                if (!(ls >> su)) throw ParseError("declaration needs an identity", lineno);
                if (ls >> extra) throw ParseError("unexpected token '" + extra + "'", lineno);
                IdentityId u = parse_id(su, lineno);
                if (tag == "NB")
                    b->declare_blue(u);
                else
                    b->declare_red(u);
            } else {
                throw ParseError("unknown record '" + tag + "'", lineno);
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    if (!have_header) throw ParseError("missing 'mlx 1 <N>' header", lineno == 0 ? 1 : lineno);
    return b->build();
}

TwoLayerGraph load_mlx_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return load_mlx(f);
}

void save_mlx(const TwoLayerGraph& g, std::ostream& out) {
    out << "mlx 1 " << g.num_identities() << "\n";
    for (IdentityId u = 0; u < g.num_identities(); ++u)
        if (g.in_blue(u) && g.blue_degree(u) == 0) out << "NB " << u << "\n";
    for (IdentityId u = 0; u < g.num_identities(); ++u)
        if (g.in_red(u) && g.red_degree(u) == 0) out << "NR " << u << "\n";
    for (auto [u, v] : g.blue_edge_list()) out << "B " << u << " " << v << "\n";
    for (auto [u, v] : g.red_edge_list()) out << "R " << u << " " << v << "\n";
}

void save_mlx_file(const TwoLayerGraph& g, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    save_mlx(g, f);
    if (!f.flush()) throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace mlgs
