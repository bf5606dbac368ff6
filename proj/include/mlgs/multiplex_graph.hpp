#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlgs {

using IdentityId = std::uint32_t;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Two-layer multiplex graph over a shared identity space [0, N).
// The blue layer is the walkable one, the red layer is reachable only through
// restricted probes. An identity may be present in one layer, both, or
// neither; presence in both layers is what stands in for an inter-layer edge,
// so no explicit coupling edges are stored. Within a layer the graph is
// simple (no self loops, no duplicate edges); a blue and a red edge between
// the same pair of identities is fine and means the pair is linked in both
// layers.
class TwoLayerGraph {
public:
    TwoLayerGraph() = default;

    IdentityId num_identities() const { return n_; }

    bool in_blue(IdentityId u) const { return in_blue_[u] != 0; }
    bool in_red(IdentityId u) const { return in_red_[u] != 0; }

    std::uint32_t blue_degree(IdentityId u) const {
        return static_cast<std::uint32_t>(blue_off_[u + 1] - blue_off_[u]);
    }
    std::uint32_t red_degree(IdentityId u) const {
        return static_cast<std::uint32_t>(red_off_[u + 1] - red_off_[u]);
    }

    std::span<const IdentityId> blue_neighbors(IdentityId u) const {
        return {blue_adj_.data() + blue_off_[u], blue_off_[u + 1] - blue_off_[u]};
    }
    std::span<const IdentityId> red_neighbors(IdentityId u) const {
        return {red_adj_.data() + red_off_[u], red_off_[u + 1] - red_off_[u]};
    }

    bool has_blue_edge(IdentityId u, IdentityId v) const { return contains(blue_neighbors(u), v); }
    bool has_red_edge(IdentityId u, IdentityId v) const { return contains(red_neighbors(u), v); }

    std::uint64_t num_blue_edges() const { return blue_adj_.size() / 2; }
    std::uint64_t num_red_edges() const { return red_adj_.size() / 2; }

    std::uint32_t num_blue_present() const { return blue_present_; }
    std::uint32_t num_red_present() const { return red_present_; }

    // Number of blue edges adjacent to blue edge (u,v): shares exactly one
    // endpoint with it. b(u,v) = b_u + b_v - 2 (the edge itself is counted
    // from both ends).
    std::uint32_t blue_edge_neighbors(IdentityId u, IdentityId v) const {
        return blue_degree(u) + blue_degree(v) - 2;
    }
    // Red edges touching exactly one endpoint of (u,v): a red edge parallel to
    // the pair connects both endpoints and is excluded.
    std::uint32_t red_edge_neighbors(IdentityId u, IdentityId v) const {
        return red_degree(u) + red_degree(v) - 2 * (has_red_edge(u, v) ? 1u : 0u);
    }

    bool operator==(const TwoLayerGraph& o) const = default;

    // Canonical edge lists, each pair once with u < v, sorted. Used by the
    // writer and handy for enumeration.
    std::vector<std::pair<IdentityId, IdentityId>> blue_edge_list() const { return edge_list(blue_off_, blue_adj_); }
    std::vector<std::pair<IdentityId, IdentityId>> red_edge_list() const { return edge_list(red_off_, red_adj_); }

private:
    friend class GraphBuilder;

    static bool contains(std::span<const IdentityId> sorted, IdentityId v);
    std::vector<std::pair<IdentityId, IdentityId>> edge_list(const std::vector<std::size_t>& off,
                                                             const std::vector<IdentityId>& adj) const;

    IdentityId n_ = 0;
    // CSR adjacency per layer, neighbor lists sorted ascending
    std::vector<std::size_t> blue_off_{0};
    std::vector<IdentityId> blue_adj_;
    std::vector<std::size_t> red_off_{0};
    std::vector<IdentityId> red_adj_;
    std::vector<std::uint8_t> in_blue_;
    std::vector<std::uint8_t> in_red_;
    std::uint32_t blue_present_ = 0;
    std::uint32_t red_present_ = 0;
};

// Accumulates edges and presence declarations, validates, then freezes into a
// TwoLayerGraph. Throws std::invalid_argument on out-of-range ids, self
// loops, or duplicate edges within a layer.
class GraphBuilder {
public:
    explicit GraphBuilder(IdentityId num_identities);

    void declare_blue(IdentityId u);
    void declare_red(IdentityId u);
    void add_blue_edge(IdentityId u, IdentityId v);
    void add_red_edge(IdentityId u, IdentityId v);

    TwoLayerGraph build();

private:
    void check_pair(IdentityId u, IdentityId v, const char* layer) const;

    IdentityId n_;
    std::vector<std::pair<IdentityId, IdentityId>> blue_edges_;
    std::vector<std::pair<IdentityId, IdentityId>> red_edges_;
    std::vector<std::uint8_t> in_blue_;
    std::vector<std::uint8_t> in_red_;
};

// mlx text format:
//   mlx 1 <num_identities>
//   NB <u>            presence of u in the blue layer (needed only for
//   NR <u>            identities with no edge in that layer)
//   B <u> <v>         blue edge
//   R <u> <v>         red edge
// '#' starts a comment, blank lines ignored. Presence is the union of
// declarations and edge endpoints. Errors carry the 1-based line number.
TwoLayerGraph load_mlx(std::istream& in);
TwoLayerGraph load_mlx_file(const std::string& path);
void save_mlx(const TwoLayerGraph& g, std::ostream& out);
void save_mlx_file(const TwoLayerGraph& g, const std::string& path);

} // namespace mlgs
