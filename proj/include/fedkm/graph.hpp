#ifndef FEDKM_GRAPH_HPP
#define FEDKM_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace fedkm {

// Simple undirected graph over nodes 0..n-1. No self loops, no parallel
// edges. Adjacency lists are kept sorted so iteration order is deterministic.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t num_nodes);

    std::size_t num_nodes() const { return adjacency_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    // Returns false if the edge already exists. Throws on self loops or
    // out-of-range endpoints.
    bool add_edge(std::size_t a, std::size_t b);
    bool has_edge(std::size_t a, std::size_t b) const;

    const std::vector<std::size_t>& neighbors(std::size_t node) const;
    std::size_t degree(std::size_t node) const { return neighbors(node).size(); }

    // Edges normalized as (min, max), in insertion order.
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

    bool is_connected() const;

    // Component id per node, ids numbered 0.. in order of first appearance.
    std::vector<std::size_t> component_labels() const;
    std::size_t num_components() const;

    // Node-induced subgraph; nodes keep the order given in `nodes` and are
    // renumbered 0..nodes.size()-1.
    Graph induced_subgraph(const std::vector<std::size_t>& nodes) const;

private:
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

Graph make_complete_graph(std::size_t n);
Graph make_ring_graph(std::size_t n);
Graph make_path_graph(std::size_t n);
Graph make_star_graph(std::size_t n);

// G(n, p) with seeded sampling over all node pairs. With ensure_connected,
// randomly chosen edges are added between components until the graph is
// connected (no-op if already connected).
Graph make_erdos_renyi_graph(std::size_t n, double p, std::uint64_t seed,
                             bool ensure_connected = false);

// Disjoint union; nodes of b are shifted by a.num_nodes().
Graph disjoint_union(const Graph& a, const Graph& b);

}  // namespace fedkm

#endif  // FEDKM_GRAPH_HPP
