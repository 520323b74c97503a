#include "fedkm/graph.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace fedkm {

Graph::Graph(std::size_t num_nodes) : adjacency_(num_nodes) {}

bool Graph::add_edge(std::size_t a, std::size_t b) {
    if (a >= num_nodes() || b >= num_nodes())
        throw std::out_of_range("Graph::add_edge: node index out of range");
    if (a == b)
        throw std::invalid_argument("Graph::add_edge: self loops are not allowed");
    if (has_edge(a, b)) return false;
    auto insert_sorted = [](std::vector<std::size_t>& list, std::size_t v) {
        list.insert(std::lower_bound(list.begin(), list.end(), v), v);
    };
    insert_sorted(adjacency_[a], b);
    insert_sorted(adjacency_[b], a);
    edges_.emplace_back(std::min(a, b), std::max(a, b));
    return true;
}

bool Graph::has_edge(std::size_t a, std::size_t b) const {
    if (a >= num_nodes() || b >= num_nodes()) return false;
    const auto& list = adjacency_[a];
    return std::binary_search(list.begin(), list.end(), b);
}

const std::vector<std::size_t>& Graph::neighbors(std::size_t node) const {
    if (node >= num_nodes())
        throw std::out_of_range("Graph::neighbors: node index out of range");
    return adjacency_[node];
}

std::vector<std::size_t> Graph::component_labels() const {
    const std::size_t n = num_nodes();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(n, unvisited);
    std::size_t next_label = 0;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (label[start] != unvisited) continue;
        label[start] = next_label;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v : adjacency_[u]) {
                if (label[v] == unvisited) {
                    label[v] = next_label;
                    stack.push_back(v);
                }
            }
        }
        ++next_label;
    }
    return label;
}

std::size_t Graph::num_components() const {
    const auto labels = component_labels();
    std::size_t max_label = 0;
    for (std::size_t l : labels) max_label = std::max(max_label, l);
    return labels.empty() ? 0 : max_label + 1;
}

bool Graph::is_connected() const {
    return num_nodes() <= 1 || num_components() == 1;
}

Graph Graph::induced_subgraph(const std::vector<std::size_t>& nodes) const {
    constexpr std::size_t absent = static_cast<std::size_t>(-1);
    std::vector<std::size_t> new_id(num_nodes(), absent);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] >= num_nodes())
            throw std::out_of_range("Graph::induced_subgraph: node index out of range");
        new_id[nodes[i]] = i;
    }
    Graph sub(nodes.size());
    for (const auto& [a, b] : edges_) {
        if (new_id[a] != absent && new_id[b] != absent)
            sub.add_edge(new_id[a], new_id[b]);
    }
    return sub;
}

Graph make_complete_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph make_ring_graph(std::size_t n) {
    Graph g(n);
    if (n < 2) return g;
    for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph make_path_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph make_star_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 1; i < n; ++i) g.add_edge(0, i);
    return g;
}

Graph make_erdos_renyi_graph(std::size_t n, double p, std::uint64_t seed,
                             bool ensure_connected) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("make_erdos_renyi_graph: p must be in [0, 1]");
    Graph g(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng) < p) g.add_edge(i, j);

    if (ensure_connected && n > 1) {
        while (!g.is_connected()) {
            const auto labels = g.component_labels();
            std::vector<std::size_t> comp0, others;
            for (std::size_t v = 0; v < n; ++v)
                (labels[v] == 0 ? comp0 : others).push_back(v);
            std::uniform_int_distribution<std::size_t> pick_a(0, comp0.size() - 1);
            std::uniform_int_distribution<std::size_t> pick_b(0, others.size() - 1);
            g.add_edge(comp0[pick_a(rng)], others[pick_b(rng)]);
        }
    }
    return g;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g(a.num_nodes() + b.num_nodes());
    for (const auto& [u, v] : a.edges()) g.add_edge(u, v);
    const std::size_t off = a.num_nodes();
    for (const auto& [u, v] : b.edges()) g.add_edge(u + off, v + off);
    return g;
}

}  // namespace fedkm
