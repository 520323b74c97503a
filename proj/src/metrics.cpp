#include "fedkm/metrics.hpp"

#include <algorithm>

#include "fedkm/discrepancy.hpp"
#include "fedkm/kmeans.hpp"

namespace fedkm {

ConsensusStats consensus_stats(const std::vector<Matrix>& centroids, const Graph& graph) {
    ConsensusStats stats;
    if (graph.num_edges() == 0) return stats;
    double sum = 0.0;
    for (const auto& [i, j] : graph.edges()) {
        const double d = symmetric_discrepancy(centroids[i], centroids[j]);
        stats.max_edge_discrepancy = std::max(stats.max_edge_discrepancy, d);
        sum += d;
    }
    stats.mean_edge_discrepancy = sum / static_cast<double>(graph.num_edges());
    return stats;
}

double pooled_cost(const std::vector<Matrix>& parts, const Matrix& centroids) {
    double total = 0.0;
    for (const Matrix& part : parts) total += kmeans_cost(part, centroids);
    return total;
}

std::vector<double> pooled_costs(const std::vector<Matrix>& parts,
                                 const std::vector<Matrix>& centroids) {
    std::vector<double> out;
    out.reserve(centroids.size());
    for (const Matrix& w : centroids) out.push_back(pooled_cost(parts, w));
    return out;
}

}  // namespace fedkm
