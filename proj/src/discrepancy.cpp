#include "fedkm/discrepancy.hpp"

#include <stdexcept>

#include "fedkm/kmeans.hpp"

namespace fedkm {

double directed_discrepancy(const Matrix& from, const Matrix& to) {
    if (to.rows == 0) throw std::invalid_argument("directed_discrepancy: empty target set");
    double total = 0.0;
    for (std::size_t r = 0; r < from.rows; ++r) {
        const std::size_t nn = nearest_row(to, from.row(r));
        total += squared_distance(from.row(r), to.row(nn));
    }
    return total;
}

double symmetric_discrepancy(const Matrix& a, const Matrix& b) {
    return directed_discrepancy(a, b) + directed_discrepancy(b, a);
}

std::vector<std::size_t> nearest_rows(const Matrix& queries, const Matrix& targets) {
    if (targets.rows == 0) throw std::invalid_argument("nearest_rows: empty target set");
    std::vector<std::size_t> out(queries.rows);
    for (std::size_t r = 0; r < queries.rows; ++r)
        out[r] = nearest_row(targets, queries.row(r));
    return out;
}

double total_variation(const std::vector<Matrix>& centroids, const Graph& graph) {
    if (centroids.size() != graph.num_nodes())
        throw std::invalid_argument("total_variation: one centroid set per node required");
    double total = 0.0;
    for (const auto& [i, j] : graph.edges())
        total += symmetric_discrepancy(centroids[i], centroids[j]);
    return total;
}

double gtvmin_objective(const std::vector<Matrix>& local_data,
                        const std::vector<Matrix>& centroids, const Graph& graph,
                        double alpha) {
    if (local_data.size() != centroids.size())
        throw std::invalid_argument("gtvmin_objective: data/centroid count mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < local_data.size(); ++i)
        total += kmeans_cost(local_data[i], centroids[i]);
    return total + alpha * total_variation(centroids, graph);
}

}  // namespace fedkm
