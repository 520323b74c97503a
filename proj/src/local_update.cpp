#include "fedkm/local_update.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fedkm/discrepancy.hpp"
#include "fedkm/kmeans.hpp"

namespace fedkm {

double local_objective(const Matrix& local_data, const Matrix& centroids,
                       const std::vector<const Matrix*>& neighbor_centroids,
                       double alpha, bool include_reverse_match) {
    double obj = kmeans_cost(local_data, centroids);
    for (const Matrix* nbr : neighbor_centroids) {
        obj += alpha * directed_discrepancy(*nbr, centroids);
        if (include_reverse_match) obj += alpha * directed_discrepancy(centroids, *nbr);
    }
    return obj;
}

LocalSolveResult solve_local(const Matrix& local_data, Matrix& centroids,
                             const std::vector<const Matrix*>& neighbor_centroids,
                             const LocalSolveConfig& cfg) {
    const std::size_t k = centroids.rows;
    const std::size_t dim = centroids.cols;
    if (k == 0) throw std::invalid_argument("solve_local: empty centroid set");
    if (local_data.rows > 0 && local_data.cols != dim)
        throw std::invalid_argument("solve_local: data/centroid dimension mismatch");
    for (const Matrix* nbr : neighbor_centroids)
        if (nbr->rows != k || nbr->cols != dim)
            throw std::invalid_argument("solve_local: neighbor centroid shape mismatch");

    LocalSolveResult res;
    res.objective = local_objective(local_data, centroids, neighbor_centroids, cfg.alpha,
                                    cfg.include_reverse_match);

    std::vector<int> labels;
    std::vector<std::vector<std::size_t>> to_local;   // per neighbor: neighbor row -> local row
    std::vector<std::vector<std::size_t>> to_neighbor;  // per neighbor: local row -> neighbor row
    Matrix sums(k, dim);
    std::vector<double> weights(k);

    for (int it = 0; it < cfg.max_iterations; ++it) {
        // E1: nearest local centroid for every local point.
        assign_nearest(local_data, centroids, labels);

        // E2: nearest local centroid for every neighbor centroid.
        to_local.clear();
        for (const Matrix* nbr : neighbor_centroids)
            to_local.push_back(nearest_rows(*nbr, centroids));

        // E3: nearest neighbor centroid for every local centroid.
        to_neighbor.clear();
        if (cfg.include_reverse_match)
            for (const Matrix* nbr : neighbor_centroids)
                to_neighbor.push_back(nearest_rows(centroids, *nbr));

        // M: exact minimizer per centroid for the fixed matchings.
        sums.values.assign(sums.values.size(), 0.0);
        std::fill(weights.begin(), weights.end(), 0.0);
        for (std::size_t r = 0; r < local_data.rows; ++r) {
            const auto c = static_cast<std::size_t>(labels[r]);
            auto s = sums.row(c);
            const auto x = local_data.row(r);
            for (std::size_t j = 0; j < dim; ++j) s[j] += x[j];
            weights[c] += 1.0;
        }
        for (std::size_t n = 0; n < neighbor_centroids.size(); ++n) {
            const Matrix& nbr = *neighbor_centroids[n];
            for (std::size_t c2 = 0; c2 < k; ++c2) {
                const std::size_t c = to_local[n][c2];
                auto s = sums.row(c);
                const auto w = nbr.row(c2);
                for (std::size_t j = 0; j < dim; ++j) s[j] += cfg.alpha * w[j];
                weights[c] += cfg.alpha;
            }
        }
        if (cfg.include_reverse_match) {
            for (std::size_t n = 0; n < neighbor_centroids.size(); ++n) {
                const Matrix& nbr = *neighbor_centroids[n];
                for (std::size_t c = 0; c < k; ++c) {
                    auto s = sums.row(c);
                    const auto w = nbr.row(to_neighbor[n][c]);
                    for (std::size_t j = 0; j < dim; ++j) s[j] += cfg.alpha * w[j];
                    weights[c] += cfg.alpha;
                }
            }
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (weights[c] == 0.0) continue;  // untouched centroid stays put
            for (std::size_t j = 0; j < dim; ++j) centroids(c, j) = sums(c, j) / weights[c];
        }

        res.iterations = it + 1;
        const double obj = local_objective(local_data, centroids, neighbor_centroids,
                                           cfg.alpha, cfg.include_reverse_match);
        const double prev = res.objective;
        res.objective = obj;
        if (prev - obj <= cfg.tolerance * (1.0 + std::abs(prev))) break;
    }
    return res;
}

}  // namespace fedkm
