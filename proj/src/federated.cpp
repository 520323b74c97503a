#include "fedkm/federated.hpp"

#include <random>
#include <stdexcept>

#include "fedkm/discrepancy.hpp"
#include "fedkm/local_update.hpp"

namespace fedkm {

namespace {

std::uint64_t device_seed(std::uint64_t base, std::size_t device) {
    return base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(device) + 1);
}

std::size_t common_dim(const std::vector<Matrix>& local_data) {
    std::size_t dim = 0;
    for (const Matrix& part : local_data) {
        if (part.cols == 0) continue;
        if (dim == 0) dim = part.cols;
        if (part.cols != dim)
            throw std::invalid_argument("run_federated: local datasets disagree on dimension");
    }
    if (dim == 0)
        throw std::invalid_argument("run_federated: every local dataset is dimensionless");
    return dim;
}

}  // namespace

std::vector<Matrix> default_initial_centroids(const std::vector<Matrix>& local_data,
                                              const FederatedConfig& cfg) {
    const std::size_t dim = common_dim(local_data);
    std::vector<Matrix> centroids;
    centroids.reserve(local_data.size());
    for (std::size_t i = 0; i < local_data.size(); ++i) {
        std::mt19937_64 rng(device_seed(cfg.seed, i));
        if (local_data[i].rows == 0) {
            // No data to sample from; init_centroids falls back to noise.
            Matrix empty(0, dim);
            centroids.push_back(init_centroids(empty, cfg.num_clusters, cfg.init, rng));
        } else {
            centroids.push_back(init_centroids(local_data[i], cfg.num_clusters, cfg.init, rng));
        }
    }
    return centroids;
}

FederatedResult run_federated(const std::vector<Matrix>& local_data, const Graph& graph,
                              const FederatedConfig& cfg,
                              const std::vector<Matrix>* initial_centroids) {
    if (cfg.num_clusters == 0)
        throw std::invalid_argument("run_federated: num_clusters must be positive");
    if (local_data.size() != graph.num_nodes())
        throw std::invalid_argument("run_federated: one local dataset per graph node required");
    if (local_data.empty()) throw std::invalid_argument("run_federated: no devices");
    if (cfg.alpha < 0.0) throw std::invalid_argument("run_federated: alpha must be >= 0");
    const std::size_t dim = common_dim(local_data);

    FederatedResult res;
    if (initial_centroids) {
        if (initial_centroids->size() != local_data.size())
            throw std::invalid_argument("run_federated: initial centroid count mismatch");
        for (const Matrix& w : *initial_centroids)
            if (w.rows != cfg.num_clusters || w.cols != dim)
                throw std::invalid_argument("run_federated: initial centroid shape mismatch");
        res.centroids = *initial_centroids;
    } else {
        res.centroids = default_initial_centroids(local_data, cfg);
    }

    const std::size_t n = local_data.size();
    res.history.push_back({0, gtvmin_objective(local_data, res.centroids, graph, cfg.alpha),
                           total_variation(res.centroids, graph), 0.0});

    LocalSolveConfig lcfg;
    lcfg.alpha = cfg.alpha;
    lcfg.max_iterations = cfg.local_iterations;
    lcfg.tolerance = cfg.local_tolerance;
    lcfg.include_reverse_match = cfg.include_reverse_match;

    for (int round = 1; round <= cfg.max_rounds; ++round) {
        // Jacobi: all devices update against the previous round's snapshot.
        const std::vector<Matrix> snapshot = res.centroids;
        double max_shift = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<const Matrix*> nbrs;
            nbrs.reserve(graph.degree(i));
            for (std::size_t j : graph.neighbors(i)) nbrs.push_back(&snapshot[j]);
            solve_local(local_data[i], res.centroids[i], nbrs, lcfg);
            max_shift = std::max(max_shift, max_abs_diff(res.centroids[i], snapshot[i]));
        }
        res.rounds = round;
        res.history.push_back({round,
                               gtvmin_objective(local_data, res.centroids, graph, cfg.alpha),
                               total_variation(res.centroids, graph), max_shift});
        if (max_shift <= cfg.shift_tolerance) {
            res.converged = true;
            break;
        }
    }

    res.assignments.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        assign_nearest(local_data[i], res.centroids[i], res.assignments[i]);
    return res;
}

}  // namespace fedkm
