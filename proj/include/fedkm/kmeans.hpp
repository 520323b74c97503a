#ifndef FEDKM_KMEANS_HPP
#define FEDKM_KMEANS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "fedkm/matrix.hpp"

namespace fedkm {

enum class InitMethod {
    RandomPoints,     // k points sampled without replacement
    KMeansPlusPlus,   // D^2-weighted seeding
};

// Initial centroids drawn from `data` with the given method. If data has
// fewer than k rows, the available points are cycled with small jitter; if
// data is empty, centroids are standard-normal draws.
Matrix init_centroids(const Matrix& data, std::size_t k, InitMethod method,
                      std::mt19937_64& rng);

// Sum of squared distances from each point to its nearest centroid.
double kmeans_cost(const Matrix& data, const Matrix& centroids);

// Nearest-centroid assignment; returns the summed squared distance.
double assign_nearest(const Matrix& data, const Matrix& centroids,
                      std::vector<int>& labels);

// Mean update for the given assignment. Clusters with no assigned points
// keep their previous centroid.
void update_means(const Matrix& data, const std::vector<int>& labels,
                  Matrix& centroids);

// One Lloyd iteration (assignment + mean update) in place.
void lloyd_step(const Matrix& data, Matrix& centroids);

struct LloydConfig {
    std::size_t num_clusters = 0;
    int max_iterations = 100;
    double tolerance = 1e-6;  // relative cost decrease; negative = run all iterations
    InitMethod init = InitMethod::KMeansPlusPlus;
    std::uint64_t seed = 0;
    int restarts = 1;  // keep the best of this many seeded runs
};

struct LloydResult {
    Matrix centroids;
    std::vector<int> labels;
    double cost = 0.0;
    int iterations = 0;
};

// Lloyd's method from the given initial centroids.
LloydResult lloyd_fit_from(const Matrix& data, Matrix initial, int max_iterations,
                           double tolerance);

// Full pipeline: seeded init (+ restarts), Lloyd iterations, best run wins.
LloydResult lloyd_fit(const Matrix& data, const LloydConfig& cfg);

}  // namespace fedkm

#endif  // FEDKM_KMEANS_HPP
