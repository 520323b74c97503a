#ifndef FEDKM_LOCAL_UPDATE_HPP
#define FEDKM_LOCAL_UPDATE_HPP

#include <vector>

#include "fedkm/matrix.hpp"

namespace fedkm {

struct LocalSolveConfig {
    double alpha = 1.0;
    int max_iterations = 10;
    // Break once the per-sweep objective decrease drops below
    // tolerance * (1 + |objective|). Negative disables the early break, so
    // exactly max_iterations sweeps run.
    double tolerance = 1e-6;
    // The reverse matching term pulls each local centroid towards its
    // nearest counterpart at every neighbor. Disabling it (together with
    // alpha = 1) makes one sweep equal a Lloyd iteration on the local data
    // augmented by all neighbor centroids.
    bool include_reverse_match = true;
};

struct LocalSolveResult {
    int iterations = 0;
    double objective = 0.0;
};

// Value of the objective the device minimizes: the local k-means cost plus
// alpha times the coupling to each neighbor's (fixed) centroid set.
double local_objective(const Matrix& local_data, const Matrix& centroids,
                       const std::vector<const Matrix*>& neighbor_centroids,
                       double alpha, bool include_reverse_match = true);

// Block-coordinate descent on the device objective: assign local points to
// their nearest centroid, match neighbor centroids to local ones (and,
// optionally, local centroids to neighbor ones), then move every centroid
// to the exact minimizer given those assignments. Each full sweep never
// increases the objective. `centroids` is updated in place; neighbor sets
// are read-only.
LocalSolveResult solve_local(const Matrix& local_data, Matrix& centroids,
                             const std::vector<const Matrix*>& neighbor_centroids,
                             const LocalSolveConfig& cfg);

}  // namespace fedkm

#endif  // FEDKM_LOCAL_UPDATE_HPP
