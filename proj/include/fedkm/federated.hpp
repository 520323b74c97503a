#ifndef FEDKM_FEDERATED_HPP
#define FEDKM_FEDERATED_HPP

#include <cstdint>
#include <vector>

#include "fedkm/graph.hpp"
#include "fedkm/kmeans.hpp"
#include "fedkm/matrix.hpp"

namespace fedkm {

struct FederatedConfig {
    std::size_t num_clusters = 0;
    double alpha = 1.0;            // coupling strength on graph edges
    int max_rounds = 50;
    int local_iterations = 10;     // sweeps of the per-device solver each round
    double local_tolerance = 1e-6;
    double shift_tolerance = 1e-8;  // stop when no centroid coordinate moves more
    bool include_reverse_match = true;
    InitMethod init = InitMethod::KMeansPlusPlus;
    std::uint64_t seed = 0;
};

struct RoundStats {
    int round = 0;
    double objective = 0.0;        // global GTVMin objective
    double total_variation = 0.0;  // sum of edge discrepancies
    double max_shift = 0.0;        // largest coordinate change this round
};

struct FederatedResult {
    std::vector<Matrix> centroids;            // one k x d set per device
    std::vector<std::vector<int>> assignments;  // per device, per local point
    std::vector<RoundStats> history;          // entry 0 describes the initial state
    int rounds = 0;
    bool converged = false;
};

// Per-device initial centroids as drawn by run_federated: device i seeds its
// own generator from (seed, i) and applies `init` to its local data.
std::vector<Matrix> default_initial_centroids(const std::vector<Matrix>& local_data,
                                              const FederatedConfig& cfg);

// Synchronous rounds over the device graph. Every round each device reads
// the previous round's centroids of its neighbors (nothing else crosses a
// link) and refits its own set with solve_local. Runs until no centroid
// moves more than shift_tolerance or max_rounds is reached. Pass
// initial_centroids to override the seeded per-device initialization.
FederatedResult run_federated(const std::vector<Matrix>& local_data, const Graph& graph,
                              const FederatedConfig& cfg,
                              const std::vector<Matrix>* initial_centroids = nullptr);

}  // namespace fedkm

#endif  // FEDKM_FEDERATED_HPP
