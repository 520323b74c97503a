#ifndef FEDKM_METRICS_HPP
#define FEDKM_METRICS_HPP

#include <vector>

#include "fedkm/graph.hpp"
#include "fedkm/matrix.hpp"

namespace fedkm {

struct ConsensusStats {
    double max_edge_discrepancy = 0.0;
    double mean_edge_discrepancy = 0.0;
};

// How far linked devices are from sharing one centroid set.
ConsensusStats consensus_stats(const std::vector<Matrix>& centroids, const Graph& graph);

// k-means cost of one centroid set evaluated on the union of all parts.
double pooled_cost(const std::vector<Matrix>& parts, const Matrix& centroids);

// pooled_cost for every device's centroid set.
std::vector<double> pooled_costs(const std::vector<Matrix>& parts,
                                 const std::vector<Matrix>& centroids);

}  // namespace fedkm

#endif  // FEDKM_METRICS_HPP
