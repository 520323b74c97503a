#ifndef FEDKM_DISCREPANCY_HPP
#define FEDKM_DISCREPANCY_HPP

#include <vector>

#include "fedkm/graph.hpp"
#include "fedkm/matrix.hpp"

namespace fedkm {

// Sum over rows of `from` of the squared distance to the nearest row of `to`.
double directed_discrepancy(const Matrix& from, const Matrix& to);

// Two-sided centroid-set discrepancy. Zero iff the two matrices hold the
// same set of rows (in any order).
double symmetric_discrepancy(const Matrix& a, const Matrix& b);

// For each row of `queries`, the index of the nearest row of `targets`.
std::vector<std::size_t> nearest_rows(const Matrix& queries, const Matrix& targets);

// Sum of symmetric discrepancies over all graph edges.
double total_variation(const std::vector<Matrix>& centroids, const Graph& graph);

// Sum of local k-means costs plus alpha times the total variation; each edge
// is counted once.
double gtvmin_objective(const std::vector<Matrix>& local_data,
                        const std::vector<Matrix>& centroids, const Graph& graph,
                        double alpha);

}  // namespace fedkm

#endif  // FEDKM_DISCREPANCY_HPP
