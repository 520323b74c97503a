#ifndef FEDKM_DATASET_HPP
#define FEDKM_DATASET_HPP

#include <cstdint>
#include <vector>

#include "fedkm/matrix.hpp"

namespace fedkm {

// One isotropic Gaussian blob.
struct BlobSpec {
    std::vector<double> center;
    double stddev = 1.0;
    std::size_t count = 0;
};

// Samples all blobs in order; labels_out (optional) receives the blob index
// of each generated point.
Matrix make_blobs(const std::vector<BlobSpec>& blobs, std::uint64_t seed,
                  std::vector<int>* labels_out = nullptr);

// Blob centers drawn uniformly from [-box_half_width, box_half_width]^dim.
std::vector<BlobSpec> random_blob_layout(std::size_t num_blobs, std::size_t dim,
                                         std::size_t points_per_blob, double stddev,
                                         double box_half_width, std::uint64_t seed);

// Seeded shuffle, then round-robin deal. Device sizes differ by at most one.
std::vector<Matrix> partition_iid(const Matrix& data, std::size_t num_devices,
                                  std::uint64_t seed);

// Contiguous chunks in file order (device sizes differ by at most one).
std::vector<Matrix> partition_contiguous(const Matrix& data, std::size_t num_devices);

// Stable-sorts points by label, then splits into contiguous chunks, so each
// device sees only a few labels (a skewed, non-iid split).
std::vector<Matrix> partition_by_label(const Matrix& data, const std::vector<int>& labels,
                                       std::size_t num_devices);

}  // namespace fedkm

#endif  // FEDKM_DATASET_HPP
