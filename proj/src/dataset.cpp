#include "fedkm/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fedkm {

Matrix make_blobs(const std::vector<BlobSpec>& blobs, std::uint64_t seed,
                  std::vector<int>* labels_out) {
    if (blobs.empty()) throw std::invalid_argument("make_blobs: no blobs given");
    const std::size_t dim = blobs.front().center.size();
    if (dim == 0) throw std::invalid_argument("make_blobs: zero-dimensional blob center");
    std::size_t total = 0;
    for (const BlobSpec& b : blobs) {
        if (b.center.size() != dim)
            throw std::invalid_argument("make_blobs: inconsistent blob dimensions");
        total += b.count;
    }

    Matrix out(total, dim);
    if (labels_out) labels_out->assign(total, 0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::size_t row = 0;
    for (std::size_t b = 0; b < blobs.size(); ++b) {
        const BlobSpec& blob = blobs[b];
        for (std::size_t s = 0; s < blob.count; ++s, ++row) {
            for (std::size_t j = 0; j < dim; ++j)
                out(row, j) = blob.center[j] + blob.stddev * gauss(rng);
            if (labels_out) (*labels_out)[row] = static_cast<int>(b);
        }
    }
    return out;
}

std::vector<BlobSpec> random_blob_layout(std::size_t num_blobs, std::size_t dim,
                                         std::size_t points_per_blob, double stddev,
                                         double box_half_width, std::uint64_t seed) {
    if (num_blobs == 0 || dim == 0)
        throw std::invalid_argument("random_blob_layout: num_blobs and dim must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-box_half_width, box_half_width);
    std::vector<BlobSpec> blobs(num_blobs);
    for (BlobSpec& b : blobs) {
        b.center.resize(dim);
        for (double& c : b.center) c = coord(rng);
        b.stddev = stddev;
        b.count = points_per_blob;
    }
    return blobs;
}

namespace {

std::vector<Matrix> deal_rows(const Matrix& data, const std::vector<std::size_t>& order,
                              std::size_t num_devices) {
    std::vector<Matrix> parts(num_devices);
    const std::size_t n = order.size();
    for (std::size_t i = 0; i < num_devices; ++i) {
        const std::size_t count = n / num_devices + (i < n % num_devices ? 1 : 0);
        parts[i] = Matrix(count, data.cols);
    }
    std::vector<std::size_t> fill(num_devices, 0);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t dev = pos % num_devices;
        const auto src = data.row(order[pos]);
        std::copy(src.begin(), src.end(), parts[dev].row(fill[dev]++).begin());
    }
    return parts;
}

}  // namespace

std::vector<Matrix> partition_iid(const Matrix& data, std::size_t num_devices,
                                  std::uint64_t seed) {
    if (num_devices == 0) throw std::invalid_argument("partition_iid: num_devices must be positive");
    std::vector<std::size_t> order(data.rows);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    return deal_rows(data, order, num_devices);
}

std::vector<Matrix> partition_contiguous(const Matrix& data, std::size_t num_devices) {
    if (num_devices == 0)
        throw std::invalid_argument("partition_contiguous: num_devices must be positive");
    std::vector<Matrix> parts(num_devices);
    const std::size_t n = data.rows;
    std::size_t start = 0;
    for (std::size_t i = 0; i < num_devices; ++i) {
        const std::size_t count = n / num_devices + (i < n % num_devices ? 1 : 0);
        parts[i] = Matrix(count, data.cols);
        for (std::size_t r = 0; r < count; ++r) {
            const auto src = data.row(start + r);
            std::copy(src.begin(), src.end(), parts[i].row(r).begin());
        }
        start += count;
    }
    return parts;
}

std::vector<Matrix> partition_by_label(const Matrix& data, const std::vector<int>& labels,
                                       std::size_t num_devices) {
    if (labels.size() != data.rows)
        throw std::invalid_argument("partition_by_label: labels size mismatch");
    if (num_devices == 0)
        throw std::invalid_argument("partition_by_label: num_devices must be positive");
    std::vector<std::size_t> order(data.rows);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });

    // Contiguous chunks of the label-sorted order.
    std::vector<Matrix> parts(num_devices);
    const std::size_t n = data.rows;
    std::size_t start = 0;
    for (std::size_t i = 0; i < num_devices; ++i) {
        const std::size_t count = n / num_devices + (i < n % num_devices ? 1 : 0);
        parts[i] = Matrix(count, data.cols);
        for (std::size_t r = 0; r < count; ++r) {
            const auto src = data.row(order[start + r]);
            std::copy(src.begin(), src.end(), parts[i].row(r).begin());
        }
        start += count;
    }
    return parts;
}

}  // namespace fedkm
