#ifndef FEDKM_MATRIX_HPP
#define FEDKM_MATRIX_HPP

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace fedkm {

// Dense row-major matrix of doubles. Rows are points (or centroids),
// columns are features.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), values(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) {
        assert(i < rows && j < cols);
        return values[i * cols + j];
    }
    double operator()(std::size_t i, std::size_t j) const {
        assert(i < rows && j < cols);
        return values[i * cols + j];
    }

    std::span<double> row(std::size_t i) {
        assert(i < rows);
        return {values.data() + i * cols, cols};
    }
    std::span<const double> row(std::size_t i) const {
        assert(i < rows);
        return {values.data() + i * cols, cols};
    }

    bool empty() const { return rows == 0; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.values == b.values;
    }
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double d2 = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        d2 += diff * diff;
    }
    return d2;
}

// Index of the row of `candidates` closest to `query` in squared Euclidean
// distance. Ties resolve to the lowest index.
inline std::size_t nearest_row(const Matrix& candidates, std::span<const double> query) {
    assert(candidates.rows > 0);
    std::size_t best = 0;
    double best_d2 = squared_distance(candidates.row(0), query);
    for (std::size_t i = 1; i < candidates.rows; ++i) {
        const double d2 = squared_distance(candidates.row(i), query);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

inline Matrix concat_rows(const std::vector<Matrix>& parts) {
    Matrix out;
    for (const Matrix& p : parts) {
        if (p.rows == 0) continue;
        if (out.cols == 0) out.cols = p.cols;
        assert(p.cols == out.cols);
        out.values.insert(out.values.end(), p.values.begin(), p.values.end());
        out.rows += p.rows;
    }
    return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    assert(a.rows == b.rows && a.cols == b.cols);
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

}  // namespace fedkm

#endif  // FEDKM_MATRIX_HPP
