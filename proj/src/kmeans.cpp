#include "fedkm/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fedkm {

namespace {

// Fill leftover centroid rows when the dataset has fewer than k points:
// cycle the points with small gaussian jitter (or pure noise if no data).
void fill_from_small_dataset(const Matrix& data, Matrix& centroids, std::size_t from,
                             std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t c = from; c < centroids.rows; ++c) {
        if (data.rows == 0) {
            for (std::size_t j = 0; j < centroids.cols; ++j) centroids(c, j) = gauss(rng);
        } else {
            const auto src = data.row(c % data.rows);
            for (std::size_t j = 0; j < centroids.cols; ++j)
                centroids(c, j) = src[j] + 1e-3 * gauss(rng);
        }
    }
}

Matrix init_random_points(const Matrix& data, std::size_t k, std::mt19937_64& rng) {
    Matrix centroids(k, data.cols);
    const std::size_t take = std::min(k, data.rows);
    std::vector<std::size_t> order(data.rows);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t c = 0; c < take; ++c) {
        const auto src = data.row(order[c]);
        std::copy(src.begin(), src.end(), centroids.row(c).begin());
    }
    fill_from_small_dataset(data, centroids, take, rng);
    return centroids;
}

Matrix init_kmeanspp(const Matrix& data, std::size_t k, std::mt19937_64& rng) {
    Matrix centroids(k, data.cols);
    const std::size_t take = std::min(k, data.rows);
    if (take > 0) {
        std::uniform_int_distribution<std::size_t> first(0, data.rows - 1);
        const auto seed_row = data.row(first(rng));
        std::copy(seed_row.begin(), seed_row.end(), centroids.row(0).begin());

        std::vector<double> min_d2(data.rows, std::numeric_limits<double>::infinity());
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (std::size_t c = 1; c < take; ++c) {
            double total = 0.0;
            for (std::size_t r = 0; r < data.rows; ++r) {
                const double d2 = squared_distance(data.row(r), centroids.row(c - 1));
                min_d2[r] = std::min(min_d2[r], d2);
                total += min_d2[r];
            }
            std::size_t chosen = 0;
            if (total > 0.0) {
                const double target = unit(rng) * total;
                double acc = 0.0;
                for (std::size_t r = 0; r < data.rows; ++r) {
                    acc += min_d2[r];
                    if (acc >= target) {
                        chosen = r;
                        break;
                    }
                }
            } else {
                // All points coincide with a chosen centroid.
                std::uniform_int_distribution<std::size_t> any(0, data.rows - 1);
                chosen = any(rng);
            }
            const auto src = data.row(chosen);
            std::copy(src.begin(), src.end(), centroids.row(c).begin());
        }
    }
    fill_from_small_dataset(data, centroids, take, rng);
    return centroids;
}

}  // namespace

Matrix init_centroids(const Matrix& data, std::size_t k, InitMethod method,
                      std::mt19937_64& rng) {
    if (k == 0) throw std::invalid_argument("init_centroids: k must be positive");
    if (data.cols == 0) throw std::invalid_argument("init_centroids: zero-dimensional data");
    switch (method) {
        case InitMethod::RandomPoints:
            return init_random_points(data, k, rng);
        case InitMethod::KMeansPlusPlus:
            return init_kmeanspp(data, k, rng);
    }
    throw std::logic_error("init_centroids: unknown method");
}

double kmeans_cost(const Matrix& data, const Matrix& centroids) {
    double cost = 0.0;
    for (std::size_t r = 0; r < data.rows; ++r) {
        const std::size_t c = nearest_row(centroids, data.row(r));
        cost += squared_distance(data.row(r), centroids.row(c));
    }
    return cost;
}

double assign_nearest(const Matrix& data, const Matrix& centroids,
                      std::vector<int>& labels) {
    labels.assign(data.rows, 0);
    double cost = 0.0;
    for (std::size_t r = 0; r < data.rows; ++r) {
        const std::size_t c = nearest_row(centroids, data.row(r));
        labels[r] = static_cast<int>(c);
        cost += squared_distance(data.row(r), centroids.row(c));
    }
    return cost;
}

void update_means(const Matrix& data, const std::vector<int>& labels,
                  Matrix& centroids) {
    Matrix sums(centroids.rows, centroids.cols);
    std::vector<std::size_t> counts(centroids.rows, 0);
    for (std::size_t r = 0; r < data.rows; ++r) {
        const auto c = static_cast<std::size_t>(labels[r]);
        const auto x = data.row(r);
        auto s = sums.row(c);
        for (std::size_t j = 0; j < data.cols; ++j) s[j] += x[j];
        ++counts[c];
    }
    for (std::size_t c = 0; c < centroids.rows; ++c) {
        if (counts[c] == 0) continue;
        const double den = static_cast<double>(counts[c]);
        for (std::size_t j = 0; j < centroids.cols; ++j)
            centroids(c, j) = sums(c, j) / den;
    }
}

void lloyd_step(const Matrix& data, Matrix& centroids) {
    std::vector<int> labels;
    assign_nearest(data, centroids, labels);
    update_means(data, labels, centroids);
}

LloydResult lloyd_fit_from(const Matrix& data, Matrix initial, int max_iterations,
                           double tolerance) {
    LloydResult res;
    res.centroids = std::move(initial);
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iterations; ++it) {
        const double cost = assign_nearest(data, res.centroids, res.labels);
        if (prev - cost <= tolerance * (1.0 + std::abs(cost))) break;
        update_means(data, res.labels, res.centroids);
        prev = cost;
        res.iterations = it + 1;
    }
    res.cost = assign_nearest(data, res.centroids, res.labels);
    return res;
}

LloydResult lloyd_fit(const Matrix& data, const LloydConfig& cfg) {
    if (cfg.num_clusters == 0)
        throw std::invalid_argument("lloyd_fit: num_clusters must be positive");
    if (cfg.restarts < 1) throw std::invalid_argument("lloyd_fit: restarts must be >= 1");
    LloydResult best;
    best.cost = std::numeric_limits<double>::infinity();
    for (int r = 0; r < cfg.restarts; ++r) {
        std::mt19937_64 rng(cfg.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(r));
        Matrix initial = init_centroids(data, cfg.num_clusters, cfg.init, rng);
        LloydResult run =
            lloyd_fit_from(data, std::move(initial), cfg.max_iterations, cfg.tolerance);
        if (run.cost < best.cost) best = std::move(run);
    }
    return best;
}

}  // namespace fedkm
