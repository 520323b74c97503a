// Acceptance suite: end-to-end checks of the federated k-means pipeline.
// Each criterion prints one [PASS]/[FAIL] line; the exit code is the number
// of failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fedkm/dataset.hpp"
#include "fedkm/discrepancy.hpp"
#include "fedkm/federated.hpp"
#include "fedkm/graph.hpp"
#include "fedkm/kmeans.hpp"
#include "fedkm/local_update.hpp"
#include "fedkm/metrics.hpp"
#include "test_support.hpp"

using fedkm::FederatedConfig;
using fedkm::Graph;
using fedkm::LocalSolveConfig;
using fedkm::Matrix;
using fedkm::test::random_local_instance;
using fedkm::test::random_matrix;

namespace {

struct Criterion {
    std::string name;
    std::function<std::string()> run;  // empty string = pass, else failure detail
};

// --- helpers -------------------------------------------------------------

bool non_increasing(double prev, double cur) {
    return cur <= prev * (1.0 + 1e-12) + 1e-12;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::vector<Matrix> homogeneous_parts(std::size_t devices, std::uint64_t seed) {
    const Matrix data = fedkm::make_blobs(
        {{{0.0, 0.0}, 0.5, 100}, {{10.0, 0.0}, 0.5, 100}, {{0.0, 10.0}, 0.5, 100}}, seed);
    return fedkm::partition_iid(data, devices, seed + 1);
}

double worst_cost_ratio(const std::vector<Matrix>& parts,
                        const std::vector<Matrix>& centroids, double reference_cost) {
    double worst = 0.0;
    for (const double c : fedkm::pooled_costs(parts, centroids))
        worst = std::max(worst, c / reference_cost);
    return worst;
}

fedkm::LloydResult central_reference(const std::vector<Matrix>& parts, std::size_t k) {
    fedkm::LloydConfig cfg;
    cfg.num_clusters = k;
    cfg.seed = 1;
    cfg.restarts = 10;
    return fedkm::lloyd_fit(fedkm::concat_rows(parts), cfg);
}

// --- criteria ------------------------------------------------------------

// Lloyd's method on one dataset: the clustering error never increases.
std::string check_lloyd_descent() {
    std::mt19937_64 rng(1001);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 30 + static_cast<std::size_t>(rng() % 170);
        const std::size_t dim = 1 + static_cast<std::size_t>(rng() % 5);
        const std::size_t k = 2 + static_cast<std::size_t>(rng() % 4);
        const Matrix data = random_matrix(n, dim, rng);
        Matrix centroids = random_matrix(k, dim, rng);
        double prev = fedkm::kmeans_cost(data, centroids);
        for (int it = 0; it < 25; ++it) {
            fedkm::lloyd_step(data, centroids);
            const double cost = fedkm::kmeans_cost(data, centroids);
            if (!non_increasing(prev, cost))
                return "cost rose from " + fmt(prev) + " to " + fmt(cost) + " (trial " +
                       std::to_string(trial) + ", iter " + std::to_string(it) + ")";
            prev = cost;
        }
    }
    return {};
}

// Every sweep of the per-device solver decreases (or keeps) the device
// objective, for any coupling strength, with or without the reverse match.
std::string check_device_sweep_descent() {
    std::mt19937_64 rng(1002);
    for (const double alpha : {0.1, 1.0, 10.0}) {
        for (const bool reverse : {true, false}) {
            for (int trial = 0; trial < 10; ++trial) {
                const std::size_t k = 2 + static_cast<std::size_t>(rng() % 4);
                const std::size_t nbrs = static_cast<std::size_t>(rng() % 4);
                auto inst = random_local_instance(20 + rng() % 60, 2, k, nbrs, rng);
                LocalSolveConfig cfg;
                cfg.alpha = alpha;
                cfg.max_iterations = 1;
                cfg.tolerance = -1.0;
                cfg.include_reverse_match = reverse;
                double prev = fedkm::local_objective(inst.data, inst.centroids, inst.neighbors,
                                                     alpha, reverse);
                for (int sweep = 0; sweep < 15; ++sweep) {
                    const auto res =
                        fedkm::solve_local(inst.data, inst.centroids, inst.neighbors, cfg);
                    if (!non_increasing(prev, res.objective))
                        return "objective rose from " + fmt(prev) + " to " +
                               fmt(res.objective) + " (alpha " + fmt(alpha) + ")";
                    prev = res.objective;
                }
            }
        }
    }
    return {};
}

// With alpha = 0 the device solver is exactly Lloyd's method on local data.
std::string check_alpha_zero_reduction() {
    std::mt19937_64 rng(1003);
    for (int trial = 0; trial < 10; ++trial) {
        auto inst = random_local_instance(35, 3, 4, 2, rng);
        Matrix reference = inst.centroids;
        LocalSolveConfig cfg;
        cfg.alpha = 0.0;
        cfg.max_iterations = 7;
        cfg.tolerance = -1.0;
        fedkm::solve_local(inst.data, inst.centroids, inst.neighbors, cfg);
        for (int it = 0; it < 7; ++it) fedkm::lloyd_step(inst.data, reference);
        const double diff = fedkm::max_abs_diff(inst.centroids, reference);
        if (diff > 1e-13)
            return "deviation " + fmt(diff) + " from plain lloyd (trial " +
                   std::to_string(trial) + ")";
    }
    return {};
}

// With alpha = 1 and the reverse match off, one sweep equals one Lloyd step
// on the local data augmented by all neighbor centroids.
std::string check_augmented_equivalence() {
    std::mt19937_64 rng(1004);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t nbrs = 1 + static_cast<std::size_t>(rng() % 3);
        auto inst = random_local_instance(25, 2, 3, nbrs, rng);
        std::vector<Matrix> parts = {inst.data};
        for (const Matrix& nbr : inst.neighbor_storage) parts.push_back(nbr);
        const Matrix augmented = fedkm::concat_rows(parts);
        Matrix reference = inst.centroids;

        LocalSolveConfig cfg;
        cfg.alpha = 1.0;
        cfg.max_iterations = 1;
        cfg.tolerance = -1.0;
        cfg.include_reverse_match = false;
        fedkm::solve_local(inst.data, inst.centroids, inst.neighbors, cfg);
        fedkm::lloyd_step(augmented, reference);
        const double diff = fedkm::max_abs_diff(inst.centroids, reference);
        if (diff > 1e-12)
            return "deviation " + fmt(diff) + " from the augmented-data lloyd step";
    }
    return {};
}

// At an inner fixed point the device objective is stationary: central
// finite differences in every centroid coordinate vanish.
std::string check_fixed_point_stationarity() {
    std::mt19937_64 rng(1005);
    auto inst = random_local_instance(40, 2, 3, 2, rng);
    LocalSolveConfig cfg;
    cfg.alpha = 1.5;
    cfg.max_iterations = 500;
    cfg.tolerance = 0.0;
    const auto res = fedkm::solve_local(inst.data, inst.centroids, inst.neighbors, cfg);
    if (res.iterations >= 500) return "inner loop failed to reach a fixed point";

    const double h = 1e-6;
    const double bound = 1e-4 * (1.0 + std::abs(res.objective));
    for (std::size_t c = 0; c < inst.centroids.rows; ++c) {
        for (std::size_t j = 0; j < inst.centroids.cols; ++j) {
            const double saved = inst.centroids(c, j);
            inst.centroids(c, j) = saved + h;
            const double up = fedkm::local_objective(inst.data, inst.centroids,
                                                     inst.neighbors, cfg.alpha, true);
            inst.centroids(c, j) = saved - h;
            const double down = fedkm::local_objective(inst.data, inst.centroids,
                                                       inst.neighbors, cfg.alpha, true);
            inst.centroids(c, j) = saved;
            const double grad = std::abs((up - down) / (2 * h));
            if (grad > bound)
                return "gradient " + fmt(grad) + " above bound " + fmt(bound) +
                       " at centroid " + std::to_string(c);
        }
    }
    return {};
}

// Connected ring, homogeneous local data, strong coupling: devices agree
// (small edge discrepancy, large drop in total variation) and every
// device's set clusters the pooled data nearly as well as centralized
// Lloyd with restarts.
std::string check_consensus_and_quality() {
    const auto parts = homogeneous_parts(6, 301);
    const Graph g = fedkm::make_ring_graph(6);
    FederatedConfig cfg;
    cfg.num_clusters = 3;
    cfg.alpha = 50.0;
    cfg.max_rounds = 120;
    cfg.local_iterations = 5;
    cfg.shift_tolerance = 1e-10;
    cfg.seed = 12;
    const auto res = fedkm::run_federated(parts, g, cfg);

    const auto stats = fedkm::consensus_stats(res.centroids, g);
    if (stats.max_edge_discrepancy > 2e-2)
        return "max edge discrepancy " + fmt(stats.max_edge_discrepancy) + " > 2e-2";

    const double tv0 = res.history.front().total_variation;
    const double tv1 = res.history.back().total_variation;
    if (tv1 > tv0 / 100.0)
        return "total variation only fell from " + fmt(tv0) + " to " + fmt(tv1);

    const auto ref = central_reference(parts, 3);
    const double ratio = worst_cost_ratio(parts, res.centroids, ref.cost);
    if (ratio > 1.02) return "worst pooled-cost ratio " + fmt(ratio) + " > 1.02";
    return {};
}

// Raising the coupling strength tightens consensus.
std::string check_coupling_tightens_consensus() {
    const auto parts = homogeneous_parts(6, 302);
    const Graph g = fedkm::make_ring_graph(6);
    FederatedConfig cfg;
    cfg.num_clusters = 3;
    cfg.max_rounds = 120;
    cfg.local_iterations = 5;
    cfg.shift_tolerance = 1e-10;
    cfg.seed = 12;

    FederatedConfig weak = cfg;
    weak.alpha = 1.0;
    FederatedConfig strong = cfg;
    strong.alpha = 20.0;
    const double loose =
        fedkm::consensus_stats(fedkm::run_federated(parts, g, weak).centroids, g)
            .max_edge_discrepancy;
    const double tight =
        fedkm::consensus_stats(fedkm::run_federated(parts, g, strong).centroids, g)
            .max_edge_discrepancy;
    if (loose < 3.0 * tight)
        return "alpha=1 discrepancy " + fmt(loose) + " not at least 3x alpha=20's " +
               fmt(tight);
    return {};
}

// Disconnected graph: each component behaves exactly as if it ran alone,
// reaches its own consensus near its own centralized solution, and the two
// components' centroid sets stay far apart.
std::string check_component_independence() {
    std::mt19937_64 rng(1008);
    const Matrix data_a = fedkm::make_blobs({{{0.0, 0.0}, 0.5, 120}, {{8.0, 0.0}, 0.5, 120}}, 51);
    const Matrix data_b =
        fedkm::make_blobs({{{-20.0, 6.0}, 0.5, 120}, {{-20.0, -6.0}, 0.5, 120}}, 52);
    auto parts_a = fedkm::partition_iid(data_a, 3, 61);
    auto parts_b = fedkm::partition_iid(data_b, 3, 62);

    std::vector<Matrix> parts = parts_a;
    parts.insert(parts.end(), parts_b.begin(), parts_b.end());
    const Graph component = fedkm::make_ring_graph(3);
    const Graph joint = fedkm::disjoint_union(component, component);

    // Fixed round count: the joint run must match the per-component runs
    // step for step, so no early stop.
    FederatedConfig cfg;
    cfg.num_clusters = 2;
    cfg.alpha = 40.0;
    cfg.max_rounds = 100;
    cfg.local_iterations = 5;
    cfg.shift_tolerance = -1.0;
    cfg.seed = 9;

    std::vector<Matrix> initial;
    for (const Matrix& part : parts)
        initial.push_back(
            fedkm::init_centroids(part, 2, fedkm::InitMethod::KMeansPlusPlus, rng));
    const std::vector<Matrix> init_a(initial.begin(), initial.begin() + 3);
    const std::vector<Matrix> init_b(initial.begin() + 3, initial.end());

    const auto whole = fedkm::run_federated(parts, joint, cfg, &initial);
    const auto alone_a = fedkm::run_federated(parts_a, component, cfg, &init_a);
    const auto alone_b = fedkm::run_federated(parts_b, component, cfg, &init_b);

    for (std::size_t i = 0; i < 3; ++i) {
        if (fedkm::max_abs_diff(whole.centroids[i], alone_a.centroids[i]) > 1e-13 ||
            fedkm::max_abs_diff(whole.centroids[i + 3], alone_b.centroids[i]) > 1e-13)
            return "joint run deviates from the per-component runs";
    }

    const auto stats_a = fedkm::consensus_stats(
        {whole.centroids[0], whole.centroids[1], whole.centroids[2]}, component);
    const auto stats_b = fedkm::consensus_stats(
        {whole.centroids[3], whole.centroids[4], whole.centroids[5]}, component);
    if (stats_a.max_edge_discrepancy > 2e-2 || stats_b.max_edge_discrepancy > 2e-2)
        return "per-component consensus too loose (" + fmt(stats_a.max_edge_discrepancy) +
               ", " + fmt(stats_b.max_edge_discrepancy) + ")";

    const auto ref_a = central_reference(parts_a, 2);
    const auto ref_b = central_reference(parts_b, 2);
    for (std::size_t i = 0; i < 3; ++i) {
        const double da = fedkm::symmetric_discrepancy(whole.centroids[i], ref_a.centroids);
        const double db =
            fedkm::symmetric_discrepancy(whole.centroids[i + 3], ref_b.centroids);
        if (da > 0.05 || db > 0.05)
            return "component centroids too far from their centralized reference (" +
                   fmt(da) + ", " + fmt(db) + ")";
    }
    if (worst_cost_ratio(parts_a, {whole.centroids[0], whole.centroids[1], whole.centroids[2]},
                         ref_a.cost) > 1.02 ||
        worst_cost_ratio(parts_b, {whole.centroids[3], whole.centroids[4], whole.centroids[5]},
                         ref_b.cost) > 1.02)
        return "per-component pooled cost more than 2% above centralized";

    const double cross =
        fedkm::symmetric_discrepancy(whole.centroids[0], whole.centroids[3]);
    if (cross < 100.0)
        return "components unexpectedly agree (cross discrepancy " + fmt(cross) + ")";
    return {};
}

// Bitwise repeatability for a fixed seed; a different seed moves the result.
std::string check_seed_determinism() {
    const auto parts = homogeneous_parts(4, 303);
    const Graph g = fedkm::make_ring_graph(4);
    FederatedConfig cfg;
    cfg.num_clusters = 3;
    cfg.alpha = 5.0;
    cfg.max_rounds = 30;
    cfg.seed = 77;

    const auto a = fedkm::run_federated(parts, g, cfg);
    const auto b = fedkm::run_federated(parts, g, cfg);
    if (a.history.size() != b.history.size()) return "history lengths differ across reruns";
    for (std::size_t r = 0; r < a.history.size(); ++r)
        if (a.history[r].objective != b.history[r].objective ||
            a.history[r].total_variation != b.history[r].total_variation ||
            a.history[r].max_shift != b.history[r].max_shift)
            return "round " + std::to_string(r) + " stats differ across reruns";
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (!(a.centroids[i] == b.centroids[i]))
            return "device " + std::to_string(i) + " centroids differ across reruns";

    cfg.seed = 78;
    const auto c = fedkm::run_federated(parts, g, cfg);
    double moved = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i)
        moved = std::max(moved, fedkm::max_abs_diff(a.centroids[i], c.centroids[i]));
    if (moved == 0.0) return "different seeds produced identical centroids";
    return {};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"lloyd-descent", check_lloyd_descent},
        {"device-sweep-descent", check_device_sweep_descent},
        {"alpha-zero-reduction", check_alpha_zero_reduction},
        {"augmented-dataset-equivalence", check_augmented_equivalence},
        {"fixed-point-stationarity", check_fixed_point_stationarity},
        {"consensus-and-quality", check_consensus_and_quality},
        {"coupling-tightens-consensus", check_coupling_tightens_consensus},
        {"component-independence", check_component_independence},
        {"seed-determinism", check_seed_determinism},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        std::string detail;
        try {
            detail = criterion.run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (detail.empty()) {
            std::printf("[PASS] %s\n", criterion.name.c_str());
        } else {
            std::printf("[FAIL] %s: %s\n", criterion.name.c_str(), detail.c_str());
            ++failures;
        }
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
    return failures;
}
