#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fedkm/dataset.hpp"
#include "fedkm/discrepancy.hpp"
#include "fedkm/federated.hpp"
#include "fedkm/graph.hpp"
#include "fedkm/io.hpp"
#include "fedkm/kmeans.hpp"
#include "fedkm/local_update.hpp"
#include "fedkm/metrics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fedkm::InitMethod parse_init(const std::string& name) {
    if (name == "kmeans++") return fedkm::InitMethod::KMeansPlusPlus;
    if (name == "random") return fedkm::InitMethod::RandomPoints;
    throw CLI::ValidationError("--init", "expected kmeans++ or random");
}

fedkm::Graph build_topology(const std::string& name, std::size_t nodes, double edge_prob,
                            bool ensure_connected, std::uint64_t seed) {
    if (name == "ring") return fedkm::make_ring_graph(nodes);
    if (name == "complete") return fedkm::make_complete_graph(nodes);
    if (name == "path") return fedkm::make_path_graph(nodes);
    if (name == "star") return fedkm::make_star_graph(nodes);
    if (name == "erdos-renyi")
        return fedkm::make_erdos_renyi_graph(nodes, edge_prob, seed, ensure_connected);
    throw CLI::ValidationError("--topology",
                               "expected ring, complete, path, star or erdos-renyi");
}

std::vector<fedkm::Matrix> load_device_dir(const std::string& dir) {
    std::vector<fedkm::Matrix> parts;
    for (std::size_t i = 0;; ++i) {
        const fs::path file = fs::path(dir) / ("device_" + std::to_string(i) + ".csv");
        if (!fs::exists(file)) break;
        parts.push_back(fedkm::load_csv_matrix(file.string()));
    }
    if (parts.empty())
        throw std::runtime_error("no device_<i>.csv files found in " + dir);
    return parts;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

struct GenDataOpts {
    std::size_t blobs = 3;
    std::size_t dim = 2;
    std::size_t points_per_blob = 100;
    double stddev = 1.0;
    double box = 10.0;
    std::uint64_t seed = 0;
    std::string out;
    std::string labels_out;
};

void run_gen_data(const GenDataOpts& o) {
    const auto layout =
        fedkm::random_blob_layout(o.blobs, o.dim, o.points_per_blob, o.stddev, o.box, o.seed);
    std::vector<int> labels;
    const fedkm::Matrix data = fedkm::make_blobs(layout, o.seed + 1, &labels);
    fedkm::save_csv_matrix(o.out, data);
    if (!o.labels_out.empty()) fedkm::save_labels_csv(o.labels_out, labels);
    std::cout << "wrote " << data.rows << " points (dim " << data.cols << ", "
              << o.blobs << " blobs, stddev " << o.stddev << ") to " << o.out << "\n";
}

struct GenGraphOpts {
    std::size_t nodes = 0;
    std::string topology = "ring";
    double edge_prob = 0.3;
    bool ensure_connected = false;
    std::uint64_t seed = 0;
    std::string out;
};

void run_gen_graph(const GenGraphOpts& o) {
    const fedkm::Graph g =
        build_topology(o.topology, o.nodes, o.edge_prob, o.ensure_connected, o.seed);
    fedkm::save_graph_json(o.out, g);
    std::cout << "wrote " << o.topology << " graph: " << g.num_nodes() << " nodes, "
              << g.num_edges() << " edges, "
              << (g.is_connected() ? "connected" : "disconnected") << " -> " << o.out << "\n";
}

struct PartitionOpts {
    std::string data;
    std::size_t devices = 0;
    std::string mode = "iid";
    std::string labels;
    std::uint64_t seed = 0;
    std::string out_dir;
};

void run_partition(const PartitionOpts& o) {
    const fedkm::Matrix data = fedkm::load_csv_matrix(o.data);
    std::vector<fedkm::Matrix> parts;
    if (o.mode == "iid") {
        parts = fedkm::partition_iid(data, o.devices, o.seed);
    } else if (o.mode == "contiguous") {
        parts = fedkm::partition_contiguous(data, o.devices);
    } else if (o.mode == "by-label") {
        if (o.labels.empty())
            throw CLI::ValidationError("--labels", "required for --mode by-label");
        parts = fedkm::partition_by_label(data, fedkm::load_labels_csv(o.labels), o.devices);
    } else {
        throw CLI::ValidationError("--mode", "expected iid, contiguous or by-label");
    }
    fs::create_directories(o.out_dir);
    std::cout << "partitioned " << data.rows << " points (" << o.mode << ") into:";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const fs::path file = fs::path(o.out_dir) / ("device_" + std::to_string(i) + ".csv");
        fedkm::save_csv_matrix(file.string(), parts[i]);
        std::cout << " " << parts[i].rows;
    }
    std::cout << " -> " << o.out_dir << "/device_<i>.csv\n";
}

struct CentralizedOpts {
    std::string data;
    std::size_t clusters = 0;
    int max_iters = 100;
    double tol = 1e-6;
    int restarts = 10;
    std::string init = "kmeans++";
    std::uint64_t seed = 0;
    std::string centroids_out;
    std::string assignments_out;
    std::string report_out;
};

void run_centralized(const CentralizedOpts& o) {
    const fedkm::Matrix data = fedkm::load_csv_matrix(o.data);
    fedkm::LloydConfig cfg;
    cfg.num_clusters = o.clusters;
    cfg.max_iterations = o.max_iters;
    cfg.tolerance = o.tol;
    cfg.restarts = o.restarts;
    cfg.init = parse_init(o.init);
    cfg.seed = o.seed;
    const auto res = fedkm::lloyd_fit(data, cfg);
    std::cout << "centralized k-means: n=" << data.rows << " k=" << o.clusters
              << " cost=" << res.cost << " (mse " << res.cost / double(data.rows)
              << "), " << res.iterations << " iterations in best run\n";
    if (!o.centroids_out.empty()) fedkm::save_csv_matrix(o.centroids_out, res.centroids);
    if (!o.assignments_out.empty()) fedkm::save_labels_csv(o.assignments_out, res.labels);
    if (!o.report_out.empty()) {
        json report;
        report["num_points"] = data.rows;
        report["dim"] = data.cols;
        report["num_clusters"] = o.clusters;
        report["restarts"] = o.restarts;
        report["seed"] = o.seed;
        report["cost"] = res.cost;
        report["mse"] = res.cost / double(data.rows);
        report["iterations"] = res.iterations;
        write_json(o.report_out, report);
    }
}

struct RunOpts {
    std::string data_dir;
    std::string data;
    std::size_t devices = 0;
    std::string partition_mode = "iid";
    std::uint64_t partition_seed = 0;
    std::string graph_file;
    std::string topology;
    double edge_prob = 0.3;
    bool ensure_connected = false;
    std::uint64_t graph_seed = 0;
    std::size_t clusters = 0;
    double alpha = 1.0;
    int rounds = 50;
    int local_iters = 10;
    double local_tol = 1e-6;
    double shift_tol = 1e-8;
    std::string init = "kmeans++";
    std::uint64_t seed = 0;
    bool no_reverse_match = false;
    bool reference = false;
    int reference_restarts = 10;
    int log_every = 10;
    std::string out_dir;
};

void run_run(const RunOpts& o) {
    std::vector<fedkm::Matrix> parts;
    if (!o.data_dir.empty()) {
        parts = load_device_dir(o.data_dir);
    } else if (!o.data.empty()) {
        if (o.devices == 0)
            throw CLI::ValidationError("--devices", "required together with --data");
        const fedkm::Matrix data = fedkm::load_csv_matrix(o.data);
        if (o.partition_mode == "iid")
            parts = fedkm::partition_iid(data, o.devices, o.partition_seed);
        else if (o.partition_mode == "contiguous")
            parts = fedkm::partition_contiguous(data, o.devices);
        else
            throw CLI::ValidationError("--partition-mode", "expected iid or contiguous");
    } else {
        throw CLI::ValidationError("--data-dir", "either --data-dir or --data is required");
    }

    fedkm::Graph graph;
    if (!o.graph_file.empty()) {
        graph = fedkm::load_graph_json(o.graph_file);
        if (graph.num_nodes() != parts.size())
            throw std::runtime_error("graph has " + std::to_string(graph.num_nodes()) +
                                     " nodes but there are " + std::to_string(parts.size()) +
                                     " devices");
    } else if (!o.topology.empty()) {
        graph = build_topology(o.topology, parts.size(), o.edge_prob, o.ensure_connected,
                               o.graph_seed);
    } else {
        throw CLI::ValidationError("--graph", "either --graph or --topology is required");
    }

    fedkm::FederatedConfig cfg;
    cfg.num_clusters = o.clusters;
    cfg.alpha = o.alpha;
    cfg.max_rounds = o.rounds;
    cfg.local_iterations = o.local_iters;
    cfg.local_tolerance = o.local_tol;
    cfg.shift_tolerance = o.shift_tol;
    cfg.include_reverse_match = !o.no_reverse_match;
    cfg.init = parse_init(o.init);
    cfg.seed = o.seed;

    std::size_t total_points = 0;
    for (const auto& p : parts) total_points += p.rows;
    std::cout << "federated k-means: " << parts.size() << " devices, " << total_points
              << " points, k=" << o.clusters << ", alpha=" << o.alpha << ", graph "
              << graph.num_edges() << " edges ("
              << graph.num_components() << " component(s))\n";

    const auto res = fedkm::run_federated(parts, graph, cfg);
    for (const auto& stats : res.history) {
        const bool last = stats.round == res.rounds;
        if (stats.round % std::max(o.log_every, 1) == 0 || last)
            std::cout << "  round " << std::setw(4) << stats.round
                      << "  objective " << std::setw(12) << stats.objective
                      << "  gtv " << std::setw(12) << stats.total_variation
                      << "  shift " << stats.max_shift << "\n";
    }
    std::cout << (res.converged ? "converged" : "stopped") << " after " << res.rounds
              << " round(s)\n";

    const auto consensus = fedkm::consensus_stats(res.centroids, graph);
    const auto device_costs = fedkm::pooled_costs(parts, res.centroids);
    const double worst_cost = device_costs.empty()
                                  ? 0.0
                                  : *std::max_element(device_costs.begin(), device_costs.end());
    std::cout << "consensus: max edge discrepancy " << consensus.max_edge_discrepancy
              << ", mean " << consensus.mean_edge_discrepancy << "\n";
    std::cout << "pooled cost (worst device set): " << worst_cost << "\n";

    json out;
    out["config"] = {{"num_clusters", o.clusters},
                     {"alpha", o.alpha},
                     {"max_rounds", o.rounds},
                     {"local_iterations", o.local_iters},
                     {"local_tolerance", o.local_tol},
                     {"shift_tolerance", o.shift_tol},
                     {"include_reverse_match", !o.no_reverse_match},
                     {"init", o.init},
                     {"seed", o.seed}};
    out["graph"] = {{"num_nodes", graph.num_nodes()},
                    {"num_edges", graph.num_edges()},
                    {"connected", graph.is_connected()},
                    {"num_components", graph.num_components()}};
    out["devices"] = json::array();
    for (std::size_t i = 0; i < parts.size(); ++i)
        out["devices"].push_back({{"id", i}, {"points", parts[i].rows}});
    out["rounds"] = res.rounds;
    out["converged"] = res.converged;
    out["history"] = json::array();
    for (const auto& stats : res.history)
        out["history"].push_back({{"round", stats.round},
                                  {"objective", stats.objective},
                                  {"total_variation", stats.total_variation},
                                  {"max_shift", stats.max_shift}});
    out["metrics"] = {{"max_edge_discrepancy", consensus.max_edge_discrepancy},
                      {"mean_edge_discrepancy", consensus.mean_edge_discrepancy},
                      {"pooled_cost_per_device", device_costs},
                      {"pooled_cost_worst", worst_cost},
                      {"pooled_mse_worst",
                       total_points ? worst_cost / double(total_points) : 0.0}};

    if (o.reference) {
        fedkm::LloydConfig central;
        central.num_clusters = o.clusters;
        central.seed = o.seed;
        central.restarts = o.reference_restarts;
        const fedkm::Matrix pooled = fedkm::concat_rows(parts);
        const auto ref = fedkm::lloyd_fit(pooled, central);
        double worst_ratio = 0.0;
        double worst_discrepancy = 0.0;
        for (std::size_t i = 0; i < res.centroids.size(); ++i) {
            worst_ratio = std::max(worst_ratio, device_costs[i] / ref.cost);
            worst_discrepancy =
                std::max(worst_discrepancy,
                         fedkm::symmetric_discrepancy(res.centroids[i], ref.centroids));
        }
        std::cout << "centralized reference: cost " << ref.cost << ", worst device ratio "
                  << worst_ratio << ", worst centroid discrepancy " << worst_discrepancy
                  << "\n";
        out["reference"] = {{"cost", ref.cost},
                            {"restarts", o.reference_restarts},
                            {"worst_device_cost_ratio", worst_ratio},
                            {"worst_centroid_discrepancy", worst_discrepancy}};
    }

    fs::create_directories(o.out_dir);
    write_json((fs::path(o.out_dir) / "result.json").string(), out);
    for (std::size_t i = 0; i < res.centroids.size(); ++i) {
        const std::string tag = "device_" + std::to_string(i);
        fedkm::save_csv_matrix((fs::path(o.out_dir) / (tag + "_centroids.csv")).string(),
                               res.centroids[i]);
        fedkm::save_labels_csv((fs::path(o.out_dir) / (tag + "_assignments.csv")).string(),
                               res.assignments[i]);
    }
    std::cout << "results written to " << o.out_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Federated k-means clustering over a device graph"};
    app.require_subcommand(1);

    GenDataOpts gd;
    auto* gen_data = app.add_subcommand("gen-data", "Generate a synthetic gaussian-blob dataset");
    gen_data->add_option("--blobs", gd.blobs, "Number of blobs")->capture_default_str();
    gen_data->add_option("--dim", gd.dim, "Feature dimension")->capture_default_str();
    gen_data->add_option("--points-per-blob", gd.points_per_blob, "Points per blob")
        ->capture_default_str();
    gen_data->add_option("--stddev", gd.stddev, "Blob standard deviation")->capture_default_str();
    gen_data->add_option("--box", gd.box, "Half-width of the box centers are drawn from")
        ->capture_default_str();
    gen_data->add_option("--seed", gd.seed, "RNG seed")->capture_default_str();
    gen_data->add_option("--out", gd.out, "Output CSV")->required();
    gen_data->add_option("--labels-out", gd.labels_out, "Optional blob-label CSV");

    GenGraphOpts gg;
    auto* gen_graph = app.add_subcommand("gen-graph", "Generate a device graph");
    gen_graph->add_option("--nodes", gg.nodes, "Number of devices")->required();
    gen_graph->add_option("--topology", gg.topology,
                          "ring, complete, path, star or erdos-renyi")
        ->capture_default_str();
    gen_graph->add_option("--edge-prob", gg.edge_prob, "Edge probability (erdos-renyi)")
        ->capture_default_str();
    gen_graph->add_flag("--ensure-connected", gg.ensure_connected,
                        "Bridge components after sampling (erdos-renyi)");
    gen_graph->add_option("--seed", gg.seed, "RNG seed")->capture_default_str();
    gen_graph->add_option("--out", gg.out, "Output JSON")->required();

    PartitionOpts pa;
    auto* partition = app.add_subcommand("partition", "Split a dataset across devices");
    partition->add_option("--data", pa.data, "Input CSV")->required();
    partition->add_option("--devices", pa.devices, "Number of devices")->required();
    partition->add_option("--mode", pa.mode, "iid, contiguous or by-label")
        ->capture_default_str();
    partition->add_option("--labels", pa.labels, "Label CSV (for by-label)");
    partition->add_option("--seed", pa.seed, "RNG seed")->capture_default_str();
    partition->add_option("--out-dir", pa.out_dir, "Output directory")->required();

    CentralizedOpts ce;
    auto* centralized =
        app.add_subcommand("centralized", "Lloyd's k-means on a pooled dataset (baseline)");
    centralized->add_option("--data", ce.data, "Input CSV")->required();
    centralized->add_option("-k,--clusters", ce.clusters, "Number of clusters")->required();
    centralized->add_option("--max-iters", ce.max_iters, "Max Lloyd iterations")
        ->capture_default_str();
    centralized->add_option("--tol", ce.tol, "Relative cost-decrease tolerance")
        ->capture_default_str();
    centralized->add_option("--restarts", ce.restarts, "Seeded restarts, best kept")
        ->capture_default_str();
    centralized->add_option("--init", ce.init, "kmeans++ or random")->capture_default_str();
    centralized->add_option("--seed", ce.seed, "RNG seed")->capture_default_str();
    centralized->add_option("--centroids-out", ce.centroids_out, "Centroid CSV");
    centralized->add_option("--assignments-out", ce.assignments_out, "Assignment CSV");
    centralized->add_option("--report-out", ce.report_out, "Report JSON");

    RunOpts ru;
    auto* run = app.add_subcommand("run", "Run federated k-means over a device graph");
    run->add_option("--data-dir", ru.data_dir, "Directory of device_<i>.csv files");
    run->add_option("--data", ru.data, "Single CSV to partition on the fly");
    run->add_option("--devices", ru.devices, "Device count (with --data)");
    run->add_option("--partition-mode", ru.partition_mode, "iid or contiguous (with --data)")
        ->capture_default_str();
    run->add_option("--partition-seed", ru.partition_seed, "Partition RNG seed")
        ->capture_default_str();
    run->add_option("--graph", ru.graph_file, "Graph JSON file");
    run->add_option("--topology", ru.topology, "Generate the graph instead: ring, complete, ...");
    run->add_option("--edge-prob", ru.edge_prob, "Edge probability (erdos-renyi topology)")
        ->capture_default_str();
    run->add_flag("--ensure-connected", ru.ensure_connected, "Bridge graph components");
    run->add_option("--graph-seed", ru.graph_seed, "Graph RNG seed")->capture_default_str();
    run->add_option("-k,--clusters", ru.clusters, "Clusters per device")->required();
    run->add_option("--alpha", ru.alpha, "Coupling strength on graph edges")
        ->capture_default_str();
    run->add_option("--rounds", ru.rounds, "Max synchronous rounds")->capture_default_str();
    run->add_option("--local-iters", ru.local_iters, "Solver sweeps per device per round")
        ->capture_default_str();
    run->add_option("--local-tol", ru.local_tol, "Per-device early-break tolerance")
        ->capture_default_str();
    run->add_option("--shift-tol", ru.shift_tol, "Stop when no centroid moves more than this")
        ->capture_default_str();
    run->add_option("--init", ru.init, "kmeans++ or random")->capture_default_str();
    run->add_option("--seed", ru.seed, "RNG seed")->capture_default_str();
    run->add_flag("--no-reverse-match", ru.no_reverse_match,
                  "Drop the local-to-neighbor matching term");
    run->add_flag("--reference", ru.reference,
                  "Also fit centralized k-means on the pooled data and compare");
    run->add_option("--reference-restarts", ru.reference_restarts, "Restarts for the reference")
        ->capture_default_str();
    run->add_option("--log-every", ru.log_every, "Round log interval")->capture_default_str();
    run->add_option("--out-dir", ru.out_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_data->parsed()) run_gen_data(gd);
        if (gen_graph->parsed()) run_gen_graph(gg);
        if (partition->parsed()) run_partition(pa);
        if (centralized->parsed()) run_centralized(ce);
        if (run->parsed()) run_run(ru);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
