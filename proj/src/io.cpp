#include "fedkm/io.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fedkm {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& token, double& out) {
    const std::string t = trim(token);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> tokens;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) tokens.push_back(token);
    return tokens;
}

}  // namespace

Matrix load_csv_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Matrix m;
    std::string line;
    std::size_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto tokens = split_csv_line(line);
        std::vector<double> row(tokens.size());
        bool ok = true;
        for (std::size_t j = 0; j < tokens.size(); ++j)
            if (!parse_double(tokens[j], row[j])) {
                ok = false;
                break;
            }
        if (!ok) {
            if (first_data_line) continue;  // header
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": malformed number");
        }
        if (first_data_line) {
            m.cols = row.size();
            first_data_line = false;
        } else if (row.size() != m.cols) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected " + std::to_string(m.cols) +
                                     " columns, got " + std::to_string(row.size()));
        }
        m.values.insert(m.values.end(), row.begin(), row.end());
        ++m.rows;
    }
    return m;
}

void save_csv_matrix(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) out << ',';
            out << m(i, j);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<int> load_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<int> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        double v = 0.0;
        if (!parse_double(t, v)) {
            if (labels.empty() && line_no == 1) continue;  // header
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": malformed label");
        }
        labels.push_back(static_cast<int>(v));
    }
    return labels;
}

void save_labels_csv(const std::string& path, const std::vector<int>& labels) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (int l : labels) out << l << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

Graph load_graph_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": invalid JSON: " + e.what());
    }
    if (!j.contains("num_nodes") || !j.contains("edges"))
        throw std::runtime_error(path + ": graph JSON needs num_nodes and edges");
    Graph g(j.at("num_nodes").get<std::size_t>());
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::runtime_error(path + ": each edge must be a [a, b] pair");
        g.add_edge(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    }
    return g;
}

void save_graph_json(const std::string& path, const Graph& graph) {
    nlohmann::json j;
    j["num_nodes"] = graph.num_nodes();
    auto& edges = j["edges"] = nlohmann::json::array();
    for (const auto& [a, b] : graph.edges()) edges.push_back({a, b});
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fedkm
