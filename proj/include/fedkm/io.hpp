#ifndef FEDKM_IO_HPP
#define FEDKM_IO_HPP

#include <string>
#include <vector>

#include "fedkm/graph.hpp"
#include "fedkm/matrix.hpp"

namespace fedkm {

// Plain numeric CSV, one point per row. An initial non-numeric line is
// treated as a header and skipped; blank lines are ignored. Throws
// std::runtime_error (with the line number) on ragged or malformed rows.
Matrix load_csv_matrix(const std::string& path);

// Full round-trip precision (17 significant digits).
void save_csv_matrix(const std::string& path, const Matrix& m);

std::vector<int> load_labels_csv(const std::string& path);
void save_labels_csv(const std::string& path, const std::vector<int>& labels);

// Graph files are JSON: {"num_nodes": n, "edges": [[a, b], ...]}.
Graph load_graph_json(const std::string& path);
void save_graph_json(const std::string& path, const Graph& graph);

}  // namespace fedkm

#endif  // FEDKM_IO_HPP
