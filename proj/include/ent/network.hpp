// Association graphs over named nodes, the data-processing-inequality
// pruning rule, and deterministic text exports.
#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ent {

// Undirected weighted graph with an edge-present mask. Construction gives a
// complete graph with all weights zero; pruning clears mask bits but keeps
// the weights, and exports report masked-out edges as weight 0.
class MiGraph {
public:
    explicit MiGraph(std::vector<std::string> names);
    static MiGraph from_matrix(std::vector<std::string> names,
                               const std::vector<std::vector<double>>& weights);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    double weight(std::size_t i, std::size_t j) const;            // stored weight
    bool present(std::size_t i, std::size_t j) const;
    double effective_weight(std::size_t i, std::size_t j) const;  // 0 when masked out
    bool complete() const;

    void set_weight(std::size_t i, std::size_t j, double w);
    void remove_edge(std::size_t i, std::size_t j);

private:
    std::size_t cell(std::size_t i, std::size_t j) const;
    void check_pair(std::size_t i, std::size_t j) const;

    std::vector<std::string> names_;
    std::vector<double> weights_;
    std::vector<char> present_;
};

struct Edge {
    std::string source;
    std::string target;
    double weight = 0.0;
};

// Two-phase DPI pruning: over every unordered triplet of the complete input
// graph, mark the minimum edge for removal when it is smaller than both
// other edges by more than epsilon, then sweep all marks at once. Ties keep
// their edges. The input must be complete (unpruned); a second pass over a
// pruned graph is not defined.
MiGraph dpi_prune(const MiGraph& graph, double epsilon = 0.0);

// Present edges with positive weight, sorted by descending weight, ties by
// lexicographic (source, target) pair.
std::vector<Edge> nonzero_edges(const MiGraph& graph);

// Nodes with their surviving-edge degree, sorted by descending degree;
// ties keep the input node order.
std::vector<std::pair<std::string, std::size_t>> degree_ranking(const MiGraph& graph);

enum class GraphFormat { Dot, GraphMl, EdgeCsv };

// Deterministic serialization: nodes in input order, undirected edges
// emitted once in index order, weights with `precision` decimal places.
std::string export_graph(const MiGraph& graph, GraphFormat format, int precision = 6);

}  // namespace ent
