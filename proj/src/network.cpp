#include "ent/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace ent {

namespace {

std::string format_weight(double w, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, w);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

}  // namespace

MiGraph::MiGraph(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) {
        throw std::invalid_argument("graph needs at least one node");
    }
    std::set<std::string> seen;
    for (const auto& name : names_) {
        if (name.empty()) {
            throw std::invalid_argument("node names must be non-empty");
        }
        if (!seen.insert(name).second) {
            throw std::invalid_argument("duplicate node name '" + name + "'");
        }
    }
    const std::size_t g = names_.size();
    weights_.assign(g * g, 0.0);
    present_.assign(g * g, 1);
    for (std::size_t i = 0; i < g; ++i) {
        present_[cell(i, i)] = 0;  // no self loops
    }
}

MiGraph MiGraph::from_matrix(std::vector<std::string> names,
                             const std::vector<std::vector<double>>& weights) {
    MiGraph graph(std::move(names));
    const std::size_t g = graph.size();
    if (weights.size() != g) {
        throw std::invalid_argument("weight matrix does not match the node count");
    }
    for (std::size_t i = 0; i < g; ++i) {
        if (weights[i].size() != g) {
            throw std::invalid_argument("weight matrix must be square");
        }
        if (weights[i][i] != 0.0) {
            throw std::invalid_argument("weight matrix diagonal must be zero");
        }
    }
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i + 1; j < g; ++j) {
            if (weights[i][j] != weights[j][i]) {
                throw std::invalid_argument("weight matrix must be symmetric");
            }
            graph.set_weight(i, j, weights[i][j]);
        }
    }
    return graph;
}

std::size_t MiGraph::cell(std::size_t i, std::size_t j) const {
    return i * names_.size() + j;
}

void MiGraph::check_pair(std::size_t i, std::size_t j) const {
    if (i >= names_.size() || j >= names_.size()) {
        throw std::invalid_argument("node index out of range");
    }
    if (i == j) {
        throw std::invalid_argument("self loops are not representable");
    }
}

double MiGraph::weight(std::size_t i, std::size_t j) const {
    check_pair(i, j);
    return weights_[cell(i, j)];
}

bool MiGraph::present(std::size_t i, std::size_t j) const {
    check_pair(i, j);
    return present_[cell(i, j)] != 0;
}

double MiGraph::effective_weight(std::size_t i, std::size_t j) const {
    check_pair(i, j);
    return present_[cell(i, j)] ? weights_[cell(i, j)] : 0.0;
}

bool MiGraph::complete() const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        for (std::size_t j = i + 1; j < names_.size(); ++j) {
            if (!present_[cell(i, j)]) return false;
        }
    }
    return true;
}

void MiGraph::set_weight(std::size_t i, std::size_t j, double w) {
    check_pair(i, j);
    if (!std::isfinite(w) || w < 0.0) {
        throw std::invalid_argument("edge weights must be finite and nonnegative");
    }
    weights_[cell(i, j)] = w;
    weights_[cell(j, i)] = w;
}

void MiGraph::remove_edge(std::size_t i, std::size_t j) {
    check_pair(i, j);
    present_[cell(i, j)] = 0;
    present_[cell(j, i)] = 0;
}

MiGraph dpi_prune(const MiGraph& graph, double epsilon) {
    if (!std::isfinite(epsilon) || epsilon < 0.0) {
        throw std::invalid_argument("epsilon must be finite and nonnegative");
    }
    if (!graph.complete()) {
        throw std::invalid_argument("dpi pruning is defined on the complete, unpruned graph");
    }
    const std::size_t g = graph.size();
    std::vector<std::pair<std::size_t, std::size_t>> marked;
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i + 1; j < g; ++j) {
            for (std::size_t k = j + 1; k < g; ++k) {
                const double w_ij = graph.weight(i, j);
                const double w_ik = graph.weight(i, k);
                const double w_jk = graph.weight(j, k);
                // Remove the minimum only when it trails both rivals by more
                // than epsilon; a tie has no strict minimum and keeps all three.
                if (w_ik - w_ij > epsilon && w_jk - w_ij > epsilon) {
                    marked.emplace_back(i, j);
                } else if (w_ij - w_ik > epsilon && w_jk - w_ik > epsilon) {
                    marked.emplace_back(i, k);
                } else if (w_ij - w_jk > epsilon && w_ik - w_jk > epsilon) {
                    marked.emplace_back(j, k);
                }
            }
        }
    }
    MiGraph pruned = graph;
    for (const auto& [i, j] : marked) {
        pruned.remove_edge(i, j);
    }
    return pruned;
}

std::vector<Edge> nonzero_edges(const MiGraph& graph) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < graph.size(); ++i) {
        for (std::size_t j = i + 1; j < graph.size(); ++j) {
            if (graph.present(i, j) && graph.weight(i, j) > 0.0) {
                edges.push_back(Edge{graph.names()[i], graph.names()[j], graph.weight(i, j)});
            }
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        if (a.source != b.source) return a.source < b.source;
        return a.target < b.target;
    });
    return edges;
}

std::vector<std::pair<std::string, std::size_t>> degree_ranking(const MiGraph& graph) {
    std::vector<std::pair<std::string, std::size_t>> ranking;
    ranking.reserve(graph.size());
    for (std::size_t i = 0; i < graph.size(); ++i) {
        std::size_t degree = 0;
        for (std::size_t j = 0; j < graph.size(); ++j) {
            if (i == j) continue;
            if (graph.present(i, j) && graph.weight(i, j) > 0.0) ++degree;
        }
        ranking.emplace_back(graph.names()[i], degree);
    }
    std::stable_sort(ranking.begin(), ranking.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return ranking;
}

std::string export_graph(const MiGraph& graph, GraphFormat format, int precision) {
    if (precision < 0 || precision > 17) {
        throw std::invalid_argument("precision must lie in [0, 17]");
    }
    const std::size_t g = graph.size();
    std::string out;

    // Edges once, in index order; masked-out edges count as weight 0 and are
    // not emitted.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<char> covered(g, 0);
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i + 1; j < g; ++j) {
            if (graph.effective_weight(i, j) > 0.0) {
                edges.emplace_back(i, j);
                covered[i] = 1;
                covered[j] = 1;
            }
        }
    }

    switch (format) {
        case GraphFormat::Dot: {
            out += "graph {\n";
            for (const auto& [i, j] : edges) {
                out += "  \"" + graph.names()[i] + "\" -- \"" + graph.names()[j] +
                       "\" [weight=" + format_weight(graph.weight(i, j), precision) + "];\n";
            }
            for (std::size_t i = 0; i < g; ++i) {
                if (!covered[i]) {
                    out += "  \"" + graph.names()[i] + "\";\n";
                }
            }
            out += "}\n";
            return out;
        }
        case GraphFormat::GraphMl: {
            out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
            out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
            out += "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
            out += "  <graph edgedefault=\"undirected\">\n";
            for (std::size_t i = 0; i < g; ++i) {
                out += "    <node id=\"" + xml_escape(graph.names()[i]) + "\"/>\n";
            }
            for (const auto& [i, j] : edges) {
                out += "    <edge source=\"" + xml_escape(graph.names()[i]) + "\" target=\"" +
                       xml_escape(graph.names()[j]) + "\"><data key=\"weight\">" +
                       format_weight(graph.weight(i, j), precision) + "</data></edge>\n";
            }
            out += "  </graph>\n";
            out += "</graphml>\n";
            return out;
        }
        case GraphFormat::EdgeCsv: {
            out += "source,target,mi\n";
            for (const auto& [i, j] : edges) {
                out += csv_escape(graph.names()[i]) + "," + csv_escape(graph.names()[j]) + "," +
                       format_weight(graph.weight(i, j), precision) + "\n";
            }
            return out;
        }
    }
    throw std::invalid_argument("unknown graph format");
}

}  // namespace ent
