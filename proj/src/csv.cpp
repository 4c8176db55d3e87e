#include "ent/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <vector>

namespace ent {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

std::string strip(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double_field(const std::string& raw, const char* context) {
    const std::string field = strip(raw);
    if (field.empty()) {
        throw io_error(std::string("empty numeric field in ") + context);
    }
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw io_error(std::string("not a number in ") + context + ": '" + field + "'");
    }
    if (!std::isfinite(value)) {
        throw io_error(std::string("non-finite value in ") + context + ": '" + field + "'");
    }
    return value;
}

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(line);
    }
    // trailing blank lines are tolerated
    while (!lines.empty() && strip(lines.back()).empty()) {
        lines.pop_back();
    }
    return lines;
}

}  // namespace

CountVector read_counts(std::istream& in) {
    std::vector<std::int64_t> counts;
    std::string token;
    auto flush_token = [&] {
        if (token.empty()) return;
        std::int64_t value = 0;
        const char* begin = token.data();
        const char* end = begin + token.size();
        const auto result = std::from_chars(begin, end, value);
        if (result.ec != std::errc{} || result.ptr != end) {
            throw io_error("not an integer count: '" + token + "'");
        }
        if (value < 0) {
            throw io_error("negative count in input: " + token);
        }
        counts.push_back(value);
        token.clear();
    };
    char c;
    while (in.get(c)) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush_token();
        } else {
            token += c;
        }
    }
    flush_token();
    if (counts.empty()) {
        throw io_error("no counts found in input");
    }
    return CountVector(std::move(counts));
}

ExpressionMatrix read_expression_csv(std::istream& in, bool header_row) {
    std::vector<std::string> lines = read_lines(in);
    if (header_row && !lines.empty()) {
        lines.erase(lines.begin());
    }
    if (lines.empty()) {
        throw io_error("expression matrix is empty");
    }
    std::vector<std::string> names;
    std::vector<std::vector<double>> values;
    std::size_t columns = 0;
    for (std::size_t row = 0; row < lines.size(); ++row) {
        if (strip(lines[row]).empty()) {
            throw io_error("blank line inside expression matrix at row " + std::to_string(row + 1));
        }
        const auto fields = split_fields(lines[row]);
        if (fields.size() < 2) {
            throw io_error("expression row " + std::to_string(row + 1) +
                           " needs a name and at least one value");
        }
        if (columns == 0) {
            columns = fields.size();
        } else if (fields.size() != columns) {
            throw io_error("expression row " + std::to_string(row + 1) + " has " +
                           std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(columns));
        }
        const std::string name = strip(fields.front());
        if (name.empty()) {
            throw io_error("empty profile name at row " + std::to_string(row + 1));
        }
        names.push_back(name);
        std::vector<double> sample(fields.size() - 1);
        for (std::size_t f = 1; f < fields.size(); ++f) {
            sample[f - 1] = parse_double_field(
                fields[f], ("row " + std::to_string(row + 1)).c_str());
        }
        values.push_back(std::move(sample));
    }
    try {
        return ExpressionMatrix(std::move(names), std::move(values));
    } catch (const std::invalid_argument& e) {
        throw io_error(e.what());  // file-content problem, not caller misuse
    }
}

void write_discretized_csv(const DiscretizedMatrix& matrix, std::ostream& out) {
    out << "# levels=" << matrix.levels << "\n";
    for (std::size_t g = 0; g < matrix.rows.size(); ++g) {
        out << matrix.names[g];
        for (int bin : matrix.rows[g]) {
            out << ',' << bin;
        }
        out << "\n";
    }
}

void write_mi_matrix_csv(const MiGraph& graph, std::ostream& out, bool upper_only,
                         int precision) {
    char buf[64];
    out << "name";
    for (const auto& name : graph.names()) {
        out << ',' << name;
    }
    out << "\n";
    for (std::size_t i = 0; i < graph.size(); ++i) {
        out << graph.names()[i];
        for (std::size_t j = 0; j < graph.size(); ++j) {
            out << ',';
            if (i == j) {
                if (!upper_only) out << "0";
                continue;
            }
            if (upper_only && j < i) {
                continue;
            }
            std::snprintf(buf, sizeof buf, "%.*f", precision, graph.effective_weight(i, j));
            out << buf;
        }
        out << "\n";
    }
}

MiGraph read_edge_list_csv(std::istream& in) {
    std::vector<std::string> lines = read_lines(in);
    if (lines.empty()) {
        throw io_error("edge list is empty");
    }
    if (strip(lines.front()) != "source,target,mi") {
        throw io_error("edge list must start with the header 'source,target,mi'");
    }
    std::vector<std::string> names;
    std::map<std::string, std::size_t> index;
    auto node_index = [&](const std::string& name) {
        const auto found = index.find(name);
        if (found != index.end()) return found->second;
        const std::size_t i = names.size();
        names.push_back(name);
        index.emplace(name, i);
        return i;
    };
    struct RawEdge {
        std::size_t a;
        std::size_t b;
        double weight;
    };
    std::vector<RawEdge> edges;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const auto fields = split_fields(lines[row]);
        if (fields.size() != 3) {
            throw io_error("edge row " + std::to_string(row + 1) + " needs exactly 3 fields");
        }
        const std::string source = strip(fields[0]);
        const std::string target = strip(fields[1]);
        if (source.empty() || target.empty()) {
            throw io_error("edge row " + std::to_string(row + 1) + " has an empty endpoint");
        }
        if (source == target) {
            throw io_error("edge row " + std::to_string(row + 1) + " is a self loop");
        }
        const double weight =
            parse_double_field(fields[2], ("edge row " + std::to_string(row + 1)).c_str());
        if (weight < 0.0) {
            throw io_error("edge row " + std::to_string(row + 1) + " has a negative weight");
        }
        edges.push_back(RawEdge{node_index(source), node_index(target), weight});
    }
    if (names.empty()) {
        throw io_error("edge list contains no edges");
    }
    MiGraph graph(names);
    std::vector<char> assigned(names.size() * names.size(), 0);
    for (const auto& e : edges) {
        const std::size_t lo = std::min(e.a, e.b);
        const std::size_t hi = std::max(e.a, e.b);
        char& slot = assigned[lo * names.size() + hi];
        if (slot) {
            throw io_error("duplicate edge between '" + names[e.a] + "' and '" + names[e.b] + "'");
        }
        slot = 1;
        graph.set_weight(e.a, e.b, e.weight);
    }
    return graph;
}

}  // namespace ent
