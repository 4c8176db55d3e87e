// Text input and output: count files, expression matrix CSV, discretized
// matrix CSV, MI matrix CSV, and edge list CSV. All file-content problems
// surface as io_error so callers can distinguish them from usage and
// numeric-domain failures.
#pragma once

#include "ent/mi.hpp"
#include "ent/network.hpp"
#include "ent/types.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace ent {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Nonnegative integers separated by commas, spaces or newlines.
CountVector read_counts(std::istream& in);

// First column profile name, remaining columns numeric samples. The optional
// header row is skipped when header_row is true.
ExpressionMatrix read_expression_csv(std::istream& in, bool header_row);

// One `# levels=K` line, then one `name,b1,...,bn` row per profile.
void write_discretized_csv(const DiscretizedMatrix& matrix, std::ostream& out);

// Square matrix with a name header row and column. upper_only leaves the
// diagonal and lower triangle empty; otherwise the matrix is filled
// symmetrically with zeros on the diagonal. Masked-out edges print as 0.
void write_mi_matrix_csv(const MiGraph& graph, std::ostream& out, bool upper_only,
                         int precision = 6);

// Inverse of export_graph(EdgeCsv): header `source,target,mi`, one edge per
// row. Nodes appear in first-seen order.
MiGraph read_edge_list_csv(std::istream& in);

}  // namespace ent
