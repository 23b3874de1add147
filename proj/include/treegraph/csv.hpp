#pragma once
// Graph import/export in the two-file CSV layout.
//
// nodes file:  node_id,labels,prop:NAME:TYPE,...
// edges file:  src,dst,label,prop:NAME:TYPE,...
//
// Labels are `;`-separated. TYPE is one of int, float, str, bool. Fields are
// `,`-delimited, `"`-quoted, UTF-8. The node_id column is an external key;
// it is preserved as the "node_id" property and edge endpoints reference it.
// An empty unquoted cell means "property absent"; a quoted "" cell is an
// empty string value.

#include <iosfwd>
#include <string>
#include <vector>

#include "treegraph/graph.hpp"

namespace treegraph {

PropertyGraph load_graph_csv(std::istream& nodes_in, std::istream& edges_in);
PropertyGraph load_graph_csv_files(const std::string& nodes_path, const std::string& edges_path);

void save_graph_csv(const PropertyGraph& g, std::ostream& nodes_out, std::ostream& edges_out);
void save_graph_csv_files(const PropertyGraph& g, const std::string& nodes_path,
                          const std::string& edges_path);

namespace csv {

// One parsed field; `quoted` distinguishes an absent value from "".
struct Field {
    std::string text;
    bool quoted = false;
};

struct Row {
    std::vector<Field> fields;
    std::size_t line = 0;  // 1-based line the row started on
};

// Reads the entire stream. Handles quoted fields with embedded delimiters,
// doubled quotes and newlines. Throws ParseError on malformed quoting.
std::vector<Row> read_all(std::istream& in);

std::string escape(const std::string& field, bool force_quotes = false);

}  // namespace csv

}  // namespace treegraph
