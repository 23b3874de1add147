#include "treegraph/csv.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace treegraph {

namespace csv {

std::vector<Row> read_all(std::istream& in) {
    std::vector<Row> rows;
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = data.size();
    while (i < n) {
        Row row;
        row.line = line;
        bool row_done = false;
        while (!row_done) {
            Field f;
            if (i < n && data[i] == '"') {
                f.quoted = true;
                ++i;
                for (;;) {
                    if (i >= n) throw ParseError(line, "unterminated quoted field");
                    char c = data[i];
                    if (c == '"') {
                        if (i + 1 < n && data[i + 1] == '"') {
                            f.text.push_back('"');
                            i += 2;
                        } else {
                            ++i;
                            break;
                        }
                    } else {
                        if (c == '\n') ++line;
                        f.text.push_back(c);
                        ++i;
                    }
                }
                if (i < n && data[i] != ',' && data[i] != '\n' && data[i] != '\r')
                    throw ParseError(line, "garbage after closing quote");
            } else {
                while (i < n && data[i] != ',' && data[i] != '\n' && data[i] != '\r')
                    f.text.push_back(data[i++]);
            }
            row.fields.push_back(std::move(f));
            if (i >= n) {
                row_done = true;
            } else if (data[i] == ',') {
                ++i;
            } else {
                // \n or \r\n
                if (data[i] == '\r' && i + 1 < n && data[i + 1] == '\n') ++i;
                ++i;
                ++line;
                row_done = true;
            }
        }
        // A lone trailing newline produces an empty single-field row; drop it.
        if (row.fields.size() == 1 && row.fields[0].text.empty() && !row.fields[0].quoted &&
            i >= n)
            break;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string escape(const std::string& field, bool force_quotes) {
    bool need = force_quotes || field.find_first_of(",\"\n\r") != std::string::npos;
    if (!need) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace csv

namespace {

struct PropColumn {
    std::string name;
    std::string type;
};

// Parses "prop:NAME:TYPE" header cells after the fixed columns.
std::vector<PropColumn> parse_prop_columns(const csv::Row& header, std::size_t fixed) {
    std::vector<PropColumn> cols;
    for (std::size_t c = fixed; c < header.fields.size(); ++c) {
        const std::string& h = header.fields[c].text;
        if (h.rfind("prop:", 0) != 0)
            throw ParseError(header.line, "expected prop:NAME:TYPE column, got '" + h + "'");
        std::size_t colon = h.rfind(':');
        if (colon <= 5) throw ParseError(header.line, "malformed property column '" + h + "'");
        cols.push_back({h.substr(5, colon - 5), h.substr(colon + 1)});
    }
    return cols;
}

std::set<std::string> split_labels(const std::string& s) {
    std::set<std::string> labels;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t semi = s.find(';', start);
        std::string part =
            semi == std::string::npos ? s.substr(start) : s.substr(start, semi - start);
        if (!part.empty()) labels.insert(part);
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return labels;
}

// External keys are ints when they look like canonical integers, strings
// otherwise, so that "304" round-trips as a number but "about" stays text.
PropertyValue parse_key(const std::string& text) {
    if (text.empty()) return PropertyValue(std::string());
    std::size_t i = text[0] == '-' ? 1 : 0;
    bool canonical = i < text.size();
    if (text.size() - i > 1 && text[i] == '0') canonical = false;
    for (std::size_t j = i; canonical && j < text.size(); ++j)
        if (text[j] < '0' || text[j] > '9') canonical = false;
    if (canonical && text.size() <= 19) {
        try {
            return PropertyValue(static_cast<std::int64_t>(std::stoll(text)));
        } catch (const std::exception&) {
        }
    }
    return PropertyValue(text);
}

void read_props(const csv::Row& row, std::size_t fixed, const std::vector<PropColumn>& cols,
                PropertyMap& out) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (fixed + c >= row.fields.size()) break;
        const csv::Field& f = row.fields[fixed + c];
        if (f.text.empty() && !f.quoted) continue;  // absent
        PropertyValue v = [&] {
            try {
                return PropertyValue::parse(f.text, cols[c].type);
            } catch (const Error& e) {
                throw ParseError(row.line, e.what());
            }
        }();
        if (!out.emplace(cols[c].name, std::move(v)).second)
            throw ParseError(row.line, "duplicate value for property '" + cols[c].name + "'");
    }
}

}  // namespace

PropertyGraph load_graph_csv(std::istream& nodes_in, std::istream& edges_in) {
    PropertyGraph g;

    auto node_rows = csv::read_all(nodes_in);
    if (node_rows.empty()) throw ParseError(1, "nodes file has no header");
    const csv::Row& nh = node_rows[0];
    if (nh.fields.size() < 2 || nh.fields[0].text != "node_id" || nh.fields[1].text != "labels")
        throw ParseError(nh.line, "nodes header must start with node_id,labels");
    auto node_cols = parse_prop_columns(nh, 2);

    std::unordered_map<std::string, NodeId> key_to_id;
    for (std::size_t r = 1; r < node_rows.size(); ++r) {
        const csv::Row& row = node_rows[r];
        if (row.fields.size() < 2)
            throw ParseError(row.line, "node row needs node_id and labels columns");
        const std::string& key = row.fields[0].text;
        PropertyMap props;
        props.emplace("node_id", parse_key(key));
        read_props(row, 2, node_cols, props);
        NodeId id = g.add_node(split_labels(row.fields[1].text), std::move(props));
        if (!key_to_id.emplace(key, id).second)
            throw ParseError(row.line, "duplicate node_id '" + key + "'");
    }

    auto edge_rows = csv::read_all(edges_in);
    if (edge_rows.empty()) throw ParseError(1, "edges file has no header");
    const csv::Row& eh = edge_rows[0];
    if (eh.fields.size() < 3 || eh.fields[0].text != "src" || eh.fields[1].text != "dst" ||
        eh.fields[2].text != "label")
        throw ParseError(eh.line, "edges header must start with src,dst,label");
    auto edge_cols = parse_prop_columns(eh, 3);

    for (std::size_t r = 1; r < edge_rows.size(); ++r) {
        const csv::Row& row = edge_rows[r];
        if (row.fields.size() < 3)
            throw ParseError(row.line, "edge row needs src,dst,label columns");
        auto src = key_to_id.find(row.fields[0].text);
        auto dst = key_to_id.find(row.fields[1].text);
        if (src == key_to_id.end())
            throw UnknownNode("edges row " + std::to_string(r) + " (line " +
                              std::to_string(row.line) + "): unknown src '" +
                              row.fields[0].text + "'");
        if (dst == key_to_id.end())
            throw UnknownNode("edges row " + std::to_string(r) + " (line " +
                              std::to_string(row.line) + "): unknown dst '" +
                              row.fields[1].text + "'");
        PropertyMap props;
        read_props(row, 3, edge_cols, props);
        g.add_edge(src->second, dst->second, row.fields[2].text, std::move(props));
    }
    return g;
}

PropertyGraph load_graph_csv_files(const std::string& nodes_path, const std::string& edges_path) {
    std::ifstream nf(nodes_path, std::ios::binary);
    if (!nf) throw Error("cannot open " + nodes_path);
    std::ifstream ef(edges_path, std::ios::binary);
    if (!ef) throw Error("cannot open " + edges_path);
    return load_graph_csv(nf, ef);
}

namespace {

std::string join_labels(const std::set<std::string>& labels) {
    std::string out;
    for (const auto& l : labels) {
        if (!out.empty()) out.push_back(';');
        out += l;
    }
    return out;
}

// Column set for one entity kind: (name, type) pairs in sorted order.
std::vector<PropColumn> collect_columns(const std::vector<PropertyMap*>& maps) {
    std::map<std::pair<std::string, std::string>, bool> seen;
    for (const auto* m : maps)
        for (const auto& [name, v] : *m) {
            if (name == "node_id") continue;
            seen[{name, PropertyValue::tag_name(v.tag())}] = true;
        }
    std::vector<PropColumn> cols;
    for (const auto& [k, _] : seen) cols.push_back({k.first, k.second});
    return cols;
}

void write_props(std::ostream& out, const PropertyMap& props,
                 const std::vector<PropColumn>& cols) {
    for (const auto& col : cols) {
        out << ',';
        auto it = props.find(col.name);
        if (it == props.end() || PropertyValue::tag_name(it->second.tag()) != col.type) continue;
        std::string text = it->second.to_string();
        out << csv::escape(text, text.empty());
    }
}

}  // namespace

void save_graph_csv(const PropertyGraph& g, std::ostream& nodes_out, std::ostream& edges_out) {
    std::vector<PropertyMap*> nmaps, emaps;
    for (const Node& n : g.nodes()) nmaps.push_back(const_cast<PropertyMap*>(&n.properties));
    for (const Edge& e : g.edges()) emaps.push_back(const_cast<PropertyMap*>(&e.properties));
    auto ncols = collect_columns(nmaps);
    auto ecols = collect_columns(emaps);

    nodes_out << "node_id,labels";
    for (const auto& c : ncols) nodes_out << ",prop:" << c.name << ':' << c.type;
    nodes_out << '\n';
    for (const Node& n : g.nodes()) {
        nodes_out << csv::escape(g.external_key(n.id)) << ','
                  << csv::escape(join_labels(n.labels));
        write_props(nodes_out, n.properties, ncols);
        nodes_out << '\n';
    }

    edges_out << "src,dst,label";
    for (const auto& c : ecols) edges_out << ",prop:" << c.name << ':' << c.type;
    edges_out << '\n';
    for (const Edge& e : g.edges()) {
        edges_out << csv::escape(g.external_key(e.src)) << ',' << csv::escape(g.external_key(e.dst))
                  << ',' << csv::escape(e.label);
        write_props(edges_out, e.properties, ecols);
        edges_out << '\n';
    }
}

void save_graph_csv_files(const PropertyGraph& g, const std::string& nodes_path,
                          const std::string& edges_path) {
    std::ofstream nf(nodes_path, std::ios::binary);
    if (!nf) throw Error("cannot open " + nodes_path + " for writing");
    std::ofstream ef(edges_path, std::ios::binary);
    if (!ef) throw Error("cannot open " + edges_path + " for writing");
    save_graph_csv(g, nf, ef);
}

}  // namespace treegraph
