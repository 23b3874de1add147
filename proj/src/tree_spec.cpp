#include "treegraph/tree_spec.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace treegraph {

void TreeSpec::validate() const {
    if (edge_labels.empty()) throw Error("tree spec needs at least one edge label");
    if (sibling_order.kind == SiblingOrderKind::ByNextEdge &&
        edge_labels.count(sibling_order.name))
        throw Error("next-edge label '" + sibling_order.name +
                    "' must differ from the tree edge labels");
    if (sibling_order.kind != SiblingOrderKind::Insertion && sibling_order.name.empty())
        throw Error("sibling order needs a property name or edge label");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::set<std::string> split_list(const std::string& s) {
    std::set<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string part = trim(comma == std::string::npos ? s.substr(start)
                                                           : s.substr(start, comma - start));
        if (!part.empty()) out.insert(part);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

TreeSpec parse_tree_spec(std::istream& in) {
    TreeSpec spec;
    std::string line;
    std::size_t lineno = 0;
    bool saw_edge_labels = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (key == "edge_labels") {
            spec.edge_labels = split_list(value);
            saw_edge_labels = true;
        } else if (key == "scope") {
            if (value == "any") {
                spec.scope = NodeScope::any_node();
            } else if (value.rfind("label:", 0) == 0) {
                spec.scope = NodeScope::with_labels(split_list(value.substr(6)));
            } else if (value.rfind("labels:", 0) == 0) {
                spec.scope = NodeScope::with_labels(split_list(value.substr(7)));
            } else {
                throw ParseError(lineno, "scope must be 'any' or 'label:...'");
            }
        } else if (key == "orientation") {
            if (value == "child_to_parent") spec.orientation = Orientation::ChildToParent;
            else if (value == "parent_to_child") spec.orientation = Orientation::ParentToChild;
            else throw ParseError(lineno, "unknown orientation '" + value + "'");
        } else if (key == "sibling_order") {
            if (value == "insertion") spec.sibling_order = SiblingOrder::insertion();
            else if (value.rfind("property:", 0) == 0)
                spec.sibling_order = SiblingOrder::by_property(trim(value.substr(9)));
            else if (value.rfind("next_edge:", 0) == 0)
                spec.sibling_order = SiblingOrder::by_next_edge(trim(value.substr(10)));
            else throw ParseError(lineno, "unknown sibling_order '" + value + "'");
        } else if (key == "parent_required") {
            spec.parent_required = split_list(value);
        } else {
            throw ParseError(lineno, "unknown key '" + key + "'");
        }
    }
    if (!saw_edge_labels) throw ParseError(lineno, "missing edge_labels");
    spec.validate();
    return spec;
}

TreeSpec parse_tree_spec_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    return parse_tree_spec(f);
}

namespace {

std::string join(const std::set<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += ", ";
        out += s;
    }
    return out;
}

}  // namespace

std::string format_tree_spec(const TreeSpec& spec) {
    std::ostringstream out;
    out << "edge_labels = " << join(spec.edge_labels) << '\n';
    if (spec.scope.any) out << "scope = any\n";
    else out << "scope = labels:" << join(spec.scope.labels) << '\n';
    out << "orientation = " << orientation_name(spec.orientation) << '\n';
    switch (spec.sibling_order.kind) {
        case SiblingOrderKind::Insertion:
            out << "sibling_order = insertion\n";
            break;
        case SiblingOrderKind::ByProperty:
            out << "sibling_order = property:" << spec.sibling_order.name << '\n';
            break;
        case SiblingOrderKind::ByNextEdge:
            out << "sibling_order = next_edge:" << spec.sibling_order.name << '\n';
            break;
    }
    if (!spec.parent_required.empty())
        out << "parent_required = " << join(spec.parent_required) << '\n';
    return out.str();
}

void save_tree_spec_file(const TreeSpec& spec, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << format_tree_spec(spec);
}

const char* orientation_name(Orientation o) {
    return o == Orientation::ChildToParent ? "child_to_parent" : "parent_to_child";
}

}  // namespace treegraph
