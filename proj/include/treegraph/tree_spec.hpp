#pragma once
// TreeSpec: a declarative description of one tree-shaped substructure.
//
// Orientation says which way the stored edges point relative to the
// hierarchy: ChildToParent for reply/part-of style data (the edge goes from
// the child up to its parent), ParentToChild for contains style data.

#include <iosfwd>
#include <set>
#include <string>

#include "treegraph/graph.hpp"

namespace treegraph {

enum class Orientation { ChildToParent, ParentToChild };

enum class SiblingOrderKind { Insertion, ByProperty, ByNextEdge };

struct SiblingOrder {
    SiblingOrderKind kind = SiblingOrderKind::Insertion;
    std::string name;  // property name or next-edge label

    static SiblingOrder insertion() { return {}; }
    static SiblingOrder by_property(std::string prop) {
        return {SiblingOrderKind::ByProperty, std::move(prop)};
    }
    static SiblingOrder by_next_edge(std::string label) {
        return {SiblingOrderKind::ByNextEdge, std::move(label)};
    }
};

// Which nodes participate: all of them, or any node carrying at least one
// of the given labels.
struct NodeScope {
    bool any = true;
    std::set<std::string> labels;

    static NodeScope any_node() { return {}; }
    static NodeScope with_labels(std::set<std::string> ls) { return {false, std::move(ls)}; }

    bool contains(const Node& n) const {
        if (any) return true;
        for (const auto& l : n.labels)
            if (labels.count(l)) return true;
        return false;
    }
};

struct TreeSpec {
    std::set<std::string> edge_labels;
    NodeScope scope;
    Orientation orientation = Orientation::ChildToParent;
    SiblingOrder sibling_order;
    std::set<std::string> parent_required;  // node labels that must have a parent

    bool has_edge_label(const std::string& l) const { return edge_labels.count(l) != 0; }
    bool requires_parent(const Node& n) const {
        for (const auto& l : n.labels)
            if (parent_required.count(l)) return true;
        return false;
    }

    // The tree-parent endpoint of a spec edge under this orientation.
    NodeId parent_of_edge(const Edge& e) const {
        return orientation == Orientation::ChildToParent ? e.dst : e.src;
    }
    NodeId child_of_edge(const Edge& e) const {
        return orientation == Orientation::ChildToParent ? e.src : e.dst;
    }

    void validate() const;  // throws Error on an ill-formed spec
};

// Key/value config document, one `key = value` per line, `#` comments.
//
//   edge_labels = isSubclassOf
//   scope = label:TagClass            # or: any
//   orientation = child_to_parent     # or: parent_to_child
//   sibling_order = insertion         # or: property:NAME / next_edge:LABEL
//   parent_required = Statement, Transaction
TreeSpec parse_tree_spec(std::istream& in);
TreeSpec parse_tree_spec_file(const std::string& path);
std::string format_tree_spec(const TreeSpec& spec);
void save_tree_spec_file(const TreeSpec& spec, const std::string& path);

const char* orientation_name(Orientation o);

}  // namespace treegraph
