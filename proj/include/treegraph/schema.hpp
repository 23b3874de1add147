#pragma once
// Schema inference and tree-candidate detection.
//
// Nodes sharing one label set form a node type; edges sharing (label,
// src type, dst type) form an edge type. Cardinalities are observed tight
// bounds over the instance, counting nodes of the type with zero such edges.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treegraph/forest.hpp"
#include "treegraph/graph.hpp"
#include "treegraph/tree_spec.hpp"

namespace treegraph {

struct NodeType {
    std::set<std::string> labels;  // empty set = the distinguished unlabeled type

    bool operator==(const NodeType& o) const { return labels == o.labels; }
    bool operator<(const NodeType& o) const { return labels < o.labels; }
    std::string display() const;
};

struct Cardinality {
    std::uint64_t min = 0;
    std::optional<std::uint64_t> max;  // nullopt = unbounded (declared schemas only)

    std::string display() const;
};

struct EdgeType {
    std::string label;
    std::size_t src_type = 0;  // index into SchemaGraph::node_types
    std::size_t dst_type = 0;
    Cardinality out_card;  // per src-type node: outgoing edges of this type
    Cardinality in_card;   // per dst-type node: incoming edges of this type
};

struct SchemaGraph {
    std::vector<NodeType> node_types;
    std::vector<EdgeType> edge_types;
    std::vector<std::size_t> nodes_per_type;   // instance node count per node type
    std::vector<std::size_t> edges_per_type;   // instance edge count per edge type

    std::optional<std::size_t> find_node_type(const std::set<std::string>& labels) const;
};

SchemaGraph infer_schema(const PropertyGraph& g);

std::string format_schema(const SchemaGraph& s);

// A maximal edge-label set that could form a tree per the schema, with the
// orientation that made the cardinalities work out.
struct TreeCandidate {
    TreeSpec spec;
    bool schema_sufficient = false;     // type-level parent graph acyclic: tree guaranteed
    bool needs_instance_check = false;  // cycles possible, confirm on the instance
};

struct CandidateScan {
    std::vector<TreeCandidate> candidates;
    // Self-typed edge labels whose both-side max cardinality is <= 1: linked
    // lists rather than branching trees. Reported separately, not as specs.
    std::vector<std::string> sequence_hints;
};

CandidateScan find_tree_candidates(const SchemaGraph& s);

}  // namespace treegraph
