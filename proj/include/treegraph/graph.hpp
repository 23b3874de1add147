#pragma once
// In-memory labeled property graph.
//
// All edges are stored directed; undirected matching is a query-time concern
// (direction Both). Node and edge ids are dense integers assigned by the
// store. An external key, when loaded from CSV, is kept as the "node_id"
// property so queries can select nodes by a stable key.
//
// Concurrency: single writer / multiple readers. Mutations require exclusive
// access; all const operations are safe to run concurrently between mutations.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treegraph/error.hpp"
#include "treegraph/property.hpp"

namespace treegraph {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class Direction { Out, In, Both };

struct Node {
    NodeId id = 0;
    std::set<std::string> labels;
    PropertyMap properties;

    bool has_label(const std::string& l) const { return labels.count(l) != 0; }
};

struct Edge {
    EdgeId id = 0;
    NodeId src = 0;
    NodeId dst = 0;
    std::string label;
    PropertyMap properties;
};

class PropertyGraph {
public:
    NodeId add_node(std::set<std::string> labels, PropertyMap properties);

    // Throws UnknownNode if src or dst does not exist. Self-loops are
    // accepted here; forest verification rejects them later.
    EdgeId add_edge(NodeId src, NodeId dst, std::string label, PropertyMap properties);

    const Node& node(NodeId id) const;
    const Edge& edge(EdgeId id) const;
    bool has_node(NodeId id) const { return id < nodes_.size(); }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Adjacent nodes via one edge of `label` in `direction`, one entry per
    // edge, in edge insertion order. A self-loop is reported once for Both.
    std::vector<NodeId> neighbors(NodeId n, const std::string& label, Direction direction) const;

    // Edge ids incident to n under `label`, insertion-ordered.
    const std::vector<EdgeId>& out_edges(NodeId n, const std::string& label) const;
    const std::vector<EdgeId>& in_edges(NodeId n, const std::string& label) const;

    // First node whose `node_id` property equals `key` (insertion order).
    std::optional<NodeId> find_by_key(const PropertyValue& key) const;

    // External key of a node: its `node_id` property if present, else the
    // internal id. Used by CSV export and CLI output.
    std::string external_key(NodeId id) const;

    // Full consistency audit of the adjacency lists against the edge
    // collection. Returns a description of the first inconsistency, or
    // nullopt if the graph is consistent.
    std::optional<std::string> audit() const;

private:
    struct Adjacency {
        std::map<std::string, std::vector<EdgeId>> out;
        std::map<std::string, std::vector<EdgeId>> in;
    };

    void check_node(NodeId id) const;

    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<Adjacency> adj_;
};

}  // namespace treegraph
