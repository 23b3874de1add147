#include "treegraph/graph.hpp"

#include <algorithm>

namespace treegraph {

namespace {
const std::vector<EdgeId> kNoEdges;
}

NodeId PropertyGraph::add_node(std::set<std::string> labels, PropertyMap properties) {
    NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Node{id, std::move(labels), std::move(properties)});
    adj_.emplace_back();
    return id;
}

EdgeId PropertyGraph::add_edge(NodeId src, NodeId dst, std::string label,
                               PropertyMap properties) {
    check_node(src);
    check_node(dst);
    EdgeId id = static_cast<EdgeId>(edges_.size());
    adj_[src].out[label].push_back(id);
    adj_[dst].in[label].push_back(id);
    edges_.push_back(Edge{id, src, dst, std::move(label), std::move(properties)});
    return id;
}

const Node& PropertyGraph::node(NodeId id) const {
    check_node(id);
    return nodes_[id];
}

const Edge& PropertyGraph::edge(EdgeId id) const {
    if (id >= edges_.size()) throw UnknownEdge("no edge with id " + std::to_string(id));
    return edges_[id];
}

void PropertyGraph::check_node(NodeId id) const {
    if (id >= nodes_.size()) throw UnknownNode("no node with id " + std::to_string(id));
}

const std::vector<EdgeId>& PropertyGraph::out_edges(NodeId n, const std::string& label) const {
    check_node(n);
    auto it = adj_[n].out.find(label);
    return it == adj_[n].out.end() ? kNoEdges : it->second;
}

const std::vector<EdgeId>& PropertyGraph::in_edges(NodeId n, const std::string& label) const {
    check_node(n);
    auto it = adj_[n].in.find(label);
    return it == adj_[n].in.end() ? kNoEdges : it->second;
}

std::vector<NodeId> PropertyGraph::neighbors(NodeId n, const std::string& label,
                                             Direction direction) const {
    check_node(n);
    std::vector<NodeId> result;
    if (direction == Direction::Out) {
        for (EdgeId e : out_edges(n, label)) result.push_back(edges_[e].dst);
        return result;
    }
    if (direction == Direction::In) {
        for (EdgeId e : in_edges(n, label)) result.push_back(edges_[e].src);
        return result;
    }
    // Both: merge by edge id so the order stays the global insertion order;
    // a self-loop sits in both lists but is one edge, so dedupe by id.
    const auto& out = out_edges(n, label);
    const auto& in = in_edges(n, label);
    std::vector<EdgeId> ids;
    ids.reserve(out.size() + in.size());
    ids.insert(ids.end(), out.begin(), out.end());
    ids.insert(ids.end(), in.begin(), in.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (EdgeId e : ids) {
        const Edge& ed = edges_[e];
        result.push_back(ed.src == n ? ed.dst : ed.src);
    }
    return result;
}

std::optional<NodeId> PropertyGraph::find_by_key(const PropertyValue& key) const {
    for (const Node& n : nodes_) {
        auto it = n.properties.find("node_id");
        if (it != n.properties.end() && it->second == key) return n.id;
    }
    return std::nullopt;
}

std::string PropertyGraph::external_key(NodeId id) const {
    const Node& n = node(id);
    auto it = n.properties.find("node_id");
    if (it != n.properties.end()) return it->second.to_string();
    return std::to_string(id);
}

std::optional<std::string> PropertyGraph::audit() const {
    if (adj_.size() != nodes_.size()) return "adjacency table size mismatch";
    std::size_t listed = 0;
    for (NodeId n = 0; n < nodes_.size(); ++n) {
        for (const auto& [label, ids] : adj_[n].out) {
            for (EdgeId e : ids) {
                if (e >= edges_.size()) return "out list references unknown edge";
                const Edge& ed = edges_[e];
                if (ed.src != n || ed.label != label)
                    return "edge " + std::to_string(e) + " misplaced in out list of node " +
                           std::to_string(n);
                ++listed;
            }
        }
        for (const auto& [label, ids] : adj_[n].in) {
            for (EdgeId e : ids) {
                if (e >= edges_.size()) return "in list references unknown edge";
                const Edge& ed = edges_[e];
                if (ed.dst != n || ed.label != label)
                    return "edge " + std::to_string(e) + " misplaced in in list of node " +
                           std::to_string(n);
            }
        }
    }
    if (listed != edges_.size())
        return "out lists cover " + std::to_string(listed) + " of " +
               std::to_string(edges_.size()) + " edges";
    // Every edge must appear exactly once in its src out list and dst in list.
    for (const Edge& ed : edges_) {
        const auto& out = out_edges(ed.src, ed.label);
        const auto& in = in_edges(ed.dst, ed.label);
        if (std::count(out.begin(), out.end(), ed.id) != 1)
            return "edge " + std::to_string(ed.id) + " not exactly once in src out list";
        if (std::count(in.begin(), in.end(), ed.id) != 1)
            return "edge " + std::to_string(ed.id) + " not exactly once in dst in list";
    }
    return std::nullopt;
}

}  // namespace treegraph
