#pragma once
// Forest: the verified parent/children overlay extracted from a graph for
// one TreeSpec. Verification returns violations as values, not exceptions;
// finding a cycle is an expected outcome.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "treegraph/graph.hpp"
#include "treegraph/tree_spec.hpp"

namespace treegraph {

using TreeId = std::uint32_t;

struct Violation {
    enum class Kind { Cycle, MultiParent, MissingParent };

    Kind kind;
    NodeId node = 0;              // MultiParent / MissingParent subject
    std::vector<NodeId> parents;  // MultiParent: the offending parents
    std::vector<NodeId> cycle;    // Cycle: c[i]'s parent is c[i+1], last wraps to first

    std::string describe(const PropertyGraph& g) const;
};

// Insertion position for attach: last child, or before a given sibling.
struct InsertPos {
    bool last = true;
    NodeId before = 0;

    static InsertPos last_child() { return {}; }
    static InsertPos before_sibling(NodeId sibling) { return {false, sibling}; }
};

class Forest {
public:
    Forest() = default;
    explicit Forest(TreeSpec spec) : spec_(std::move(spec)) {}

    const TreeSpec& spec() const { return spec_; }

    bool contains(NodeId n) const { return tree_id_.count(n) != 0; }
    std::optional<NodeId> parent_of(NodeId n) const;
    const std::vector<NodeId>& children_of(NodeId n) const;
    TreeId tree_of(NodeId n) const;  // throws Error if n not in the forest

    const std::vector<NodeId>& roots() const { return roots_; }
    std::size_t size() const { return tree_id_.size(); }
    std::size_t tree_count() const { return roots_.size(); }

    // Subtree of a in depth-first sibling order, a included.
    std::vector<NodeId> subtree(NodeId a) const;

    // Overlay mutators. These keep parent/children/roots/tree ids
    // consistent but know nothing about encodings; the structural index
    // layers its bookkeeping on top of them.
    void attach(NodeId parent, InsertPos pos, NodeId node);
    void remove_subtree(NodeId a);
    void detach_subtree(NodeId a);  // a becomes the root of a new last tree

    // Used by verify_forest to assemble a checked overlay.
    struct Builder;

private:
    void renumber_trees_from(std::size_t first_root_index);

    TreeSpec spec_;
    std::unordered_map<NodeId, NodeId> parent_;
    std::unordered_map<NodeId, std::vector<NodeId>> children_;
    std::unordered_map<NodeId, TreeId> tree_id_;
    std::vector<NodeId> roots_;
};

using VerifyResult = std::variant<Forest, Violation>;

// Checks that the spec's edges over the scoped nodes form a forest under the
// spec orientation. Violation precedence when several exist: MultiParent
// (lowest node id first), then Cycle, then MissingParent.
VerifyResult verify_forest(const PropertyGraph& g, const TreeSpec& spec);

inline bool verified(const VerifyResult& r) { return std::holds_alternative<Forest>(r); }
inline const Forest& forest_of(const VerifyResult& r) { return std::get<Forest>(r); }
inline const Violation& violation_of(const VerifyResult& r) { return std::get<Violation>(r); }

struct StatLine {
    std::size_t count = 0;  // population size
    std::uint64_t min = 0;
    std::uint64_t max = 0;
    double median = 0.0;
};

struct ForestStats {
    std::size_t n_trees = 0;
    StatLine size;    // per tree, node count
    StatLine depth;   // per tree, max root-to-leaf edge count
    StatLine fanout;  // per internal node, child count; leaves excluded
};

ForestStats forest_stats(const Forest& f);

std::string format_forest_stats(const ForestStats& s);

}  // namespace treegraph
