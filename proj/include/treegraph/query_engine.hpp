#pragma once
// The benchmark queries under three plan families.
//
//   BaselineTraversal  BFS/chain walks over adjacency lists, Neo4j style.
//   BaselineJoin       per hop, a full scan of the edge list joined with
//                      the frontier; no adjacency access. Emulates a
//                      relational structural join; the pass counter is
//                      exposed in the result.
//   IndexPrePost/Dewey delegate to the structural index.
//
// Timing covers query execution only. Start nodes arrive already resolved
// and scope bitmaps are set up before the timer starts, so plan differences
// come from the tree traversal itself. Queries are read-only; the limits
// deadline makes long baseline runs abort with timed_out set.

#include <chrono>
#include <optional>
#include <vector>

#include "treegraph/forest.hpp"
#include "treegraph/graph.hpp"
#include "treegraph/structural_index.hpp"
#include "treegraph/tree_spec.hpp"

namespace treegraph {

enum class PlanKind { BaselineTraversal, BaselineJoin, IndexPrePost, IndexDewey };

const char* plan_name(PlanKind p);
std::optional<PlanKind> plan_from_name(const std::string& name);

inline bool is_index_plan(PlanKind p) {
    return p == PlanKind::IndexPrePost || p == PlanKind::IndexDewey;
}
inline Codec plan_codec(PlanKind p) {
    return p == PlanKind::IndexDewey ? Codec::Dewey : Codec::PrePost;
}

struct QueryResult {
    std::vector<NodeId> nodes;     // deduplicated, discovery order
    std::optional<bool> related;   // q_anc_desc verdict
    std::chrono::nanoseconds elapsed{0};
    PlanKind plan = PlanKind::BaselineTraversal;
    std::size_t join_passes = 0;   // edge-list scans performed (BaselineJoin)
    bool timed_out = false;
};

struct RunLimits {
    std::optional<std::chrono::steady_clock::time_point> deadline;

    static RunLimits none() { return {}; }
    static RunLimits timeout(std::chrono::nanoseconds budget) {
        return RunLimits{std::chrono::steady_clock::now() + budget};
    }
};

// All strict descendants of start.
QueryResult q_desc(const PropertyGraph& g, const TreeSpec& spec, const StructuralIndex* idx,
                   NodeId start, PlanKind plan, const RunLimits& limits = {});

// Leaves of start's subtree; a leaf start yields the empty set.
QueryResult q_leaf(const PropertyGraph& g, const TreeSpec& spec, const StructuralIndex* idx,
                   NodeId start, PlanKind plan, const RunLimits& limits = {});

// Whether a and b stand in a strict ancestor-descendant relationship,
// in either direction.
QueryResult q_anc_desc(const PropertyGraph& g, const TreeSpec& spec, const StructuralIndex* idx,
                       NodeId a, NodeId b, PlanKind plan, const RunLimits& limits = {});

// Direct children of start.
QueryResult q_children(const PropertyGraph& g, const TreeSpec& spec, const StructuralIndex* idx,
                       NodeId start, PlanKind plan, const RunLimits& limits = {});

}  // namespace treegraph
