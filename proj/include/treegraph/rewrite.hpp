#pragma once
// Rewrites variable-length path patterns over registered tree specs into
// structural-index predicate plans, falling back to plain evaluation when
// the pattern does not fit (never a failure).
//
// Applicability: the pattern must be a directed variable-length chain whose
// edge label matches a registered single-label spec with a built index that
// covers every matching edge in the graph, with at least one anchored
// variable. Reversing the pattern arrow swaps the ancestor/descendant role,
// and both stored-edge orientations are handled.

#include <optional>
#include <string>
#include <vector>

#include "treegraph/pattern.hpp"
#include "treegraph/query_engine.hpp"
#include "treegraph/structural_index.hpp"
#include "treegraph/tree_spec.hpp"

namespace treegraph {

struct CatalogEntry {
    std::string name;
    TreeSpec spec;
    const StructuralIndex* index = nullptr;  // may be absent; forces fallback
};

class Catalog {
public:
    void add(std::string name, TreeSpec spec, const StructuralIndex* index);
    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry* find(const std::string& name) const;

private:
    std::vector<CatalogEntry> entries_;
};

// Role of the free variable relative to the anchored one.
enum class PathRole { Descendants, Ancestors };

struct RewrittenPlan {
    PatternQuery origin;
    PlanKind plan = PlanKind::BaselineTraversal;

    // Index plans only:
    std::string spec_name;
    std::string anchor_var;
    std::string free_var;
    PathRole free_role = PathRole::Descendants;
    std::uint32_t hop_min = 1;
    std::optional<std::uint32_t> hop_max;  // nullopt = unbounded
    bool both_anchored = false;
    std::string predicates;  // rendered conditions, e.g. "n.pre < m.pre AND m.pre < n.post"

    std::string note;  // why a fallback happened, or which index applies
};

RewrittenPlan rewrite(const PatternQuery& q, const Catalog& catalog,
                      Codec codec = Codec::PrePost);

// Runs the plan. Index plans resolve anchors by property scan before the
// timer starts; baseline plans delegate to evaluate_baseline.
QueryResult execute(const RewrittenPlan& plan, const PropertyGraph& g, const Catalog& catalog);

// Reference evaluation of a pattern straight over the graph: BFS from each
// anchored binding along the pattern direction. Hop distances are unique on
// the forest-shaped data this engine targets.
QueryResult evaluate_baseline(const PatternQuery& q, const PropertyGraph& g);

}  // namespace treegraph
