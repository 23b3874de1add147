#include "treegraph/query_engine.hpp"

#include <unordered_set>

namespace treegraph {

const char* plan_name(PlanKind p) {
    switch (p) {
        case PlanKind::BaselineTraversal: return "baseline_traversal";
        case PlanKind::BaselineJoin: return "baseline_join";
        case PlanKind::IndexPrePost: return "index_prepost";
        case PlanKind::IndexDewey: return "index_dewey";
    }
    return "?";
}

std::optional<PlanKind> plan_from_name(const std::string& name) {
    if (name == "baseline_traversal") return PlanKind::BaselineTraversal;
    if (name == "baseline_join") return PlanKind::BaselineJoin;
    if (name == "index_prepost") return PlanKind::IndexPrePost;
    if (name == "index_dewey") return PlanKind::IndexDewey;
    return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
public:
    explicit Deadline(const RunLimits& limits) : at_(limits.deadline) {}

    // Cheap enough for inner loops: the clock is read every 1024 calls.
    bool expired() {
        if (!at_) return false;
        if ((++calls_ & 1023u) != 0) return false;
        return Clock::now() >= *at_;
    }

private:
    std::optional<Clock::time_point> at_;
    std::uint64_t calls_ = 0;
};

struct ScopeView {
    std::vector<bool> in;

    ScopeView(const PropertyGraph& g, const TreeSpec& spec) : in(g.node_count(), false) {
        for (const Node& n : g.nodes()) in[n.id] = spec.scope.contains(n);
    }
};

void check_start(const PropertyGraph& g, const TreeSpec& spec, NodeId start) {
    if (!spec.scope.contains(g.node(start)))
        throw NotInScope("node " + g.external_key(start) + " is outside the spec scope");
}

const StructuralIndex& need_index(const StructuralIndex* idx, PlanKind plan) {
    if (!idx) throw NoIndex(std::string("plan ") + plan_name(plan) + " needs a built index");
    return *idx;
}

// Scoped tree children of n in the stored graph, per spec orientation.
void graph_children(const PropertyGraph& g, const TreeSpec& spec, const ScopeView& scope,
                    NodeId n, std::vector<NodeId>& out) {
    out.clear();
    Direction dir =
        spec.orientation == Orientation::ChildToParent ? Direction::In : Direction::Out;
    for (const auto& label : spec.edge_labels)
        for (NodeId c : g.neighbors(n, label, dir))
            if (scope.in[c]) out.push_back(c);
}

// Scoped tree parents (at most one on verified data, but tolerate more).
void graph_parents(const PropertyGraph& g, const TreeSpec& spec, const ScopeView& scope,
                   NodeId n, std::vector<NodeId>& out) {
    out.clear();
    Direction dir =
        spec.orientation == Orientation::ChildToParent ? Direction::Out : Direction::In;
    for (const auto& label : spec.edge_labels)
        for (NodeId p : g.neighbors(n, label, dir))
            if (scope.in[p]) out.push_back(p);
}

// BFS over adjacency in descendant direction; start excluded.
void bfs_descendants(const PropertyGraph& g, const TreeSpec& spec, const ScopeView& scope,
                     NodeId start, Deadline& dl, QueryResult& r) {
    std::vector<bool> seen(g.node_count(), false);
    seen[start] = true;
    std::vector<NodeId> queue{start}, kids;
    std::size_t head = 0;
    while (head < queue.size()) {
        if (dl.expired()) {
            r.timed_out = true;
            return;
        }
        NodeId n = queue[head++];
        graph_children(g, spec, scope, n, kids);
        for (NodeId c : kids) {
            if (seen[c]) continue;
            seen[c] = true;
            queue.push_back(c);
            r.nodes.push_back(c);
        }
    }
}

// One structural-join hop: scan the whole edge list, keep scoped spec edges
// whose parent side sits in the frontier.
void join_descendants(const PropertyGraph& g, const TreeSpec& spec, const ScopeView& scope,
                      NodeId start, Deadline& dl, QueryResult& r,
                      std::unordered_set<NodeId>& found) {
    std::unordered_set<NodeId> frontier{start};
    while (!frontier.empty()) {
        ++r.join_passes;
        std::unordered_set<NodeId> next;
        for (const Edge& e : g.edges()) {
            if (dl.expired()) {
                r.timed_out = true;
                return;
            }
            if (!spec.has_edge_label(e.label)) continue;
            NodeId par = spec.parent_of_edge(e);
            NodeId child = spec.child_of_edge(e);
            if (!scope.in[par] || !scope.in[child]) continue;
            if (!frontier.count(par) || found.count(child) || child == start) continue;
            found.insert(child);
            next.insert(child);
            r.nodes.push_back(child);
        }
        frontier = std::move(next);
    }
}

// Ancestor chain of start via repeated edge-list scans; stops early when
// `target` shows up.
bool join_ancestor_chain(const PropertyGraph& g, const TreeSpec& spec, const ScopeView& scope,
                         NodeId start, NodeId target, Deadline& dl, QueryResult& r) {
    std::unordered_set<NodeId> frontier{start}, seen{start};
    while (!frontier.empty()) {
        ++r.join_passes;
        std::unordered_set<NodeId> next;
        for (const Edge& e : g.edges()) {
            if (dl.expired()) {
                r.timed_out = true;
                return false;
            }
            if (!spec.has_edge_label(e.label)) continue;
            NodeId par = spec.parent_of_edge(e);
            NodeId child = spec.child_of_edge(e);
            if (!scope.in[par] || !scope.in[child]) continue;
            if (!frontier.count(child) || seen.count(par)) continue;
            if (par == target) return true;
            seen.insert(par);
            next.insert(par);
        }
        frontier = std::move(next);
    }
    return false;
}

bool walk_ancestor_chain(const PropertyGraph& g, const TreeSpec& spec, const ScopeView& scope,
                         NodeId start, NodeId target, Deadline& dl, QueryResult& r) {
    std::vector<NodeId> parents;
    std::vector<bool> seen(g.node_count(), false);
    NodeId cur = start;
    seen[cur] = true;
    for (;;) {
        if (dl.expired()) {
            r.timed_out = true;
            return false;
        }
        graph_parents(g, spec, scope, cur, parents);
        if (parents.empty()) return false;
        NodeId p = parents.front();
        if (p == target) return true;
        if (seen[p]) return false;  // cycle guard on unverified data
        seen[p] = true;
        cur = p;
    }
}

template <typename Body>
QueryResult timed(PlanKind plan, Body&& body) {
    QueryResult r;
    r.plan = plan;
    auto t0 = Clock::now();
    body(r);
    r.elapsed = Clock::now() - t0;
    return r;
}

}  // namespace

QueryResult q_desc(const PropertyGraph& g, const TreeSpec& spec, const StructuralIndex* idx,
                   NodeId start, PlanKind plan, const RunLimits& limits) {
    check_start(g, spec, start);
    Deadline dl(limits);

    if (is_index_plan(plan)) {
        const StructuralIndex& index = need_index(idx, plan);
        return timed(plan, [&](QueryResult& r) {
            r.nodes = index.descendants(start, plan_codec(plan));
        });
    }

    ScopeView scope(g, spec);
    return timed(plan, [&](QueryResult& r) {
        if (plan == PlanKind::BaselineTraversal) {
            bfs_descendants(g, spec, scope, start, dl, r);
        } else {
            std::unordered_set<NodeId> found;
            join_descendants(g, spec, scope, start, dl, r, found);
        }
    });
}

QueryResult q_leaf(const PropertyGraph& g, const TreeSpec& spec, const StructuralIndex* idx,
                   NodeId start, PlanKind plan, const RunLimits& limits) {
    check_start(g, spec, start);
    Deadline dl(limits);

    if (is_index_plan(plan)) {
        const StructuralIndex& index = need_index(idx, plan);
        return timed(plan, [&](QueryResult& r) {
            r.nodes = index.leaves_under(start, plan_codec(plan));
        });
    }

    ScopeView scope(g, spec);
    return timed(plan, [&](QueryResult& r) {
        if (plan == PlanKind::BaselineTraversal) {
            bfs_descendants(g, spec, scope, start, dl, r);
            if (r.timed_out) return;
            std::vector<NodeId> leaves, kids;
            for (NodeId d : r.nodes) {
                graph_children(g, spec, scope, d, kids);
                if (kids.empty()) leaves.push_back(d);
            }
            r.nodes = std::move(leaves);
        } else {
            std::unordered_set<NodeId> found;
            join_descendants(g, spec, scope, start, dl, r, found);
            if (r.timed_out) return;
            // One more scan marks the internal nodes among the descendants.
            ++r.join_passes;
            std::unordered_set<NodeId> internal;
            for (const Edge& e : g.edges()) {
                if (!spec.has_edge_label(e.label)) continue;
                NodeId par = spec.parent_of_edge(e);
                NodeId child = spec.child_of_edge(e);
                if (!scope.in[par] || !scope.in[child]) continue;
                if (found.count(par)) internal.insert(par);
            }
            std::vector<NodeId> leaves;
            for (NodeId d : r.nodes)
                if (!internal.count(d)) leaves.push_back(d);
            r.nodes = std::move(leaves);
        }
    });
}

QueryResult q_anc_desc(const PropertyGraph& g, const TreeSpec& spec, const StructuralIndex* idx,
                       NodeId a, NodeId b, PlanKind plan, const RunLimits& limits) {
    check_start(g, spec, a);
    check_start(g, spec, b);
    Deadline dl(limits);

    if (is_index_plan(plan)) {
        const StructuralIndex& index = need_index(idx, plan);
        return timed(plan, [&](QueryResult& r) {
            Codec c = plan_codec(plan);
            r.related = index.is_ancestor(a, b, c) || index.is_ancestor(b, a, c);
        });
    }

    ScopeView scope(g, spec);
    return timed(plan, [&](QueryResult& r) {
        if (a == b) {
            r.related = false;  // strict ancestry
            return;
        }
        bool rel;
        if (plan == PlanKind::BaselineTraversal) {
            rel = walk_ancestor_chain(g, spec, scope, a, b, dl, r) ||
                  (!r.timed_out && walk_ancestor_chain(g, spec, scope, b, a, dl, r));
        } else {
            rel = join_ancestor_chain(g, spec, scope, a, b, dl, r) ||
                  (!r.timed_out && join_ancestor_chain(g, spec, scope, b, a, dl, r));
        }
        if (!r.timed_out) r.related = rel;
    });
}

QueryResult q_children(const PropertyGraph& g, const TreeSpec& spec, const StructuralIndex* idx,
                       NodeId start, PlanKind plan, const RunLimits& limits) {
    check_start(g, spec, start);
    Deadline dl(limits);

    if (is_index_plan(plan)) {
        const StructuralIndex& index = need_index(idx, plan);
        return timed(plan, [&](QueryResult& r) {
            r.nodes = index.children(start, plan_codec(plan));
        });
    }

    ScopeView scope(g, spec);
    return timed(plan, [&](QueryResult& r) {
        if (plan == PlanKind::BaselineTraversal) {
            graph_children(g, spec, scope, start, r.nodes);
        } else {
            ++r.join_passes;
            for (const Edge& e : g.edges()) {
                if (dl.expired()) {
                    r.timed_out = true;
                    return;
                }
                if (!spec.has_edge_label(e.label)) continue;
                if (spec.parent_of_edge(e) != start) continue;
                NodeId child = spec.child_of_edge(e);
                if (scope.in[child] && scope.in[start]) r.nodes.push_back(child);
            }
        }
    });
}

}  // namespace treegraph
