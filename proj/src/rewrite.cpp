#include "treegraph/rewrite.hpp"

#include <algorithm>
#include <unordered_set>

namespace treegraph {

void Catalog::add(std::string name, TreeSpec spec, const StructuralIndex* index) {
    entries_.push_back(CatalogEntry{std::move(name), std::move(spec), index});
}

const CatalogEntry* Catalog::find(const std::string& name) const {
    for (const auto& e : entries_)
        if (e.name == name) return &e;
    return nullptr;
}

namespace {

bool anchored(const PatternQuery& q, const std::string& var) {
    return !q.predicates_on(var).empty();
}

// Does following the stored edges from `left` to `right` walk up or down
// the hierarchy? That depends on the arrow and on the spec orientation.
PathRole role_of_right(EdgeDir dir, Orientation o) {
    bool along_edges = dir == EdgeDir::Right;
    bool edges_point_up = o == Orientation::ChildToParent;
    return along_edges == edges_point_up ? PathRole::Ancestors : PathRole::Descendants;
}

PathRole invert(PathRole r) {
    return r == PathRole::Descendants ? PathRole::Ancestors : PathRole::Descendants;
}

// Every edge the pattern can match must be inside the indexed overlay,
// otherwise the index would miss paths the plain evaluation finds.
bool index_covers_pattern(const PropertyGraph& g, const TreeSpec& spec,
                          const std::optional<std::string>& pattern_label) {
    const std::string& tree_label = *spec.edge_labels.begin();
    for (const Edge& e : g.edges()) {
        if (pattern_label) {
            if (e.label != *pattern_label) continue;
        } else if (e.label != tree_label) {
            return false;  // unlabeled pattern matches everything
        }
        if (!spec.scope.contains(g.node(e.src)) || !spec.scope.contains(g.node(e.dst)))
            return false;
    }
    return true;
}

std::string render_predicates(const RewrittenPlan& p, Codec codec) {
    const std::string& a = p.anchor_var;
    const std::string& f = p.free_var;
    bool desc = p.free_role == PathRole::Descendants;
    const std::string& up = desc ? a : f;    // the ancestor side
    const std::string& down = desc ? f : a;  // the descendant side

    std::string out;
    if (codec == Codec::PrePost)
        out = up + ".pre < " + down + ".pre AND " + down + ".pre < " + up + ".post";
    else
        out = up + ".dewey is a prefix of " + down + ".dewey";

    auto lvl = [&](std::uint32_t k) { return up + ".lvl + " + std::to_string(k); };
    if (p.hop_max && p.hop_min == *p.hop_max) {
        out += " AND " + lvl(p.hop_min) + " = " + down + ".lvl";
    } else if (p.hop_max) {
        out += " AND " + lvl(p.hop_min) + " <= " + down + ".lvl AND " + down +
               ".lvl <= " + lvl(*p.hop_max);
    } else if (p.hop_min > 1) {
        out += " AND " + lvl(p.hop_min) + " <= " + down + ".lvl";
    }
    return out;
}

RewrittenPlan fallback(const PatternQuery& q, std::string note) {
    RewrittenPlan p;
    p.origin = q;
    p.plan = PlanKind::BaselineTraversal;
    p.note = std::move(note);
    return p;
}

}  // namespace

RewrittenPlan rewrite(const PatternQuery& q, const Catalog& catalog, Codec codec) {
    if (!q.edge.len.variable)
        return fallback(q, "fixed-length pattern, kept on the baseline plan");
    if (q.edge.dir == EdgeDir::Undirected)
        return fallback(q, "undirected pattern, index predicates need a direction");

    const CatalogEntry* entry = nullptr;
    if (q.edge.label) {
        for (const auto& e : catalog.entries())
            if (e.spec.edge_labels == std::set<std::string>{*q.edge.label}) {
                entry = &e;
                break;
            }
        if (!entry) return fallback(q, "no tree spec registered for :" + *q.edge.label);
    } else {
        if (catalog.entries().size() != 1)
            return fallback(q, "unlabeled pattern needs exactly one registered spec");
        entry = &catalog.entries().front();
        if (entry->spec.edge_labels.size() != 1)
            return fallback(q, "unlabeled pattern over a multi-label spec");
    }
    if (!entry->index) return fallback(q, "no index built for spec " + entry->name);
    if (!index_covers_pattern(entry->index->graph(), entry->spec, q.edge.label))
        return fallback(q, "index does not cover every edge the pattern can match");

    bool left_anchored = anchored(q, q.left.var);
    bool right_anchored = anchored(q, q.right.var);
    if (!left_anchored && !right_anchored)
        return fallback(q, "no anchored variable to start from");

    RewrittenPlan p;
    p.origin = q;
    p.plan = codec == Codec::PrePost ? PlanKind::IndexPrePost : PlanKind::IndexDewey;
    p.spec_name = entry->name;
    p.both_anchored = left_anchored && right_anchored;
    PathRole right_role = role_of_right(q.edge.dir, entry->spec.orientation);
    if (left_anchored) {
        p.anchor_var = q.left.var;
        p.free_var = q.right.var;
        p.free_role = right_role;
    } else {
        p.anchor_var = q.right.var;
        p.free_var = q.left.var;
        p.free_role = invert(right_role);
    }
    p.hop_min = q.edge.len.min;
    p.hop_max = q.edge.len.max;
    p.predicates = render_predicates(p, codec);
    p.note = "rewritten against spec " + entry->name;
    return p;
}

namespace {

using Clock = std::chrono::steady_clock;

// Nodes passing a variable's label and equality predicates.
std::vector<NodeId> candidates(const PatternQuery& q, const NodePattern& np,
                               const PropertyGraph& g) {
    std::vector<NodeId> out;
    auto preds = q.predicates_on(np.var);
    for (const Node& n : g.nodes()) {
        if (np.label && !n.has_label(*np.label)) continue;
        bool ok = true;
        for (const Predicate* p : preds) {
            auto it = n.properties.find(p->prop);
            if (it == n.properties.end() || !(it->second == p->literal)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(n.id);
    }
    return out;
}

bool passes(const PatternQuery& q, const NodePattern& np, const PropertyGraph& g, NodeId id) {
    const Node& n = g.node(id);
    if (np.label && !n.has_label(*np.label)) return false;
    for (const Predicate* p : q.predicates_on(np.var)) {
        auto it = n.properties.find(p->prop);
        if (it == n.properties.end() || !(it->second == p->literal)) return false;
    }
    return true;
}

// BFS hop distances from start along the pattern direction, stopping at
// max_hops levels (or exhausting the component when unbounded).
std::vector<std::pair<NodeId, std::uint32_t>> hop_distances(
    const PropertyGraph& g, NodeId start, const std::optional<std::string>& label, EdgeDir dir,
    std::optional<std::uint32_t> max_hops) {
    std::vector<std::pair<NodeId, std::uint32_t>> out{{start, 0}};
    std::vector<bool> seen(g.node_count(), false);
    seen[start] = true;
    std::size_t head = 0;
    auto expand = [&](NodeId n, Direction d, std::uint32_t dist) {
        if (label) {
            for (NodeId t : g.neighbors(n, *label, d))
                if (!seen[t]) {
                    seen[t] = true;
                    out.push_back({t, dist});
                }
        } else {
            // any edge label
            const auto edge_dir_matches = [&](const Edge& e) {
                if (d == Direction::Both) return e.src == n || e.dst == n;
                return d == Direction::Out ? e.src == n : e.dst == n;
            };
            for (const Edge& e : g.edges()) {
                if (!edge_dir_matches(e)) continue;
                NodeId t = e.src == n ? e.dst : e.src;
                if (!seen[t]) {
                    seen[t] = true;
                    out.push_back({t, dist});
                }
            }
        }
    };
    Direction d = dir == EdgeDir::Right ? Direction::Out
                                        : (dir == EdgeDir::Left ? Direction::In : Direction::Both);
    while (head < out.size()) {
        auto [n, dist] = out[head++];
        if (max_hops && dist >= *max_hops) continue;
        expand(n, d, dist + 1);
    }
    return out;
}

void bind_results(const PatternQuery& q, const std::vector<std::pair<NodeId, NodeId>>& pairs,
                  QueryResult& r) {
    std::unordered_set<NodeId> emitted;
    for (const auto& var : q.return_vars) {
        bool left = var == q.left.var;
        for (const auto& [l, rt] : pairs) {
            NodeId id = left ? l : rt;
            if (emitted.insert(id).second) r.nodes.push_back(id);
        }
    }
}

}  // namespace

QueryResult evaluate_baseline(const PatternQuery& q, const PropertyGraph& g) {
    auto left_candidates = candidates(q, q.left, g);

    QueryResult r;
    r.plan = PlanKind::BaselineTraversal;
    auto t0 = Clock::now();

    std::uint32_t lo = q.edge.len.min;
    auto hi = q.edge.len.max;
    std::vector<std::pair<NodeId, NodeId>> pairs;  // (left, right) bindings
    for (NodeId l : left_candidates) {
        for (auto [n, dist] : hop_distances(g, l, q.edge.label, q.edge.dir, hi)) {
            if (dist < lo) continue;
            if (!passes(q, q.right, g, n)) continue;
            pairs.push_back({l, n});
        }
    }
    bind_results(q, pairs, r);
    r.elapsed = Clock::now() - t0;
    return r;
}

QueryResult execute(const RewrittenPlan& plan, const PropertyGraph& g, const Catalog& catalog) {
    if (!is_index_plan(plan.plan)) return evaluate_baseline(plan.origin, g);

    const CatalogEntry* entry = catalog.find(plan.spec_name);
    if (!entry || !entry->index)
        throw NoIndex("plan references spec " + plan.spec_name + " without a built index");
    const StructuralIndex& idx = *entry->index;
    Codec codec = plan_codec(plan.plan);

    const PatternQuery& q = plan.origin;
    const NodePattern& anchor_np = q.left.var == plan.anchor_var ? q.left : q.right;
    const NodePattern& free_np = q.left.var == plan.free_var ? q.left : q.right;

    auto anchors = candidates(q, anchor_np, g);

    QueryResult r;
    r.plan = plan.plan;
    auto t0 = Clock::now();

    auto in_window = [&](std::uint32_t delta) {
        return delta >= plan.hop_min && (!plan.hop_max || delta <= *plan.hop_max);
    };

    std::vector<std::pair<NodeId, NodeId>> pairs;  // (anchor, free) bindings
    for (NodeId a : anchors) {
        if (!idx.indexed(a)) continue;  // outside the overlay, no paths can start here
        std::uint32_t a_lvl = idx.entry(a).lvl;
        if (plan.hop_min == 0 && passes(q, free_np, g, a)) pairs.push_back({a, a});
        auto related = plan.free_role == PathRole::Descendants ? idx.descendants(a, codec)
                                                               : idx.ancestors(a, codec);
        for (NodeId t : related) {
            std::uint32_t t_lvl = idx.entry(t).lvl;
            std::uint32_t delta =
                plan.free_role == PathRole::Descendants ? t_lvl - a_lvl : a_lvl - t_lvl;
            if (!in_window(delta)) continue;
            if (!passes(q, free_np, g, t)) continue;
            pairs.push_back({a, t});
        }
    }

    // Rebuild (left, right) orientation for the binder.
    std::vector<std::pair<NodeId, NodeId>> lr;
    lr.reserve(pairs.size());
    bool anchor_is_left = q.left.var == plan.anchor_var;
    for (auto [a, f] : pairs) lr.push_back(anchor_is_left ? std::make_pair(a, f)
                                                          : std::make_pair(f, a));
    bind_results(q, lr, r);
    r.elapsed = Clock::now() - t0;
    return r;
}

}  // namespace treegraph
