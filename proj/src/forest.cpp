#include "treegraph/forest.hpp"

#include <algorithm>
#include <sstream>

namespace treegraph {

std::string Violation::describe(const PropertyGraph& g) const {
    std::ostringstream out;
    switch (kind) {
        case Kind::Cycle: {
            out << "cycle:";
            for (NodeId n : cycle) out << ' ' << g.external_key(n);
            break;
        }
        case Kind::MultiParent: {
            out << "node " << g.external_key(node) << " has " << parents.size() << " parents:";
            for (NodeId p : parents) out << ' ' << g.external_key(p);
            break;
        }
        case Kind::MissingParent:
            out << "node " << g.external_key(node) << " requires a parent but has none";
            break;
    }
    return out.str();
}

namespace {
const std::vector<NodeId> kNoChildren;
}

std::optional<NodeId> Forest::parent_of(NodeId n) const {
    auto it = parent_.find(n);
    if (it == parent_.end()) return std::nullopt;
    return it->second;
}

const std::vector<NodeId>& Forest::children_of(NodeId n) const {
    auto it = children_.find(n);
    return it == children_.end() ? kNoChildren : it->second;
}

TreeId Forest::tree_of(NodeId n) const {
    auto it = tree_id_.find(n);
    if (it == tree_id_.end())
        throw Error("node " + std::to_string(n) + " is not in the forest");
    return it->second;
}

std::vector<NodeId> Forest::subtree(NodeId a) const {
    if (!contains(a)) throw Error("node " + std::to_string(a) + " is not in the forest");
    std::vector<NodeId> out;
    std::vector<NodeId> stack{a};
    while (!stack.empty()) {
        NodeId n = stack.back();
        stack.pop_back();
        out.push_back(n);
        const auto& kids = children_of(n);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

void Forest::attach(NodeId parent, InsertPos pos, NodeId node) {
    if (!contains(parent)) throw Error("attach: parent not in forest");
    if (contains(node)) throw Error("attach: node already in forest");
    auto& kids = children_[parent];
    if (pos.last) {
        kids.push_back(node);
    } else {
        auto it = std::find(kids.begin(), kids.end(), pos.before);
        if (it == kids.end()) throw Error("attach: before-sibling is not a child of parent");
        kids.insert(it, node);
    }
    parent_[node] = parent;
    tree_id_[node] = tree_id_.at(parent);
}

void Forest::remove_subtree(NodeId a) {
    auto nodes = subtree(a);
    auto p = parent_of(a);
    std::optional<std::size_t> removed_root;
    if (p) {
        auto& kids = children_[*p];
        kids.erase(std::find(kids.begin(), kids.end(), a));
    } else {
        auto it = std::find(roots_.begin(), roots_.end(), a);
        removed_root = static_cast<std::size_t>(it - roots_.begin());
        roots_.erase(it);
    }
    for (NodeId n : nodes) {
        parent_.erase(n);
        children_.erase(n);
        tree_id_.erase(n);
    }
    if (removed_root) renumber_trees_from(*removed_root);
}

void Forest::detach_subtree(NodeId a) {
    auto p = parent_of(a);
    if (!p) return;  // already a root
    auto& kids = children_[*p];
    kids.erase(std::find(kids.begin(), kids.end(), a));
    parent_.erase(a);
    TreeId t = static_cast<TreeId>(roots_.size());
    roots_.push_back(a);
    for (NodeId n : subtree(a)) tree_id_[n] = t;
}

void Forest::renumber_trees_from(std::size_t first_root_index) {
    for (std::size_t i = first_root_index; i < roots_.size(); ++i)
        for (NodeId n : subtree(roots_[i])) tree_id_[n] = static_cast<TreeId>(i);
}

struct Forest::Builder {
    static Forest build(TreeSpec spec, std::unordered_map<NodeId, NodeId> parent,
                        std::unordered_map<NodeId, std::vector<NodeId>> children,
                        std::vector<NodeId> roots) {
        Forest f(std::move(spec));
        f.parent_ = std::move(parent);
        f.children_ = std::move(children);
        f.roots_ = std::move(roots);
        for (std::size_t t = 0; t < f.roots_.size(); ++t)
            for (NodeId n : f.subtree(f.roots_[t])) f.tree_id_[n] = static_cast<TreeId>(t);
        return f;
    }
};

namespace {

// Orders one sibling group by the chain of `label` edges among its members.
// The head is the unique sibling without an incoming chain edge; every
// break (fork, join, missing link, loop) raises BrokenSiblingChain.
std::vector<NodeId> order_by_next_edge(const PropertyGraph& g, const std::string& label,
                                       const std::vector<NodeId>& siblings) {
    if (siblings.size() < 2) return siblings;
    std::unordered_map<NodeId, NodeId> next;
    std::unordered_map<NodeId, std::size_t> indegree;
    std::vector<NodeId> heads;
    for (NodeId s : siblings) indegree[s] = 0;
    for (NodeId s : siblings) {
        for (NodeId t : g.neighbors(s, label, Direction::Out)) {
            if (!indegree.count(t)) continue;  // edge leaves the sibling group
            if (next.count(s))
                throw BrokenSiblingChain("sibling " + g.external_key(s) +
                                         " has two successors");
            next[s] = t;
            ++indegree[t];
        }
    }
    for (NodeId s : siblings) {
        if (indegree[s] > 1)
            throw BrokenSiblingChain("sibling " + g.external_key(s) + " has two predecessors");
        if (indegree[s] == 0) heads.push_back(s);
    }
    if (heads.size() != 1)
        throw BrokenSiblingChain(heads.empty() ? "sibling chain forms a loop"
                                               : "sibling chain has several heads");
    std::vector<NodeId> ordered;
    NodeId cur = heads[0];
    for (;;) {
        ordered.push_back(cur);
        auto it = next.find(cur);
        if (it == next.end()) break;
        cur = it->second;
    }
    if (ordered.size() != siblings.size())
        throw BrokenSiblingChain("sibling chain does not cover all " +
                                 std::to_string(siblings.size()) + " siblings");
    return ordered;
}

void order_by_property(const PropertyGraph& g, const std::string& prop,
                       std::vector<NodeId>& siblings) {
    for (NodeId s : siblings)
        if (!g.node(s).properties.count(prop))
            throw Error("sibling " + g.external_key(s) + " lacks ordering property '" + prop +
                        "'");
    std::stable_sort(siblings.begin(), siblings.end(), [&](NodeId a, NodeId b) {
        return g.node(a).properties.at(prop) < g.node(b).properties.at(prop);
    });
}

}  // namespace

VerifyResult verify_forest(const PropertyGraph& g, const TreeSpec& spec) {
    spec.validate();

    std::vector<bool> in_scope(g.node_count(), false);
    for (const Node& n : g.nodes()) in_scope[n.id] = spec.scope.contains(n);

    auto is_spec_edge = [&](const Edge& e) {
        return spec.has_edge_label(e.label) && in_scope[e.src] && in_scope[e.dst];
    };

    // Parent assignment; nodes in id order so the first multi-parent found
    // is the one at the lowest id.
    std::unordered_map<NodeId, std::vector<NodeId>> parent_edges;
    for (const Edge& e : g.edges())
        if (is_spec_edge(e)) parent_edges[spec.child_of_edge(e)].push_back(spec.parent_of_edge(e));

    std::unordered_map<NodeId, NodeId> parent;
    for (const Node& n : g.nodes()) {
        if (!in_scope[n.id]) continue;
        auto it = parent_edges.find(n.id);
        if (it == parent_edges.end()) continue;
        if (it->second.size() > 1)
            return Violation{Violation::Kind::MultiParent, n.id, it->second, {}};
        parent[n.id] = it->second[0];
    }

    // Cycle check by iterative parent-chain walk with tri-state coloring.
    enum : std::uint8_t { White, OnPath, Done };
    std::vector<std::uint8_t> color(g.node_count(), White);
    for (const Node& n : g.nodes()) {
        if (!in_scope[n.id] || color[n.id] != White) continue;
        std::vector<NodeId> path;
        NodeId cur = n.id;
        while (true) {
            if (color[cur] == OnPath) {
                // Found a loop; the witness is the tail of the path from cur.
                auto start = std::find(path.begin(), path.end(), cur);
                std::vector<NodeId> cycle(start, path.end());
                return Violation{Violation::Kind::Cycle, cycle.front(), {}, cycle};
            }
            if (color[cur] == Done) break;
            color[cur] = OnPath;
            path.push_back(cur);
            auto it = parent.find(cur);
            if (it == parent.end()) break;
            cur = it->second;
        }
        for (NodeId v : path) color[v] = Done;
    }

    if (!spec.parent_required.empty()) {
        for (const Node& n : g.nodes()) {
            if (!in_scope[n.id]) continue;
            if (spec.requires_parent(n) && !parent.count(n.id))
                return Violation{Violation::Kind::MissingParent, n.id, {}, {}};
        }
    }

    // Children lists, base order = edge insertion order.
    std::unordered_map<NodeId, std::vector<NodeId>> children;
    for (const Edge& e : g.edges())
        if (is_spec_edge(e)) children[spec.parent_of_edge(e)].push_back(spec.child_of_edge(e));

    if (spec.sibling_order.kind == SiblingOrderKind::ByProperty) {
        for (auto& [p, kids] : children) order_by_property(g, spec.sibling_order.name, kids);
    } else if (spec.sibling_order.kind == SiblingOrderKind::ByNextEdge) {
        for (auto& [p, kids] : children)
            kids = order_by_next_edge(g, spec.sibling_order.name, kids);
    }

    std::vector<NodeId> roots;
    for (const Node& n : g.nodes())
        if (in_scope[n.id] && !parent.count(n.id)) roots.push_back(n.id);

    return Forest::Builder::build(spec, std::move(parent), std::move(children),
                                  std::move(roots));
}

namespace {

StatLine stat_line(std::vector<std::uint64_t> values) {
    StatLine s;
    s.count = values.size();
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    std::size_t n = values.size();
    s.median = n % 2 == 1 ? static_cast<double>(values[n / 2])
                          : (static_cast<double>(values[n / 2 - 1]) +
                             static_cast<double>(values[n / 2])) /
                                2.0;
    return s;
}

}  // namespace

ForestStats forest_stats(const Forest& f) {
    ForestStats stats;
    stats.n_trees = f.tree_count();

    std::vector<std::uint64_t> sizes, depths, fanouts;
    for (NodeId root : f.roots()) {
        std::uint64_t size = 0, depth = 0;
        // (node, level) DFS
        std::vector<std::pair<NodeId, std::uint64_t>> stack{{root, 0}};
        while (!stack.empty()) {
            auto [n, lvl] = stack.back();
            stack.pop_back();
            ++size;
            depth = std::max(depth, lvl);
            const auto& kids = f.children_of(n);
            if (!kids.empty()) fanouts.push_back(kids.size());
            for (NodeId c : kids) stack.push_back({c, lvl + 1});
        }
        sizes.push_back(size);
        depths.push_back(depth);
    }
    stats.size = stat_line(std::move(sizes));
    stats.depth = stat_line(std::move(depths));
    stats.fanout = stat_line(std::move(fanouts));
    return stats;
}

std::string format_forest_stats(const ForestStats& s) {
    auto line = [](const char* name, const StatLine& l) {
        std::ostringstream out;
        out << name << ": ";
        if (l.count == 0) {
            out << "(empty)";
        } else {
            out << l.min << '/' << l.max << '/' << l.median;
        }
        out << '\n';
        return out.str();
    };
    std::ostringstream out;
    out << "trees: " << s.n_trees << '\n'
        << line("size min/max/median", s.size) << line("depth min/max/median", s.depth)
        << line("fanout min/max/median", s.fanout);
    return out.str();
}

}  // namespace treegraph
