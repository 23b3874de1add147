#include "treegraph/structural_index.hpp"

#include <algorithm>
#include <ostream>

#include "treegraph/csv.hpp"

namespace treegraph {

std::string dewey_to_string(const DeweyVec& d) {
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) out.push_back('.');
        out += std::to_string(d[i]);
    }
    return out;
}

DeweyVec string_to_dewey(const std::string& s) {
    if (s.empty()) throw MalformedDewey("empty dewey string");
    DeweyVec out;
    std::size_t i = 0;
    while (i <= s.size()) {
        std::size_t dot = s.find('.', i);
        std::size_t end = dot == std::string::npos ? s.size() : dot;
        if (end == i) throw MalformedDewey("empty component in '" + s + "'");
        if (s[i] == '0') throw MalformedDewey("leading zero in '" + s + "'");
        std::uint64_t v = 0;
        for (std::size_t j = i; j < end; ++j) {
            char c = s[j];
            if (c < '0' || c > '9') throw MalformedDewey("bad character in '" + s + "'");
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
            if (v > UINT32_MAX) throw MalformedDewey("component too large in '" + s + "'");
        }
        out.push_back(static_cast<std::uint32_t>(v));
        if (dot == std::string::npos) break;
        i = dot + 1;
        if (i == s.size()) throw MalformedDewey("trailing dot in '" + s + "'");
    }
    return out;
}

const char* codec_name(Codec c) { return c == Codec::PrePost ? "prepost" : "dewey"; }

namespace {

bool is_strict_prefix(const DeweyVec& a, const DeweyVec& b) {
    return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

StructuralIndex StructuralIndex::build(const PropertyGraph& g, Forest f) {
    StructuralIndex idx(g, std::move(f));
    idx.trees_.resize(idx.forest_.roots().size());
    for (TreeId t = 0; t < idx.trees_.size(); ++t)
        idx.index_tree_from(idx.forest_.roots()[t], t);
    return idx;
}

void StructuralIndex::index_tree_from(NodeId root, TreeId t) {
    Tree& tr = trees_[t];
    tr.by_pre.clear();
    tr.by_dewey.clear();

    std::uint32_t counter = 1;
    struct Frame {
        NodeId node;
        std::size_t next_child = 0;
    };
    std::vector<Frame> stack;

    auto enter = [&](NodeId n, std::uint32_t lvl, DeweyVec dewey) {
        IndexEntry& e = entries_[n];
        e.pre = counter++;
        e.post = 0;
        e.lvl = lvl;
        e.dewey = std::move(dewey);
        e.tree = t;
        tr.by_pre.push_back(n);
        tr.by_dewey.emplace(e.dewey, n);
        stack.push_back(Frame{n});
    };

    enter(root, 0, DeweyVec{1});
    while (!stack.empty()) {
        Frame& f = stack.back();
        const auto& kids = forest_.children_of(f.node);
        if (f.next_child < kids.size()) {
            NodeId c = kids[f.next_child++];
            const IndexEntry& pe = entries_.at(f.node);
            DeweyVec d = pe.dewey;
            d.push_back(static_cast<std::uint32_t>(f.next_child));
            std::uint32_t lvl = pe.lvl + 1;
            enter(c, lvl, std::move(d));  // invalidates f; re-bound next iteration
        } else {
            entries_.at(f.node).post = counter++;
            stack.pop_back();
        }
    }
}

const IndexEntry& StructuralIndex::entry(NodeId n) const {
    auto it = entries_.find(n);
    if (it == entries_.end())
        throw NotIndexed("node " + std::to_string(n) + " is not indexed");
    return it->second;
}

bool StructuralIndex::is_ancestor_prepost(NodeId a, NodeId b) const {
    const IndexEntry& ea = entry(a);
    const IndexEntry& eb = entry(b);
    if (ea.tree != eb.tree) return false;
    return ea.pre < eb.pre && eb.pre < ea.post;
}

bool StructuralIndex::is_ancestor_dewey(NodeId a, NodeId b) const {
    const IndexEntry& ea = entry(a);
    const IndexEntry& eb = entry(b);
    if (ea.tree != eb.tree) return false;
    return is_strict_prefix(ea.dewey, eb.dewey);
}

bool StructuralIndex::is_k_hop_ancestor(NodeId a, NodeId b, std::uint32_t k, Codec c) const {
    if (k == 0) throw Error("k must be positive");
    return is_ancestor(a, b, c) && entry(a).lvl + k == entry(b).lvl;
}

std::size_t StructuralIndex::pre_position(const Tree& tr, std::uint32_t pre) const {
    auto it = std::lower_bound(tr.by_pre.begin(), tr.by_pre.end(), pre,
                               [&](NodeId id, std::uint32_t p) { return entries_.at(id).pre < p; });
    return static_cast<std::size_t>(it - tr.by_pre.begin());
}

std::vector<NodeId> StructuralIndex::descendants(NodeId a, Codec c) const {
    const IndexEntry& e = entry(a);
    const Tree& tr = trees_[e.tree];
    std::vector<NodeId> out;
    if (c == Codec::PrePost) {
        // The subtree is the contiguous pre-interval (e.pre, e.post).
        std::size_t pos = pre_position(tr, e.pre);
        std::size_t end = pos + e.subtree_size();
        out.assign(tr.by_pre.begin() + pos + 1, tr.by_pre.begin() + end);
    } else {
        for (auto it = tr.by_dewey.upper_bound(e.dewey);
             it != tr.by_dewey.end() && is_strict_prefix(e.dewey, it->first); ++it)
            out.push_back(it->second);
    }
    return out;
}

std::vector<NodeId> StructuralIndex::leaves_under(NodeId a, Codec c) const {
    const IndexEntry& e = entry(a);
    const Tree& tr = trees_[e.tree];
    std::vector<NodeId> out;
    if (c == Codec::PrePost) {
        std::size_t pos = pre_position(tr, e.pre);
        std::size_t end = pos + e.subtree_size();
        for (std::size_t i = pos + 1; i < end; ++i)
            if (entries_.at(tr.by_pre[i]).is_leaf()) out.push_back(tr.by_pre[i]);
    } else {
        // A node is a leaf when its dewey has no extension, i.e. the next
        // key in dewey order does not extend it.
        auto it = tr.by_dewey.upper_bound(e.dewey);
        for (; it != tr.by_dewey.end() && is_strict_prefix(e.dewey, it->first); ++it) {
            auto nx = std::next(it);
            if (nx == tr.by_dewey.end() || !is_strict_prefix(it->first, nx->first))
                out.push_back(it->second);
        }
    }
    return out;
}

std::vector<NodeId> StructuralIndex::children(NodeId a, Codec c) const {
    const IndexEntry& e = entry(a);
    const Tree& tr = trees_[e.tree];
    std::vector<NodeId> out;
    if (c == Codec::PrePost) {
        std::size_t pos = pre_position(tr, e.pre);
        std::size_t end = pos + e.subtree_size();
        std::size_t i = pos + 1;
        while (i < end) {
            NodeId child = tr.by_pre[i];
            out.push_back(child);
            i += entries_.at(child).subtree_size();
        }
    } else {
        for (std::uint32_t rank = 1;; ++rank) {
            DeweyVec d = e.dewey;
            d.push_back(rank);
            auto it = tr.by_dewey.find(d);
            if (it == tr.by_dewey.end()) break;
            out.push_back(it->second);
        }
    }
    return out;
}

std::vector<NodeId> StructuralIndex::ancestors(NodeId a, Codec c) const {
    const IndexEntry& e = entry(a);
    const Tree& tr = trees_[e.tree];
    std::vector<NodeId> out;
    if (c == Codec::PrePost) {
        std::size_t pos = pre_position(tr, e.pre);
        for (std::size_t i = 0; i < pos; ++i) {
            const IndexEntry& cand = entries_.at(tr.by_pre[i]);
            if (cand.post > e.pre) out.push_back(tr.by_pre[i]);
        }
    } else {
        DeweyVec prefix;
        for (std::size_t len = 1; len < e.dewey.size(); ++len) {
            prefix.assign(e.dewey.begin(), e.dewey.begin() + len);
            out.push_back(tr.by_dewey.at(prefix));
        }
    }
    return out;
}

std::size_t StructuralIndex::shift_values(TreeId t, std::uint32_t from, std::int64_t delta) {
    std::size_t touched = 0;
    for (NodeId n : trees_[t].by_pre) {
        IndexEntry& e = entries_.at(n);
        bool changed = false;
        if (e.pre >= from) {
            e.pre = static_cast<std::uint32_t>(e.pre + delta);
            changed = true;
        }
        if (e.post >= from) {
            e.post = static_cast<std::uint32_t>(e.post + delta);
            changed = true;
        }
        if (changed) ++touched;
    }
    return touched;
}

std::size_t StructuralIndex::set_sibling_rank(TreeId t, NodeId sib, std::size_t component,
                                              std::uint32_t new_rank) {
    Tree& tr = trees_[t];
    auto nodes = forest_.subtree(sib);
    for (NodeId n : nodes) {
        IndexEntry& e = entries_.at(n);
        tr.by_dewey.erase(e.dewey);
        e.dewey[component] = new_rank;
        tr.by_dewey.emplace(e.dewey, n);
    }
    return nodes.size();
}

MaintenanceReport StructuralIndex::insert_node(NodeId parent, InsertPos pos, NodeId node) {
    if (!g_->has_node(node)) throw UnknownNode("insert_node: unknown node");
    if (!indexed(parent)) throw NotIndexed("insert_node: parent is not indexed");
    if (node == parent) throw WouldCreateCycle("insert_node: node cannot be its own parent");
    if (forest_.contains(node)) {
        if (forest_.parent_of(node))
            throw WouldCreateMultiParent("insert_node: node already has a parent");
        if (entry(node).tree == entry(parent).tree)
            throw WouldCreateCycle("insert_node: node is an ancestor of the parent");
        throw Error("insert_node: node is already a root in this forest");
    }
    if (!forest_.spec().scope.contains(g_->node(node)))
        throw NotInScope("insert_node: node is outside the spec scope");

    const IndexEntry pe = entry(parent);  // copy, entries_ mutates below
    TreeId t = pe.tree;
    Tree& tr = trees_[t];

    const auto kids = forest_.children_of(parent);  // copy, forest mutates below
    std::uint32_t ins_value;
    std::size_t rank;
    if (pos.last) {
        ins_value = pe.post;
        rank = kids.size() + 1;
    } else {
        auto it = std::find(kids.begin(), kids.end(), pos.before);
        if (it == kids.end()) throw Error("insert_node: before-sibling is not a child of parent");
        rank = static_cast<std::size_t>(it - kids.begin()) + 1;
        ins_value = entries_.at(pos.before).pre;
    }

    MaintenanceReport rep;
    rep.subtree_size = 1;

    // Following siblings move up one rank; renumber right-to-left so the
    // dewey keys never collide mid-update.
    std::size_t comp = pe.dewey.size();
    for (std::size_t j = kids.size(); j >= rank && j >= 1; --j)
        rep.dewey_relabeled += set_sibling_rank(t, kids[j - 1], comp,
                                                static_cast<std::uint32_t>(j + 1));

    std::size_t arr_pos = pre_position(tr, ins_value);
    rep.prepost_relabeled = shift_values(t, ins_value, +2);

    IndexEntry ne;
    ne.pre = ins_value;
    ne.post = ins_value + 1;
    ne.lvl = pe.lvl + 1;
    ne.tree = t;
    ne.dewey = pe.dewey;
    ne.dewey.push_back(static_cast<std::uint32_t>(rank));
    tr.by_pre.insert(tr.by_pre.begin() + static_cast<std::ptrdiff_t>(arr_pos), node);
    tr.by_dewey.emplace(ne.dewey, node);
    entries_[node] = std::move(ne);

    forest_.attach(parent, pos, node);
    return rep;
}

MaintenanceReport StructuralIndex::delete_subtree(NodeId a, DeleteMode mode) {
    if (!indexed(a)) throw NotIndexed("delete_subtree: node is not indexed");
    const IndexEntry ae = entry(a);  // copy
    TreeId t = ae.tree;
    auto parent = forest_.parent_of(a);

    if (mode == DeleteMode::Detach) {
        if (!parent) return {};  // a root is already its own tree
        if (forest_.spec().requires_parent(g_->node(a)))
            throw ParentRequired("delete_subtree: label of node " + std::to_string(a) +
                                 " requires a parent");
    }

    MaintenanceReport rep;
    const auto nodes = forest_.subtree(a);
    rep.subtree_size = nodes.size();
    Tree& tr = trees_[t];

    // Drop the contiguous subtree slice first; the sibling renumber below
    // would otherwise collide with a's still-present dewey keys.
    std::size_t arr_pos = pre_position(tr, ae.pre);
    tr.by_pre.erase(tr.by_pre.begin() + static_cast<std::ptrdiff_t>(arr_pos),
                    tr.by_pre.begin() + static_cast<std::ptrdiff_t>(arr_pos + nodes.size()));
    for (NodeId n : nodes) tr.by_dewey.erase(entries_.at(n).dewey);

    // Following siblings slide down one rank, left to right.
    if (parent) {
        const auto kids = forest_.children_of(*parent);
        auto it = std::find(kids.begin(), kids.end(), a);
        std::size_t rank = static_cast<std::size_t>(it - kids.begin()) + 1;
        std::size_t comp = entries_.at(*parent).dewey.size();
        for (std::size_t j = rank + 1; j <= kids.size(); ++j)
            rep.dewey_relabeled += set_sibling_rank(t, kids[j - 1], comp,
                                                    static_cast<std::uint32_t>(j - 1));
    }

    rep.prepost_relabeled +=
        shift_values(t, ae.post + 1, -static_cast<std::int64_t>(2 * nodes.size()));

    if (mode == DeleteMode::Remove) {
        for (NodeId n : nodes) entries_.erase(n);
        forest_.remove_subtree(a);
        if (!parent) {
            // Whole tree gone; later trees slide down one id.
            trees_.erase(trees_.begin() + t);
            for (auto& [n, e] : entries_)
                if (e.tree > t) --e.tree;
        }
    } else {
        forest_.detach_subtree(a);
        TreeId nt = static_cast<TreeId>(trees_.size());
        trees_.emplace_back();
        index_tree_from(a, nt);
        // Every detached node gets a fresh per-tree encoding.
        rep.prepost_relabeled += nodes.size();
        rep.dewey_relabeled += nodes.size();
    }
    return rep;
}

std::vector<NodeId> StructuralIndex::nodes_in_pre_order() const {
    std::vector<NodeId> out;
    out.reserve(entries_.size());
    for (const Tree& tr : trees_) out.insert(out.end(), tr.by_pre.begin(), tr.by_pre.end());
    return out;
}

void StructuralIndex::export_csv(std::ostream& out) const {
    out << "node_id,pre,post,lvl,dewey\n";
    for (const Tree& tr : trees_) {
        for (NodeId n : tr.by_pre) {
            const IndexEntry& e = entries_.at(n);
            out << csv::escape(g_->external_key(n)) << ',' << e.pre << ',' << e.post << ','
                << e.lvl << ',' << dewey_to_string(e.dewey) << '\n';
        }
    }
}

}  // namespace treegraph
