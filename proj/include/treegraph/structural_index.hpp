#pragma once
// PrePost and Dewey structural encodings over a Forest.
//
// Every tree gets one counter starting at 1 that is bumped at node entry
// (pre) and node exit (post), children visited in sibling order. Across a
// tree of N nodes the 2N values are a permutation of 1..2N, a subtree owns
// the contiguous value range [pre, post], and a node is a leaf exactly when
// post = pre + 1.
//
//   a is a strict ancestor of b  <=>  a.pre < b.pre < a.post
//                                <=>  a.dewey is a strict prefix of b.dewey
//   b is k hops below a          <=>  ancestor and a.lvl + k = b.lvl
//
// Dewey vectors hold 1-based child ranks from the root, root = [1]; the
// string form joins components with dots ("1.2.1").
//
// Maintenance: insert shifts every pre/post value at or past the insertion
// point up by two and renumbers the dewey vectors of following siblings'
// subtrees; delete compacts the remaining values back to canonical rebuild
// form. Reports carry per-codec relabel counts so benchmarks can weigh the
// update-cost tradeoff.
//
// Reads are safe concurrently; build/insert/delete need exclusive access.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "treegraph/forest.hpp"
#include "treegraph/graph.hpp"

namespace treegraph {

using DeweyVec = std::vector<std::uint32_t>;

std::string dewey_to_string(const DeweyVec& d);
// Accepts `[1-9][0-9]*(.[1-9][0-9]*)*`; anything else (leading zeros, empty
// components, zero ranks) throws MalformedDewey.
DeweyVec string_to_dewey(const std::string& s);

enum class Codec { PrePost, Dewey };

const char* codec_name(Codec c);

struct IndexEntry {
    std::uint32_t pre = 0;
    std::uint32_t post = 0;
    std::uint32_t lvl = 0;
    DeweyVec dewey;
    TreeId tree = 0;

    bool is_leaf() const { return post == pre + 1; }
    std::uint32_t subtree_size() const { return (post - pre + 1) / 2; }
};

struct MaintenanceReport {
    std::size_t prepost_relabeled = 0;  // pre-existing nodes whose pre/post changed
    std::size_t dewey_relabeled = 0;    // pre-existing nodes whose dewey vector changed
    std::size_t subtree_size = 0;       // nodes inserted, removed or detached
};

enum class DeleteMode { Remove, Detach };

class StructuralIndex {
public:
    // The graph supplies node labels for scope and parent-required checks
    // and external keys for export; it must outlive the index.
    static StructuralIndex build(const PropertyGraph& g, Forest f);

    const Forest& forest() const { return forest_; }
    const PropertyGraph& graph() const { return *g_; }

    bool indexed(NodeId n) const { return entries_.count(n) != 0; }
    const IndexEntry& entry(NodeId n) const;  // throws NotIndexed
    std::size_t size() const { return entries_.size(); }
    std::size_t tree_count() const { return trees_.size(); }

    // Strict ancestry; nodes in different trees are unrelated, not an error.
    bool is_ancestor_prepost(NodeId a, NodeId b) const;
    bool is_ancestor_dewey(NodeId a, NodeId b) const;
    bool is_ancestor(NodeId a, NodeId b, Codec c) const {
        return c == Codec::PrePost ? is_ancestor_prepost(a, b) : is_ancestor_dewey(a, b);
    }
    bool is_k_hop_ancestor(NodeId a, NodeId b, std::uint32_t k, Codec c) const;

    // Strict descendants of a, in pre order (equal to dewey-lexicographic order).
    std::vector<NodeId> descendants(NodeId a, Codec c) const;
    std::vector<NodeId> leaves_under(NodeId a, Codec c) const;
    std::vector<NodeId> children(NodeId a, Codec c = Codec::PrePost) const;
    // Strict ancestors of a, root first.
    std::vector<NodeId> ancestors(NodeId a, Codec c) const;

    MaintenanceReport insert_node(NodeId parent, InsertPos pos, NodeId node);
    MaintenanceReport delete_subtree(NodeId a, DeleteMode mode);

    // All indexed nodes, trees in id order, nodes in pre order.
    std::vector<NodeId> nodes_in_pre_order() const;

    // CSV export: node_id,pre,post,lvl,dewey with external node keys.
    void export_csv(std::ostream& out) const;

private:
    struct Tree {
        std::vector<NodeId> by_pre;        // node ids sorted by pre
        std::map<DeweyVec, NodeId> by_dewey;
    };

    StructuralIndex(const PropertyGraph& g, Forest f) : g_(&g), forest_(std::move(f)) {}

    void index_tree_from(NodeId root, TreeId t, std::uint32_t base_lvl, DeweyVec root_dewey);
    std::size_t pre_position(const Tree& tr, std::uint32_t pre) const;
    // Shifts every pre/post value >= from in tree t by delta, counting
    // touched nodes; the dewey side stays put.
    std::size_t shift_values(TreeId t, std::uint32_t from, std::int64_t delta);
    // Renumbers the sibling rank component of sib's subtree to new_rank.
    std::size_t set_sibling_rank(TreeId t, NodeId sib, std::size_t component,
                                 std::uint32_t new_rank);

    const PropertyGraph* g_;
    Forest forest_;
    std::unordered_map<NodeId, IndexEntry> entries_;
    std::vector<Tree> trees_;
};

}  // namespace treegraph
