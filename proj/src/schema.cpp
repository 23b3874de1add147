#include "treegraph/schema.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

namespace treegraph {

std::string NodeType::display() const {
    if (labels.empty()) return "(unlabeled)";
    std::string out;
    for (const auto& l : labels) {
        if (!out.empty()) out.push_back(':');
        out += l;
    }
    return out;
}

std::string Cardinality::display() const {
    std::string out = "[" + std::to_string(min) + "..";
    out += max ? std::to_string(*max) : "*";
    out += "]";
    return out;
}

std::optional<std::size_t> SchemaGraph::find_node_type(
    const std::set<std::string>& labels) const {
    for (std::size_t i = 0; i < node_types.size(); ++i)
        if (node_types[i].labels == labels) return i;
    return std::nullopt;
}

SchemaGraph infer_schema(const PropertyGraph& g) {
    SchemaGraph s;

    std::map<std::set<std::string>, std::size_t> type_index;
    std::vector<std::size_t> node_type_of(g.node_count());
    for (const Node& n : g.nodes()) {
        auto [it, fresh] = type_index.emplace(n.labels, s.node_types.size());
        if (fresh) {
            s.node_types.push_back(NodeType{n.labels});
            s.nodes_per_type.push_back(0);
        }
        node_type_of[n.id] = it->second;
        ++s.nodes_per_type[it->second];
    }

    std::map<std::tuple<std::string, std::size_t, std::size_t>, std::size_t> edge_index;
    std::vector<std::size_t> edge_type_of(g.edge_count());
    for (const Edge& e : g.edges()) {
        auto key = std::make_tuple(e.label, node_type_of[e.src], node_type_of[e.dst]);
        auto [it, fresh] = edge_index.emplace(key, s.edge_types.size());
        if (fresh) {
            s.edge_types.push_back(
                EdgeType{e.label, node_type_of[e.src], node_type_of[e.dst], {}, {}});
            s.edges_per_type.push_back(0);
        }
        edge_type_of[e.id] = it->second;
        ++s.edges_per_type[it->second];
    }

    // Observed tight cardinalities. Degree counts per (edge type, node),
    // then min/max over every node of the respective type, zeros included.
    std::size_t et_count = s.edge_types.size();
    std::vector<std::unordered_map<NodeId, std::uint64_t>> out_deg(et_count), in_deg(et_count);
    for (const Edge& e : g.edges()) {
        std::size_t t = edge_type_of[e.id];
        ++out_deg[t][e.src];
        ++in_deg[t][e.dst];
    }
    for (std::size_t t = 0; t < et_count; ++t) {
        EdgeType& et = s.edge_types[t];
        std::uint64_t out_min = UINT64_MAX, out_max = 0, in_min = UINT64_MAX, in_max = 0;
        for (const Node& n : g.nodes()) {
            if (node_type_of[n.id] == et.src_type) {
                auto it = out_deg[t].find(n.id);
                std::uint64_t d = it == out_deg[t].end() ? 0 : it->second;
                out_min = std::min(out_min, d);
                out_max = std::max(out_max, d);
            }
            if (node_type_of[n.id] == et.dst_type) {
                auto it = in_deg[t].find(n.id);
                std::uint64_t d = it == in_deg[t].end() ? 0 : it->second;
                in_min = std::min(in_min, d);
                in_max = std::max(in_max, d);
            }
        }
        et.out_card = {out_min, out_max};
        et.in_card = {in_min, in_max};
    }
    return s;
}

std::string format_schema(const SchemaGraph& s) {
    std::ostringstream out;
    out << "node types:\n";
    for (std::size_t i = 0; i < s.node_types.size(); ++i)
        out << "  " << i << "  " << s.node_types[i].display() << "  (" << s.nodes_per_type[i]
            << " nodes)\n";
    out << "edge types:\n";
    for (std::size_t i = 0; i < s.edge_types.size(); ++i) {
        const EdgeType& e = s.edge_types[i];
        out << "  " << e.label << "  " << s.node_types[e.src_type].display() << " -> "
            << s.node_types[e.dst_type].display() << "  out " << e.out_card.display() << "  in "
            << e.in_card.display() << "  (" << s.edges_per_type[i] << " edges)\n";
    }
    return out.str();
}

namespace {

std::uint64_t parent_max(const EdgeType& e, Orientation o) {
    const Cardinality& c = o == Orientation::ChildToParent ? e.out_card : e.in_card;
    return c.max.value_or(UINT64_MAX);
}

std::uint64_t parent_min(const EdgeType& e, Orientation o) {
    return (o == Orientation::ChildToParent ? e.out_card : e.in_card).min;
}

std::size_t child_type(const EdgeType& e, Orientation o) {
    return o == Orientation::ChildToParent ? e.src_type : e.dst_type;
}

std::size_t par_type(const EdgeType& e, Orientation o) {
    return o == Orientation::ChildToParent ? e.dst_type : e.src_type;
}

// A label set is feasible when no node type can end up with two parents:
// per node type, the summed parent-side maxima of the participating edge
// types on its child side stay <= 1.
bool feasible(const SchemaGraph& s, const std::vector<std::size_t>& edge_types_of_set,
              Orientation o) {
    std::unordered_map<std::size_t, std::uint64_t> budget;
    for (std::size_t t : edge_types_of_set) {
        const EdgeType& e = s.edge_types[t];
        std::uint64_t m = parent_max(e, o);
        if (m > 1) return false;
        if ((budget[child_type(e, o)] += m) > 1) return false;
    }
    return true;
}

bool type_parent_graph_acyclic(const SchemaGraph& s,
                               const std::vector<std::size_t>& edge_types_of_set,
                               Orientation o) {
    std::map<std::size_t, std::vector<std::size_t>> up;  // child type -> parent types
    for (std::size_t t : edge_types_of_set) {
        const EdgeType& e = s.edge_types[t];
        if (child_type(e, o) == par_type(e, o)) return false;  // self-typed
        up[child_type(e, o)].push_back(par_type(e, o));
    }
    // Parent-chain walk over node types.
    std::map<std::size_t, int> color;  // 0 white, 1 on path, 2 done
    std::vector<std::size_t> stack;
    for (const auto& [start, _] : up) {
        if (color[start] != 0) continue;
        stack.assign(1, start);
        std::vector<std::size_t> path;
        while (!stack.empty()) {
            std::size_t cur = stack.back();
            stack.pop_back();
            if (color[cur] == 1) return false;
            if (color[cur] == 2) continue;
            color[cur] = 1;
            path.push_back(cur);
            auto it = up.find(cur);
            if (it != up.end())
                for (std::size_t p : it->second) stack.push_back(p);
        }
        for (std::size_t v : path) color[v] = 2;
    }
    return true;
}

TreeCandidate make_candidate(const SchemaGraph& s, const std::set<std::string>& labels,
                             const std::vector<std::size_t>& edge_types_of_set, Orientation o) {
    TreeCandidate c;
    c.spec.edge_labels = labels;
    c.spec.orientation = o;

    std::set<std::size_t> participating;
    for (std::size_t t : edge_types_of_set) {
        participating.insert(s.edge_types[t].src_type);
        participating.insert(s.edge_types[t].dst_type);
    }
    bool any_unlabeled = false;
    std::set<std::string> scope_labels;
    for (std::size_t nt : participating) {
        if (s.node_types[nt].labels.empty()) any_unlabeled = true;
        for (const auto& l : s.node_types[nt].labels) scope_labels.insert(l);
    }
    c.spec.scope = any_unlabeled ? NodeScope::any_node() : NodeScope::with_labels(scope_labels);

    // A child-side minimum of 1 means every node of that type has a parent.
    for (std::size_t t : edge_types_of_set) {
        const EdgeType& e = s.edge_types[t];
        if (parent_min(e, o) >= 1)
            for (const auto& l : s.node_types[child_type(e, o)].labels)
                c.spec.parent_required.insert(l);
    }

    c.schema_sufficient = type_parent_graph_acyclic(s, edge_types_of_set, o);
    c.needs_instance_check = !c.schema_sufficient;
    return c;
}

}  // namespace

CandidateScan find_tree_candidates(const SchemaGraph& s) {
    CandidateScan scan;

    // Group edge types by label, skipping sequence-shaped labels: self-typed
    // with max one successor and one predecessor per node, a linked list.
    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t t = 0; t < s.edge_types.size(); ++t)
        by_label[s.edge_types[t].label].push_back(t);

    std::vector<std::string> labels;
    for (const auto& [label, types] : by_label) {
        bool all_sequence = true;
        for (std::size_t t : types) {
            const EdgeType& e = s.edge_types[t];
            bool seq = e.src_type == e.dst_type && e.out_card.max.value_or(UINT64_MAX) <= 1 &&
                       e.in_card.max.value_or(UINT64_MAX) <= 1;
            if (!seq) all_sequence = false;
        }
        if (all_sequence) scan.sequence_hints.push_back(label);
        else labels.push_back(label);
    }

    auto edge_types_of = [&](const std::vector<std::string>& set) {
        std::vector<std::size_t> out;
        for (const auto& l : set)
            for (std::size_t t : by_label[l]) out.push_back(t);
        return out;
    };

    for (Orientation o : {Orientation::ChildToParent, Orientation::ParentToChild}) {
        // Qualifying labels, then maximal feasible subsets by DFS. Feasibility
        // is downward closed, so maximality means no single label extends.
        std::vector<std::string> qualifying;
        for (const auto& l : labels)
            if (feasible(s, edge_types_of({l}), o)) qualifying.push_back(l);
        if (qualifying.empty()) continue;

        std::set<std::set<std::string>> emitted;
        std::vector<std::string> current;

        auto emit_if_maximal = [&](const std::vector<std::string>& set) {
            for (const auto& l : qualifying) {
                if (std::find(set.begin(), set.end(), l) != set.end()) continue;
                auto extended = set;
                extended.push_back(l);
                if (feasible(s, edge_types_of(extended), o)) return;
            }
            std::set<std::string> key(set.begin(), set.end());
            if (!emitted.insert(key).second) return;
            scan.candidates.push_back(make_candidate(s, key, edge_types_of(set), o));
        };

        std::function<void(std::size_t)> grow = [&](std::size_t from) {
            bool extended = false;
            for (std::size_t i = from; i < qualifying.size(); ++i) {
                current.push_back(qualifying[i]);
                if (feasible(s, edge_types_of(current), o)) {
                    extended = true;
                    grow(i + 1);
                }
                current.pop_back();
            }
            if (!extended && !current.empty()) emit_if_maximal(current);
        };
        grow(0);
    }
    return scan;
}

}  // namespace treegraph
