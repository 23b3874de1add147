#pragma once
// Seeded generators for synthetic trees and forests: wide trees filled
// level by level, deep trees grown as a spine with branch leaves, small
// forests, and a random shape for property tests. One common node label
// and edge label; edges run child to parent.

#include <map>
#include <string>

#include "treegraph/graph.hpp"
#include "treegraph/tree_spec.hpp"

namespace treegraph {

enum class Shape { Wide, Deep, Forest, Random };

struct GenConfig {
    Shape shape = Shape::Wide;
    std::size_t n_nodes = 1;
    std::uint32_t fanout_min = 1;
    std::uint32_t fanout_max = 1;
    std::size_t n_trees = 1;  // forest shape only
    std::uint64_t seed = 0;

    void validate() const;  // throws InfeasibleConfig
};

struct GenResult {
    PropertyGraph graph;
    TreeSpec spec;
};

inline constexpr const char* kGenNodeLabel = "Node";
inline constexpr const char* kGenEdgeLabel = "CHILD_OF";

// Exactly n_nodes nodes; every internal node's fanout lies in
// [fanout_min, fanout_max] except possibly the last one filled, which may
// fall short when the node budget runs out. Deterministic for a fixed
// config and seed.
GenResult generate(const GenConfig& c);

// The five stock configurations: WT1, WT2, WT3, DT, TF.
const std::map<std::string, GenConfig>& presets();

const char* shape_name(Shape s);

}  // namespace treegraph
