#include "treegraph/datagen.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace treegraph {

void GenConfig::validate() const {
    if (n_nodes < 1) throw InfeasibleConfig("n_nodes must be at least 1");
    if (fanout_min < 1) throw InfeasibleConfig("fanout_min must be at least 1");
    if (fanout_min > fanout_max) throw InfeasibleConfig("fanout_min exceeds fanout_max");
    if (shape == Shape::Forest) {
        if (n_trees < 1 || n_trees > n_nodes)
            throw InfeasibleConfig("forest needs 1 <= n_trees <= n_nodes");
    } else if (n_trees != 1) {
        throw InfeasibleConfig("n_trees is only meaningful for the forest shape");
    }
    if (shape == Shape::Deep && fanout_min > 1)
        throw InfeasibleConfig("deep shape needs fanout_min <= 1 to keep extending the spine");
}

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Inclusive bounded draw; plain modulo keeps the sequence stable across
    // standard library implementations.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        return lo + engine_() % (hi - lo + 1);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace

GenResult generate(const GenConfig& c) {
    c.validate();
    Rng rng(c.seed);

    GenResult r;
    PropertyGraph& g = r.graph;

    auto add = [&g]() {
        NodeId id = static_cast<NodeId>(g.node_count());
        g.add_node({kGenNodeLabel},
                   {{"node_id", PropertyValue(static_cast<std::int64_t>(id))}});
        return id;
    };
    auto link = [&g](NodeId child, NodeId parent) {
        g.add_edge(child, parent, kGenEdgeLabel, {});
    };

    // Grows one tree of `budget` nodes under a frontier policy: Wide pops
    // the oldest pending node, Random a seeded-arbitrary one.
    auto grow_tree = [&](std::size_t budget, bool random_order) {
        NodeId root = add();
        std::size_t remaining = budget - 1;
        std::deque<NodeId> pending{root};
        while (remaining > 0) {
            NodeId p;
            if (random_order) {
                std::size_t i = static_cast<std::size_t>(rng.range(0, pending.size() - 1));
                p = pending[i];
                pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                p = pending.front();
                pending.pop_front();
            }
            std::size_t f = static_cast<std::size_t>(rng.range(c.fanout_min, c.fanout_max));
            f = std::min(f, remaining);
            for (std::size_t k = 0; k < f; ++k) {
                NodeId child = add();
                link(child, p);
                pending.push_back(child);
            }
            remaining -= f;
        }
    };

    switch (c.shape) {
        case Shape::Wide:
            grow_tree(c.n_nodes, false);
            break;
        case Shape::Random:
            grow_tree(c.n_nodes, true);
            break;
        case Shape::Deep: {
            NodeId spine = add();
            std::size_t remaining = c.n_nodes - 1;
            while (remaining > 0) {
                std::size_t f = static_cast<std::size_t>(rng.range(c.fanout_min, c.fanout_max));
                f = std::max<std::size_t>(f, 1);
                f = std::min(f, remaining);
                NodeId next = 0;
                for (std::size_t k = 0; k < f; ++k) {
                    NodeId child = add();
                    link(child, spine);
                    if (k == 0) next = child;  // first child continues the spine
                }
                spine = next;
                remaining -= f;
            }
            break;
        }
        case Shape::Forest: {
            std::size_t base = c.n_nodes / c.n_trees;
            std::size_t extra = c.n_nodes % c.n_trees;
            for (std::size_t t = 0; t < c.n_trees; ++t)
                grow_tree(base + (t < extra ? 1 : 0), false);
            break;
        }
    }

    r.spec.edge_labels = {kGenEdgeLabel};
    r.spec.scope = NodeScope::with_labels({kGenNodeLabel});
    r.spec.orientation = Orientation::ChildToParent;
    return r;
}

const std::map<std::string, GenConfig>& presets() {
    static const std::map<std::string, GenConfig> p = {
        {"WT1", {Shape::Wide, 100, 4, 6, 1, 1}},
        {"WT2", {Shape::Wide, 1000, 7, 9, 1, 2}},
        {"WT3", {Shape::Wide, 10000, 9, 11, 1, 3}},
        {"DT", {Shape::Deep, 10000, 1, 3, 1, 4}},
        {"TF", {Shape::Forest, 40, 1, 2, 11, 5}},
    };
    return p;
}

const char* shape_name(Shape s) {
    switch (s) {
        case Shape::Wide: return "wide";
        case Shape::Deep: return "deep";
        case Shape::Forest: return "forest";
        case Shape::Random: return "random";
    }
    return "?";
}

}  // namespace treegraph
