#pragma once
// A small Cypher-like pattern language, just big enough for the benchmark
// queries: one MATCH with a two-node chain, a conjunctive WHERE over
// equality predicates, and a RETURN list.
//
//   query := "MATCH" node edge node "WHERE" pred ("AND" pred)* "RETURN" var ("," var)*
//   node  := "(" var (":" label)? ")"
//   edge  := ("-"|"<-") "[" (":" label)? ("*" (int (".." int)?)?)? "]" ("-"|"->")
//   pred  := var "." name "=" literal
//
// Keywords are case-insensitive; whitespace is free. Errors carry the
// character position and an expected-token hint.

#include <optional>
#include <string>
#include <vector>

#include "treegraph/property.hpp"

namespace treegraph {

struct NodePattern {
    std::string var;
    std::optional<std::string> label;

    bool operator==(const NodePattern&) const = default;
};

enum class EdgeDir { Right, Left, Undirected };

struct LengthSpec {
    bool variable = false;              // false: plain single hop
    std::uint32_t min = 1;
    std::optional<std::uint32_t> max = 1;  // nullopt = unbounded

    static LengthSpec one_hop() { return {}; }
    static LengthSpec any() { return {true, 1, std::nullopt}; }
    static LengthSpec exactly(std::uint32_t k) { return {true, k, k}; }
    static LengthSpec between(std::uint32_t k, std::uint32_t m) { return {true, k, m}; }

    bool operator==(const LengthSpec&) const = default;
};

struct EdgePattern {
    std::optional<std::string> label;
    EdgeDir dir = EdgeDir::Right;
    LengthSpec len;

    bool operator==(const EdgePattern&) const = default;
};

struct Predicate {
    std::string var;
    std::string prop;
    PropertyValue literal;

    bool operator==(const Predicate&) const = default;
};

struct PatternQuery {
    NodePattern left;
    EdgePattern edge;
    NodePattern right;
    std::vector<Predicate> where;
    std::vector<std::string> return_vars;

    bool mentions(const std::string& var) const {
        return left.var == var || right.var == var;
    }
    std::vector<const Predicate*> predicates_on(const std::string& var) const;

    bool operator==(const PatternQuery&) const = default;
};

// Throws SyntaxError with position and expected-token hint. Also validates
// that WHERE / RETURN variables are declared in the MATCH clause.
PatternQuery parse_query(const std::string& text);

// Canonical text form; parse_query(print_query(q)) == q.
std::string print_query(const PatternQuery& q);

}  // namespace treegraph
