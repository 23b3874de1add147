#pragma once
// Benchmark harness: runs (graph, query, plan) cases serially, takes the
// median of an odd number of repetitions to damp caching effects, applies a
// per-run timeout, and reports speedups against each case's designated
// baseline plan. A timed-out baseline is recorded at the timeout value, so
// derived speedups are lower bounds and flagged as such.
//
// Timing never includes graph loading, index building or start-node
// resolution. Capture is in microseconds, reporting in milliseconds.

#include <chrono>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "treegraph/forest.hpp"
#include "treegraph/graph.hpp"
#include "treegraph/query_engine.hpp"
#include "treegraph/structural_index.hpp"

namespace treegraph {

enum class QueryKind { Desc, Leaf, AncDesc, Children };

const char* query_kind_name(QueryKind q);
std::optional<QueryKind> query_kind_from_name(const std::string& name);

struct StartRule {
    enum class Kind { Root, Random, FixedKey };
    Kind kind = Kind::Root;
    std::string key;  // FixedKey: external node_id text

    static StartRule root() { return {}; }
    static StartRule random() { return {Kind::Random, {}}; }
    static StartRule fixed(std::string key) { return {Kind::FixedKey, std::move(key)}; }
};

struct BenchCase {
    std::string graph;
    QueryKind query = QueryKind::Desc;
    PlanKind plan = PlanKind::BaselineTraversal;
    StartRule start;
    std::size_t repetitions = 5;  // must be odd
    std::chrono::milliseconds timeout{60000};
    PlanKind baseline = PlanKind::BaselineJoin;
    std::uint64_t seed = 42;  // random start / partner draws
};

// A loaded graph with its verified forest index, ready to benchmark.
// unique_ptrs keep the index's graph reference stable under container moves.
struct BenchGraph {
    std::unique_ptr<PropertyGraph> graph;
    TreeSpec spec;
    std::unique_ptr<StructuralIndex> index;

    static BenchGraph prepare(PropertyGraph g, TreeSpec spec);  // throws on violations
};

struct BenchRow {
    std::string graph;
    QueryKind query = QueryKind::Desc;
    PlanKind plan = PlanKind::BaselineTraversal;
    std::uint64_t median_us = 0;
    std::uint64_t min_us = 0;
    std::uint64_t max_us = 0;
    std::size_t result_count = 0;
    bool timed_out = false;
    double speedup = 1.0;
    bool lower_bound = false;  // speedup is a bound: baseline timed out or
                               // the denominator was clamped to 1us
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<std::string> errors;  // per-case failures, cases skipped
};

BenchReport run_suite(const std::vector<BenchCase>& cases,
                      const std::map<std::string, BenchGraph>& graphs);

// graph,query,plan,median_ms,min_ms,max_ms,result_count,speedup,lower_bound_flag
std::string emit_report_csv(const BenchReport& r);
std::string emit_report_table(const BenchReport& r);

// Self-consistency check over an emitted CSV: every speedup must equal
// baseline_median / plan_median recomputed from the file. Returns an error
// description, or nullopt when the file is consistent.
std::optional<std::string> verify_report_csv(const std::string& csv_text);

// Bench config document (key = value lines, # comments):
//
//   graphs = WT1, DT         # preset names or graph directories
//   queries = desc, leaf, ad, children
//   plans = baseline_traversal, baseline_join, index_prepost, index_dewey
//   repetitions = 5
//   timeout_ms = 60000
//   start = root             # root | random | key:<node_id>
//   baseline = baseline_join
//   seed = 42
struct BenchConfig {
    std::vector<std::string> graphs;
    std::vector<QueryKind> queries;
    std::vector<PlanKind> plans;
    std::size_t repetitions = 5;
    std::chrono::milliseconds timeout{60000};
    StartRule start;
    PlanKind baseline = PlanKind::BaselineJoin;
    std::uint64_t seed = 42;

    std::vector<BenchCase> cases() const;
};

BenchConfig parse_bench_config(std::istream& in);
BenchConfig parse_bench_config_file(const std::string& path);

}  // namespace treegraph
