#include "treegraph/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "treegraph/csv.hpp"

namespace treegraph {

const char* query_kind_name(QueryKind q) {
    switch (q) {
        case QueryKind::Desc: return "desc";
        case QueryKind::Leaf: return "leaf";
        case QueryKind::AncDesc: return "ad";
        case QueryKind::Children: return "children";
    }
    return "?";
}

std::optional<QueryKind> query_kind_from_name(const std::string& name) {
    if (name == "desc") return QueryKind::Desc;
    if (name == "leaf") return QueryKind::Leaf;
    if (name == "ad") return QueryKind::AncDesc;
    if (name == "children") return QueryKind::Children;
    return std::nullopt;
}

BenchGraph BenchGraph::prepare(PropertyGraph g, TreeSpec spec) {
    BenchGraph bg;
    bg.graph = std::make_unique<PropertyGraph>(std::move(g));
    bg.spec = std::move(spec);
    auto verified = verify_forest(*bg.graph, bg.spec);
    if (!treegraph::verified(verified))
        throw Error("graph fails tree verification: " +
                    violation_of(verified).describe(*bg.graph));
    bg.index = std::make_unique<StructuralIndex>(
        StructuralIndex::build(*bg.graph, std::move(std::get<Forest>(verified))));
    return bg;
}

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t seed) {
    std::uint64_t h = 1469598103934665603ull ^ seed;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Start nodes are drawn per (graph, query, seed) so every plan of one group
// answers the identical question.
std::pair<NodeId, NodeId> resolve_start(const BenchCase& c, const BenchGraph& bg) {
    const StructuralIndex& idx = *bg.index;
    auto all = idx.nodes_in_pre_order();
    if (all.empty()) throw Error("graph " + c.graph + " has no indexed nodes");

    NodeId first = 0;
    switch (c.start.kind) {
        case StartRule::Kind::Root:
            first = idx.forest().roots().front();
            break;
        case StartRule::Kind::Random: {
            std::mt19937_64 rng(fnv1a(c.graph + "/" + query_kind_name(c.query), c.seed));
            first = all[rng() % all.size()];
            break;
        }
        case StartRule::Kind::FixedKey: {
            auto id = bg.graph->find_by_key(PropertyValue(c.start.key));
            if (!id) {
                // keys are commonly integers; retry with the int form
                try {
                    id = bg.graph->find_by_key(
                        PropertyValue(static_cast<std::int64_t>(std::stoll(c.start.key))));
                } catch (const std::exception&) {
                }
            }
            if (!id) throw Error("no node with key '" + c.start.key + "' in " + c.graph);
            first = *id;
            break;
        }
    }
    // The partner node for ancestor-descendant checks.
    std::mt19937_64 rng(fnv1a(c.graph + "/" + query_kind_name(c.query) + "/partner", c.seed));
    NodeId second = all[rng() % all.size()];
    return {first, second};
}

QueryResult run_one(const BenchCase& c, const BenchGraph& bg, NodeId a, NodeId b) {
    RunLimits limits = RunLimits::timeout(c.timeout);
    switch (c.query) {
        case QueryKind::Desc:
            return q_desc(*bg.graph, bg.spec, bg.index.get(), a, c.plan, limits);
        case QueryKind::Leaf:
            return q_leaf(*bg.graph, bg.spec, bg.index.get(), a, c.plan, limits);
        case QueryKind::AncDesc:
            return q_anc_desc(*bg.graph, bg.spec, bg.index.get(), a, b, c.plan, limits);
        case QueryKind::Children:
            return q_children(*bg.graph, bg.spec, bg.index.get(), a, c.plan, limits);
    }
    throw Error("unreachable");
}

std::uint64_t median_of(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];  // repetitions are odd
}

}  // namespace

BenchReport run_suite(const std::vector<BenchCase>& cases,
                      const std::map<std::string, BenchGraph>& graphs) {
    BenchReport report;

    for (const BenchCase& c : cases) {
        if (c.repetitions < 1 || c.repetitions % 2 == 0) {
            report.errors.push_back("case " + c.graph + "/" + query_kind_name(c.query) + "/" +
                                    plan_name(c.plan) + ": repetitions must be odd");
            continue;
        }
        auto git = graphs.find(c.graph);
        if (git == graphs.end()) {
            report.errors.push_back("case references unknown graph " + c.graph);
            continue;
        }
        const BenchGraph& bg = git->second;
        try {
            auto [a, b] = resolve_start(c, bg);

            std::vector<std::uint64_t> times_us;
            std::size_t result_count = 0;
            bool timed_out = false;
            std::uint64_t timeout_us =
                static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::microseconds>(c.timeout).count());
            for (std::size_t rep = 0; rep < c.repetitions; ++rep) {
                QueryResult r = run_one(c, bg, a, b);
                if (r.timed_out) {
                    times_us.push_back(timeout_us);
                    timed_out = true;
                    break;  // no point rerunning a timed-out case
                }
                times_us.push_back(static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::microseconds>(r.elapsed).count()));
                result_count = r.related ? (*r.related ? 1 : 0) : r.nodes.size();
            }

            BenchRow row;
            row.graph = c.graph;
            row.query = c.query;
            row.plan = c.plan;
            row.median_us = median_of(times_us);
            row.min_us = *std::min_element(times_us.begin(), times_us.end());
            row.max_us = *std::max_element(times_us.begin(), times_us.end());
            row.result_count = result_count;
            row.timed_out = timed_out;
            report.rows.push_back(std::move(row));
        } catch (const Error& e) {
            report.errors.push_back("case " + c.graph + "/" + query_kind_name(c.query) + "/" +
                                    plan_name(c.plan) + ": " + e.what());
        }
    }

    // Speedups against each group's designated baseline row; a row without
    // its baseline in the suite is its own baseline (speedup 1).
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        BenchRow& row = report.rows[i];
        const BenchCase& c = cases[0];  // baseline kind is uniform per suite
        (void)c;
        const BenchRow* base = &row;
        for (const BenchRow& cand : report.rows) {
            if (cand.graph != row.graph || cand.query != row.query) continue;
            // the designated baseline for this row's case
            PlanKind want = PlanKind::BaselineJoin;
            for (const BenchCase& bc : cases)
                if (bc.graph == row.graph && bc.query == row.query && bc.plan == row.plan) {
                    want = bc.baseline;
                    break;
                }
            if (cand.plan == want) {
                base = &cand;
                break;
            }
        }
        std::uint64_t denom = std::max<std::uint64_t>(row.median_us, 1);
        row.speedup = static_cast<double>(base->median_us) / static_cast<double>(denom);
        row.lower_bound = base->timed_out || row.timed_out || row.median_us == 0;
    }
    return report;
}

namespace {

std::string format_us_as_ms(std::uint64_t us) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%llu.%03llu", static_cast<unsigned long long>(us / 1000),
                  static_cast<unsigned long long>(us % 1000));
    return buf;
}

std::string format_speedup(double s) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", s);
    return buf;
}

}  // namespace

std::string emit_report_csv(const BenchReport& r) {
    std::ostringstream out;
    out << "graph,query,plan,median_ms,min_ms,max_ms,result_count,speedup,lower_bound_flag\n";
    for (const BenchRow& row : r.rows) {
        out << row.graph << ',' << query_kind_name(row.query) << ',' << plan_name(row.plan)
            << ',' << format_us_as_ms(row.median_us) << ',' << format_us_as_ms(row.min_us) << ','
            << format_us_as_ms(row.max_us) << ',' << row.result_count << ','
            << format_speedup(row.speedup) << ',' << (row.lower_bound ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string emit_report_table(const BenchReport& r) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-8s %-9s %-19s %12s %8s %10s\n", "graph", "query",
                  "plan", "median_ms", "count", "speedup");
    out << line;
    for (const BenchRow& row : r.rows) {
        std::snprintf(line, sizeof(line), "%-8s %-9s %-19s %12s %8zu %s%9.3g%s\n",
                      row.graph.c_str(), query_kind_name(row.query), plan_name(row.plan),
                      format_us_as_ms(row.median_us).c_str(), row.result_count,
                      row.lower_bound ? ">=" : "  ", row.speedup,
                      row.timed_out ? "  TIMEOUT" : "");
        out << line;
    }
    for (const auto& e : r.errors) out << "error: " << e << '\n';
    return out.str();
}

std::optional<std::string> verify_report_csv(const std::string& csv_text) {
    std::istringstream in(csv_text);
    auto rows = csv::read_all(in);
    if (rows.empty()) return "empty report";

    struct Parsed {
        std::string graph, query, plan;
        double median_ms, speedup;
    };
    std::vector<Parsed> parsed;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i].fields;
        if (f.size() != 9) return "row " + std::to_string(i) + " has wrong column count";
        parsed.push_back(Parsed{f[0].text, f[1].text, f[2].text, std::stod(f[3].text),
                                std::stod(f[7].text)});
    }
    for (const auto& p : parsed) {
        // the row's baseline: same graph+query, a baseline_* plan; join wins
        const Parsed* base = &p;
        for (const auto& cand : parsed)
            if (cand.graph == p.graph && cand.query == p.query &&
                cand.plan == "baseline_join") {
                base = &cand;
                break;
            }
        double denom = std::max(p.median_ms, 0.001);
        double expect = base->median_ms / denom;
        double diff = std::abs(expect - p.speedup);
        if (diff > 1e-6 * std::max(1.0, std::abs(expect)))
            return "speedup mismatch for " + p.graph + "/" + p.query + "/" + p.plan;
    }
    return std::nullopt;
}

std::vector<BenchCase> BenchConfig::cases() const {
    std::vector<BenchCase> out;
    for (const auto& g : graphs)
        for (QueryKind q : queries)
            for (PlanKind p : plans) {
                BenchCase c;
                c.graph = g;
                c.query = q;
                c.plan = p;
                c.start = start;
                c.repetitions = repetitions;
                c.timeout = timeout;
                c.baseline = baseline;
                c.seed = seed;
                out.push_back(std::move(c));
            }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string part = trim(comma == std::string::npos ? s.substr(start)
                                                           : s.substr(start, comma - start));
        if (!part.empty()) out.push_back(part);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

BenchConfig parse_bench_config(std::istream& in) {
    BenchConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (key == "graphs") {
            cfg.graphs = split_list(value);
        } else if (key == "queries") {
            cfg.queries.clear();
            for (const auto& q : split_list(value)) {
                auto k = query_kind_from_name(q);
                if (!k) throw ParseError(lineno, "unknown query '" + q + "'");
                cfg.queries.push_back(*k);
            }
        } else if (key == "plans") {
            cfg.plans.clear();
            for (const auto& p : split_list(value)) {
                auto k = plan_from_name(p);
                if (!k) throw ParseError(lineno, "unknown plan '" + p + "'");
                cfg.plans.push_back(*k);
            }
        } else if (key == "repetitions") {
            cfg.repetitions = std::stoul(value);
            if (cfg.repetitions < 1 || cfg.repetitions % 2 == 0)
                throw ParseError(lineno, "repetitions must be odd");
        } else if (key == "timeout_ms") {
            cfg.timeout = std::chrono::milliseconds(std::stoll(value));
        } else if (key == "start") {
            if (value == "root") cfg.start = StartRule::root();
            else if (value == "random") cfg.start = StartRule::random();
            else if (value.rfind("key:", 0) == 0) cfg.start = StartRule::fixed(value.substr(4));
            else throw ParseError(lineno, "start must be root, random or key:<id>");
        } else if (key == "baseline") {
            auto k = plan_from_name(value);
            if (!k) throw ParseError(lineno, "unknown baseline plan '" + value + "'");
            cfg.baseline = *k;
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else {
            throw ParseError(lineno, "unknown key '" + key + "'");
        }
    }
    if (cfg.graphs.empty()) throw ParseError(lineno, "config lists no graphs");
    if (cfg.queries.empty()) throw ParseError(lineno, "config lists no queries");
    if (cfg.plans.empty()) throw ParseError(lineno, "config lists no plans");
    return cfg;
}

BenchConfig parse_bench_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    return parse_bench_config(f);
}

}  // namespace treegraph
