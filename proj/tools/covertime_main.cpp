#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "covertime/chains.hpp"
#include "covertime/cover.hpp"
#include "covertime/errors.hpp"
#include "covertime/graph.hpp"
#include "covertime/montecarlo.hpp"
#include "covertime/output.hpp"
#include "covertime/rng.hpp"
#include "covertime/series.hpp"
#include "covertime/version.hpp"

namespace {

using namespace covertime;

constexpr int kExitUsage = 2;
constexpr int kExitRefused = 3;
constexpr int kExitIo = 4;
constexpr double kBandConfidence = 0.99;

/// Problems with the input file (unreadable or invalid content); exit code 4.
class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string graph_path;
    std::string generate;
    std::string format = "csv";
    std::string method;
    std::string methods;
    std::string order = "dfs";
    int start = 0;
    int target = 0;
    int node_i = 0;
    int node_j = 0;
    int horizon = 0; // 0: use the default for the graph size
    int cap = kDefaultExactCap;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    bool clamp = false;
};

void add_graph_options(CLI::App* cmd, Options& opts) {
    auto* graph = cmd->add_option("--graph", opts.graph_path, "edge-list file");
    auto* gen = cmd->add_option("--generate", opts.generate,
                                "inline generator KIND:N[:P], e.g. complete:10 or "
                                "erdos_renyi:20:0.3");
    graph->excludes(gen);
    cmd->add_option("--horizon", opts.horizon, "number of steps (default: 100*n*ln n)");
    cmd->add_option("--seed", opts.seed, "seed for generators and simulation");
    cmd->add_option("--format", opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

Graph generate_from_spec(const std::string& spec, std::uint64_t seed) {
    std::vector<std::string> parts;
    std::stringstream stream(spec);
    std::string part;
    while (std::getline(stream, part, ':')) parts.push_back(part);
    if (parts.size() < 2) throw QueryError("generator spec must look like KIND:N[:P]");

    GraphKind kind;
    if (parts[0] == "complete") kind = GraphKind::complete;
    else if (parts[0] == "cycle") kind = GraphKind::cycle;
    else if (parts[0] == "path") kind = GraphKind::path;
    else if (parts[0] == "erdos_renyi") kind = GraphKind::erdos_renyi;
    else throw QueryError("unknown graph kind '" + parts[0] + "'");

    int n = 0;
    double p = 0.0;
    try {
        n = std::stoi(parts[1]);
        if (parts.size() > 2) p = std::stod(parts[2]);
    } catch (const std::exception&) {
        throw QueryError("bad generator spec '" + spec + "'");
    }
    if (kind == GraphKind::erdos_renyi && parts.size() < 3) {
        throw QueryError("erdos_renyi needs an edge probability: erdos_renyi:N:P");
    }
    return generate_graph(kind, n, p, seed);
}

Graph resolve_graph(const Options& opts) {
    if (opts.graph_path.empty() == opts.generate.empty()) {
        throw QueryError("exactly one of --graph or --generate is required");
    }
    if (!opts.generate.empty()) return generate_from_spec(opts.generate, opts.seed);

    std::ifstream file(opts.graph_path);
    if (!file) throw FileError("cannot open '" + opts.graph_path + "'");
    try {
        return parse_edge_list(file);
    } catch (const ParseError& e) {
        throw FileError(opts.graph_path + ": " + e.what());
    } catch (const GraphError& e) {
        throw FileError(opts.graph_path + ": " + e.what());
    }
}

int resolve_horizon(const Options& opts, int node_count) {
    if (opts.horizon < 0) throw QueryError("horizon must be positive");
    return opts.horizon == 0 ? default_horizon(node_count) : opts.horizon;
}

output::RunMetadata base_metadata(const Graph& graph, int horizon, const std::string& command,
                                  const std::string& method) {
    output::RunMetadata meta;
    meta.tool = "covertime";
    meta.version = kVersion;
    meta.command = command;
    meta.method = method;
    meta.graph_hash = graph.canonical_hash();
    meta.nodes = graph.node_count();
    meta.edge_count = graph.edge_count();
    meta.horizon = horizon;
    return meta;
}

std::vector<output::OutputRecord> make_records(const std::vector<double>& cdf,
                                               const std::vector<double>& pmf) {
    std::vector<output::OutputRecord> records(cdf.size());
    for (std::size_t t = 0; t < cdf.size(); ++t) {
        records[t].t = static_cast<int>(t + 1);
        records[t].cdf = cdf[t];
        records[t].pmf = pmf[t];
    }
    return records;
}

void emit_series(const Options& opts, const output::RunMetadata& meta,
                 const std::vector<output::OutputRecord>& records) {
    if (opts.format == "json") {
        output::write_series_json(std::cout, meta, records);
    } else {
        output::write_series_csv(std::cout, meta, records);
    }
}

DistributionSeries maybe_clamp(const Options& opts, DistributionSeries series) {
    return opts.clamp ? monotone_clamp(std::move(series)) : series;
}

NodeOrdering resolve_ordering(const Options& opts, const Graph& graph, int start) {
    if (opts.order == "dfs") return default_ordering(graph, start);
    const std::string prefix = "explicit:";
    if (opts.order.rfind(prefix, 0) != 0) {
        throw QueryError("--order must be dfs or explicit:<comma-separated permutation>");
    }
    NodeOrdering ordering;
    std::stringstream stream(opts.order.substr(prefix.size()));
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            ordering.order.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw QueryError("bad ordering entry '" + item + "'");
        }
    }
    if (ordering.order.size() >= 2) {
        ordering.pair_adjacent.resize(ordering.order.size() - 1);
        for (std::size_t i = 0; i + 1 < ordering.order.size(); ++i) {
            ordering.pair_adjacent[i] =
                graph.has_edge(ordering.order[i], ordering.order[i + 1]) ? 1 : 0;
        }
    }
    return ordering;
}

int run_hitting(const Options& opts) {
    const Graph graph = resolve_graph(opts);
    const TransitionMatrix matrix = transition_matrix(graph);
    const int horizon = resolve_horizon(opts, graph.node_count());
    const DistributionSeries series = hitting_cdf(matrix, opts.start, opts.target, horizon);
    const PmfSeries pmf = pmf_from_cdf(series);

    auto meta = base_metadata(graph, horizon, "hitting", "absorbing-propagation");
    meta.start = opts.start;
    meta.target = opts.target;
    emit_series(opts, meta, make_records(series.cdf, pmf.pmf));
    return 0;
}

int run_commute(const Options& opts) {
    const Graph graph = resolve_graph(opts);
    const TransitionMatrix matrix = transition_matrix(graph);
    const int horizon = resolve_horizon(opts, graph.node_count());

    const std::string method = opts.method.empty() ? "chain" : opts.method;
    DistributionSeries series{SeriesKind::commute, {}};
    PmfSeries pmf;
    if (method == "chain") {
        series = commute_cdf(matrix, opts.node_i, opts.node_j, horizon);
        pmf = pmf_from_cdf(series);
    } else if (method == "convolution") {
        pmf = commute_pmf_convolution(matrix, opts.node_i, opts.node_j, horizon);
        series.cdf.resize(pmf.pmf.size());
        double cumulative = 0.0;
        for (std::size_t t = 0; t < pmf.pmf.size(); ++t) {
            cumulative += pmf.pmf[t];
            series.cdf[t] = cumulative;
        }
    } else {
        throw QueryError("commute method must be chain or convolution");
    }

    auto meta = base_metadata(graph, horizon, "commute", method);
    meta.node_i = opts.node_i;
    meta.node_j = opts.node_j;
    emit_series(opts, meta, make_records(series.cdf, pmf.pmf));
    return 0;
}

std::string canonical_method(const std::string& method) {
    if (method == "monte-carlo") return "mc";
    return method;
}

DistributionSeries closed_form_cover(const TransitionMatrix& matrix, int start, int horizon,
                                     const std::string& requested) {
    const Graph& graph = matrix.graph();
    if (requested == "closed-complete" || (requested == "closed" && is_complete(graph))) {
        if (!is_complete(graph)) throw QueryError("closed-complete requires a complete graph");
        return cover_cdf_complete(graph.node_count(), horizon);
    }
    if (requested == "closed-cycle" || (requested == "closed" && is_cycle(graph))) {
        return cover_cdf_cycle(matrix, start, horizon);
    }
    if (requested == "closed-path" || (requested == "closed" && is_path(graph))) {
        return cover_cdf_path(matrix, start, horizon);
    }
    throw QueryError("no closed form: the graph is not complete, a cycle, or a path");
}

/// Cover series by method name; `allow_closed_fallback` lets "exact" route to
/// a closed form when the graph is too large for subset enumeration but is
/// one of the families with an exact formula (used by `compare`).
DistributionSeries cover_by_method(const Options& opts, const TransitionMatrix& matrix,
                                   const Graph& graph, int horizon, const std::string& name,
                                   output::RunMetadata* meta, bool allow_closed_fallback) {
    const std::string method = canonical_method(name);
    if (method == "exact") {
        if (allow_closed_fallback && graph.node_count() > opts.cap &&
            (is_complete(graph) || is_cycle(graph) || is_path(graph))) {
            return closed_form_cover(matrix, opts.start, horizon, "closed");
        }
        return cover_cdf_exact(matrix, opts.start, horizon, opts.cap);
    }
    if (method == "approx") {
        return cover_cdf_approx(matrix, opts.start, horizon,
                                resolve_ordering(opts, graph, opts.start));
    }
    if (method == "approx-all-pairs") {
        return cover_cdf_approx_all_pairs(matrix, opts.start, horizon);
    }
    if (method == "closed" || method == "closed-complete" || method == "closed-cycle" ||
        method == "closed-path") {
        return closed_form_cover(matrix, opts.start, horizon, method);
    }
    if (method == "mc") {
        SimulationConfig config{opts.trials, opts.seed, 1000000};
        const WalkSample sample =
            simulate_walk_until(graph, opts.start, StopPredicate::cover_all(), config);
        const EmpiricalCdf empirical = empirical_cdf(sample, horizon);
        if (meta) {
            meta->seed = opts.seed;
            meta->trials = opts.trials;
            meta->rng = std::string(kRngAlgorithm);
            meta->confidence = kBandConfidence;
            meta->band_halfwidth = dkw_band(opts.trials, kBandConfidence);
        }
        return empirical.as_series(SeriesKind::cover);
    }
    throw QueryError("unknown cover method '" + name + "'");
}

int run_cover(const Options& opts) {
    const Graph graph = resolve_graph(opts);
    const TransitionMatrix matrix = transition_matrix(graph);
    const int horizon = resolve_horizon(opts, graph.node_count());
    const std::string method = canonical_method(opts.method.empty() ? "exact" : opts.method);

    auto meta = base_metadata(graph, horizon, "cover", method);
    meta.start = opts.start;
    if (method == "exact") meta.cap = opts.cap;

    DistributionSeries series =
        maybe_clamp(opts, cover_by_method(opts, matrix, graph, horizon, method, &meta, false));
    const PmfSeries pmf = pmf_from_cdf(series);
    auto records = make_records(series.cdf, pmf.pmf);
    if (meta.band_halfwidth) {
        for (auto& record : records) {
            record.band_low = std::max(0.0, record.cdf - *meta.band_halfwidth);
            record.band_high = std::min(1.0, record.cdf + *meta.band_halfwidth);
        }
    }
    emit_series(opts, meta, records);
    return 0;
}

int run_compare(const Options& opts) {
    const Graph graph = resolve_graph(opts);
    const TransitionMatrix matrix = transition_matrix(graph);
    const int horizon = resolve_horizon(opts, graph.node_count());

    std::vector<std::string> names;
    std::stringstream stream(opts.methods);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) names.push_back(canonical_method(item));
    }
    if (names.size() < 2) throw QueryError("compare needs at least two methods");

    auto meta = base_metadata(graph, horizon, "compare", opts.methods);
    meta.start = opts.start;
    std::vector<output::NamedSeries> columns;
    for (const auto& name : names) {
        DistributionSeries series =
            maybe_clamp(opts, cover_by_method(opts, matrix, graph, horizon, name, &meta, true));
        columns.push_back({name, std::move(series.cdf)});
    }

    std::vector<output::SupErrorEntry> errors;
    for (std::size_t a = 0; a < columns.size(); ++a) {
        for (std::size_t b = a + 1; b < columns.size(); ++b) {
            const DistributionSeries lhs{SeriesKind::cover, columns[a].cdf};
            const DistributionSeries rhs{SeriesKind::cover, columns[b].cdf};
            errors.push_back({columns[a].name, columns[b].name, sup_error(lhs, rhs)});
        }
    }
    if (opts.format == "json") {
        output::write_compare_json(std::cout, meta, columns, errors);
    } else {
        output::write_compare_csv(std::cout, meta, columns, errors);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hitting, commute and cover time distributions of random walks on "
                 "undirected graphs"};
    app.require_subcommand(1);

    Options opts;
    int selected = 0;

    auto* hitting = app.add_subcommand("hitting", "hitting-time CDF/PMF from start to target");
    add_graph_options(hitting, opts);
    hitting->add_option("--start", opts.start, "start node")->required();
    hitting->add_option("--target", opts.target, "target node")->required();
    hitting->callback([&] { selected = 1; });

    auto* commute = app.add_subcommand("commute", "commute-time CDF/PMF for a node pair");
    add_graph_options(commute, opts);
    commute->add_option("--i", opts.node_i, "first node")->required();
    commute->add_option("--j", opts.node_j, "second node")->required();
    commute->add_option("--method", opts.method, "chain or convolution");
    commute->callback([&] { selected = 2; });

    auto* cover = app.add_subcommand("cover", "cover-time CDF/PMF from a start node");
    add_graph_options(cover, opts);
    cover->add_option("--start", opts.start, "start node")->required();
    cover->add_option("--method", opts.method,
                      "exact | approx | approx-all-pairs | closed | closed-complete | "
                      "closed-cycle | closed-path | mc");
    cover->add_option("--cap", opts.cap, "node cap for the exact method");
    cover->add_option("--trials", opts.trials, "Monte Carlo trials");
    cover->add_option("--order", opts.order, "dfs or explicit:<perm> for approx");
    cover->add_flag("--clamp", opts.clamp, "emit the monotone-clamped series");
    cover->callback([&] { selected = 3; });

    auto* compare = app.add_subcommand("compare", "aligned series for several cover methods");
    add_graph_options(compare, opts);
    compare->add_option("--start", opts.start, "start node")->required();
    compare->add_option("--methods", opts.methods, "comma-separated method list")->required();
    compare->add_option("--cap", opts.cap, "node cap for the exact method");
    compare->add_option("--trials", opts.trials, "Monte Carlo trials");
    compare->add_option("--order", opts.order, "dfs or explicit:<perm> for approx");
    compare->add_flag("--clamp", opts.clamp, "emit monotone-clamped series");
    compare->callback([&] { selected = 4; });

    try {
        app.parse(argc, argv);
        switch (selected) {
        case 1: return run_hitting(opts);
        case 2: return run_commute(opts);
        case 3: return run_cover(opts);
        case 4: return run_compare(opts);
        default: return kExitUsage;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const CapExceededError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRefused;
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const QueryError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
