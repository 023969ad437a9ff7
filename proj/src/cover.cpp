#include "covertime/cover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

namespace covertime {

namespace {

// Extended-precision scalar for the closed-form alternating sums. The
// binomial coefficients reach ~6e13 by n = 50 while the result stays in
// [0, 1]; double would lose ~atomic digits to cancellation there.
#if defined(__SIZEOF_FLOAT128__)
using wide_real = __float128;
#else
using wide_real = long double;
#endif

void check_node(const TransitionMatrix& m, int node, const char* what) {
    if (node < 0 || node >= m.size()) {
        throw QueryError(std::string(what) + " out of range: " + std::to_string(node));
    }
}

void check_horizon(int horizon) {
    if (horizon < 1) throw QueryError("horizon must be at least 1");
}

std::vector<int> non_start_nodes(int node_count, int z) {
    std::vector<int> others;
    others.reserve(node_count - 1);
    for (int v = 0; v < node_count; ++v)
        if (v != z) others.push_back(v);
    return others;
}

// Adds sign(|S|) * unionCdf(S) for every subset mask in [first, last) into
// `acc`. Masks index into `others`; iteration is in ascending mask order so
// a given range always accumulates in the same order.
void accumulate_subset_range(const TransitionMatrix& m, int z, const std::vector<int>& others,
                             std::uint64_t first, std::uint64_t last, std::vector<double>& acc) {
    const int n = m.size();
    const int bits = static_cast<int>(others.size());
    const int horizon = static_cast<int>(acc.size());
    std::vector<std::uint8_t> absorbing(n, 0);
    std::vector<int> targets;
    targets.reserve(bits);
    std::vector<double> series(horizon), occupancy, scratch;
    for (std::uint64_t mask = first; mask < last; ++mask) {
        targets.clear();
        for (int b = 0; b < bits; ++b) {
            if (mask >> b & 1ull) {
                targets.push_back(others[b]);
                absorbing[others[b]] = 1;
            }
        }
        detail::absorbed_series(m, z, absorbing, targets, series, occupancy, scratch);
        const double sign = (std::popcount(mask) & 1) ? 1.0 : -1.0;
        for (int t = 0; t < horizon; ++t) acc[t] += sign * series[t];
        for (int a : targets) absorbing[a] = 0;
    }
}

void check_exact_preconditions(const TransitionMatrix& m, int z, int horizon, int cap) {
    check_node(m, z, "start node");
    check_horizon(horizon);
    if (cap < 2 || cap > kExactCapCeiling) {
        throw QueryError("exact cap must be in [2, " + std::to_string(kExactCapCeiling) + "]");
    }
    if (m.size() > cap) throw CapExceededError(m.size(), cap);
}

// Runs the 2(n-1)-1 (or all-pairs) absorbing propagations of the product
// approximation: one per ordered node and one per requested pair. Each job
// writes its own slot, so the result is thread-count independent.
struct ApproxTables {
    std::vector<std::vector<double>> singles;
    std::vector<std::vector<double>> pair_unions;
};

ApproxTables approx_tables(const TransitionMatrix& m, int z, int horizon,
                           const std::vector<int>& order,
                           const std::vector<std::pair<int, int>>& pair_positions) {
    ApproxTables tables;
    const auto k = static_cast<std::int64_t>(order.size());
    const auto p = static_cast<std::int64_t>(pair_positions.size());
    tables.singles.resize(order.size());
    tables.pair_unions.resize(pair_positions.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t job = 0; job < k + p; ++job) {
        if (job < k) {
            tables.singles[job] = hitting_cdf(m, z, order[job], horizon).cdf;
        } else {
            const auto& [a, b] = pair_positions[job - k];
            tables.pair_unions[job - k] =
                union_hitting_cdf(m, z, {order[a], order[b]}, horizon).cdf;
        }
    }
    return tables;
}

DistributionSeries combine_approx(const ApproxTables& tables,
                                  const std::vector<std::pair<int, int>>& pair_positions,
                                  int horizon) {
    DistributionSeries series{SeriesKind::cover, std::vector<double>(horizon, 0.0)};
    for (int t = 0; t < horizon; ++t) {
        double product = 1.0;
        bool unreachable = false;
        for (const auto& single : tables.singles) {
            if (single[t] <= 0.0) {
                unreachable = true;
                break;
            }
            product *= single[t];
        }
        if (unreachable) continue; // some node cannot be hit yet, so no cover
        for (std::size_t pair = 0; pair < pair_positions.size(); ++pair) {
            const auto& [a, b] = pair_positions[pair];
            const double pa = tables.singles[a][t];
            const double pb = tables.singles[b][t];
            const double joint = pa + pb - tables.pair_unions[pair][t];
            product *= joint / (pa * pb);
        }
        series.cdf[t] = product;
    }
    return series;
}

void validate_ordering(const TransitionMatrix& m, int z, const NodeOrdering& ordering) {
    const auto expected = static_cast<std::size_t>(m.size() - 1);
    if (ordering.order.size() != expected) {
        throw QueryError("ordering must list every non-start node exactly once");
    }
    std::vector<std::uint8_t> seen(m.size(), 0);
    for (int v : ordering.order) {
        check_node(m, v, "ordering entry");
        if (v == z || seen[v]) {
            throw QueryError("ordering must be a permutation of the non-start nodes");
        }
        seen[v] = 1;
    }
}

// Exact integer binomial column C(top, 0..top); every intermediate stays far
// below the mantissa limit for top <= 49.
std::vector<wide_real> binomial_row(int top) {
    std::vector<wide_real> coeff(top + 1);
    coeff[0] = 1;
    for (int g = 1; g <= top; ++g) coeff[g] = coeff[g - 1] * (top - g + 1) / g;
    return coeff;
}

} // namespace

NodeOrdering default_ordering(const Graph& g, int z) {
    if (z < 0 || z >= g.node_count()) {
        throw QueryError("start node out of range: " + std::to_string(z));
    }
    std::vector<std::uint8_t> seen(g.node_count(), 0);
    std::vector<int> stack{z};
    NodeOrdering ordering;
    ordering.order.reserve(g.node_count() - 1);
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        if (seen[u]) continue;
        seen[u] = 1;
        if (u != z) ordering.order.push_back(u);
        const auto& nbs = g.neighbors(u);
        for (auto it = nbs.rbegin(); it != nbs.rend(); ++it)
            if (!seen[*it]) stack.push_back(*it);
    }
    if (ordering.order.size() >= 2) {
        ordering.pair_adjacent.resize(ordering.order.size() - 1);
        for (std::size_t i = 0; i + 1 < ordering.order.size(); ++i) {
            ordering.pair_adjacent[i] =
                g.has_edge(ordering.order[i], ordering.order[i + 1]) ? 1 : 0;
        }
    }
    return ordering;
}

DistributionSeries cover_cdf_exact(const TransitionMatrix& m, int z, int horizon, int cap,
                                   CoverExactStats* stats, Exec exec) {
    check_exact_preconditions(m, z, horizon, cap);
    const std::vector<int> others = non_start_nodes(m.size(), z);
    const int bits = static_cast<int>(others.size());
    const std::uint64_t subset_count = (1ull << bits) - 1;

    // Fixed chunk layout, independent of the thread count: each chunk sums
    // its mask range in order, then chunks combine in index order, making
    // the result bit-stable under any scheduling.
    const std::int64_t chunk_count =
        static_cast<std::int64_t>(std::min<std::uint64_t>(subset_count, 512));
    std::vector<std::vector<double>> partial(chunk_count);
    std::vector<std::uint64_t> visited(chunk_count, 0);
    const std::uint64_t base = subset_count / chunk_count;
    const std::uint64_t remainder = subset_count % chunk_count;

#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (std::int64_t c = 0; c < chunk_count; ++c) {
        const std::uint64_t extra = std::min<std::uint64_t>(c, remainder);
        const std::uint64_t first = 1 + c * base + extra;
        const std::uint64_t size = base + (static_cast<std::uint64_t>(c) < remainder ? 1 : 0);
        partial[c].assign(horizon, 0.0);
        accumulate_subset_range(m, z, others, first, first + size, partial[c]);
        visited[c] = size;
    }

    DistributionSeries series{SeriesKind::cover, std::vector<double>(horizon, 0.0)};
    for (std::int64_t c = 0; c < chunk_count; ++c)
        for (int t = 0; t < horizon; ++t) series.cdf[t] += partial[c][t];
    if (stats) {
        stats->subsets_enumerated = 0;
        for (auto count : visited) stats->subsets_enumerated += count;
    }
    return series;
}

DistributionSeries cover_cdf_exact_reference(const TransitionMatrix& m, int z, int horizon,
                                             int cap, CoverExactStats* stats) {
    check_exact_preconditions(m, z, horizon, cap);
    const std::vector<int> others = non_start_nodes(m.size(), z);
    const std::uint64_t subset_count = (1ull << others.size()) - 1;
    DistributionSeries series{SeriesKind::cover, std::vector<double>(horizon, 0.0)};
    accumulate_subset_range(m, z, others, 1, subset_count + 1, series.cdf);
    if (stats) stats->subsets_enumerated = subset_count;
    return series;
}

DistributionSeries cover_cdf_approx(const TransitionMatrix& m, int z, int horizon,
                                    const NodeOrdering& ordering, CoverApproxStats* stats) {
    check_node(m, z, "start node");
    check_horizon(horizon);
    validate_ordering(m, z, ordering);
    std::vector<std::pair<int, int>> pair_positions;
    for (std::size_t i = 0; i + 1 < ordering.order.size(); ++i) pair_positions.emplace_back(i, i + 1);
    const ApproxTables tables = approx_tables(m, z, horizon, ordering.order, pair_positions);
    if (stats) stats->propagations = ordering.order.size() + pair_positions.size();
    return combine_approx(tables, pair_positions, horizon);
}

DistributionSeries cover_cdf_approx_all_pairs(const TransitionMatrix& m, int z, int horizon,
                                              CoverApproxStats* stats) {
    check_node(m, z, "start node");
    check_horizon(horizon);
    const std::vector<int> order = non_start_nodes(m.size(), z);
    std::vector<std::pair<int, int>> pair_positions;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j) pair_positions.emplace_back(i, j);
    const ApproxTables tables = approx_tables(m, z, horizon, order, pair_positions);
    if (stats) stats->propagations = order.size() + pair_positions.size();
    return combine_approx(tables, pair_positions, horizon);
}

DistributionSeries cover_cdf_complete(int node_count, int horizon) {
    if (node_count < 2) throw QueryError("complete graph needs at least 2 nodes");
    check_horizon(horizon);
    const int k = node_count - 1;
    const std::vector<wide_real> coeff = binomial_row(k);
    std::vector<wide_real> ratio(k + 1, 0), power(k + 1, 1);
    for (int g = 1; g <= k; ++g) ratio[g] = wide_real(k - g) / k;

    DistributionSeries series{SeriesKind::cover, std::vector<double>(horizon)};
    for (int t = 1; t <= horizon; ++t) {
        wide_real sum = 0;
        for (int g = 1; g <= k; ++g) {
            power[g] *= ratio[g];
            const wide_real term = coeff[g] * (1 - power[g]);
            sum += (g & 1) ? term : -term;
        }
        series.cdf[t - 1] = static_cast<double>(sum);
    }
    return series;
}

PmfSeries cover_pmf_complete(int node_count, int horizon) {
    if (node_count < 2) throw QueryError("complete graph needs at least 2 nodes");
    check_horizon(horizon);
    const int k = node_count - 1;
    const std::vector<wide_real> coeff = binomial_row(k - 1); // C(n-2, gamma-1)
    std::vector<wide_real> ratio(k + 1, 0), power(k + 1, 1);  // starts at ratio^0, so 0^0 = 1
    for (int g = 1; g <= k; ++g) ratio[g] = wide_real(k - g) / k;

    PmfSeries out;
    out.pmf.resize(horizon);
    wide_real total = 0;
    for (int t = 1; t <= horizon; ++t) {
        wide_real sum = 0;
        for (int g = 1; g <= k; ++g) {
            const wide_real term = coeff[g - 1] * power[g];
            sum += (g & 1) ? term : -term;
            power[g] *= ratio[g];
        }
        out.pmf[t - 1] = static_cast<double>(sum);
        total += sum;
    }
    out.tail_mass = static_cast<double>(1 - total);
    return out;
}

DistributionSeries cover_cdf_cycle(const TransitionMatrix& m, int z, int horizon) {
    if (!is_cycle(m.graph())) throw QueryError("graph is not a cycle");
    check_node(m, z, "start node");
    check_horizon(horizon);

    // relabel along the cycle so the walk's start is position 1
    std::vector<int> along;
    along.reserve(m.size() - 1);
    int previous = z;
    int current = m.neighbors(z).front();
    while (current != z) {
        along.push_back(current);
        const auto& nbs = m.neighbors(current);
        const int next = (nbs[0] == previous) ? nbs[1] : nbs[0];
        previous = current;
        current = next;
    }

    const auto k = static_cast<std::int64_t>(along.size());
    std::vector<std::vector<double>> singles(k), pair_unions(k - 1);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t job = 0; job < 2 * k - 1; ++job) {
        if (job < k) {
            singles[job] = hitting_cdf(m, z, along[job], horizon).cdf;
        } else {
            const std::int64_t i = job - k;
            pair_unions[i] = union_hitting_cdf(m, z, {along[i], along[i + 1]}, horizon).cdf;
        }
    }

    DistributionSeries series{SeriesKind::cover, std::vector<double>(horizon, 0.0)};
    for (int t = 0; t < horizon; ++t) {
        double value = 0.0;
        for (const auto& single : singles) value += single[t];
        for (const auto& pair : pair_unions) value -= pair[t];
        series.cdf[t] = value;
    }
    return series;
}

DistributionSeries cover_cdf_path(const TransitionMatrix& m, int z, int horizon) {
    if (!is_path(m.graph())) throw QueryError("graph is not a path");
    check_node(m, z, "start node");
    check_horizon(horizon);

    int first = -1, last = -1;
    for (int v = 0; v < m.size(); ++v) {
        if (m.degree(v) == 1) (first < 0 ? first : last) = v;
    }
    if (z == first || z == last) {
        DistributionSeries series = hitting_cdf(m, z, z == first ? last : first, horizon);
        series.kind = SeriesKind::cover;
        return series;
    }
    const auto head = hitting_cdf(m, z, first, horizon).cdf;
    const auto tail = hitting_cdf(m, z, last, horizon).cdf;
    const auto either = union_hitting_cdf(m, z, {first, last}, horizon).cdf;
    DistributionSeries series{SeriesKind::cover, std::vector<double>(horizon)};
    for (int t = 0; t < horizon; ++t) series.cdf[t] = head[t] + tail[t] - either[t];
    return series;
}

} // namespace covertime
