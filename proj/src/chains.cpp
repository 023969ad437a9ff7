#include "covertime/chains.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace covertime {

namespace {

constexpr double kTransientCutoff = 1e-16;

void check_node(const TransitionMatrix& m, int node, const char* what) {
    if (node < 0 || node >= m.size()) {
        throw QueryError(std::string(what) + " out of range: " + std::to_string(node));
    }
}

} // namespace

namespace detail {

void absorbed_series(const TransitionMatrix& m, int start,
                     const std::vector<std::uint8_t>& absorbing,
                     const std::vector<int>& targets, std::span<double> out,
                     std::vector<double>& occupancy, std::vector<double>& scratch) {
    const int n = m.size();
    occupancy.assign(n, 0.0);
    scratch.assign(n, 0.0);
    occupancy[start] = 1.0;
    const int horizon = static_cast<int>(out.size());
    for (int t = 1; t <= horizon; ++t) {
        std::fill(scratch.begin(), scratch.end(), 0.0);
        for (int u = 0; u < n; ++u) {
            const double mass = occupancy[u];
            if (mass == 0.0) continue;
            if (absorbing[u]) {
                scratch[u] += mass;
                continue;
            }
            const double share = mass * m.inverse_degree(u);
            for (int v : m.neighbors(u)) scratch[v] += share;
        }
        occupancy.swap(scratch);
        double absorbed = 0.0;
        for (int a : targets) absorbed += occupancy[a];
        out[t - 1] = absorbed;
        if (1.0 - absorbed < kTransientCutoff) {
            std::fill(out.begin() + t, out.end(), absorbed);
            return;
        }
    }
}

} // namespace detail

AbsorbingSystem::AbsorbingSystem(const TransitionMatrix& base, std::vector<int> targets)
    : base_(&base), targets_(std::move(targets)) {
    if (targets_.empty()) throw QueryError("absorbing target set is empty");
    std::sort(targets_.begin(), targets_.end());
    targets_.erase(std::unique(targets_.begin(), targets_.end()), targets_.end());
    absorbing_.assign(base.size(), 0);
    for (int a : targets_) {
        check_node(base, a, "absorbing target");
        absorbing_[a] = 1;
    }
}

double AbsorbingSystem::entry(int row, int col) const {
    if (absorbing_[row]) return row == col ? 1.0 : 0.0;
    return base_->entry(row, col);
}

std::vector<std::vector<double>> AbsorbingSystem::dense() const {
    auto rows = base_->dense();
    for (int a : targets_) {
        std::fill(rows[a].begin(), rows[a].end(), 0.0);
        rows[a][a] = 1.0;
    }
    return rows;
}

void AbsorbingSystem::step(const std::vector<double>& occupancy, std::vector<double>& next) const {
    const int n = base_->size();
    next.assign(n, 0.0);
    for (int u = 0; u < n; ++u) {
        const double mass = occupancy[u];
        if (mass == 0.0) continue;
        if (absorbing_[u]) {
            next[u] += mass;
            continue;
        }
        const double share = mass * base_->inverse_degree(u);
        for (int v : base_->neighbors(u)) next[v] += share;
    }
}

double AbsorbingSystem::absorbed_mass(const std::vector<double>& occupancy) const {
    double total = 0.0;
    for (int a : targets_) total += occupancy[a];
    return total;
}

AbsorbingSystem absorbing_system(const TransitionMatrix& m, std::vector<int> targets) {
    return AbsorbingSystem(m, std::move(targets));
}

std::vector<double> walk_step(const TransitionMatrix& m, const std::vector<double>& occupancy) {
    const int n = m.size();
    std::vector<double> next(n, 0.0);
    for (int u = 0; u < n; ++u) {
        const double mass = occupancy[u];
        if (mass == 0.0) continue;
        const double share = mass * m.inverse_degree(u);
        for (int v : m.neighbors(u)) next[v] += share;
    }
    return next;
}

DistributionSeries hitting_cdf(const TransitionMatrix& m, int start, int target, int horizon) {
    check_node(m, start, "start node");
    check_node(m, target, "target node");
    if (start == target) throw QueryError("hitting time requires start != target");
    if (horizon < 1) throw QueryError("horizon must be at least 1");

    std::vector<std::uint8_t> absorbing(m.size(), 0);
    absorbing[target] = 1;
    const std::vector<int> targets{target};
    DistributionSeries series{SeriesKind::hitting, std::vector<double>(horizon)};
    std::vector<double> occupancy, scratch;
    detail::absorbed_series(m, start, absorbing, targets, series.cdf, occupancy, scratch);
    return series;
}

DistributionSeries union_hitting_cdf(const TransitionMatrix& m, int start,
                                     std::vector<int> targets, int horizon) {
    check_node(m, start, "start node");
    if (targets.empty()) throw QueryError("union hitting requires a non-empty target set");
    if (horizon < 1) throw QueryError("horizon must be at least 1");
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    std::vector<std::uint8_t> absorbing(m.size(), 0);
    for (int a : targets) {
        check_node(m, a, "target node");
        if (a == start) throw QueryError("union hitting requires start outside the target set");
        absorbing[a] = 1;
    }
    DistributionSeries series{SeriesKind::union_hitting, std::vector<double>(horizon)};
    std::vector<double> occupancy, scratch;
    detail::absorbed_series(m, start, absorbing, targets, series.cdf, occupancy, scratch);
    return series;
}

CommuteChain::CommuteChain(TransitionMatrix base, int source, int bridge)
    : base_(std::move(base)), source_(source), bridge_(bridge) {
    check_node(base_, source, "commute source");
    check_node(base_, bridge, "commute bridge");
    if (source == bridge) throw QueryError("commute time requires two distinct nodes");
}

double CommuteChain::entry(int row, int col) const {
    const int n = base_.size();
    if (row < n) {
        if (row == bridge_) return col == n + bridge_ ? 1.0 : 0.0;
        return col < n ? base_.entry(row, col) : 0.0;
    }
    const int r = row - n;
    if (r == source_) return col == row ? 1.0 : 0.0;
    return col >= n ? base_.entry(r, col - n) : 0.0;
}

std::vector<std::vector<double>> CommuteChain::dense() const {
    const int dim = dimension();
    std::vector<std::vector<double>> rows(dim, std::vector<double>(dim, 0.0));
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) rows[r][c] = entry(r, c);
    return rows;
}

void CommuteChain::step(const std::vector<double>& occupancy, std::vector<double>& next) const {
    const int n = base_.size();
    next.assign(2 * n, 0.0);
    for (int u = 0; u < n; ++u) {
        const double mass = occupancy[u];
        if (mass == 0.0) continue;
        if (u == bridge_) {
            next[n + bridge_] += mass;
            continue;
        }
        const double share = mass * base_.inverse_degree(u);
        for (int v : base_.neighbors(u)) next[v] += share;
    }
    for (int u = 0; u < n; ++u) {
        const double mass = occupancy[n + u];
        if (mass == 0.0) continue;
        if (u == source_) {
            next[n + source_] += mass;
            continue;
        }
        const double share = mass * base_.inverse_degree(u);
        for (int v : base_.neighbors(u)) next[n + v] += share;
    }
}

CommuteChain commute_chain(const TransitionMatrix& m, int i, int j) {
    return CommuteChain(m, i, j);
}

DistributionSeries commute_cdf(const TransitionMatrix& m, int i, int j, int horizon) {
    if (horizon < 1) throw QueryError("horizon must be at least 1");
    const CommuteChain chain(m, i, j);
    const int n = m.size();
    std::vector<double> occupancy(2 * n, 0.0), scratch(2 * n, 0.0);
    occupancy[i] = 1.0;
    DistributionSeries series{SeriesKind::commute, std::vector<double>(horizon)};
    for (int s = 1; s <= horizon + 1; ++s) {
        chain.step(occupancy, scratch);
        occupancy.swap(scratch);
        if (s >= 2) series.cdf[s - 2] = occupancy[n + i];
    }
    return series;
}

PmfSeries commute_pmf_convolution(const TransitionMatrix& m, int i, int j, int horizon) {
    if (horizon < 1) throw QueryError("horizon must be at least 1");
    const PmfSeries forward = pmf_from_cdf(hitting_cdf(m, i, j, horizon));
    const PmfSeries backward = pmf_from_cdf(hitting_cdf(m, j, i, horizon));
    PmfSeries out;
    out.pmf.assign(horizon, 0.0);
    for (int t = 2; t <= horizon; ++t) {
        double mass = 0.0;
        for (int tau = 1; tau < t; ++tau) mass += forward.pmf[tau - 1] * backward.pmf[t - tau - 1];
        out.pmf[t - 1] = mass;
    }
    double total = 0.0;
    for (double p : out.pmf) total += p;
    out.tail_mass = 1.0 - total;
    return out;
}

} // namespace covertime
