#include "covertime/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "covertime/rng.hpp"

namespace covertime {

namespace {

void check_node(const Graph& g, int node, const char* what) {
    if (node < 0 || node >= g.node_count()) {
        throw QueryError(std::string(what) + " out of range: " + std::to_string(node));
    }
}

// One trajectory; returns the stopping time or the censored sentinel.
std::uint64_t run_trial(const Graph& g, int start, const StopPredicate& stop,
                        std::uint64_t step_cap, Xoshiro256StarStar& rng,
                        std::vector<std::uint8_t>& visited_scratch) {
    const int n = g.node_count();
    int node = start;

    switch (stop.kind) {
    case StopPredicate::Kind::hit_target: {
        for (std::uint64_t t = 1; t <= step_cap; ++t) {
            const auto& nbs = g.neighbors(node);
            node = nbs[rng.uniform_below(static_cast<std::uint32_t>(nbs.size()))];
            if (node == stop.target) return t;
        }
        return kCensoredTime;
    }
    case StopPredicate::Kind::commute: {
        bool returning = false;
        for (std::uint64_t t = 1; t <= step_cap; ++t) {
            const auto& nbs = g.neighbors(node);
            node = nbs[rng.uniform_below(static_cast<std::uint32_t>(nbs.size()))];
            if (!returning) {
                if (node == stop.commute_j) returning = true;
            } else if (node == stop.commute_i) {
                return t;
            }
        }
        return kCensoredTime;
    }
    case StopPredicate::Kind::hit_all_of_set:
    case StopPredicate::Kind::cover_all: {
        visited_scratch.assign(n, 0);
        int remaining;
        if (stop.kind == StopPredicate::Kind::cover_all) {
            remaining = n - 1;
            visited_scratch[start] = 1;
        } else {
            remaining = static_cast<int>(stop.node_set.size());
            for (int v = 0; v < n; ++v) visited_scratch[v] = 1; // outside the set: already done
            for (int v : stop.node_set) visited_scratch[v] = 0;
            if (!visited_scratch[start]) {
                visited_scratch[start] = 1;
                --remaining;
            }
            if (remaining == 0) return 0; // satisfied before any step
        }
        for (std::uint64_t t = 1; t <= step_cap; ++t) {
            const auto& nbs = g.neighbors(node);
            node = nbs[rng.uniform_below(static_cast<std::uint32_t>(nbs.size()))];
            if (!visited_scratch[node]) {
                visited_scratch[node] = 1;
                if (--remaining == 0) return t;
            }
        }
        return kCensoredTime;
    }
    }
    return kCensoredTime;
}

} // namespace

StopPredicate StopPredicate::hit_target(int target) {
    StopPredicate p;
    p.kind = Kind::hit_target;
    p.target = target;
    return p;
}

StopPredicate StopPredicate::hit_all_of(std::vector<int> nodes) {
    StopPredicate p;
    p.kind = Kind::hit_all_of_set;
    p.node_set = std::move(nodes);
    return p;
}

StopPredicate StopPredicate::cover_all() {
    StopPredicate p;
    p.kind = Kind::cover_all;
    return p;
}

StopPredicate StopPredicate::commute(int i, int j) {
    StopPredicate p;
    p.kind = Kind::commute;
    p.commute_i = i;
    p.commute_j = j;
    return p;
}

std::uint64_t WalkSample::censored_at_cap() const {
    return static_cast<std::uint64_t>(
        std::count(stopping_times.begin(), stopping_times.end(), kCensoredTime));
}

WalkSample simulate_walk_until(const Graph& g, int start, const StopPredicate& stop,
                               const SimulationConfig& config, Exec exec) {
    check_node(g, start, "start node");
    if (config.trials < 1) throw QueryError("simulation needs at least one trial");
    if (config.step_cap < 1) throw QueryError("simulation step cap must be at least 1");
    switch (stop.kind) {
    case StopPredicate::Kind::hit_target:
        check_node(g, stop.target, "target node");
        if (stop.target == start) throw QueryError("hit-target requires start != target");
        break;
    case StopPredicate::Kind::commute:
        check_node(g, stop.commute_i, "commute node i");
        check_node(g, stop.commute_j, "commute node j");
        if (stop.commute_i == stop.commute_j) {
            throw QueryError("commute requires two distinct nodes");
        }
        if (start != stop.commute_i) {
            throw QueryError("commute simulation must start at node i");
        }
        break;
    case StopPredicate::Kind::hit_all_of_set:
        if (stop.node_set.empty()) throw QueryError("hit-all-of needs a non-empty node set");
        for (int v : stop.node_set) check_node(g, v, "set node");
        break;
    case StopPredicate::Kind::cover_all:
        break;
    }

    WalkSample sample;
    sample.stopping_times.resize(config.trials);
    const auto trials = static_cast<std::int64_t>(config.trials);

    // Each trial draws from the stream (seed, trial), so the recorded sample
    // is the same no matter how trials are distributed over threads.
#pragma omp parallel if (exec == Exec::parallel)
    {
        std::vector<std::uint8_t> visited;
#pragma omp for schedule(static)
        for (std::int64_t trial = 0; trial < trials; ++trial) {
            Xoshiro256StarStar rng(config.seed, static_cast<std::uint64_t>(trial));
            sample.stopping_times[trial] =
                run_trial(g, start, stop, config.step_cap, rng, visited);
        }
    }
    return sample;
}

EmpiricalCdf empirical_cdf(const WalkSample& sample, int horizon) {
    if (sample.stopping_times.empty()) throw QueryError("empirical CDF needs a non-empty sample");
    if (horizon < 1) throw QueryError("horizon must be at least 1");
    std::vector<std::uint64_t> counts(horizon + 1, 0);
    std::uint64_t censored = 0;
    for (std::uint64_t time : sample.stopping_times) {
        if (time <= static_cast<std::uint64_t>(horizon)) {
            ++counts[time];
        } else {
            ++censored; // beyond the horizon or capped: mass above T either way
        }
    }
    EmpiricalCdf cdf;
    cdf.trials = sample.stopping_times.size();
    cdf.censored = censored;
    cdf.values.resize(horizon);
    std::uint64_t cumulative = counts[0];
    for (int t = 1; t <= horizon; ++t) {
        cumulative += counts[t];
        cdf.values[t - 1] = static_cast<double>(cumulative) / static_cast<double>(cdf.trials);
    }
    return cdf;
}

DistributionSeries EmpiricalCdf::as_series(SeriesKind kind) const {
    return DistributionSeries{kind, values};
}

double dkw_band(std::uint64_t trials, double confidence) {
    if (trials < 1) throw QueryError("band needs at least one trial");
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw QueryError("confidence must be strictly between 0 and 1");
    }
    return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(trials)));
}

} // namespace covertime
