#pragma once

// Test-only oracles. Exhaustive enumeration of every walk of bounded length
// with its probability; deliberately independent of the occupancy-propagation
// code it is used to check. Exponential in the horizon, so keep instances
// tiny.

#include <cstdint>
#include <numeric>
#include <vector>

#include "covertime/graph.hpp"

namespace covertime::testoracle {

struct EventSpec {
    std::uint32_t any_mask = 0; // stop when the walk steps onto any of these
    std::uint32_t all_mask = 0; // stop when every one of these has been seen
};

inline void enumerate_walks(const Graph& g, int node, std::uint32_t visited, double prob,
                            int depth, int horizon, const EventSpec& spec,
                            std::vector<double>& first_hit_density) {
    if (depth == horizon) return;
    const double share = prob / g.degree(node);
    for (int nb : g.neighbors(node)) {
        const std::uint32_t seen = visited | (1u << nb);
        const bool satisfied = spec.any_mask != 0
                                   ? ((spec.any_mask >> nb) & 1u) != 0
                                   : (seen & spec.all_mask) == spec.all_mask;
        if (satisfied) {
            first_hit_density[depth] += share;
        } else {
            enumerate_walks(g, nb, seen, share, depth + 1, horizon, spec, first_hit_density);
        }
    }
}

inline std::vector<double> event_cdf(const Graph& g, int start, const EventSpec& spec,
                                     int horizon) {
    std::vector<double> density(horizon, 0.0);
    enumerate_walks(g, start, 1u << start, 1.0, 0, horizon, spec, density);
    std::vector<double> cdf(horizon);
    std::partial_sum(density.begin(), density.end(), cdf.begin());
    return cdf;
}

inline std::vector<double> hitting_cdf(const Graph& g, int start, int target, int horizon) {
    return event_cdf(g, start, EventSpec{1u << target, 0}, horizon);
}

inline std::vector<double> union_hitting_cdf(const Graph& g, int start,
                                             const std::vector<int>& targets, int horizon) {
    EventSpec spec;
    for (int v : targets) spec.any_mask |= 1u << v;
    return event_cdf(g, start, spec, horizon);
}

inline std::vector<double> cover_cdf(const Graph& g, int start, int horizon) {
    EventSpec spec;
    spec.all_mask = (g.node_count() == 32) ? ~0u : ((1u << g.node_count()) - 1u);
    return event_cdf(g, start, spec, horizon);
}

} // namespace covertime::testoracle
