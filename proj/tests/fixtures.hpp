#pragma once

// Small graphs reused across the suites.

#include <cmath>
#include <vector>

#include "covertime/graph.hpp"

namespace covertime::fixtures {

/// Four nodes, five edges, degrees (3, 2, 3, 2); the worked example whose
/// hitting/commute/union series have printed closed forms.
inline Graph diamond4() {
    return Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}});
}

/// Closed-form hitting CDF from node 0 to node 3 on diamond4.
inline double diamond4_hitting_cdf(int t) {
    const double s13 = std::sqrt(13.0);
    return 1.0 - std::pow(6.0, -t) / (2.0 * s13) *
                     (std::pow(1.0 - s13, t) * (s13 - 3.0) +
                      std::pow(1.0 + s13, t) * (s13 + 3.0));
}

/// Closed-form occupancy of the return state in the diamond4 commute chain
/// for the pair (0, 3), after t steps.
inline double diamond4_commute_occupancy(int t) {
    const double s13 = std::sqrt(13.0);
    const double s3 = std::sqrt(3.0);
    const double h = std::pow(3.0, t / 2.0);
    return std::pow(2.0, -t - 2.0) * std::pow(3.0, -static_cast<double>(t)) / 13.0 *
           (13.0 * std::pow(2.0, t) * h * (3.0 + 2.0 * s3 + 4.0 * h) -
            std::pow(1.0 + s13, t) * (65.0 + 19.0 * s13) +
            std::pow(1.0 - s13, t) * (-65.0 + 19.0 * s13) +
            std::pow(-2.0, t) * h * (39.0 - 26.0 * s3));
}

/// Closed-form occupancy of node 3 under the unmodified diamond4 walk from 0.
inline double diamond4_occupancy(int t) {
    return (1.0 - std::pow(-1.0, t) * std::pow(2.0 / 3.0, t)) / 5.0;
}

inline Graph star(int leaves) {
    std::vector<Edge> edges;
    for (int leaf = 1; leaf <= leaves; ++leaf) edges.emplace_back(0, leaf);
    return Graph::from_edges(leaves + 1, std::move(edges));
}

} // namespace covertime::fixtures
