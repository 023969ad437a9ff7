#pragma once

#include <cstdint>
#include <vector>

#include "covertime/chains.hpp"
#include "covertime/graph.hpp"
#include "covertime/series.hpp"

namespace covertime {

enum class Exec { serial, parallel };

/// Visit order of the non-start nodes used by the product approximation,
/// with a flag per consecutive pair recording whether an edge joins them.
struct NodeOrdering {
    std::vector<int> order;
    std::vector<std::uint8_t> pair_adjacent;
};

/// Depth-first preorder of a spanning tree rooted at z (z removed). On paths
/// and cycles every consecutive pair is edge-adjacent; elsewhere the flags
/// record the gaps and the pair probabilities are still well defined.
NodeOrdering default_ordering(const Graph& g, int z);

inline constexpr int kDefaultExactCap = 16;
inline constexpr int kExactCapCeiling = 24;

struct CoverExactStats {
    std::uint64_t subsets_enumerated = 0;
};

/// Exact cover-time CDF by inclusion-exclusion: signed sum of the union
/// hitting CDFs over all 2^(n-1) - 1 non-empty subsets of the non-start
/// nodes. Refuses node counts above `cap`. Subsets are processed in fixed
/// chunks whose partial sums combine in chunk order, so the output is
/// bit-identical for any thread count (and for Exec::serial).
DistributionSeries cover_cdf_exact(const TransitionMatrix& m, int z, int horizon,
                                   int cap = kDefaultExactCap, CoverExactStats* stats = nullptr,
                                   Exec exec = Exec::parallel);

/// Straight-line single-threaded reference of the same sum, kept for
/// validating the chunked kernel.
DistributionSeries cover_cdf_exact_reference(const TransitionMatrix& m, int z, int horizon,
                                             int cap = kDefaultExactCap,
                                             CoverExactStats* stats = nullptr);

struct CoverApproxStats {
    std::uint64_t propagations = 0;
};

/// Product-form approximation along an ordering x_1..x_k of the non-start
/// nodes: product of the single-event CDFs times a correction ratio
/// P(E_i and E_{i+1}) / (P(E_i) P(E_{i+1})) per consecutive pair, needing
/// 2(n-1) - 1 absorbing propagations in total. Whenever a single-event
/// probability at time t is zero the value at t is defined as zero. The
/// series is emitted raw (no clamping).
DistributionSeries cover_cdf_approx(const TransitionMatrix& m, int z, int horizon,
                                    const NodeOrdering& ordering,
                                    CoverApproxStats* stats = nullptr);

/// Variant with the correction product over all pairs i < j instead of
/// consecutive ones. Kept because it misbehaves when events nest (the value
/// can exceed 1 by orders of magnitude); useful for error analysis.
DistributionSeries cover_cdf_approx_all_pairs(const TransitionMatrix& m, int z, int horizon,
                                              CoverApproxStats* stats = nullptr);

/// Closed-form cover CDF for the complete graph on n nodes:
/// F(t) = sum over gamma of (-1)^(gamma-1) C(n-1, gamma) (1 - ((n-gamma-1)/(n-1))^t).
/// Evaluated in extended precision: the alternating terms reach ~1e13 by
/// n = 50 while the result stays in [0, 1].
DistributionSeries cover_cdf_complete(int node_count, int horizon);

/// Matching PMF, the difference series of the CDF:
/// p(t) = sum over gamma of (-1)^(gamma-1) C(n-2, gamma-1) (1 - gamma/(n-1))^(t-1).
PmfSeries cover_pmf_complete(int node_count, int horizon);

/// Cover CDF for a cycle, with nodes relabeled along the cycle from z:
/// sum of single-event CDFs minus the unions of consecutive pairs.
/// The graph shape is verified structurally.
DistributionSeries cover_cdf_cycle(const TransitionMatrix& m, int z, int horizon);

/// Cover CDF for a path: covering means reaching both endpoints, so
/// F = P(E_first) + P(E_last) - P(E_first or E_last); from an endpoint this
/// is just the hitting CDF of the opposite end.
DistributionSeries cover_cdf_path(const TransitionMatrix& m, int z, int horizon);

} // namespace covertime
