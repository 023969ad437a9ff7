#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "covertime/graph.hpp"
#include "covertime/series.hpp"

namespace covertime {

/// Walk with a set of absorbing nodes: the row of each target is replaced by
/// the matching basis row, so probability mass that reaches a target stays
/// there. Holds a reference to the base matrix, which must outlive it.
class AbsorbingSystem {
public:
    AbsorbingSystem(const TransitionMatrix& base, std::vector<int> targets);

    const TransitionMatrix& base() const { return *base_; }
    const std::vector<int>& targets() const { return targets_; }
    bool is_absorbing(int node) const { return absorbing_[node] != 0; }

    /// Entry of the effective (row-replaced) matrix.
    double entry(int row, int col) const;
    std::vector<std::vector<double>> dense() const;

    /// One propagation step of the occupancy vector.
    void step(const std::vector<double>& occupancy, std::vector<double>& next) const;
    double absorbed_mass(const std::vector<double>& occupancy) const;

private:
    const TransitionMatrix* base_;
    std::vector<int> targets_;            // sorted, unique
    std::vector<std::uint8_t> absorbing_; // per-node flag
};

AbsorbingSystem absorbing_system(const TransitionMatrix& m, std::vector<int> targets);

/// One step of the unmodified walk (no absorption).
std::vector<double> walk_step(const TransitionMatrix& m, const std::vector<double>& occupancy);

/// F(t) = probability that the walk from `start` has reached `target` within
/// t steps, for t = 1..horizon. start == target is rejected.
DistributionSeries hitting_cdf(const TransitionMatrix& m, int start, int target, int horizon);

/// F(t) = probability that the walk from `start` has reached at least one of
/// `targets` within t steps (whole set absorbing, summed target occupancy).
DistributionSeries union_hitting_cdf(const TransitionMatrix& m, int start,
                                     std::vector<int> targets, int horizon);

/// Two copies of the chain glued by one directed edge. States 0..n-1 are the
/// original chain with row j zeroed and a transition j -> n+j; states
/// n..2n-1 are the copy with the copy of i absorbing. Occupancy of state n+i
/// after t steps is the probability that the walk from i reached j and then
/// returned to i within t-1 steps.
class CommuteChain {
public:
    CommuteChain(TransitionMatrix base, int source, int bridge);

    int dimension() const { return 2 * base_.size(); }
    int source() const { return source_; }
    int bridge() const { return bridge_; }
    const TransitionMatrix& base() const { return base_; }

    double entry(int row, int col) const;
    std::vector<std::vector<double>> dense() const;
    void step(const std::vector<double>& occupancy, std::vector<double>& next) const;

private:
    TransitionMatrix base_;
    int source_;
    int bridge_;
};

CommuteChain commute_chain(const TransitionMatrix& m, int i, int j);

/// CDF of the round trip i -> j -> i. The glue edge consumes one step, so
/// F(t) is the chain occupancy of state n+i after t+1 steps.
DistributionSeries commute_cdf(const TransitionMatrix& m, int i, int j, int horizon);

/// Same distribution by convolving the two one-way hitting PMFs:
/// p(t) = sum over tau of p_{i->j}(tau) * p_{j->i}(t - tau).
PmfSeries commute_pmf_convolution(const TransitionMatrix& m, int i, int j, int horizon);

namespace detail {

/// Core absorbing propagation. Writes the absorbed mass after step t into
/// out[t-1]. `absorbing` is a per-node flag array; `targets` lists the
/// flagged nodes in ascending order (the summation order is fixed so results
/// do not depend on scheduling). Once the transient mass drops below 1e-16
/// the remaining horizon is filled with the final value. `occupancy` and
/// `scratch` are caller-provided buffers so tight loops can reuse them.
void absorbed_series(const TransitionMatrix& m, int start,
                     const std::vector<std::uint8_t>& absorbing,
                     const std::vector<int>& targets, std::span<double> out,
                     std::vector<double>& occupancy, std::vector<double>& scratch);

} // namespace detail

} // namespace covertime
