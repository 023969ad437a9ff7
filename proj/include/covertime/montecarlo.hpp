#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "covertime/cover.hpp"
#include "covertime/graph.hpp"
#include "covertime/series.hpp"

namespace covertime {

struct SimulationConfig {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    std::uint64_t step_cap = 1000000;
};

/// Sentinel stopping time for a trial that hit the step cap.
inline constexpr std::uint64_t kCensoredTime = std::numeric_limits<std::uint64_t>::max();

/// Stopping rule of a simulated walk.
struct StopPredicate {
    enum class Kind { hit_target, hit_all_of_set, cover_all, commute };

    Kind kind = Kind::cover_all;
    int target = -1;            // hit_target
    std::vector<int> node_set;  // hit_all_of_set
    int commute_i = -1;         // commute
    int commute_j = -1;

    static StopPredicate hit_target(int target);
    static StopPredicate hit_all_of(std::vector<int> nodes);
    static StopPredicate cover_all();
    static StopPredicate commute(int i, int j);
};

struct WalkSample {
    std::vector<std::uint64_t> stopping_times; // kCensoredTime where capped
    std::uint64_t censored_at_cap() const;
};

/// Runs `config.trials` independent walks from `start` and records each
/// trial's stopping time (or the censored sentinel). Trial k draws from the
/// stream (seed, k), so the sample is identical for any thread count.
WalkSample simulate_walk_until(const Graph& g, int start, const StopPredicate& stop,
                               const SimulationConfig& config, Exec exec = Exec::parallel);

struct EmpiricalCdf {
    std::vector<double> values; // F-hat(1..T)
    std::uint64_t trials = 0;
    std::uint64_t censored = 0; // stopping time beyond the horizon (or capped)

    int horizon() const { return static_cast<int>(values.size()); }
    double at(int t) const { return values.at(static_cast<std::size_t>(t) - 1); }
    DistributionSeries as_series(SeriesKind kind) const;
};

/// F-hat(t) = fraction of trials with stopping time <= t. Trials stopping
/// beyond the horizon count as censored, so F-hat(T) = (trials - censored)/trials.
EmpiricalCdf empirical_cdf(const WalkSample& sample, int horizon);

/// Dvoretzky-Kiefer-Wolfowitz half-width: with probability `confidence`,
/// sup_t |F-hat(t) - F(t)| <= sqrt(ln(2 / (1 - confidence)) / (2 * trials)).
double dkw_band(std::uint64_t trials, double confidence);

} // namespace covertime
