#pragma once

#include <vector>

#include "covertime/errors.hpp"

namespace covertime {

enum class SeriesKind { hitting, union_hitting, commute, cover };

/// Time-indexed CDF over steps t = 1..T; cdf[t-1] holds F(t).
struct DistributionSeries {
    SeriesKind kind = SeriesKind::hitting;
    std::vector<double> cdf;

    int horizon() const { return static_cast<int>(cdf.size()); }
    double at(int t) const { return cdf.at(static_cast<std::size_t>(t) - 1); }
};

/// Per-step probability mass p(1..T) plus the mass beyond the horizon.
struct PmfSeries {
    std::vector<double> pmf;
    double tail_mass = 0.0;

    int horizon() const { return static_cast<int>(pmf.size()); }
    double at(int t) const { return pmf.at(static_cast<std::size_t>(t) - 1); }
};

/// p(1) = F(1), p(t) = F(t) - F(t-1); tail mass is 1 - F(T).
PmfSeries pmf_from_cdf(const DistributionSeries& series);

/// max over t of |a(t) - b(t)|; the horizons must match.
double sup_error(const DistributionSeries& a, const DistributionSeries& b);

/// Running-maximum clamp, for plotting approximate series that may dip.
DistributionSeries monotone_clamp(DistributionSeries series);

/// True when the series is within [value_slack below 0, value_slack above 1]
/// and non-decreasing up to monotone_slack.
bool is_valid_cdf(const DistributionSeries& series, double value_slack = 1e-9,
                  double monotone_slack = 1e-12);

/// Default horizon: ceil(100 * n * ln n), comfortably past typical cover times.
int default_horizon(int node_count);

} // namespace covertime
