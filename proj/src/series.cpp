#include "covertime/series.hpp"

#include <algorithm>
#include <cmath>

namespace covertime {

PmfSeries pmf_from_cdf(const DistributionSeries& series) {
    PmfSeries out;
    out.pmf.resize(series.cdf.size());
    double previous = 0.0;
    for (std::size_t t = 0; t < series.cdf.size(); ++t) {
        out.pmf[t] = series.cdf[t] - previous;
        previous = series.cdf[t];
    }
    out.tail_mass = series.cdf.empty() ? 1.0 : 1.0 - series.cdf.back();
    return out;
}

double sup_error(const DistributionSeries& a, const DistributionSeries& b) {
    if (a.cdf.size() != b.cdf.size()) {
        throw QueryError("sup_error requires equal horizons, got " +
                         std::to_string(a.cdf.size()) + " and " + std::to_string(b.cdf.size()));
    }
    double worst = 0.0;
    for (std::size_t t = 0; t < a.cdf.size(); ++t) {
        worst = std::max(worst, std::abs(a.cdf[t] - b.cdf[t]));
    }
    return worst;
}

DistributionSeries monotone_clamp(DistributionSeries series) {
    double running = 0.0;
    for (double& value : series.cdf) {
        running = std::max(running, value);
        value = running;
    }
    return series;
}

bool is_valid_cdf(const DistributionSeries& series, double value_slack, double monotone_slack) {
    double previous = 0.0;
    for (double value : series.cdf) {
        if (!(value >= -value_slack && value <= 1.0 + value_slack)) return false;
        if (value < previous - monotone_slack) return false;
        previous = value;
    }
    return true;
}

int default_horizon(int node_count) {
    if (node_count < 2) throw QueryError("horizon default needs at least 2 nodes");
    return static_cast<int>(std::ceil(100.0 * node_count * std::log(node_count)));
}

} // namespace covertime
