#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace covertime::output {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

/// Run provenance attached to every emitted record set. Identical across the
/// records of one run; optional fields appear only when they apply.
struct RunMetadata {
    std::string tool;
    std::string version;
    std::string command;
    std::string method;
    std::uint64_t graph_hash = 0;
    int nodes = 0;
    int edge_count = 0;
    int horizon = 0;
    std::optional<int> start;
    std::optional<int> target;
    std::optional<int> node_i;
    std::optional<int> node_j;
    std::optional<int> cap;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::string> rng;
    std::optional<double> band_halfwidth;
    std::optional<double> confidence;
};

/// One output row: cdf/pmf at step t, plus confidence band when stochastic.
struct OutputRecord {
    int t = 0;
    double cdf = 0.0;
    double pmf = 0.0;
    std::optional<double> band_low;
    std::optional<double> band_high;
};

/// CSV with metadata as leading '#' comments and a mandatory header row:
/// t,cdf,pmf[,band_low,band_high].
void write_series_csv(std::ostream& out, const RunMetadata& meta,
                      const std::vector<OutputRecord>& records);

/// JSON object {"metadata": {...}, "records": [...]}.
void write_series_json(std::ostream& out, const RunMetadata& meta,
                       const std::vector<OutputRecord>& records);

struct NamedSeries {
    std::string name;
    std::vector<double> cdf;
};

struct SupErrorEntry {
    std::string first;
    std::string second;
    double sup_error = 0.0;
};

/// Aligned multi-method CSV: t,cdf_<m1>,cdf_<m2>,... with trailing comment
/// lines holding the pairwise sup errors.
void write_compare_csv(std::ostream& out, const RunMetadata& meta,
                       const std::vector<NamedSeries>& series,
                       const std::vector<SupErrorEntry>& sup_errors);

void write_compare_json(std::ostream& out, const RunMetadata& meta,
                        const std::vector<NamedSeries>& series,
                        const std::vector<SupErrorEntry>& sup_errors);

} // namespace covertime::output
