#include "covertime/output.hpp"

#include <charconv>
#include <ostream>
#include <system_error>

#include <json.hpp>

namespace covertime::output {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[32];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) return "nan";
    return std::string(buffer, end);
}

namespace {

std::string hash_hex(std::uint64_t hash) {
    char buffer[19];
    const auto [end, ec] = std::to_chars(buffer + 2, buffer + sizeof(buffer), hash, 16);
    buffer[0] = '0';
    buffer[1] = 'x';
    (void)ec;
    return std::string(buffer, end);
}

void write_metadata_comments(std::ostream& out, const RunMetadata& meta) {
    out << "# " << meta.tool << " " << meta.version << "\n";
    out << "# command: " << meta.command << "\n";
    out << "# method: " << meta.method << "\n";
    out << "# graph: nodes=" << meta.nodes << " edges=" << meta.edge_count
        << " hash=" << hash_hex(meta.graph_hash) << "\n";
    if (meta.start) out << "# start: " << *meta.start << "\n";
    if (meta.target) out << "# target: " << *meta.target << "\n";
    if (meta.node_i) out << "# i: " << *meta.node_i << "\n";
    if (meta.node_j) out << "# j: " << *meta.node_j << "\n";
    out << "# horizon: " << meta.horizon << "\n";
    if (meta.cap) out << "# cap: " << *meta.cap << "\n";
    if (meta.trials) out << "# trials: " << *meta.trials << "\n";
    if (meta.seed) out << "# seed: " << *meta.seed << "\n";
    if (meta.rng) out << "# rng: " << *meta.rng << "\n";
    if (meta.confidence) out << "# confidence: " << format_double(*meta.confidence) << "\n";
    if (meta.band_halfwidth) {
        out << "# band_halfwidth: " << format_double(*meta.band_halfwidth) << "\n";
    }
}

json metadata_json(const RunMetadata& meta) {
    json block{
        {"tool", meta.tool},         {"version", meta.version}, {"command", meta.command},
        {"method", meta.method},     {"graph_hash", hash_hex(meta.graph_hash)},
        {"nodes", meta.nodes},       {"edges", meta.edge_count},
        {"horizon", meta.horizon},
    };
    if (meta.start) block["start"] = *meta.start;
    if (meta.target) block["target"] = *meta.target;
    if (meta.node_i) block["i"] = *meta.node_i;
    if (meta.node_j) block["j"] = *meta.node_j;
    if (meta.cap) block["cap"] = *meta.cap;
    if (meta.seed) block["seed"] = *meta.seed;
    if (meta.trials) block["trials"] = *meta.trials;
    if (meta.rng) block["rng"] = *meta.rng;
    if (meta.confidence) block["confidence"] = *meta.confidence;
    if (meta.band_halfwidth) block["band_halfwidth"] = *meta.band_halfwidth;
    return block;
}

} // namespace

void write_series_csv(std::ostream& out, const RunMetadata& meta,
                      const std::vector<OutputRecord>& records) {
    write_metadata_comments(out, meta);
    const bool with_band = !records.empty() && records.front().band_low.has_value();
    out << (with_band ? "t,cdf,pmf,band_low,band_high\n" : "t,cdf,pmf\n");
    for (const auto& record : records) {
        out << record.t << ',' << format_double(record.cdf) << ',' << format_double(record.pmf);
        if (with_band) {
            out << ',' << format_double(*record.band_low) << ','
                << format_double(*record.band_high);
        }
        out << '\n';
    }
}

void write_series_json(std::ostream& out, const RunMetadata& meta,
                       const std::vector<OutputRecord>& records) {
    json doc;
    doc["metadata"] = metadata_json(meta);
    json rows = json::array();
    for (const auto& record : records) {
        json row{{"t", record.t}, {"cdf", record.cdf}, {"pmf", record.pmf}};
        if (record.band_low) {
            row["band_low"] = *record.band_low;
            row["band_high"] = *record.band_high;
        }
        rows.push_back(std::move(row));
    }
    doc["records"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

void write_compare_csv(std::ostream& out, const RunMetadata& meta,
                       const std::vector<NamedSeries>& series,
                       const std::vector<SupErrorEntry>& sup_errors) {
    write_metadata_comments(out, meta);
    out << 't';
    for (const auto& column : series) out << ",cdf_" << column.name;
    out << '\n';
    const std::size_t horizon = series.empty() ? 0 : series.front().cdf.size();
    for (std::size_t t = 0; t < horizon; ++t) {
        out << (t + 1);
        for (const auto& column : series) out << ',' << format_double(column.cdf[t]);
        out << '\n';
    }
    for (const auto& entry : sup_errors) {
        out << "# sup_error " << entry.first << " vs " << entry.second << " = "
            << format_double(entry.sup_error) << '\n';
    }
}

void write_compare_json(std::ostream& out, const RunMetadata& meta,
                        const std::vector<NamedSeries>& series,
                        const std::vector<SupErrorEntry>& sup_errors) {
    json doc;
    doc["metadata"] = metadata_json(meta);
    json methods = json::array();
    for (const auto& column : series) methods.push_back(column.name);
    doc["methods"] = std::move(methods);

    json rows = json::array();
    const std::size_t horizon = series.empty() ? 0 : series.front().cdf.size();
    for (std::size_t t = 0; t < horizon; ++t) {
        json row{{"t", t + 1}};
        for (const auto& column : series) row[column.name] = column.cdf[t];
        rows.push_back(std::move(row));
    }
    doc["records"] = std::move(rows);

    json errors = json::array();
    for (const auto& entry : sup_errors) {
        errors.push_back(json{{"first", entry.first},
                              {"second", entry.second},
                              {"sup_error", entry.sup_error}});
    }
    doc["sup_errors"] = std::move(errors);
    out << doc.dump(2) << '\n';
}

} // namespace covertime::output
