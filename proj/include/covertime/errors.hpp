#pragma once

#include <stdexcept>
#include <string>

namespace covertime {

/// Structural defects detected while validating a graph.
enum class GraphDefect {
    empty_graph,
    self_loop,
    duplicate_edge,
    disconnected,
    node_out_of_range,
    retries_exhausted,
};

class GraphError : public std::runtime_error {
public:
    GraphError(GraphDefect defect, const std::string& message)
        : std::runtime_error(message), defect_(defect) {}

    GraphDefect defect() const noexcept { return defect_; }

private:
    GraphDefect defect_;
};

/// Malformed edge-list input; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Invalid arguments to a query (start == target, empty target set, ...).
class QueryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The exact cover method refuses graphs larger than the subset-enumeration cap.
class CapExceededError : public std::runtime_error {
public:
    CapExceededError(int node_count, int cap)
        : std::runtime_error("exact cover method refused: graph has " + std::to_string(node_count) +
                             " nodes, cap is " + std::to_string(cap) +
                             " (use the approx, closed or mc method instead)"),
          node_count_(node_count), cap_(cap) {}

    int node_count() const noexcept { return node_count_; }
    int cap() const noexcept { return cap_; }

private:
    int node_count_;
    int cap_;
};

} // namespace covertime
