#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scigraph/graph.hpp"
#include "scigraph/query.hpp"

namespace scigraph {

/// Per-group publication counts: group -> (x, count) with x strictly
/// increasing and every count >= 1. Rows with a null x or group are dropped
/// and tallied in dropped_rows.
struct LineSeries {
  std::map<std::string, std::vector<std::pair<std::int64_t, std::int64_t>>> groups;
  std::size_t dropped_rows = 0;
};

LineSeries line_series(const ResultTable& table, std::string_view x_col,
                       std::string_view group_col);  // UnknownColumn, NonIntegerX

/// Selected numeric columns passed through in table order; null cells map
/// to integer 0 and are tallied.
struct AreaSeries {
  std::vector<std::string> columns;
  std::vector<std::vector<PropertyValue>> rows;
  std::size_t nulls_zeroed = 0;
};

AreaSeries area_series(const ResultTable& table,
                       const std::vector<std::string>& cols);  // UnknownColumn, NonNumericColumn

/// Frequency table for one column, sorted by count descending then category
/// ascending. Percentages are exact hundredths, rounded half-even.
struct PieSlice {
  std::string category;
  std::int64_t count = 0;
  std::int64_t percent_hundredths = 0;

  double percent() const { return static_cast<double>(percent_hundredths) / 100.0; }
};

struct PieCounts {
  std::vector<PieSlice> slices;
  std::size_t dropped_rows = 0;  // null category rows
};

PieCounts pie_counts(const ResultTable& table, std::string_view col);  // UnknownColumn, EmptyTable

/// Deterministic DOT rendering of a graph slice. Nodes with a label in
/// `labels` are included, as is any endpoint of an included edge; edges are
/// filtered by `rel_types`. Nodes are emitted in ascending id as
///   n<id> [label="<name>", fillcolor="<color>", style=filled];
/// with the palette Journal=blue, Author=purple, Article=yellow,
/// Country=red, Institute=lightblue, Region=green, and edges in ascending
/// relationship id as
///   n<src> -> n<dst> [label="<TYPE>"];
std::string export_dot(const PropertyGraph& graph, const std::set<NodeLabel>& labels,
                       const std::set<RelType>& rel_types);

/// CSV writers: UTF-8, LF line endings, header row, fields quoted only when
/// needed. Formats: line `group,x,count`; area `index,<col1>,<col2>,...`;
/// pie `category,count,percent` with exactly two decimals. Returns bytes
/// written; throws IoError when the stream fails.
std::size_t write_csv(const LineSeries& series, std::ostream& out);
std::size_t write_csv(const AreaSeries& series, std::ostream& out);
std::size_t write_csv(const PieCounts& counts, std::ostream& out);

}  // namespace scigraph
