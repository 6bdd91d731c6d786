#include "scigraph/chart.hpp"

#include <algorithm>
#include <ostream>

#include "scigraph/csv.hpp"
#include "scigraph/error.hpp"

namespace scigraph {

namespace {

std::size_t column_index(const ResultTable& table, std::string_view name) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (table.columns[i] == name) return i;
  }
  throw Error(Errc::UnknownColumn, "no column named '" + std::string(name) + "'");
}

// 10000 * count / total, rounded half to even.
std::int64_t percent_hundredths(std::int64_t count, std::int64_t total) {
  std::int64_t numerator = 10000 * count;
  std::int64_t q = numerator / total;
  std::int64_t r = numerator % total;
  if (2 * r > total || (2 * r == total && q % 2 != 0)) ++q;
  return q;
}

std::string format_hundredths(std::int64_t h) {
  return std::to_string(h / 100) + "." + (h % 100 < 10 ? "0" : "") + std::to_string(h % 100);
}

std::size_t write_all(const std::string& payload, std::ostream& out) {
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw Error(Errc::IoError, "failed to write CSV output");
  return payload.size();
}

void escape_dot(std::string& out, std::string_view text) {
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
}

const char* label_color(NodeLabel label) {
  switch (label) {
    case NodeLabel::Journal: return "blue";
    case NodeLabel::Author: return "purple";
    case NodeLabel::Article: return "yellow";
    case NodeLabel::Country: return "red";
    case NodeLabel::Institute: return "lightblue";
    case NodeLabel::Region: return "green";
  }
  return "black";
}

}  // namespace

LineSeries line_series(const ResultTable& table, std::string_view x_col,
                       std::string_view group_col) {
  std::size_t xi = column_index(table, x_col);
  std::size_t gi = column_index(table, group_col);
  std::map<std::string, std::map<std::int64_t, std::int64_t>> counts;
  LineSeries series;
  for (const auto& row : table.rows) {
    const auto& x = row[xi];
    const auto& group = row[gi];
    if (!x || !group) {
      ++series.dropped_rows;
      continue;
    }
    const auto* xv = std::get_if<std::int64_t>(&*x);
    if (!xv) throw Error(Errc::NonIntegerX, "column '" + std::string(x_col) + "' is not integer");
    ++counts[value_to_text(*group)][*xv];
  }
  for (auto& [group, by_x] : counts) {
    auto& points = series.groups[group];
    points.assign(by_x.begin(), by_x.end());
  }
  return series;
}

AreaSeries area_series(const ResultTable& table, const std::vector<std::string>& cols) {
  std::vector<std::size_t> indexes;
  AreaSeries series;
  for (const std::string& col : cols) {
    indexes.push_back(column_index(table, col));
    series.columns.push_back(col);
  }
  for (const auto& row : table.rows) {
    std::vector<PropertyValue> values;
    values.reserve(indexes.size());
    for (std::size_t i : indexes) {
      const auto& cell = row[i];
      if (!cell) {
        values.emplace_back(std::int64_t{0});
        ++series.nulls_zeroed;
        continue;
      }
      if (!std::holds_alternative<std::int64_t>(*cell) && !std::holds_alternative<double>(*cell)) {
        throw Error(Errc::NonNumericColumn,
                    "column '" + table.columns[i] + "' holds non-numeric values");
      }
      values.push_back(*cell);
    }
    series.rows.push_back(std::move(values));
  }
  return series;
}

PieCounts pie_counts(const ResultTable& table, std::string_view col) {
  std::size_t ci = column_index(table, col);
  std::map<std::string, std::int64_t> counts;
  PieCounts pie;
  std::int64_t total = 0;
  for (const auto& row : table.rows) {
    const auto& cell = row[ci];
    if (!cell) {
      ++pie.dropped_rows;
      continue;
    }
    ++counts[value_to_text(*cell)];
    ++total;
  }
  if (total == 0) {
    throw Error(Errc::EmptyTable, "no rows to aggregate for column '" + std::string(col) + "'");
  }
  for (const auto& [category, count] : counts) {
    pie.slices.push_back(PieSlice{category, count, percent_hundredths(count, total)});
  }
  std::sort(pie.slices.begin(), pie.slices.end(), [](const PieSlice& a, const PieSlice& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.category < b.category;
  });
  return pie;
}

std::string export_dot(const PropertyGraph& graph, const std::set<NodeLabel>& labels,
                       const std::set<RelType>& rel_types) {
  std::vector<bool> include(graph.node_count(), false);
  for (NodeLabel label : labels) {
    for (NodeId id : graph.nodes_with_label(label)) include[id] = true;
  }
  std::vector<RelId> edges;
  for (const Relationship& rel : graph.relationships()) {
    if (!rel_types.count(rel.type)) continue;
    edges.push_back(rel.id);
    include[rel.source] = true;
    include[rel.target] = true;
  }

  std::string out = "digraph scigraph {\n";
  for (const Node& node : graph.nodes()) {
    if (!include[node.id]) continue;
    out.append("n").append(std::to_string(node.id)).append(" [label=\"");
    escape_dot(out, node.name());
    out.append("\", fillcolor=\"").append(label_color(node.label)).append("\", style=filled];\n");
  }
  for (RelId rid : edges) {
    const Relationship& rel = graph.relationship(rid);
    out.append("n").append(std::to_string(rel.source)).append(" -> n");
    out.append(std::to_string(rel.target));
    out.append(" [label=\"").append(to_string(rel.type)).append("\"];\n");
  }
  out.append("}\n");
  return out;
}

std::size_t write_csv(const LineSeries& series, std::ostream& out) {
  std::string payload = "group,x,count\n";
  for (const auto& [group, points] : series.groups) {
    for (const auto& [x, count] : points) {
      payload.append(csv_field(group)).push_back(',');
      payload.append(std::to_string(x)).push_back(',');
      payload.append(std::to_string(count)).push_back('\n');
    }
  }
  return write_all(payload, out);
}

std::size_t write_csv(const AreaSeries& series, std::ostream& out) {
  std::string payload = "index";
  for (const std::string& col : series.columns) {
    payload.push_back(',');
    payload.append(csv_field(col));
  }
  payload.push_back('\n');
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    payload.append(std::to_string(i));
    for (const PropertyValue& value : series.rows[i]) {
      payload.push_back(',');
      payload.append(csv_field(value_to_text(value)));
    }
    payload.push_back('\n');
  }
  return write_all(payload, out);
}

std::size_t write_csv(const PieCounts& counts, std::ostream& out) {
  std::string payload = "category,count,percent\n";
  for (const PieSlice& slice : counts.slices) {
    payload.append(csv_field(slice.category)).push_back(',');
    payload.append(std::to_string(slice.count)).push_back(',');
    payload.append(format_hundredths(slice.percent_hundredths)).push_back('\n');
  }
  return write_all(payload, out);
}

}  // namespace scigraph
