#include "scigraph/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "scigraph/chart.hpp"
#include "scigraph/error.hpp"
#include "scigraph/indicators.hpp"
#include "scigraph/ingest.hpp"
#include "scigraph/internationality.hpp"
#include "scigraph/query.hpp"
#include "scigraph/similarity.hpp"
#include "scigraph/snapshot.hpp"

namespace scigraph {

namespace {

using nlohmann::json;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::SyntaxError:
    case Errc::UndeclaredVariable:
    case Errc::TypeMismatch:
      return kQueryError;
    case Errc::IoError:
    case Errc::SnapshotFormat:
      return kInputError;
    case Errc::JournalNotFound:
    case Errc::NoArticles:
      return kNotFound;
    case Errc::UnknownColumn:
    case Errc::NonIntegerX:
    case Errc::NonNumericColumn:
    case Errc::EmptyTable:
      return kChartError;
    default:
      return kUsage;
  }
}

json report_to_json(const IngestReport& report) {
  json rejects = json::array();
  for (const RejectedLine& reject : report.rejects) {
    rejects.push_back({{"line", reject.line}, {"reason", to_string(reject.reason)}});
  }
  json nodes;
  for (int i = 0; i < kNodeLabelCount; ++i) {
    nodes[to_string(static_cast<NodeLabel>(i))] = report.nodes_created[i];
  }
  return json{
      {"records_read", report.records_read},
      {"records_accepted", report.records_accepted},
      {"records_rejected", report.records_rejected},
      {"rejects", std::move(rejects)},
      {"nodes_created", std::move(nodes)},
      {"merges", report.merges},
      {"citation_links_resolved", report.citation_links_resolved},
      {"citation_links_unresolved", report.citation_links_unresolved},
      {"articles_annotated", report.articles_annotated},
  };
}

// Comma-separated flag value -> tokens; empty tokens dropped, so "" is an
// explicitly empty set.
std::vector<std::string> split_csv_flag(const std::string& value) {
  std::vector<std::string> tokens;
  std::stringstream stream(value);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (!token.empty()) tokens.push_back(token);
  }
  return tokens;
}

struct ChartOptions {
  std::string kind;
  std::string query;
  std::string x_col;
  std::string group_col;
  std::vector<std::string> cols;
  std::string col;
};

int write_payload(const std::string& payload, const std::string& destination, std::ostream& out) {
  if (destination == "-") {
    out << payload;
    return kOk;
  }
  std::ofstream file(destination, std::ios::binary);
  if (!file) throw Error(Errc::IoError, "cannot open '" + destination + "' for writing");
  file.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!file) throw Error(Errc::IoError, "failed writing '" + destination + "'");
  return kOk;
}

int cmd_ingest(const std::string& input, const std::string& output, const Thresholds& thresholds,
               std::ostream& out) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + input + "'");
  auto [graph, report] = ingest_stream(in, thresholds);
  if (in.bad()) throw Error(Errc::IoError, "failed reading '" + input + "'");
  graph.freeze();
  save_snapshot(graph, output);
  out << report_to_json(report).dump() << "\n";
  return kOk;
}

int cmd_query(const std::string& snapshot, const std::string& query_text,
              const std::string& format, std::ostream& out, std::ostream& err) {
  PropertyGraph graph = load_snapshot(snapshot);
  ResultTable table = run(graph, query_text);
  for (const std::string& warning : table.warnings) err << "warning: " << warning << "\n";
  out << (format == "json" ? result_to_json(table) + "\n" : result_to_csv(table));
  return kOk;
}

int cmd_score(const std::string& snapshot, const std::string& journal_name,
              std::vector<double> alpha, double scale, double snip_default,
              double author_threshold, bool optimize_alpha, std::ostream& out) {
  PropertyGraph graph = load_snapshot(snapshot);
  std::string normalized = normalize_text(journal_name);
  std::vector<NodeId> matches = graph.find_nodes(
      NodeLabel::Journal, PropertyPredicate{"name", Comparison::Eq, normalized});
  if (matches.empty()) {
    throw Error(Errc::JournalNotFound, "no journal named '" + normalized + "'");
  }
  NodeId journal = matches.front();
  double snip = snip_default;
  if (const PropertyValue* v = graph.node(journal).property("snip")) {
    if (const auto* d = std::get_if<double>(v)) snip = *d;
    if (const auto* i = std::get_if<std::int64_t>(v)) snip = static_cast<double>(*i);
  }
  JournalIndicators ind = journal_indicators(graph, journal, snip, author_threshold);
  ScoreParams params{scale};
  double value;
  if (optimize_alpha) {
    OptimalElasticities best = optimal_elasticities({ind.x1, ind.x2, ind.x3, ind.x4}, params);
    alpha = best.alpha;
    value = best.value;
  } else {
    value = score_journal(ind, alpha, params);
  }
  json result{
      {"journal", graph.node(journal).name()},
      {"x1", ind.x1},
      {"x2", ind.x2},
      {"x3", ind.x3},
      {"x4", ind.x4},
      {"alpha", alpha},
      {"A", scale},
      {"internationality", value},
  };
  out << result.dump() << "\n";
  return kOk;
}

int cmd_chart(const std::string& snapshot, const ChartOptions& options,
              const std::string& output, std::ostream& out, std::ostream& err) {
  PropertyGraph graph = load_snapshot(snapshot);
  ResultTable table = run(graph, options.query);
  for (const std::string& warning : table.warnings) err << "warning: " << warning << "\n";
  std::ostringstream payload;
  if (options.kind == "line") {
    LineSeries series = line_series(table, options.x_col, options.group_col);
    if (series.dropped_rows > 0) {
      err << "warning: dropped " << series.dropped_rows << " rows with null cells\n";
    }
    write_csv(series, payload);
  } else if (options.kind == "area") {
    AreaSeries series = area_series(table, options.cols);
    if (series.nulls_zeroed > 0) {
      err << "warning: mapped " << series.nulls_zeroed << " null cells to 0\n";
    }
    write_csv(series, payload);
  } else {
    PieCounts counts = pie_counts(table, options.col);
    if (counts.dropped_rows > 0) {
      err << "warning: dropped " << counts.dropped_rows << " rows with null category\n";
    }
    write_csv(counts, payload);
  }
  return write_payload(payload.str(), output, out);
}

int cmd_export_dot(const std::string& snapshot, const std::set<NodeLabel>& labels,
                   const std::set<RelType>& rels, const std::string& output, std::ostream& out) {
  PropertyGraph graph = load_snapshot(snapshot);
  return write_payload(export_dot(graph, labels, rels), output, out);
}

void require_threshold(double value, const char* flag) {
  if (!(value > 0.0) || value > 1.0) {
    throw CLI::ValidationError(std::string(flag) + " must be in (0,1]");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Embedded scientometrics engine: scholarly property graph, "
               "citation indicators, internationality scoring, pattern queries "
               "and chart/DOT export"};
  app.name("scigraph");
  app.require_subcommand(1);

  Thresholds thresholds;

  std::string ingest_input, ingest_output;
  CLI::App* ingest = app.add_subcommand("ingest", "Parse JSONL records into a graph snapshot");
  ingest->add_option("-i,--input", ingest_input, "Input JSONL file")->required();
  ingest->add_option("-o,--output", ingest_output, "Snapshot file to write")->required();
  ingest->add_option("--author-threshold", thresholds.author, "Author similarity threshold")
      ->envname("SCIGRAPH_AUTHOR_THRESHOLD");
  ingest->add_option("--journal-threshold", thresholds.journal, "Journal similarity threshold")
      ->envname("SCIGRAPH_JOURNAL_THRESHOLD");
  ingest->add_option("--title-threshold", thresholds.title, "Title similarity threshold")
      ->envname("SCIGRAPH_TITLE_THRESHOLD");

  std::string query_snapshot, query_text, query_format = "csv";
  CLI::App* query = app.add_subcommand("query", "Run a pattern query against a snapshot");
  query->add_option("-s,--snapshot", query_snapshot, "Snapshot file")->required();
  query->add_option("-q,--query", query_text, "Query text")->required();
  query->add_option("--format", query_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string score_snapshot, score_journal_name;
  std::vector<double> score_alpha{0.25, 0.25, 0.25, 0.25};
  double score_scale = 1.0, score_snip_default = 1.0, score_author_threshold = 0.75;
  bool score_optimize = false;
  CLI::App* score = app.add_subcommand("score", "Compute a journal's internationality score");
  score->add_option("-s,--snapshot", score_snapshot, "Snapshot file")->required();
  score->add_option("--journal", score_journal_name, "Journal name")->required();
  score->add_option("--alpha", score_alpha, "Elasticities (comma separated)")
      ->delimiter(',')
      ->expected(4)
      ->envname("SCIGRAPH_ALPHA");
  score->add_option("--scale-a", score_scale, "Scale factor A")->envname("SCIGRAPH_SCALE_A");
  score->add_option("--snip-default", score_snip_default,
                    "SNIP value when the journal has none recorded")
      ->envname("SCIGRAPH_SNIP_DEFAULT");
  score->add_option("--author-threshold", score_author_threshold, "Author similarity threshold")
      ->envname("SCIGRAPH_AUTHOR_THRESHOLD");
  score->add_flag("--optimize-alpha", score_optimize,
                  "Report the simplex-optimal elasticities instead");

  std::string chart_snapshot, chart_output;
  ChartOptions chart_options;
  CLI::App* chart = app.add_subcommand("chart", "Run a query and export chart data as CSV");
  chart->add_option("-s,--snapshot", chart_snapshot, "Snapshot file")->required();
  chart->add_option("--kind", chart_options.kind, "Chart kind")
      ->required()
      ->check(CLI::IsMember({"line", "area", "pie"}));
  chart->add_option("-q,--query", chart_options.query, "Query text")->required();
  chart->add_option("--x-col", chart_options.x_col, "X column (line)");
  chart->add_option("--group-col", chart_options.group_col, "Group column (line)");
  chart->add_option("--cols", chart_options.cols, "Value columns (area)")->delimiter(',');
  chart->add_option("--col", chart_options.col, "Category column (pie)");
  chart->add_option("-o,--output", chart_output, "CSV file to write ('-' for stdout)")->required();

  std::string dot_snapshot, dot_output, dot_labels, dot_rels;
  CLI::App* export_dot_cmd = app.add_subcommand("export-dot", "Export a graph slice as DOT");
  export_dot_cmd->add_option("-s,--snapshot", dot_snapshot, "Snapshot file")->required();
  CLI::Option* labels_opt =
      export_dot_cmd->add_option("--labels", dot_labels, "Node labels to include (comma separated)");
  CLI::Option* rels_opt =
      export_dot_cmd->add_option("--rels", dot_rels, "Relationship types to include");
  export_dot_cmd->add_option("-o,--output", dot_output, "DOT file to write ('-' for stdout)")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand(ingest)) {
      require_threshold(thresholds.author, "--author-threshold");
      require_threshold(thresholds.journal, "--journal-threshold");
      require_threshold(thresholds.title, "--title-threshold");
      return cmd_ingest(ingest_input, ingest_output, thresholds, out);
    }
    if (app.got_subcommand(query)) {
      return cmd_query(query_snapshot, query_text, query_format, out, err);
    }
    if (app.got_subcommand(score)) {
      require_threshold(score_author_threshold, "--author-threshold");
      if (!score_optimize) {
        double sum = 0.0;
        for (double a : score_alpha) {
          if (a < 0.0) throw CLI::ValidationError("--alpha entries must be non-negative");
          sum += a;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
          throw CLI::ValidationError("--alpha must sum to 1");
        }
      }
      return cmd_score(score_snapshot, score_journal_name, score_alpha, score_scale,
                       score_snip_default, score_author_threshold, score_optimize, out);
    }
    if (app.got_subcommand(chart)) {
      if (chart_options.kind == "line" &&
          (chart_options.x_col.empty() || chart_options.group_col.empty())) {
        throw CLI::ValidationError("line charts require --x-col and --group-col");
      }
      if (chart_options.kind == "area" && chart_options.cols.empty()) {
        throw CLI::ValidationError("area charts require --cols");
      }
      if (chart_options.kind == "pie" && chart_options.col.empty()) {
        throw CLI::ValidationError("pie charts require --col");
      }
      return cmd_chart(chart_snapshot, chart_options, chart_output, out, err);
    }
    if (app.got_subcommand(export_dot_cmd)) {
      std::set<NodeLabel> labels;
      std::set<RelType> rels;
      if (labels_opt->count() == 0) {
        for (int i = 0; i < kNodeLabelCount; ++i) labels.insert(static_cast<NodeLabel>(i));
      } else {
        for (const std::string& token : split_csv_flag(dot_labels)) {
          labels.insert(parse_node_label(token));  // InvalidLabel -> usage error
        }
      }
      if (rels_opt->count() == 0) {
        for (int i = 0; i < kRelTypeCount; ++i) rels.insert(static_cast<RelType>(i));
      } else {
        for (const std::string& token : split_csv_flag(dot_rels)) {
          rels.insert(parse_rel_type(token));
        }
      }
      return cmd_export_dot(dot_snapshot, labels, rels, dot_output, out);
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace scigraph
