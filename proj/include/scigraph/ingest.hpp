#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scigraph/graph.hpp"

namespace scigraph {

struct AuthorRecord {
  std::string name;  // normalized, non-empty
  std::optional<std::string> institute;
  std::optional<std::string> country;
};

/// One scholarly record as parsed from the input JSONL. All text fields are
/// already normalized.
struct ArticleRecord {
  std::string title;
  std::int64_t year = 0;  // 0 < year <= 3000
  std::string journal;
  std::optional<std::string> journal_country;
  std::optional<std::string> region;
  std::optional<double> snip;
  std::vector<AuthorRecord> authors;  // non-empty
  std::vector<std::string> cited_titles;
  std::optional<std::int64_t> totalcites;
};

enum class RejectReason {
  MalformedJson,
  MissingTitle,
  MissingJournal,
  MissingAuthors,
  MissingYear,
  EmptyAuthors,
  BadYear,
};

const char* to_string(RejectReason reason);

struct RejectedLine {
  std::size_t line = 0;  // 1-based
  RejectReason reason = RejectReason::MalformedJson;
};

struct IngestReport {
  std::size_t records_read = 0;  // accepted + rejected
  std::size_t records_accepted = 0;
  std::size_t records_rejected = 0;
  std::vector<RejectedLine> rejects;
  std::array<std::size_t, kNodeLabelCount> nodes_created{};
  std::size_t merges = 0;  // fuzzy entity merges + duplicate-title article merges
  std::size_t citation_links_resolved = 0;
  std::size_t citation_links_unresolved = 0;
  std::size_t articles_annotated = 0;
};

/// Similarity thresholds for entity resolution.
struct Thresholds {
  double author = 0.75;
  double journal = 0.75;
  double title = 0.90;
};

/// Parses line-delimited JSON. Each well-formed line yields one record with
/// its text fields normalized; malformed lines are reported with their
/// 1-based line number and skipped. Field order is irrelevant and unknown
/// fields are ignored. Whitespace-only lines are skipped without counting.
///
/// Expected object shape per line:
///   {"title": str, "year": int, "journal": str, "authors": [{"name": str,
///    "institute"?: str, "country"?: str}, ...], "cited_titles"?: [str, ...],
///    "totalcites"?: int >= 0, "snip"?: number >= 0,
///    "journal_country"?: str, "region"?: str}
std::pair<std::vector<ArticleRecord>, std::vector<RejectedLine>> parse_records(std::istream& input);

/// Builds the property graph from parsed records.
///
/// Entity resolution is greedy first-match in NodeId order: journals and
/// authors match existing nodes via same_entity at their thresholds;
/// institutes, countries and regions deduplicate by exact normalized name.
/// An article whose title matches an existing article of the same journal
/// at >= the title threshold merges into it (the first record wins and the
/// duplicate contributes nothing else). CITES edges are resolved by
/// matching each cited title against all loaded article titles at the
/// title threshold, first match in NodeId order; a cited title that
/// resolves to the citing article itself counts as unresolved.
std::pair<PropertyGraph, IngestReport> load_graph(const std::vector<ArticleRecord>& records,
                                                  const Thresholds& thresholds = {});

/// Stamps citation properties onto the graph (build phase only; throws
/// GraphFrozen after freeze). Every Article gets
///   totalcites = max(ingested count, inbound CITES degree)
///   selfcites  = author-level self-citations
/// and every Journal gets the aggregates "jtotalcites" (sum of its
/// articles' totalcites) and "jselfcites" (intra-journal CITES count).
/// Returns the number of articles annotated.
std::size_t annotate_citation_counts(PropertyGraph& graph, double author_threshold = 0.75);

/// parse -> load -> annotate, one call. The graph is left unfrozen.
std::pair<PropertyGraph, IngestReport> ingest_stream(std::istream& input,
                                                     const Thresholds& thresholds = {});

}  // namespace scigraph
