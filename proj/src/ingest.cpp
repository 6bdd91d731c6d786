#include "scigraph/ingest.hpp"

#include <algorithm>
#include <istream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "scigraph/error.hpp"
#include "scigraph/indicators.hpp"
#include "scigraph/similarity.hpp"

namespace scigraph {

namespace {

using nlohmann::json;

std::optional<std::string> normalized_string_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return std::nullopt;
  std::string normalized = normalize_text(it->get_ref<const std::string&>());
  if (normalized.empty()) return std::nullopt;
  return normalized;
}

// One record or a reject reason.
std::optional<RejectReason> parse_one(const json& obj, ArticleRecord& out) {
  if (!obj.is_object()) return RejectReason::MalformedJson;

  if (auto title = normalized_string_field(obj, "title")) {
    out.title = std::move(*title);
  } else {
    return RejectReason::MissingTitle;
  }
  if (auto journal = normalized_string_field(obj, "journal")) {
    out.journal = std::move(*journal);
  } else {
    return RejectReason::MissingJournal;
  }

  auto year_it = obj.find("year");
  if (year_it == obj.end()) return RejectReason::MissingYear;
  if (!year_it->is_number_integer()) return RejectReason::BadYear;
  out.year = year_it->get<std::int64_t>();
  if (out.year <= 0 || out.year > 3000) return RejectReason::BadYear;

  auto authors_it = obj.find("authors");
  if (authors_it == obj.end() || !authors_it->is_array()) return RejectReason::MissingAuthors;
  for (const json& entry : *authors_it) {
    if (!entry.is_object()) continue;
    auto name = normalized_string_field(entry, "name");
    if (!name) continue;
    AuthorRecord author;
    author.name = std::move(*name);
    author.institute = normalized_string_field(entry, "institute");
    author.country = normalized_string_field(entry, "country");
    out.authors.push_back(std::move(author));
  }
  if (out.authors.empty()) return RejectReason::EmptyAuthors;

  if (auto it = obj.find("cited_titles"); it != obj.end() && it->is_array()) {
    for (const json& entry : *it) {
      if (!entry.is_string()) continue;
      std::string normalized = normalize_text(entry.get_ref<const std::string&>());
      if (!normalized.empty()) out.cited_titles.push_back(std::move(normalized));
    }
  }
  if (auto it = obj.find("totalcites");
      it != obj.end() && it->is_number_integer() && it->get<std::int64_t>() >= 0) {
    out.totalcites = it->get<std::int64_t>();
  }
  if (auto it = obj.find("snip"); it != obj.end() && it->is_number() && it->get<double>() >= 0.0) {
    out.snip = it->get<double>();
  }
  out.journal_country = normalized_string_field(obj, "journal_country");
  out.region = normalized_string_field(obj, "region");
  return std::nullopt;
}

// Greedy first-match name resolver. Entries are kept in creation (NodeId)
// order; resolve() returns the lowest-id entry whose name matches at the
// threshold, which equals the first match of an ascending scan.
//
// When every stored name was itself admitted through this resolver, any two
// stored names are pairwise below the threshold, so an exact hit *is* the
// first match and the scan can be skipped (pairwise_distinct = true).
// Article titles are only deduplicated per journal, so the global citation
// resolver must still scan below an exact hit; those scans are memoized.
class NameResolver {
 public:
  NameResolver(double threshold, bool pairwise_distinct)
      : threshold_(threshold), pairwise_distinct_(pairwise_distinct) {}

  std::optional<NodeId> resolve(const std::string& name) {
    if (auto memo = probe_memo_.find(name); memo != probe_memo_.end()) return memo->second;
    std::size_t exact = npos;
    if (auto it = exact_.find(name); it != exact_.end()) {
      exact = it->second;
      if (pairwise_distinct_) return entries_[exact].id;
    }
    TokenVector probe = TokenVector::from_normalized(name);
    std::optional<NodeId> found;
    std::size_t limit = exact == npos ? entries_.size() : exact;
    for (std::size_t i = 0; i < limit; ++i) {
      const Entry& entry = entries_[i];
      if (!may_match(probe, entry.tokens)) continue;
      if (probe.cosine(entry.tokens) >= threshold_) {
        found = entry.id;
        break;
      }
    }
    if (!found && exact != npos) found = entries_[exact].id;
    probe_memo_.emplace(name, found);
    return found;
  }

  void insert(const std::string& name, NodeId id) {
    probe_memo_.clear();
    if (!exact_.count(name)) exact_.emplace(name, entries_.size());
    entries_.push_back(Entry{TokenVector::from_normalized(name), id});
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Entry {
    TokenVector tokens;
    NodeId id;
  };

  // Cheap exact upper bound on the dot product:
  // dot <= min(total_a * max_count_b, total_b * max_count_a), so strings of
  // very different lengths can be skipped without a merge pass.
  bool may_match(const TokenVector& a, const TokenVector& b) const {
    auto dot_bound = std::min(static_cast<std::int64_t>(a.total()) * b.max_count(),
                              static_cast<std::int64_t>(b.total()) * a.max_count());
    return static_cast<double>(dot_bound) >= threshold_ * a.norm() * b.norm();
  }

  double threshold_;
  bool pairwise_distinct_;
  std::unordered_map<std::string, std::size_t> exact_;
  std::unordered_map<std::string, std::optional<NodeId>> probe_memo_;
  std::vector<Entry> entries_;
};

std::uint64_t edge_key(RelType type, NodeId source, NodeId target) {
  return (static_cast<std::uint64_t>(type) << 60) | (static_cast<std::uint64_t>(source) << 30) |
         target;
}

}  // namespace

const char* to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::MalformedJson: return "malformed_json";
    case RejectReason::MissingTitle: return "missing_field:title";
    case RejectReason::MissingJournal: return "missing_field:journal";
    case RejectReason::MissingAuthors: return "missing_field:authors";
    case RejectReason::MissingYear: return "missing_field:year";
    case RejectReason::EmptyAuthors: return "empty_authors";
    case RejectReason::BadYear: return "bad_year";
  }
  return "unknown";
}

std::pair<std::vector<ArticleRecord>, std::vector<RejectedLine>> parse_records(
    std::istream& input) {
  std::vector<ArticleRecord> records;
  std::vector<RejectedLine> rejects;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded()) {
      rejects.push_back({line_number, RejectReason::MalformedJson});
      continue;
    }
    ArticleRecord record;
    if (auto reason = parse_one(obj, record)) {
      rejects.push_back({line_number, *reason});
    } else {
      records.push_back(std::move(record));
    }
  }
  return {std::move(records), std::move(rejects)};
}

std::pair<PropertyGraph, IngestReport> load_graph(const std::vector<ArticleRecord>& records,
                                                  const Thresholds& thresholds) {
  PropertyGraph graph;
  IngestReport report;
  report.records_read = records.size();
  report.records_accepted = records.size();

  NameResolver journals(thresholds.journal, /*pairwise_distinct=*/true);
  NameResolver authors(thresholds.author, /*pairwise_distinct=*/true);
  std::unordered_map<std::string, NodeId> institutes;
  std::unordered_map<std::string, NodeId> countries;
  std::unordered_map<std::string, NodeId> regions;
  std::unordered_set<std::uint64_t> edges;

  auto create_node = [&](NodeLabel label, PropertyMap properties) {
    NodeId id = graph.create_node(label, std::move(properties));
    ++report.nodes_created[static_cast<int>(label)];
    return id;
  };
  auto link_once = [&](RelType type, NodeId source, NodeId target) {
    if (edges.insert(edge_key(type, source, target)).second) {
      graph.create_relationship(type, source, target);
    }
  };
  auto exact_node = [&](std::unordered_map<std::string, NodeId>& index, NodeLabel label,
                        const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    NodeId id = create_node(label, {{"name", name}});
    index.emplace(name, id);
    return id;
  };

  // Per-journal article title lists for duplicate detection.
  std::unordered_map<NodeId, std::vector<std::pair<TokenVector, NodeId>>> journal_titles;
  // Surviving (article id, record index) pairs for the citation pass.
  std::vector<std::pair<NodeId, std::size_t>> loaded;

  for (std::size_t r = 0; r < records.size(); ++r) {
    const ArticleRecord& record = records[r];

    NodeId journal;
    if (auto existing = journals.resolve(record.journal)) {
      journal = *existing;
      if (graph.node(journal).name() != record.journal) ++report.merges;
    } else {
      PropertyMap props{{"name", record.journal}};
      if (record.journal_country) props.emplace("country", *record.journal_country);
      if (record.snip) props.emplace("snip", *record.snip);
      journal = create_node(NodeLabel::Journal, std::move(props));
      journals.insert(record.journal, journal);
    }
    if (record.journal_country) {
      NodeId country = exact_node(countries, NodeLabel::Country, *record.journal_country);
      if (record.region) {
        NodeId region = exact_node(regions, NodeLabel::Region, *record.region);
        link_once(RelType::IN_REGION, country, region);
      }
    }

    // Duplicate title within the same journal: merge, first record wins.
    TokenVector title_tokens = TokenVector::from_normalized(record.title);
    auto& titles = journal_titles[journal];
    bool duplicate = false;
    for (const auto& [tokens, id] : titles) {
      if (title_tokens.cosine(tokens) >= thresholds.title) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) {
      ++report.merges;
      continue;
    }

    PropertyMap article_props{{"name", record.title}, {"year", record.year}};
    if (record.totalcites) article_props.emplace("totalcites", *record.totalcites);
    NodeId article = create_node(NodeLabel::Article, std::move(article_props));
    titles.emplace_back(std::move(title_tokens), article);
    loaded.emplace_back(article, r);
    graph.create_relationship(RelType::PUBLISHED_IN, article, journal);

    for (const AuthorRecord& entry : record.authors) {
      NodeId author;
      if (auto existing = authors.resolve(entry.name)) {
        author = *existing;
        if (graph.node(author).name() != entry.name) ++report.merges;
      } else {
        author = create_node(NodeLabel::Author, {{"name", entry.name}});
        authors.insert(entry.name, author);
      }
      link_once(RelType::AUTHORED, author, article);
      if (entry.institute) {
        NodeId institute = exact_node(institutes, NodeLabel::Institute, *entry.institute);
        link_once(RelType::WORKS_FOR, author, institute);
        if (entry.country) {
          NodeId country = exact_node(countries, NodeLabel::Country, *entry.country);
          link_once(RelType::IS_IN, institute, country);
        }
      }
    }
  }

  // Citation pass over all loaded articles, in creation order.
  NameResolver cited(thresholds.title, /*pairwise_distinct=*/false);
  for (const auto& [article, r] : loaded) {
    cited.insert(graph.node(article).name(), article);
  }
  for (const auto& [article, r] : loaded) {
    for (const std::string& cited_title : records[r].cited_titles) {
      auto target = cited.resolve(cited_title);
      if (!target || *target == article) {
        ++report.citation_links_unresolved;
        continue;
      }
      link_once(RelType::CITES, article, *target);
      ++report.citation_links_resolved;
    }
  }

  return {std::move(graph), std::move(report)};
}

std::size_t annotate_citation_counts(PropertyGraph& graph, double author_threshold) {
  if (graph.frozen()) throw Error(Errc::GraphFrozen, "annotation requires the build phase");
  TokenVectorCache cache(graph);
  std::size_t annotated = 0;
  for (NodeId article : graph.nodes_with_label(NodeLabel::Article)) {
    graph.set_property(article, "totalcites", article_total_cites(graph, article));
    graph.set_property(article, "selfcites",
                       article_self_citations(graph, article, author_threshold, cache));
    ++annotated;
  }
  for (NodeId journal : graph.nodes_with_label(NodeLabel::Journal)) {
    std::int64_t total = 0;
    for (NodeId article : journal_articles(graph, journal)) {
      total += std::get<std::int64_t>(*graph.node(article).property("totalcites"));
    }
    graph.set_property(journal, "jtotalcites", total);
    graph.set_property(journal, "jselfcites", journal_self_citations(graph, journal));
  }
  return annotated;
}

std::pair<PropertyGraph, IngestReport> ingest_stream(std::istream& input,
                                                     const Thresholds& thresholds) {
  auto [records, rejects] = parse_records(input);
  auto [graph, report] = load_graph(records, thresholds);
  report.records_read = records.size() + rejects.size();
  report.records_rejected = rejects.size();
  report.rejects = std::move(rejects);
  report.articles_annotated = annotate_citation_counts(graph, thresholds.author);
  return {std::move(graph), std::move(report)};
}

}  // namespace scigraph
