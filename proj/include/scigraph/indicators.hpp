#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scigraph/graph.hpp"
#include "scigraph/similarity.hpp"

namespace scigraph {

/// The four Cobb-Douglas inputs for one journal plus their raw counts.
struct JournalIndicators {
  NodeId journal = 0;
  double x1 = 1.0;  // other-citations quotient
  double x2 = 0.0;  // international collaboration ratio
  double x3 = 0.0;  // SNIP passthrough
  double x4 = 1.0;  // non-local influence quotient
  std::int64_t total_cites = 0;
  std::int64_t self_cites_author_level = 0;
  std::int64_t self_cites_journal_level = 0;
};

/// Lazily tokenized node names, for repeated same_entity checks over one
/// graph without re-normalizing.
class TokenVectorCache {
 public:
  explicit TokenVectorCache(const PropertyGraph& graph);
  const TokenVector& name_tokens(NodeId id);

 private:
  const PropertyGraph* graph_;
  std::vector<std::optional<TokenVector>> cache_;
};

/// Author node ids of an article (inbound AUTHORED), ascending.
std::vector<NodeId> article_authors(const PropertyGraph& graph, NodeId article);

/// Article node ids published in a journal (inbound PUBLISHED_IN), ascending.
std::vector<NodeId> journal_articles(const PropertyGraph& graph, NodeId journal);

/// The journal an article is published in (first outbound PUBLISHED_IN).
std::optional<NodeId> article_journal(const PropertyGraph& graph, NodeId article);

/// Effective total citations of an article: max of the stored "totalcites"
/// property and the inbound CITES degree (resolved edges can only
/// undercount the scraped value).
std::int64_t article_total_cites(const PropertyGraph& graph, NodeId article);

/// Number of inbound CITES relationships whose citing article shares at
/// least one author name with the cited article, names compared with
/// same_entity at author_threshold. Throws NotAnArticle.
std::int64_t article_self_citations(const PropertyGraph& graph, NodeId article,
                                    double author_threshold);
std::int64_t article_self_citations(const PropertyGraph& graph, NodeId article,
                                    double author_threshold, TokenVectorCache& cache);

/// Number of CITES relationships whose source and target are both published
/// in this journal. Throws NotAJournal.
std::int64_t journal_self_citations(const PropertyGraph& graph, NodeId journal);

/// x1 = 1 - self/total; total = 0 => 1. Throws SelfExceedsTotal.
double other_citation_quotient(std::int64_t self_cites, std::int64_t total_cites);

/// x4 = 1 - journal_self/total; total = 0 => 1. Throws SelfExceedsTotal.
double nonlocal_influence_quotient(std::int64_t journal_self_cites, std::int64_t total_cites);

/// x2: fraction of the journal's articles whose authors span at least two
/// distinct countries (Author -> Institute -> Country traversal). Articles
/// with no resolvable country count as non-international.
/// Throws NotAJournal, NoArticles.
double international_collaboration(const PropertyGraph& graph, NodeId journal);

/// Aggregates the indicator vector for one journal; x3 is the supplied
/// SNIP value passed through unchanged.
JournalIndicators journal_indicators(const PropertyGraph& graph, NodeId journal, double snip,
                                     double author_threshold);

}  // namespace scigraph
