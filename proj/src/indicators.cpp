#include "scigraph/indicators.hpp"

#include <set>
#include <string>

#include "scigraph/error.hpp"

namespace scigraph {

namespace {

void require_label(const PropertyGraph& graph, NodeId id, NodeLabel label, Errc code) {
  if (graph.node(id).label != label) {
    throw Error(code, "node " + std::to_string(id) + " is a " + to_string(graph.node(id).label));
  }
}

}  // namespace

TokenVectorCache::TokenVectorCache(const PropertyGraph& graph)
    : graph_(&graph), cache_(graph.node_count()) {}

const TokenVector& TokenVectorCache::name_tokens(NodeId id) {
  if (id >= cache_.size()) cache_.resize(id + 1);
  if (!cache_[id]) {
    cache_[id] = TokenVector::from_normalized(graph_->node(id).name());
  }
  return *cache_[id];
}

std::vector<NodeId> article_authors(const PropertyGraph& graph, NodeId article) {
  std::vector<NodeId> authors;
  for (const auto& [rel, neighbor] : graph.neighbors(article, RelType::AUTHORED, Direction::In)) {
    authors.push_back(neighbor);
  }
  return authors;
}

std::vector<NodeId> journal_articles(const PropertyGraph& graph, NodeId journal) {
  std::vector<NodeId> articles;
  for (const auto& [rel, neighbor] : graph.neighbors(journal, RelType::PUBLISHED_IN, Direction::In)) {
    articles.push_back(neighbor);
  }
  return articles;
}

std::optional<NodeId> article_journal(const PropertyGraph& graph, NodeId article) {
  for (const auto& [rel, neighbor] : graph.neighbors(article, RelType::PUBLISHED_IN, Direction::Out)) {
    return neighbor;
  }
  return std::nullopt;
}

std::int64_t article_total_cites(const PropertyGraph& graph, NodeId article) {
  std::int64_t stored = 0;
  if (const PropertyValue* v = graph.node(article).property("totalcites")) {
    if (const auto* i = std::get_if<std::int64_t>(v)) stored = *i;
  }
  auto inbound = graph.neighbors(article, RelType::CITES, Direction::In);
  return std::max<std::int64_t>(stored, static_cast<std::int64_t>(inbound.size()));
}

std::int64_t article_self_citations(const PropertyGraph& graph, NodeId article,
                                    double author_threshold) {
  TokenVectorCache cache(graph);
  return article_self_citations(graph, article, author_threshold, cache);
}

std::int64_t article_self_citations(const PropertyGraph& graph, NodeId article,
                                    double author_threshold, TokenVectorCache& cache) {
  require_label(graph, article, NodeLabel::Article, Errc::NotAnArticle);
  std::vector<NodeId> cited_authors = article_authors(graph, article);
  std::int64_t count = 0;
  for (const auto& [rel, citer] : graph.neighbors(article, RelType::CITES, Direction::In)) {
    bool shares_author = false;
    for (NodeId citing_author : article_authors(graph, citer)) {
      const TokenVector& citing_tokens = cache.name_tokens(citing_author);
      for (NodeId cited_author : cited_authors) {
        if (citing_tokens.cosine(cache.name_tokens(cited_author)) >= author_threshold) {
          shares_author = true;
          break;
        }
      }
      if (shares_author) break;
    }
    if (shares_author) ++count;
  }
  return count;
}

std::int64_t journal_self_citations(const PropertyGraph& graph, NodeId journal) {
  require_label(graph, journal, NodeLabel::Journal, Errc::NotAJournal);
  std::int64_t count = 0;
  for (NodeId article : journal_articles(graph, journal)) {
    for (const auto& [rel, citer] : graph.neighbors(article, RelType::CITES, Direction::In)) {
      if (article_journal(graph, citer) == journal) ++count;
    }
  }
  return count;
}

namespace {

double one_minus_ratio(std::int64_t self_cites, std::int64_t total_cites) {
  if (self_cites < 0 || self_cites > total_cites) {
    throw Error(Errc::SelfExceedsTotal, std::to_string(self_cites) + " self-citations of " +
                                            std::to_string(total_cites) + " total");
  }
  if (total_cites == 0) return 1.0;
  return 1.0 - static_cast<double>(self_cites) / static_cast<double>(total_cites);
}

}  // namespace

double other_citation_quotient(std::int64_t self_cites, std::int64_t total_cites) {
  return one_minus_ratio(self_cites, total_cites);
}

double nonlocal_influence_quotient(std::int64_t journal_self_cites, std::int64_t total_cites) {
  return one_minus_ratio(journal_self_cites, total_cites);
}

double international_collaboration(const PropertyGraph& graph, NodeId journal) {
  require_label(graph, journal, NodeLabel::Journal, Errc::NotAJournal);
  std::vector<NodeId> articles = journal_articles(graph, journal);
  if (articles.empty()) {
    throw Error(Errc::NoArticles, "journal " + std::to_string(journal) + " has no articles");
  }
  std::size_t international = 0;
  for (NodeId article : articles) {
    std::set<NodeId> countries;
    for (NodeId author : article_authors(graph, article)) {
      for (const auto& [wrel, institute] : graph.neighbors(author, RelType::WORKS_FOR, Direction::Out)) {
        for (const auto& [irel, country] : graph.neighbors(institute, RelType::IS_IN, Direction::Out)) {
          countries.insert(country);
        }
      }
    }
    if (countries.size() >= 2) ++international;
  }
  return static_cast<double>(international) / static_cast<double>(articles.size());
}

JournalIndicators journal_indicators(const PropertyGraph& graph, NodeId journal, double snip,
                                     double author_threshold) {
  require_label(graph, journal, NodeLabel::Journal, Errc::NotAJournal);
  if (!(snip >= 0.0)) {
    throw Error(Errc::NegativeInput, "snip must be non-negative");
  }
  JournalIndicators ind;
  ind.journal = journal;
  TokenVectorCache cache(graph);
  for (NodeId article : journal_articles(graph, journal)) {
    ind.total_cites += article_total_cites(graph, article);
    ind.self_cites_author_level += article_self_citations(graph, article, author_threshold, cache);
  }
  ind.self_cites_journal_level = journal_self_citations(graph, journal);
  ind.x1 = other_citation_quotient(ind.self_cites_author_level, ind.total_cites);
  ind.x2 = international_collaboration(graph, journal);
  ind.x3 = snip;
  ind.x4 = nonlocal_influence_quotient(ind.self_cites_journal_level, ind.total_cites);
  return ind;
}

}  // namespace scigraph
