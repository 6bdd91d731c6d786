#include <random>

#include <doctest.h>

#include "scigraph/error.hpp"
#include "scigraph/indicators.hpp"
#include "support/oracles.hpp"

using namespace scigraph;

namespace {

struct Fixture {
  PropertyGraph g;
  NodeId journal, outside_journal;
  NodeId a1, a2, a3;  // a1 cited by a2 (shared author) and a3 (disjoint)

  Fixture() {
    journal = g.create_node(NodeLabel::Journal, {{"name", std::string("j")}});
    outside_journal = g.create_node(NodeLabel::Journal, {{"name", std::string("k")}});
    a1 = article("t1", journal, {"x", "y"});
    a2 = article("t2", journal, {"x"});
    a3 = article("t3", outside_journal, {"z"});
    g.create_relationship(RelType::CITES, a2, a1);
    g.create_relationship(RelType::CITES, a3, a1);
  }

  NodeId article(const std::string& title, NodeId j, const std::vector<std::string>& authors) {
    NodeId id = g.create_node(NodeLabel::Article, {{"name", title}});
    g.create_relationship(RelType::PUBLISHED_IN, id, j);
    for (const std::string& name : authors) {
      NodeId author = g.create_node(NodeLabel::Author, {{"name", name}});
      g.create_relationship(RelType::AUTHORED, author, id);
    }
    return id;
  }
};

}  // namespace

TEST_CASE("article_self_citations counts author-sharing citers") {
  Fixture f;
  f.g.freeze();
  // a1 authored by {x, y}; citers: a2 {x} shares, a3 {z} does not.
  CHECK(article_self_citations(f.g, f.a1, 0.75) == 1);
  CHECK(article_self_citations(f.g, f.a2, 0.75) == 0);  // no inbound CITES
  CHECK(article_self_citations(f.g, f.a3, 0.75) == 0);
  CHECK_THROWS_AS(article_self_citations(f.g, f.journal, 0.75), Error);

  CHECK(test_oracles::brute_journal_self_citations(f.g, f.journal) == 1);
  CHECK(test_oracles::brute_article_self_citations(f.g, f.a1, 0.75) == 1);
}

TEST_CASE("every citer sharing an author hits the degree bound") {
  PropertyGraph g;
  NodeId j = g.create_node(NodeLabel::Journal, {{"name", std::string("j")}});
  NodeId target = g.create_node(NodeLabel::Article, {{"name", std::string("t")}});
  g.create_relationship(RelType::PUBLISHED_IN, target, j);
  NodeId shared = g.create_node(NodeLabel::Author, {{"name", std::string("same person")}});
  g.create_relationship(RelType::AUTHORED, shared, target);
  for (int i = 0; i < 4; ++i) {
    NodeId citer = g.create_node(NodeLabel::Article, {{"name", "c" + std::to_string(i)}});
    g.create_relationship(RelType::PUBLISHED_IN, citer, j);
    g.create_relationship(RelType::AUTHORED, shared, citer);
    g.create_relationship(RelType::CITES, citer, target);
  }
  g.freeze();
  CHECK(article_self_citations(g, target, 0.75) == 4);
  CHECK(article_self_citations(g, target, 0.75) ==
        static_cast<std::int64_t>(g.neighbors(target, RelType::CITES, Direction::In).size()));
}

TEST_CASE("journal_self_citations counts intra-journal edges") {
  Fixture f;
  f.g.freeze();
  // a2 -> a1 is internal to j; a3 -> a1 crosses journals.
  CHECK(journal_self_citations(f.g, f.journal) == 1);
  CHECK(journal_self_citations(f.g, f.outside_journal) == 0);
  CHECK_THROWS_AS(journal_self_citations(f.g, f.a1), Error);
}

TEST_CASE("citation quotients") {
  CHECK(other_citation_quotient(10, 40) == doctest::Approx(0.75));
  CHECK(other_citation_quotient(0, 0) == 1.0);
  CHECK(other_citation_quotient(7, 7) == 0.0);
  CHECK(nonlocal_influence_quotient(1, 2) == doctest::Approx(0.5));
  CHECK(nonlocal_influence_quotient(0, 5) == 1.0);
  CHECK(nonlocal_influence_quotient(0, 0) == 1.0);
  CHECK_THROWS_AS(other_citation_quotient(3, 2), Error);
  CHECK_THROWS_AS(nonlocal_influence_quotient(-1, 2), Error);
}

TEST_CASE("international_collaboration fraction") {
  PropertyGraph g;
  NodeId j = g.create_node(NodeLabel::Journal, {{"name", std::string("j")}});
  NodeId india = g.create_node(NodeLabel::Country, {{"name", std::string("india")}});
  NodeId canada = g.create_node(NodeLabel::Country, {{"name", std::string("canada")}});
  NodeId pes = g.create_node(NodeLabel::Institute, {{"name", std::string("pes university")}});
  NodeId calgary = g.create_node(NodeLabel::Institute, {{"name", std::string("calgary")}});
  g.create_relationship(RelType::IS_IN, pes, india);
  g.create_relationship(RelType::IS_IN, calgary, canada);

  auto add_article = [&](const std::string& title, std::vector<NodeId> institutes) {
    NodeId article = g.create_node(NodeLabel::Article, {{"name", title}});
    g.create_relationship(RelType::PUBLISHED_IN, article, j);
    int i = 0;
    for (NodeId inst : institutes) {
      NodeId author =
          g.create_node(NodeLabel::Author, {{"name", title + " author " + std::to_string(i++)}});
      g.create_relationship(RelType::AUTHORED, author, article);
      g.create_relationship(RelType::WORKS_FOR, author, inst);
    }
    return article;
  };

  add_article("one", {pes, calgary});   // two countries
  add_article("two", {pes, calgary});   // two countries
  add_article("three", {pes, pes});     // one country
  add_article("four", {});              // no resolvable country

  g.freeze();
  CHECK(international_collaboration(g, j) == doctest::Approx(0.5));
  CHECK_THROWS_AS(international_collaboration(g, india), Error);

  PropertyGraph empty;
  NodeId lonely = empty.create_node(NodeLabel::Journal, {{"name", std::string("empty")}});
  empty.freeze();
  CHECK_THROWS_AS(international_collaboration(empty, lonely), Error);
}

TEST_CASE("journal_indicators composition") {
  Fixture f;
  f.g.freeze();
  JournalIndicators ind = journal_indicators(f.g, f.journal, 1.3, 0.75);
  // total = inbound CITES degrees (no stored counts): a1 has 2, a2 has 0.
  CHECK(ind.total_cites == 2);
  CHECK(ind.self_cites_author_level == 1);
  CHECK(ind.self_cites_journal_level == 1);
  CHECK(ind.x1 == doctest::Approx(0.5));
  CHECK(ind.x2 == doctest::Approx(0.0));  // no affiliations in this fixture
  CHECK(ind.x3 == doctest::Approx(1.3));
  CHECK(ind.x4 == doctest::Approx(0.5));
  CHECK_THROWS_AS(journal_indicators(f.g, f.journal, -0.5, 0.75), Error);
}

TEST_CASE("uncited single-author single-country journal hits the conventions") {
  PropertyGraph g;
  NodeId j = g.create_node(NodeLabel::Journal, {{"name", std::string("j")}});
  NodeId a = g.create_node(NodeLabel::Article, {{"name", std::string("t")}});
  g.create_relationship(RelType::PUBLISHED_IN, a, j);
  NodeId u = g.create_node(NodeLabel::Author, {{"name", std::string("solo author")}});
  g.create_relationship(RelType::AUTHORED, u, a);
  g.freeze();
  JournalIndicators ind = journal_indicators(g, j, 1.0, 0.75);
  CHECK(ind.x1 == 1.0);
  CHECK(ind.x2 == 0.0);
  CHECK(ind.x3 == 1.0);
  CHECK(ind.x4 == 1.0);

  CHECK(journal_indicators(g, j, 0.0, 0.75).x3 == 0.0);
}

TEST_CASE("adding a disjoint outside citation only raises the total") {
  auto build = [](bool with_extra_citer) {
    PropertyGraph g;
    NodeId j = g.create_node(NodeLabel::Journal, {{"name", std::string("j")}});
    NodeId k = g.create_node(NodeLabel::Journal, {{"name", std::string("k")}});
    NodeId target = g.create_node(NodeLabel::Article, {{"name", std::string("t")}});
    g.create_relationship(RelType::PUBLISHED_IN, target, j);
    NodeId author = g.create_node(NodeLabel::Author, {{"name", std::string("main author")}});
    g.create_relationship(RelType::AUTHORED, author, target);
    NodeId self_citer = g.create_node(NodeLabel::Article, {{"name", std::string("c1")}});
    g.create_relationship(RelType::PUBLISHED_IN, self_citer, j);
    g.create_relationship(RelType::AUTHORED, author, self_citer);
    g.create_relationship(RelType::CITES, self_citer, target);
    if (with_extra_citer) {
      NodeId outside = g.create_node(NodeLabel::Article, {{"name", std::string("c2")}});
      g.create_relationship(RelType::PUBLISHED_IN, outside, k);
      NodeId stranger = g.create_node(NodeLabel::Author, {{"name", std::string("unrelated")}});
      g.create_relationship(RelType::AUTHORED, stranger, outside);
      g.create_relationship(RelType::CITES, outside, target);
    }
    g.freeze();
    return g;
  };
  PropertyGraph before = build(false);
  PropertyGraph after = build(true);
  JournalIndicators b = journal_indicators(before, 0, 1.0, 0.75);
  JournalIndicators a = journal_indicators(after, 0, 1.0, 0.75);
  CHECK(a.total_cites == b.total_cites + 1);
  CHECK(a.self_cites_author_level == b.self_cites_author_level);
  CHECK(a.self_cites_journal_level == b.self_cites_journal_level);
}

TEST_CASE("self-citation counts match the brute-force recount on random graphs") {
  std::mt19937 rng(555);
  for (int trial = 0; trial < 25; ++trial) {
    PropertyGraph g = test_oracles::random_citation_graph(rng, 20, 5, 60);
    TokenVectorCache cache(g);
    for (NodeId article : g.nodes_with_label(NodeLabel::Article)) {
      CHECK(article_self_citations(g, article, 0.75, cache) ==
            test_oracles::brute_article_self_citations(g, article, 0.75));
      CHECK(article_self_citations(g, article, 0.75, cache) <=
            static_cast<std::int64_t>(g.neighbors(article, RelType::CITES, Direction::In).size()));
    }
    for (NodeId journal : g.nodes_with_label(NodeLabel::Journal)) {
      CHECK(journal_self_citations(g, journal) ==
            test_oracles::brute_journal_self_citations(g, journal));
    }
  }
}
