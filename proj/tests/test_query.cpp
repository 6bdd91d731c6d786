#include <array>
#include <random>
#include <thread>

#include <doctest.h>

#include "scigraph/error.hpp"
#include "scigraph/query.hpp"
#include "support/oracles.hpp"

using namespace scigraph;

namespace {

// The three queries from the journal-analysis workflow this engine serves.
const char* kJournalYearQuery =
    "MATCH (Journal)-[:PUBLISHED_IN]-(Article) WHERE Journal.name IN ['Applied Soft Computing', "
    "'Neurocomputing', 'Genetic Programming and Evolvable Machines'] RETURN Article.year, "
    "Journal.name";
const char* kCitesQuery = "MATCH (n:Article) RETURN n.totalcites, n.selfcites";
const char* kCountryQuery =
    "MATCH (Author)-[r:WORKS_FOR]->(Institute)-[s:IS_IN]->(Country) RETURN Author.name, "
    "Country.name";

PropertyGraph small_fixture() {
  PropertyGraph g;
  NodeId j1 = g.create_node(NodeLabel::Journal, {{"name", std::string("j1")}});
  NodeId a1 = g.create_node(
      NodeLabel::Article,
      {{"name", std::string("t1")}, {"year", std::int64_t{2014}}, {"totalcites", std::int64_t{3}},
       {"selfcites", std::int64_t{1}}});
  NodeId a2 = g.create_node(
      NodeLabel::Article,
      {{"name", std::string("t2")}, {"year", std::int64_t{2015}}, {"totalcites", std::int64_t{0}},
       {"selfcites", std::int64_t{0}}});
  g.create_relationship(RelType::PUBLISHED_IN, a1, j1);
  g.create_relationship(RelType::PUBLISHED_IN, a2, j1);
  NodeId u1 = g.create_node(NodeLabel::Author, {{"name", std::string("ann able")}});
  NodeId u2 = g.create_node(NodeLabel::Author, {{"name", std::string("ben birch")}});
  NodeId inst = g.create_node(NodeLabel::Institute, {{"name", std::string("pes university")}});
  NodeId country = g.create_node(NodeLabel::Country, {{"name", std::string("india")}});
  g.create_relationship(RelType::AUTHORED, u1, a1);
  g.create_relationship(RelType::AUTHORED, u2, a2);
  g.create_relationship(RelType::WORKS_FOR, u1, inst);
  g.create_relationship(RelType::WORKS_FOR, u2, inst);
  g.create_relationship(RelType::IS_IN, inst, country);
  g.freeze();
  return g;
}

}  // namespace

TEST_CASE("parse recognizes the three workflow queries") {
  QueryAst q1 = parse(kJournalYearQuery);
  REQUIRE(q1.nodes.size() == 2);
  CHECK(q1.nodes[0].variable == "Journal");
  CHECK(q1.nodes[0].label == "Journal");  // bare-variable label idiom
  CHECK(q1.nodes[1].label == "Article");
  REQUIRE(q1.rels.size() == 1);
  CHECK(q1.rels[0].type == "PUBLISHED_IN");
  CHECK(q1.rels[0].direction == PatternDirection::Undirected);
  REQUIRE(q1.where != nullptr);
  CHECK(q1.projections.size() == 2);

  QueryAst q2 = parse(kCitesQuery);
  REQUIRE(q2.nodes.size() == 1);
  CHECK(q2.nodes[0].variable == "n");
  CHECK(q2.nodes[0].label == "Article");
  CHECK(q2.projections.size() == 2);

  QueryAst q3 = parse(kCountryQuery);
  REQUIRE(q3.nodes.size() == 3);
  REQUIRE(q3.rels.size() == 2);
  CHECK(q3.rels[0].variable == "r");
  CHECK(q3.rels[0].type == "WORKS_FOR");
  CHECK(q3.rels[0].direction == PatternDirection::Right);
  CHECK(q3.rels[1].type == "IS_IN");
}

TEST_CASE("parse reports precise error positions") {
  try {
    parse("MATCH (n:Article RETURN n.name");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 18);  // the RETURN token ends the unclosed node pattern
  }
  try {
    parse("MATCH (n:Article)\nRETURN n.name,");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 15);
  }
  CHECK_THROWS_AS(parse(""), SyntaxError);
  CHECK_THROWS_AS(parse("MATCH (n:Article) RETURN"), SyntaxError);
  CHECK_THROWS_AS(parse("MATCH (n:Article) WHERE RETURN n.name"), SyntaxError);
  CHECK_THROWS_AS(parse("MATCH (n:Article) RETURN n.name extra"), SyntaxError);
  CHECK_THROWS_AS(parse("MATCH (a)-[r]->(b)-[r]->(c) RETURN a.name"), SyntaxError);
  CHECK_THROWS_AS(parse("MATCH (r)-[r]->(b) RETURN r.name"), SyntaxError);
  CHECK_THROWS_AS(parse("MATCH (n:Article) WHERE n.name = 'unterminated RETURN n.name"),
                  SyntaxError);
}

TEST_CASE("parse rejects undeclared variables") {
  try {
    parse("MATCH (n:Article) RETURN m.name");
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UndeclaredVariable);
  }
  CHECK_THROWS_AS(parse("MATCH (n:Article) WHERE m.year = 2015 RETURN n.name"), Error);
}

TEST_CASE("keywords are case-insensitive, variables case-sensitive") {
  QueryAst q = parse("match (n:Article) where n.year = 2015 return n.year");
  CHECK(q.nodes[0].variable == "n");
  CHECK_THROWS_AS(parse("MATCH (n:Article) RETURN N.year"), Error);
}

TEST_CASE("string literals are normalized at parse time") {
  QueryAst q = parse("MATCH (j:Journal) WHERE j.name = 'Applied  Soft-Computing' RETURN j.name");
  const auto& cmp = std::get<CmpExpr>(q.where->node);
  CHECK(std::get<std::string>(std::get<PropertyValue>(cmp.rhs)) == "applied soft computing");
}

TEST_CASE("evaluate on the empty graph returns columns and no rows") {
  PropertyGraph g;
  g.freeze();
  ResultTable t = run(g, kCitesQuery);
  CHECK(t.columns == std::vector<std::string>{"n.totalcites", "n.selfcites"});
  CHECK(t.rows.empty());
  CHECK(t.warnings.empty());
}

TEST_CASE("evaluate the journal/year filter on a fixture") {
  PropertyGraph g = small_fixture();
  ResultTable t = run(g,
                      "MATCH (Journal)-[:PUBLISHED_IN]-(Article) WHERE Journal.name IN ['J1'] "
                      "RETURN Article.year, Journal.name");
  REQUIRE(t.rows.size() == 2);
  CHECK(std::get<std::int64_t>(*t.rows[0][0]) == 2014);
  CHECK(std::get<std::string>(*t.rows[0][1]) == "j1");
  CHECK(std::get<std::int64_t>(*t.rows[1][0]) == 2015);
  // Brute-force oracle agrees.
  CHECK(test_oracles::canonical_rows(t) ==
        test_oracles::enumerate_query_rows(g, parse("MATCH (Journal)-[:PUBLISHED_IN]-(Article) "
                                                    "WHERE Journal.name IN ['J1'] "
                                                    "RETURN Article.year, Journal.name")));
}

TEST_CASE("evaluate a three-hop path") {
  PropertyGraph g = small_fixture();
  ResultTable t = run(g, kCountryQuery);
  REQUIRE(t.rows.size() == 2);
  CHECK(std::get<std::string>(*t.rows[0][0]) == "ann able");
  CHECK(std::get<std::string>(*t.rows[0][1]) == "india");
  CHECK(std::get<std::string>(*t.rows[1][0]) == "ben birch");
}

TEST_CASE("row order is lexicographic in bound node ids") {
  PropertyGraph g = small_fixture();
  ResultTable t = run(g, "MATCH (a:Article) RETURN a.year");
  REQUIRE(t.rows.size() == 2);
  CHECK(std::get<std::int64_t>(*t.rows[0][0]) == 2014);  // lower article id first
  CHECK(std::get<std::int64_t>(*t.rows[1][0]) == 2015);
}

TEST_CASE("undirected patterns match either orientation") {
  PropertyGraph g = small_fixture();
  ResultTable undirected = run(g, "MATCH (a:Article)-[:PUBLISHED_IN]-(j:Journal) RETURN a.name");
  ResultTable right = run(g, "MATCH (a:Article)-[:PUBLISHED_IN]->(j:Journal) RETURN a.name");
  ResultTable left = run(g, "MATCH (a:Article)<-[:PUBLISHED_IN]-(j:Journal) RETURN a.name");
  CHECK(undirected.rows.size() == 2);
  CHECK(right.rows.size() == 2);
  CHECK(left.rows.empty());
  // Undirected = union of both directed variants.
  auto all = test_oracles::canonical_rows(right);
  auto l = test_oracles::canonical_rows(left);
  all.insert(all.end(), l.begin(), l.end());
  std::sort(all.begin(), all.end());
  CHECK(test_oracles::canonical_rows(undirected) == all);
}

TEST_CASE("relationships are pairwise distinct within a match") {
  PropertyGraph g;
  NodeId a = g.create_node(NodeLabel::Article, {{"name", std::string("a")}});
  NodeId b = g.create_node(NodeLabel::Article, {{"name", std::string("b")}});
  g.create_relationship(RelType::CITES, a, b);
  g.freeze();
  // The single CITES edge cannot serve both hops.
  ResultTable t = run(g, "MATCH (x)-[:CITES]-(y)-[:CITES]-(z) RETURN x.name");
  CHECK(t.rows.empty());
  // With a second edge the zig-zag matches.
  PropertyGraph g2;
  NodeId c = g2.create_node(NodeLabel::Article, {{"name", std::string("c")}});
  NodeId d = g2.create_node(NodeLabel::Article, {{"name", std::string("d")}});
  NodeId e = g2.create_node(NodeLabel::Article, {{"name", std::string("e")}});
  g2.create_relationship(RelType::CITES, c, d);
  g2.create_relationship(RelType::CITES, e, d);
  g2.freeze();
  ResultTable t2 = run(g2, "MATCH (x)-[:CITES]->(y)<-[:CITES]-(z) RETURN x.name, z.name");
  REQUIRE(t2.rows.size() == 2);  // (c,e) and (e,c)
}

TEST_CASE("repeated node variables must bind the same node") {
  PropertyGraph g;
  NodeId a = g.create_node(NodeLabel::Article, {{"name", std::string("a")}});
  NodeId b = g.create_node(NodeLabel::Article, {{"name", std::string("b")}});
  NodeId c = g.create_node(NodeLabel::Article, {{"name", std::string("c")}});
  g.create_relationship(RelType::CITES, a, b);
  g.create_relationship(RelType::CITES, b, a);
  g.create_relationship(RelType::CITES, b, c);
  g.freeze();
  // Two-cycles only: a->b->a, b->a->b.
  ResultTable t = run(g, "MATCH (x)-[:CITES]->(y)-[:CITES]->(x) RETURN x.name, y.name");
  REQUIRE(t.rows.size() == 2);
  CHECK(std::get<std::string>(*t.rows[0][0]) == "a");
  CHECK(std::get<std::string>(*t.rows[1][0]) == "b");
}

TEST_CASE("WHERE three-valued logic treats missing properties as unknown") {
  PropertyGraph g;
  g.create_node(NodeLabel::Article, {{"name", std::string("dated")}, {"year", std::int64_t{2015}}});
  g.create_node(NodeLabel::Article, {{"name", std::string("undated")}});
  g.freeze();
  CHECK(run(g, "MATCH (a:Article) WHERE a.year = 2015 RETURN a.name").rows.size() == 1);
  CHECK(run(g, "MATCH (a:Article) WHERE a.year <> 2015 RETURN a.name").rows.empty());
  // NOT(unknown) is still unknown: the undated article never matches.
  CHECK(run(g, "MATCH (a:Article) WHERE NOT a.year = 2015 RETURN a.name").rows.empty());
  CHECK(run(g, "MATCH (a:Article) WHERE NOT a.year = 2014 RETURN a.name").rows.size() == 1);
  // OR recovers when one side is known true.
  CHECK(run(g, "MATCH (a:Article) WHERE a.year = 2015 OR a.name = 'undated' RETURN a.name")
            .rows.size() == 2);
}

TEST_CASE("WHERE type mismatches raise TypeMismatch") {
  PropertyGraph g = small_fixture();
  try {
    run(g, "MATCH (a:Article) WHERE a.name > 5 RETURN a.name");
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TypeMismatch);
  }
}

TEST_CASE("unknown labels and relationship types yield empty tables with warnings") {
  PropertyGraph g = small_fixture();
  ResultTable t = run(g, "MATCH (w:Widget) RETURN w.name");
  CHECK(t.rows.empty());
  REQUIRE(t.warnings.size() == 1);
  ResultTable t2 = run(g, "MATCH (a:Article)-[:FRIENDS]->(b:Article) RETURN a.name");
  CHECK(t2.rows.empty());
  CHECK(t2.warnings.size() == 1);
  // A label-less bare variable that is not a label name scans everything.
  ResultTable t3 = run(g, "MATCH (anything) RETURN anything.name");
  CHECK(t3.rows.size() == g.node_count());
}

TEST_CASE("projections of missing properties are null") {
  PropertyGraph g = small_fixture();
  ResultTable t = run(g, "MATCH (a:Article) RETURN a.nosuch, a.year");
  REQUIRE(t.rows.size() == 2);
  CHECK_FALSE(t.rows[0][0].has_value());
  CHECK(t.rows[0][1].has_value());
  // Relationship variables expose no properties.
  ResultTable t2 = run(g, "MATCH (a:Article)-[p:PUBLISHED_IN]->(j:Journal) RETURN p.kind");
  REQUIRE(t2.rows.size() == 2);
  CHECK_FALSE(t2.rows[0][0].has_value());
}

TEST_CASE("pretty-printed queries reparse to the same canonical form") {
  const char* queries[] = {
      kJournalYearQuery,
      kCitesQuery,
      kCountryQuery,
      "MATCH (a)-[]-(b) WHERE NOT (a.year = 2015 AND b.year <> 2014) OR a.name = 'x y' "
      "RETURN a.name, b.name",
      "MATCH (a:Article)<-[c:CITES]-(b) WHERE a.snip >= 1.25 AND a.ok = true RETURN a.name",
      "MATCH (n:Article) WHERE n.year IN [2014, 2015, 2016] RETURN n.year",
  };
  for (const char* q : queries) {
    std::string once = to_text(parse(q));
    std::string twice = to_text(parse(once));
    CHECK(once == twice);
  }
}

TEST_CASE("evaluate agrees with exhaustive enumeration on random graphs") {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    PropertyGraph g = test_oracles::random_query_graph(rng, 12);
    std::string text = test_oracles::random_query_text(rng, 3);
    QueryAst ast = parse(text);
    ResultTable got;
    std::vector<std::string> expected;
    try {
      got = evaluate(g, ast);
      expected = test_oracles::enumerate_query_rows(g, ast);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::TypeMismatch);  // name compared with year, etc.
      continue;
    }
    CHECK(test_oracles::canonical_rows(got) == expected);
    ++checked;
  }
  CHECK(checked > 30);  // most random queries are type-consistent
}

TEST_CASE("parse survives arbitrary input with a SyntaxError at worst") {
  CHECK_THROWS_AS(parse("MATCH (n:Article) WHERE n.x = 1e999 RETURN n.name"), SyntaxError);
  CHECK_THROWS_AS(parse("MATCH (n:Article) WHERE n.x = 99999999999999999999 RETURN n.name"),
                  SyntaxError);
  std::mt19937 rng(9090);
  std::uniform_int_distribution<int> len(0, 60);
  std::uniform_int_distribution<int> byte(1, 255);
  for (int i = 0; i < 3000; ++i) {
    std::string garbage;
    int n = len(rng);
    for (int k = 0; k < n; ++k) garbage.push_back(static_cast<char>(byte(rng)));
    try {
      (void)parse(garbage);
    } catch (const Error&) {
      // SyntaxError or UndeclaredVariable; anything else escapes and fails.
    }
  }
  // Mutations of a valid query must also parse or reject cleanly.
  const std::string base =
      "MATCH (a:Article)-[r:CITES]->(b:Article) WHERE a.year >= 2014 AND b.name IN ['x'] "
      "RETURN a.name, b.year";
  std::uniform_int_distribution<std::size_t> pos(0, base.size() - 1);
  for (int i = 0; i < 2000; ++i) {
    std::string mutated = base;
    mutated[pos(rng)] = static_cast<char>(byte(rng));
    try {
      (void)parse(mutated);
    } catch (const Error&) {
    }
  }
}

TEST_CASE("a frozen graph serves concurrent readers") {
  PropertyGraph g = small_fixture();
  std::vector<std::thread> readers;
  std::array<std::string, 4> results;
  for (int i = 0; i < 4; ++i) {
    readers.emplace_back([&, i] {
      for (int round = 0; round < 50; ++round) {
        results[i] = result_to_csv(run(g, kCountryQuery));
      }
    });
  }
  for (auto& t : readers) t.join();
  for (const auto& r : results) CHECK(r == results[0]);
}

TEST_CASE("identical evaluations serialize identically") {
  PropertyGraph g = small_fixture();
  ResultTable a = run(g, kCountryQuery);
  ResultTable b = run(g, kCountryQuery);
  CHECK(result_to_csv(a) == result_to_csv(b));
  CHECK(result_to_json(a) == result_to_json(b));
  CHECK(result_to_csv(a) ==
        "Author.name,Country.name\nann able,india\nben birch,india\n");
  CHECK(result_to_json(a) ==
        R"({"columns":["Author.name","Country.name"],"rows":[["ann able","india"],["ben birch","india"]]})");
}
