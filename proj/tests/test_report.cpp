#include "patres/oracle.hpp"
#include "patres/report.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

using namespace patres;

namespace {

std::string readFixture(const std::string &name) {
  std::ifstream in(std::string(PATRES_DATA_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << name;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

size_t countMatches(const std::string &text, const std::regex &re) {
  return std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator());
}

const std::regex kInnerNode(R"(\n  n\d+ \[label=)");
const std::regex kTerminal(R"re(\n  [TF] \[label="(TRUE|FALSE)", shape=box, peripheries=2\];)re");

} // namespace

TEST(Dimacs, Parse) {
  EXPECT_EQ(toString(parseDimacs("p cnf 2 1\n1 -2 0\n")), "{0,-1}");
  EXPECT_EQ(toString(parseDimacs("c hello\np cnf 3 2\n1 2\n 3 0 -1 0\n")), "{0,1,2}{-0}");
}

TEST(Dimacs, VariablesAreNotCompacted) {
  EXPECT_EQ(toString(parseDimacs("p cnf 9 1\n4 9 0\n")), "{3,8}");
}

TEST(Dimacs, Errors) {
  for (const char *bad : {"c only comments\n", "p cnf 2 1\np cnf 2 1\n1 0\n", "p cnf 2 1\n1 x 0\n"}) {
    try {
      parseDimacs(bad);
      FAIL() << bad;
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), Errc::ParseError) << bad;
      EXPECT_NE(std::string(e.what()).find("line "), std::string::npos) << e.what();
    }
  }
}

TEST(Dimacs, HeaderMismatchWarns) {
  std::vector<std::string> warnings;
  auto s = parseDimacs("p cnf 5 3\n1 2 0\n", &warnings);
  EXPECT_EQ(s.size(), 1u);
  ASSERT_FALSE(warnings.empty());
  EXPECT_NE(warnings[0].find("HeaderMismatch"), std::string::npos);
}

TEST(Dimacs, FanoRoundTrip) {
  auto fano = blockingSetCnf(projectivePlane(2));
  EXPECT_EQ(parseDimacs(toDimacs(fano)), fano);
  auto fixture = readFixture("fano.cnf");
  EXPECT_EQ(parseDimacs(fixture), fano);
  EXPECT_EQ(toDimacs(fano, {"blocking-set CNF of the projective plane of order 2"}), fixture);
}

TEST(Fixtures, PlaneTable) {
  std::istringstream in(readFixture("pg2_3.lines"));
  std::vector<std::vector<int>> lines;
  std::string row;
  while (std::getline(in, row)) {
    if (row.empty() || row[0] == '#') continue;
    std::istringstream r(row);
    std::vector<int> line;
    for (int x; r >> x;) line.push_back(x);
    lines.push_back(line);
  }
  EXPECT_EQ(lines, projectivePlane(3).lines);
}

TEST(Fixtures, ListingAndExamples) {
  auto listing = readFixture("plane3_listing.txt");
  EXPECT_EQ(listing, std::string(kPlane3ListingText) + "\n");
  EXPECT_EQ(parseBangListing(listing), parseBangListing(kPlane3ListingText));
  EXPECT_EQ(classify(parseSet(readFixture("renamed_example.txt"))), OrderClass::LinearlyOrderedUnsorted);
  EXPECT_EQ(toString(parseSet(readFixture("matrix_example.txt"))), "{0,5}{0,2}{1,3}{1,4}{2,3}");
}

TEST(Dot, SingleClauseGolden) {
  auto srt = singleClauseSrt(parseClause("{0,-1}"));
  EXPECT_EQ(emitDot(srt), readFixture("single_clause.dot"));
}

TEST(Dot, ThreeLiteralClauseShape) {
  auto dot = emitDot(singleClauseSrt(parseClause("{0,1,2}")));
  EXPECT_EQ(countMatches(dot, kInnerNode), 3u);
  EXPECT_EQ(countMatches(dot, kTerminal), 2u);
  EXPECT_NE(dot.find("style=dashed"), std::string::npos);
  EXPECT_NE(dot.find("style=solid"), std::string::npos);
}

TEST(Dot, NodeCountsMatchGraphs) {
  auto fano = blockingSetCnf(projectivePlane(2));
  auto srt = gspra(fano);
  EXPECT_EQ(countMatches(emitDot(srt), kInnerNode), nodeStats(srt).uniqueNonLeaf);
  auto d = extractFbdd(srt);
  auto fbddDot = emitDot(d);
  EXPECT_EQ(countMatches(fbddDot, kInnerNode), d.size());
  EXPECT_EQ(countMatches(fbddDot, kTerminal), 2u);
  // the diagram merges clause-sets that decide the same way
  EXPECT_LE(d.size(), nodeStats(srt).uniqueNonLeaf);
  auto m = fgpraPlus(fano);
  EXPECT_EQ(countMatches(emitDot(m), kInnerNode), m.uniqueNodes());
}

TEST(Dot, Deterministic) {
  auto s = parseSet("{0,-1}{0,2,-3}{0,4,-5}{2,-6}{-3,4,5}{4,6,7}");
  EXPECT_EQ(emitDot(gspra(s)), emitDot(gspra(s)));
  EXPECT_EQ(emitDot(fgpraPlus(s)), emitDot(fgpraPlus(s)));
  EXPECT_EQ(emitDot(extractFbdd(fgpraPlus(s))), emitDot(extractFbdd(fgpraPlus(s))));
}

TEST(Dot, RenamedEdgesCarryMapping) {
  auto dot = emitDot(fgpraPlus(parseSet("{1,2}{3,4}{0,5}")));
  EXPECT_NE(dot.find("root -> n5 [label=\"{(0,4)(1,0)(2,1)(3,2)(4,3)(5,5)}\"]"), std::string::npos) << dot;
}

TEST(Records, CsvAndJson) {
  RunRecord r;
  r.instance = "pairs";
  r.engine = "fgpra+";
  r.clauses = 3;
  r.variables = 6;
  r.uniqueNodes = 6;
  r.craIterations = 2;
  r.verdict = "SAT";
  r.ms = 1.25;
  EXPECT_EQ(csvHeader(), "instance,M,N,engine,uniqueNodes,bigSp,craIters,verdict,ms");
  EXPECT_EQ(toCsv(r), "pairs,3,6,fgpra+,6,0,2,SAT,1.250");
  auto j = nlohmann::json::parse(toJson(r));
  EXPECT_EQ(j["schema"], kRunRecordSchema);
  EXPECT_EQ(j["instance"], "pairs");
  EXPECT_EQ(j["M"], 3);
  EXPECT_EQ(j["splits"]["bigSp"], 0);
  EXPECT_EQ(nlohmann::json::parse(toJson(r, 2)), j);
}

TEST(Records, ReconcileWithStats) {
  auto s = parseSet("{0,3}{0,7}{1,2}{1,4}{5,6}{3,8}");
  auto srt = gspra(s);
  auto rec = recordOf(srt, "monotone");
  auto stats = nodeStats(srt);
  auto splits = detectSplits(srt);
  EXPECT_EQ(rec.uniqueNodes, stats.uniqueNonLeaf);
  ASSERT_EQ(rec.perStep.size(), stats.perStep.size());
  for (size_t i = 0; i < rec.perStep.size(); ++i) EXPECT_EQ(rec.perStep[i], stats.perStep[i].uniqueCount);
  EXPECT_EQ(rec.bigSp, splits.bigSpCount);
  EXPECT_EQ(rec.nSplits, splits.nSplits.size());
  EXPECT_EQ(rec.clauses, 6u);
  EXPECT_EQ(rec.variables, 9u);
  EXPECT_EQ(rec.engine, "gspra");

  auto m = fgpraPlus(s);
  auto mrec = recordOf(m, "monotone", "fgpra+");
  EXPECT_EQ(mrec.uniqueNodes, m.uniqueNodes());
  EXPECT_EQ(mrec.craIterations, m.maxCraRounds);
  EXPECT_EQ(mrec.bigSp, detectSplits(m).bigSpCount);
}

TEST(Bench, Slope) {
  EXPECT_NEAR(logLogSlope({1, 2, 4, 8}, {3, 12, 48, 192}), 2.0, 1e-12);
  EXPECT_NEAR(logLogSlope({2, 3, 5}, {8, 27, 125}), 3.0, 1e-12);
}

TEST(Bench, PlanePrefixes) {
  AlignedOptions opt;
  auto res = prefixBench(plane3Listing(), 4, 16, opt, "plane3-listing");
  ASSERT_EQ(res.rows.size(), 13u);
  EXPECT_EQ(res.rows[0].uniqueNodes, 9u);
  EXPECT_EQ(res.rows[12].uniqueNodes, 147u);
  for (size_t i = 1; i < res.rows.size(); ++i) {
    EXPECT_GE(res.rows[i].uniqueNodes, res.rows[i - 1].uniqueNodes);
    EXPECT_EQ(res.rows[i].clauses, size_t(4 + i));
  }
  EXPECT_EQ(res.fitted, 13u);
  EXPECT_TRUE(std::isfinite(res.slope));
}

TEST(Bench, BudgetMarksCappedRows) {
  AlignedOptions opt;
  opt.maxNodes = 100;
  auto res = prefixBench(plane3Listing(), 4, 20, opt, "plane3-listing");
  ASSERT_EQ(res.rows.size(), 17u);
  EXPECT_NE(res.rows.front().verdict, "capped");
  EXPECT_EQ(res.rows.back().verdict, "capped");
  EXPECT_LT(res.fitted, res.rows.size());
}

TEST(Ledger, ReportsEveryClaim) {
  LedgerOptions opt;
  opt.benchNodeBudget = 20000;
  opt.randomInstances = 10;
  auto claims = claimLedger(opt);
  std::map<std::string, bool> byId;
  for (const auto &c : claims) {
    EXPECT_FALSE(c.statement.empty());
    EXPECT_FALSE(c.measured.empty());
    byId[c.id] = c.pass;
  }
  for (const char *id : {"cra-example", "literal-patterns", "aligned-trace", "plane3-3sat", "plane3-nodes",
                         "plane3-slope", "renaming-rounds", "node-bound", "aligned-bigsp"})
    EXPECT_TRUE(byId.count(id)) << id;
  EXPECT_TRUE(byId["cra-example"]);
  EXPECT_TRUE(byId["literal-patterns"]);
}

TEST(Errors, JsonShape) {
  auto j = nlohmann::json::parse(errorJson("ParseError", "line 3: \"x\""));
  EXPECT_EQ(j["error"], "ParseError");
  EXPECT_EQ(j["message"], "line 3: \"x\"");
}
