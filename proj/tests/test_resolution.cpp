#include "patres/oracle.hpp"
#include "patres/report.hpp"
#include "patres/resolution.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace patres;
using testing_support::randomSet;
using testing_support::refEval;
using testing_support::toAssignment;

namespace {

const char *kMonotone = "{0,3}{0,7}{1,2}{1,4}{5,6}{3,8}";

std::vector<size_t> stepCounts(const Srt &srt) {
  std::vector<size_t> out;
  for (const auto &s : nodeStats(srt).perStep) out.push_back(s.uniqueCount);
  return out;
}

// Evaluates the set, the tree and the diagram on every assignment.
void expectSameFunction(const ClauseSet &s, const Srt &srt, const Fbdd &d) {
  int n = std::max(1, s.maxVar() + 1);
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    auto a = toAssignment(b, n);
    bool want = refEval(s, b);
    ASSERT_EQ(evaluate(srt, a), want) << toString(s) << " bits " << b;
    ASSERT_EQ(evaluate(d, a), want) << toString(s) << " bits " << b;
  }
}

} // namespace

TEST(Instantiate, Examples) {
  EXPECT_EQ(instantiate(parseSet("{0,1}{0,2}"), 0, true).kind, Instantiated::True);
  EXPECT_EQ(instantiate(parseSet("{0}"), 0, false).kind, Instantiated::False);
  auto r = instantiate(parseSet("{-0,1,-2}{1,2,-3}"), 0, true);
  ASSERT_EQ(r.kind, Instantiated::Set);
  EXPECT_EQ(toString(r.set), "{1,-2}{1,2,-3}");
  EXPECT_EQ(r.kept, (std::vector<int>{0, 1}));
}

TEST(Instantiate, AbsentVariable) {
  try {
    instantiate(parseSet("{0,1}"), 4, true);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::VariableAbsent);
  }
}

TEST(Instantiate, ClauseLevel) {
  EXPECT_FALSE(instantiateClause(parseClause("{0,1}"), 0, true).has_value());
  EXPECT_EQ(toString(ClauseSet{{*instantiateClause(parseClause("{0,1}"), 0, false)}}), "{1}");
  EXPECT_EQ(toString(ClauseSet{{*instantiateClause(parseClause("{0,1}"), 5, false)}}), "{0,1}");
  EXPECT_TRUE(instantiateClause(parseClause("{-2}"), 2, true)->empty());
}

TEST(LeastLiteral, Examples) {
  auto a = leastLiteral(parseSet("{0,1}{2,3}"));
  EXPECT_EQ(a.var, 0);
  EXPECT_FALSE(a.neg);
  auto b = leastLiteral(parseSet("{-2,5}"));
  EXPECT_EQ(b.var, 2);
  EXPECT_TRUE(b.neg);
  try {
    leastLiteral(ClauseSet{});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::EmptySet);
  }
}

TEST(LeastLiteral, FollowsHeadClauseAfterInstantiation) {
  auto s = parseSet("{0,1}{1,2}");
  EXPECT_EQ(leastLiteral(instantiate(s, 0, true).set).var, 1);
  auto lo = instantiate(s, 0, false).set;
  EXPECT_EQ(toString(lo), "{1}{1,2}");
  EXPECT_EQ(leastLiteral(lo).var, 1);
}

TEST(SingleClauseSrt, Shapes) {
  EXPECT_EQ(singleClauseSrt(parseClause("{0}")).reachable().size(), 1u);
  auto t = singleClauseSrt(parseClause("{0,1,2}"));
  EXPECT_EQ(t.reachable().size(), 3u);
  EXPECT_EQ(extractFbdd(t).size(), 3u);
  auto neg = singleClauseSrt(parseClause("{-0,1,-2}"));
  EXPECT_EQ(neg.node(neg.root()).lo, kTrue);
  EXPECT_NE(neg.node(neg.root()).hi, kTrue);
}

TEST(SingleClauseSrt, TruthTable) {
  auto c = parseClause("{-0,1,-2}");
  auto t = singleClauseSrt(c);
  for (std::uint64_t b = 0; b < 8; ++b)
    EXPECT_EQ(evaluate(t, toAssignment(b, 3)), refEval(ClauseSet{{c}}, b)) << b;
}

TEST(Gspra, SingleClauseMatchesChain) {
  auto a = gspra(parseSet("{0,1,2}"));
  auto b = singleClauseSrt(parseClause("{0,1,2}"));
  EXPECT_EQ(emitDot(a), emitDot(b));
}

TEST(Gspra, MonotonePairsPerStep) {
  auto srt = gspra(parseSet(kMonotone));
  EXPECT_EQ(stepCounts(srt), (std::vector<size_t>{2, 3, 5, 6, 8, 15}));
  EXPECT_EQ(nodeStats(srt).uniqueNonLeaf, 15u);
  // the reference 3,5,8,15 sequence is this run sampled at the clauses whose
  // head variable is new to the tree
  auto c = stepCounts(srt);
  EXPECT_EQ((std::vector<size_t>{c[1], c[2], c[4], c[5]}), (std::vector<size_t>{3, 5, 8, 15}));
}

TEST(Gspra, DisjointTriples) {
  EXPECT_EQ(nodeStats(gspra(parseSet("{0,1,2}{3,4,5}"))).uniqueNonLeaf, 6u);
  EXPECT_EQ(nodeStats(gspra(parseSet("{0,1,2}{0,1,3}{3,4,5}"))).uniqueNonLeaf, 7u);
  EXPECT_EQ(nodeStats(gspra(parseSet("{0,1,2}{0,2,3}{3,4,5}"))).uniqueNonLeaf, 8u);
}

TEST(Gspra, PairSetsBeforeAndAfterRenaming) {
  EXPECT_EQ(extractFbdd(gspra(parseSet("{0,1}{2,3}{4,5}"))).size(), 6u);
  EXPECT_EQ(nodeStats(gspra(parseSet("{0,1}{2,3}{4,5}"))).uniqueNonLeaf, 6u);
}

TEST(ResolveClause, AddsClauseToTree) {
  auto base = gspra(parseSet("{0,1,2}{3,4,5}"));
  auto grown = resolveClause(base, parseClause("{0,2,3}"));
  auto want = parseSet("{0,1,2}{3,4,5}{0,2,3}");
  for (std::uint64_t b = 0; b < 64; ++b)
    EXPECT_EQ(evaluate(grown, toAssignment(b, 6)), refEval(want, b));
}

TEST(ResolveClause, FreshVariablesHangOffTrueLeaves) {
  auto base = singleClauseSrt(parseClause("{0}"));
  auto grown = resolveClause(base, parseClause("{1,2}"));
  EXPECT_EQ(grown.reachable().size(), 3u);
  EXPECT_EQ(grown.node(grown.root()).lo, kFalse);
}

TEST(ResolveClause, TwoVariableTable) {
  auto grown = resolveClause(singleClauseSrt(parseClause("{2}")), parseClause("{2,3}"));
  auto want = parseSet("{2}{2,3}");
  for (std::uint64_t b = 0; b < 16; ++b) EXPECT_EQ(evaluate(grown, toAssignment(b, 4)), refEval(want, b));
}

TEST(Evaluate, ReferenceTruthTable) {
  auto s = parseSet("{-0,1,-2}{1,2,-3}");
  auto srt = gspra(s);
  auto d = extractFbdd(srt);
  std::string column;
  for (std::uint64_t row = 0; row < 16; ++row) {
    // row bits are written a b c d with a as the most significant
    std::vector<bool> a{bool(row & 8), bool(row & 4), bool(row & 2), bool(row & 1)};
    bool v = evaluate(d, a);
    EXPECT_EQ(evaluate(srt, a), v);
    column += v ? '1' : '0';
  }
  EXPECT_EQ(column, "1011111110001111");
  EXPECT_TRUE(evaluate(d, {true, true, false, false}));
  EXPECT_FALSE(evaluate(d, {false, false, false, true}));
}

TEST(Evaluate, IncompleteAssignment) {
  auto srt = gspra(parseSet("{0,1,2}"));
  try {
    evaluate(srt, {false});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::IncompleteAssignment);
  }
}

TEST(Evaluate, MonotoneAllTrue) {
  auto s = parseSet(kMonotone);
  EXPECT_TRUE(evaluate(extractFbdd(gspra(s)), std::vector<bool>(9, true)));
}

TEST(Gspra, FunctionPreservedOnRandomSets) {
  std::mt19937 rng(211);
  for (int t = 0; t < 300; ++t) {
    int n = 2 + int(rng() % 9);
    auto s = randomSet(rng, n, 1 + int(rng() % 14));
    auto srt = gspra(s);
    expectSameFunction(s, srt, extractFbdd(srt));
  }
}

TEST(Gspra, FunctionPreservedAtFourteenVariables) {
  std::mt19937 rng(223);
  for (int t = 0; t < 6; ++t) {
    auto s = randomSet(rng, 14, 12, 3);
    auto srt = gspra(s);
    expectSameFunction(s, srt, extractFbdd(srt));
  }
}

TEST(Gspra, StructuralInvariants) {
  std::mt19937 rng(227);
  for (int t = 0; t < 300; ++t) {
    auto s = randomSet(rng, 3 + int(rng() % 8), 1 + int(rng() % 14));
    auto srt = gspra(s);
    EXPECT_FALSE(ancestorVarViolation(srt).has_value()) << toString(s);
    EXPECT_FALSE(readOnceViolation(extractFbdd(srt)).has_value()) << toString(s);
    std::set<std::string> seen;
    for (int id : srt.reachable()) {
      const auto &node = srt.node(id);
      EXPECT_TRUE(seen.insert(toString(node.set)).second) << toString(node.set);
      EXPECT_EQ(node.var, node.set[0][0].var);
    }
  }
}

TEST(Gspra, Deterministic) {
  std::mt19937 rng(229);
  for (int t = 0; t < 50; ++t) {
    auto s = randomSet(rng, 7, 10);
    EXPECT_EQ(emitDot(gspra(s)), emitDot(gspra(s)));
  }
}

TEST(CommonNodes, MonotonePairs) {
  auto srt = gspra(parseSet(kMonotone));
  bool found = false;
  for (const auto &c : commonNodesAt(srt, 4))
    found = found || toString(srt.node(c.node).set) == "{1,2}{1,4}{5,6}";
  EXPECT_TRUE(found);
}

TEST(CommonNodes, HeadCommonNode) {
  auto srt = gspra(parseSet("{0,2}{3,4}"));
  auto cns = detectCommonNodes(srt);
  ASSERT_EQ(cns.size(), 1u);
  EXPECT_EQ(toString(srt.node(cns[0].node).set), "{3,4}");
  EXPECT_EQ(cns[0].kind, CnKind::Head);
  EXPECT_STREQ(cnKindName(cns[0].kind), "HCN");
}

TEST(CommonNodes, TailCommonNode) {
  auto srt = gspra(parseSet("{-0,1,-2}{1,2,-3}"));
  auto cns = detectCommonNodes(srt);
  ASSERT_EQ(cns.size(), 1u);
  EXPECT_EQ(toString(srt.node(cns[0].node).set), "{-3}");
  EXPECT_EQ(cns[0].kind, CnKind::Tail);
}

TEST(CommonNodes, SingleClauseHasNone) {
  EXPECT_TRUE(detectCommonNodes(singleClauseSrt(parseClause("{0,1,2}"))).empty());
}

TEST(Splits, MonotonePairsSplitCommonNode) {
  auto srt = gspra(parseSet(kMonotone));
  auto r = detectSplits(srt);
  bool found = false;
  for (const auto &c : r.cnSplits)
    if (toString(srt.node(c.node).set) == "{1,2}{1,4}{5,6}") {
      found = true;
      EXPECT_EQ(c.step, 6);
      EXPECT_EQ(c.size, 3u);
      EXPECT_GE(c.variants, 2);
    }
  EXPECT_TRUE(found);
  EXPECT_GT(r.bigSpCount, 0u);
}

TEST(Splits, OrderedRenamedPairsHaveNoNodeSplits) {
  auto r = detectSplits(gspra(parseSet("{0,1}{2,3}{4,5}")));
  EXPECT_TRUE(r.nSplits.empty());
  EXPECT_EQ(r.bigSpCount, 0u);
}

TEST(Splits, UnrenamedPairsHaveNodeSplits) {
  EXPECT_FALSE(detectSplits(gspra(parseSet("{1,2}{3,4}{0,5}"))).nSplits.empty());
}

// The trivial block split shows up when the complementary clause is resolved
// before the second negative clause.
TEST(Splits, TrivialBlockSplit) {
  auto srt = gspra(parseSet("{-0,1,2}{0,1,2}{-0,3,4}"));
  auto r = detectSplits(srt);
  ASSERT_EQ(r.cnSplits.size(), 1u);
  EXPECT_EQ(toString(srt.node(r.cnSplits[0].node).set), "{1,2}");
  EXPECT_TRUE(r.cnSplits[0].trivial);
  EXPECT_EQ(r.bigSpCount, 0u);
  EXPECT_TRUE(detectSplits(gspra(parseSet("{-0,1,2}{-0,3,4}{0,1,2}"))).cnSplits.empty());
}

TEST(NodeStats, Basics) {
  auto empty = gspra(ClauseSet{});
  EXPECT_EQ(nodeStats(empty).uniqueNonLeaf, 0u);
  auto st = nodeStats(gspra(parseSet(kMonotone)));
  ASSERT_EQ(st.perStep.size(), 6u);
  EXPECT_DOUBLE_EQ(st.perStep[0].expansionRate, 0.0);
  for (size_t i = 1; i < st.perStep.size(); ++i)
    EXPECT_DOUBLE_EQ(st.perStep[i].expansionRate,
                     double(st.perStep[i].uniqueCount) / double(st.perStep[i - 1].uniqueCount));
  size_t bySize = 0;
  for (auto [size, count] : st.bySize) bySize += count;
  EXPECT_EQ(bySize, st.uniqueNonLeaf);
}

TEST(Fbdd, ReadOnceDetectorCatchesRepeats) {
  Fbdd d;
  d.nodes = {{0, 1, kFalse}, {0, kTrue, kFalse}};
  d.root = 0;
  EXPECT_EQ(readOnceViolation(d), std::optional<int>(1));
}
