#include "patres/oracle.hpp"
#include "patres/pattern.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace patres;

namespace {

// Truth-table column built bit by bit; var 0 is the most significant digit.
std::vector<bool> columnOf(int var, int n, bool negative) {
  std::vector<bool> bits(size_t{1} << n);
  for (size_t r = 0; r < bits.size(); ++r) bits[r] = (((r >> (n - 1 - var)) & 1) != 0) != negative;
  return bits;
}

std::vector<bool> clauseColumn(const Clause &c, int n) {
  std::vector<bool> bits(size_t{1} << n, false);
  for (const auto &l : c) {
    auto col = columnOf(l.var, n, l.neg);
    for (size_t r = 0; r < bits.size(); ++r) bits[r] = bits[r] || col[r];
  }
  return bits;
}

std::uint64_t smallestPeriod(const std::vector<bool> &bits) {
  for (size_t p = 1; p <= bits.size(); p *= 2) {
    bool ok = true;
    for (size_t i = p; i < bits.size() && ok; ++i) ok = bits[i] == bits[i - p];
    if (ok) return p;
  }
  return bits.size();
}

std::string renderString(const std::string &s) { return render(parsePattern(s)); }

} // namespace

TEST(LiteralPattern, SixVariableStrings) {
  const char *want[] = {"32(0)32(1)",  "2(16(0)16(1))", "4(8(0)8(1))",
                        "8(4(0)4(1))", "16(2(0)2(1))",  "32(1(0)1(1))"};
  for (int i = 0; i < 6; ++i) EXPECT_EQ(render(literalPattern(i, 6)), want[i]) << i;
}

TEST(LiteralPattern, NegativeSwapsHalves) {
  EXPECT_EQ(render(literalPattern(0, 6, true)), "32(1)32(0)");
  EXPECT_EQ(render(literalPattern(5, 6, true)), "32(1(1)1(0))");
}

TEST(LiteralPattern, OutOfRange) {
  for (auto [i, n] : {std::pair{6, 6}, {-1, 4}, {0, 31}, {0, 0}}) {
    try {
      literalPattern(i, n);
      FAIL() << i << "," << n;
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), Errc::IndexOutOfRange);
    }
  }
}

TEST(PatternOr, ReferenceStrings) {
  EXPECT_EQ(render(patternOr(literalPattern(1, 6), literalPattern(2, 6))), "2(8(0)8(1)16(1))");
  EXPECT_EQ(render(patternOr(literalPattern(3, 6), literalPattern(4, 6))), "8(2(0)2(1)4(1))");
  EXPECT_EQ(render(patternOr(literalPattern(0, 6), literalPattern(5, 6))), "16(1(0)1(1))32(1)");
}

TEST(PatternOr, IdentityAndMismatch) {
  auto p = literalPattern(2, 6);
  EXPECT_EQ(patternOr(p, allZeros(6)), p);
  EXPECT_EQ(patternOr(std::vector<TruthPattern>{p}), p);
  try {
    patternOr(p, allZeros(5));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::LengthMismatch);
  }
}

TEST(PatternAnd, IdentityAndComplement) {
  auto p = literalPattern(3, 6);
  EXPECT_EQ(patternAnd(p, allOnes(6)), p);
  EXPECT_EQ(patternAnd(literalPattern(0, 6), literalPattern(0, 6, true)), allZeros(6));
}

TEST(PatternAnd, ReferenceOperandsMatchExpansion) {
  auto a = parsePattern("2(8(0)8(1)16(1))");
  auto b = parsePattern("8(2(0)2(1)4(1))");
  auto ea = expand(a), eb = expand(b), got = expand(patternAnd(a, b));
  ASSERT_EQ(got.size(), 64u);
  for (size_t i = 0; i < 64; ++i) EXPECT_EQ(got[i], ea[i] && eb[i]) << i;
}

TEST(PatternLength, Values) {
  EXPECT_EQ(patternLength(literalPattern(0, 6)), 64u);
  EXPECT_EQ(patternLength(literalPattern(5, 6)), 2u);
  auto wide = clausePattern(parseClause("{0,5}"), 6);
  auto narrow = clausePattern(parseClause("{1,2}"), 6);
  EXPECT_GT(patternLength(wide), patternLength(narrow));
}

TEST(Expand, SmallCases) {
  EXPECT_EQ(expand(parsePattern("2(0)2(1)")), (std::vector<bool>{0, 0, 1, 1}));
  EXPECT_EQ(expand(literalPattern(0, 2)), (std::vector<bool>{0, 0, 1, 1}));
  EXPECT_EQ(expand(parsePattern("2(1(0)1(1))")), (std::vector<bool>{0, 1, 0, 1}));
  try {
    expand(allOnes(21));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::TooLarge);
  }
}

TEST(CountOnes, Values) {
  EXPECT_EQ(countOnes(allOnes(6)), 64u);
  for (int n = 1; n <= 12; ++n)
    for (int i = 0; i < n; ++i) EXPECT_EQ(countOnes(literalPattern(i, n)), std::uint64_t{1} << (n - 1));
  // large patterns are counted without expansion
  EXPECT_EQ(countOnes(literalPattern(3, 30)), std::uint64_t{1} << 29);
}

TEST(CountOnes, PairsSetMatchesOracle) {
  auto s = parseSet("{1,2}{3,4}{0,5}");
  auto p = setPattern(s, 6);
  EXPECT_EQ(countOnes(p), truthTable(s).countTrue());
  EXPECT_EQ(countOnes(p), 27u);
}

TEST(RoundTrip, LiteralAndClausePatternsExhaustive) {
  for (int n = 1; n <= 10; ++n) {
    for (int i = 0; i < n; ++i)
      for (bool negative : {false, true})
        ASSERT_EQ(expand(literalPattern(i, n, negative)), columnOf(i, n, negative)) << n << " " << i;
    // every pair of literals as a clause, and its AND with a third literal
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int signs = 0; signs < 4; ++signs) {
          Clause c{{i, bool(signs & 1)}, {j, bool(signs & 2)}};
          auto p = clausePattern(c, n);
          auto want = clauseColumn(c, n);
          ASSERT_EQ(expand(p), want);
          auto q = literalPattern((i + j) % n, n, signs == 3);
          auto eq = expand(q);
          auto anded = expand(patternAnd(p, q));
          for (size_t r = 0; r < want.size(); ++r) ASSERT_EQ(anded[r], want[r] && eq[r]);
        }
  }
}

TEST(RoundTrip, CountOnesIsPopcount) {
  std::mt19937 rng(9);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + int(rng() % 16);
    std::vector<bool> bits(size_t{1} << n);
    for (size_t i = 0; i < bits.size(); ++i) bits[i] = (rng() % 4) == 0;
    auto p = fromBits(bits);
    EXPECT_EQ(expand(p), bits);
    EXPECT_EQ(countOnes(p), std::uint64_t(std::count(bits.begin(), bits.end(), true)));
  }
}

TEST(PatternLength, ClausePeriodFollowsLeastVariable) {
  std::mt19937 rng(13);
  for (int t = 0; t < 300; ++t) {
    int n = 2 + int(rng() % 9);
    Clause c;
    for (int v = 0; v < n; ++v)
      if (rng() % 3 == 0) c.push_back({v, bool(rng() & 1)});
    if (c.empty()) continue;
    auto p = clausePattern(c, n);
    EXPECT_EQ(patternLength(p), std::uint64_t{1} << (n - c.front().var));
    EXPECT_EQ(patternLength(p), smallestPeriod(expand(p)));
  }
}

TEST(PatternLength, SortedSetsHaveNonIncreasingPeriods) {
  std::mt19937 rng(29);
  for (int t = 0; t < 300; ++t) {
    auto s = sortClauses(testing_support::randomSet(rng, 8, 6));
    int n = s.maxVar() + 1;
    for (size_t i = 0; i + 1 < s.size(); ++i)
      EXPECT_GE(patternLength(clausePattern(s[i], n)), patternLength(clausePattern(s[i + 1], n)));
  }
}

TEST(Render, ParseRoundTrip) {
  for (const char *s : {"32(0)32(1)", "2(8(0)8(1)16(1))", "16(1(0)1(1))32(1)", "4(4(0)4(1)8(1))",
                        "16(1(0)1(1)2(1))", "16(0)16(1)32(1)"})
    EXPECT_EQ(renderString(s), s);
  for (const char *bad : {"3(0)", "1(0)2(1)", "x", "2(0", "0(1)"}) {
    try {
      parsePattern(bad);
      FAIL() << bad;
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), Errc::ParseError) << bad;
    }
  }
}

TEST(BranchingSubpatterns, PairSets) {
  EXPECT_EQ(distinctBranchingSubpatterns(setPattern(parseSet("{1,2}{3,4}{0,5}"), 6)), 10u);
  EXPECT_EQ(distinctBranchingSubpatterns(setPattern(parseSet("{0,1}{2,3}{4,5}"), 6)), 6u);
}

TEST(RenamedPairs, ClauseStrings) {
  EXPECT_EQ(render(clausePattern(parseClause("{0,1}"), 6)), "16(0)16(1)32(1)");
  EXPECT_EQ(render(clausePattern(parseClause("{2,3}"), 6)), "4(4(0)4(1)8(1))");
  EXPECT_EQ(render(clausePattern(parseClause("{4,5}"), 6)), "16(1(0)1(1)2(1))");
}
