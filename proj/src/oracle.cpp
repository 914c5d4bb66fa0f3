#include "patres/oracle.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <random>
#include <set>

namespace patres {

std::uint64_t TruthTable::countTrue() const {
  return static_cast<std::uint64_t>(std::count(values.begin(), values.end(), true));
}

std::vector<bool> TruthTable::assignment(std::uint64_t row) const {
  std::vector<bool> a(numVars);
  for (int v = 0; v < numVars; ++v) a[v] = (row >> (numVars - 1 - v)) & 1;
  return a;
}

namespace {

int oracleVars(const ClauseSet &s) {
  int n = s.maxVar() + 1;
  if (n > kMaxOracleVars)
    throw Error(Errc::TooManyVariables,
                std::to_string(n) + " variables exceed the exhaustive limit of " +
                    std::to_string(kMaxOracleVars));
  return n;
}

// Clause as two bit masks over row bits, so a row falsifies the clause iff
// it has every positive literal clear and every negative literal set.
struct MaskClause {
  std::uint32_t pos = 0, neg = 0;
};

std::vector<MaskClause> masks(const ClauseSet &s, int n) {
  std::vector<MaskClause> out;
  for (const auto &c : s) {
    MaskClause m;
    for (const auto &l : c) (l.neg ? m.neg : m.pos) |= 1u << (n - 1 - l.var);
    out.push_back(m);
  }
  return out;
}

bool rowSatisfies(const std::vector<MaskClause> &ms, std::uint32_t row) {
  for (const auto &m : ms)
    if ((row & m.pos) == 0 && (row & m.neg) == m.neg) return false;
  return true;
}

} // namespace

TruthTable truthTable(const ClauseSet &s) {
  TruthTable t;
  t.numVars = std::max(0, oracleVars(s));
  auto ms = masks(s, t.numVars);
  std::uint64_t rows = std::uint64_t{1} << t.numVars;
  t.values.resize(rows);
  for (std::uint64_t r = 0; r < rows; ++r) t.values[r] = rowSatisfies(ms, std::uint32_t(r));
  return t;
}

Verdict bruteForceSat(const ClauseSet &s) {
  int n = std::max(0, oracleVars(s));
  auto ms = masks(s, n);
  std::uint64_t rows = std::uint64_t{1} << n;
  for (std::uint64_t r = 0; r < rows; ++r) {
    if (!rowSatisfies(ms, std::uint32_t(r))) continue;
    std::vector<bool> model(n);
    for (int v = 0; v < n; ++v) model[v] = (r >> (n - 1 - v)) & 1;
    return {true, std::move(model)};
  }
  return {false, std::nullopt};
}

ClauseSet pigeonhole(int pigeons, int holes) {
  ClauseSet s;
  auto var = [&](int i, int j) { return i * holes + j; };
  for (int i = 0; i < pigeons; ++i) {
    Clause c;
    for (int j = 0; j < holes; ++j) c.push_back(pos(var(i, j)));
    s.clauses.push_back(c);
  }
  for (int j = 0; j < holes; ++j)
    for (int a = 0; a < pigeons; ++a)
      for (int b = a + 1; b < pigeons; ++b) s.clauses.push_back({neg(var(a, j)), neg(var(b, j))});
  return s;
}

// ------------------------------------------------------------------ planes

PlaneInstance projectivePlane(int q) {
  PlaneInstance p;
  p.order = q;
  if (q == 2) {
    p.points = 7;
    p.lines = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  } else if (q == 3) {
    p.points = 13;
    p.lines = {{0, 1, 2, 3},  {0, 4, 5, 6},  {0, 8, 9, 12}, {0, 7, 10, 11}, {1, 4, 7, 8},
               {1, 6, 9, 11}, {1, 5, 10, 12}, {3, 4, 9, 10}, {2, 4, 11, 12}, {2, 5, 7, 9},
               {3, 6, 7, 12}, {3, 5, 8, 11}, {2, 6, 8, 10}};
  } else {
    throw Error(Errc::UnsupportedOrder, "no stored plane of order " + std::to_string(q));
  }
  return p;
}

PlaneInstance algebraicPlane(int q) {
  bool prime = q >= 2;
  for (int d = 2; d * d <= q && prime; ++d) prime = q % d != 0;
  if (!prime) throw Error(Errc::UnsupportedOrder, "order " + std::to_string(q) + " is not prime");

  // Normalized homogeneous coordinates: the first non-zero entry is 1.
  std::vector<std::array<int, 3>> pts;
  for (int y = 0; y < q; ++y)
    for (int z = 0; z < q; ++z) pts.push_back({1, y, z});
  for (int z = 0; z < q; ++z) pts.push_back({0, 1, z});
  pts.push_back({0, 0, 1});

  PlaneInstance p;
  p.order = q;
  p.points = (int)pts.size();
  for (const auto &l : pts) {
    std::vector<int> line;
    for (int i = 0; i < p.points; ++i) {
      const auto &x = pts[i];
      if ((l[0] * x[0] + l[1] * x[1] + l[2] * x[2]) % q == 0) line.push_back(i);
    }
    p.lines.push_back(line);
  }
  std::sort(p.lines.begin(), p.lines.end());
  return p;
}

std::string planeAxiomViolation(const PlaneInstance &p) {
  int q = p.order;
  int n = q * q + q + 1;
  if (p.points != n) return "expected " + std::to_string(n) + " points";
  if ((int)p.lines.size() != n) return "expected " + std::to_string(n) + " lines";
  std::vector<std::vector<char>> on(n, std::vector<char>(n, 0));
  for (int li = 0; li < n; ++li) {
    if ((int)p.lines[li].size() != q + 1) return "line " + std::to_string(li) + " has wrong size";
    for (int pt : p.lines[li]) {
      if (pt < 0 || pt >= n) return "point out of range on line " + std::to_string(li);
      on[li][pt] = 1;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int shared = 0, joining = 0;
      for (int k = 0; k < n; ++k) {
        shared += on[a][k] && on[b][k];
        joining += on[k][a] && on[k][b];
      }
      if (shared != 1)
        return "lines " + std::to_string(a) + " and " + std::to_string(b) + " meet in " +
               std::to_string(shared) + " points";
      if (joining != 1)
        return "points " + std::to_string(a) + " and " + std::to_string(b) + " lie on " +
               std::to_string(joining) + " lines";
    }
  return {};
}

ClauseSet blockingSetCnf(const PlaneInstance &p) {
  ClauseSet s;
  for (const auto &line : p.lines) {
    Clause c;
    for (int pt : line) c.push_back(pos(pt));
    std::sort(c.begin(), c.end(), [](const Literal &a, const Literal &b) { return a.var < b.var; });
    s.clauses.push_back(c);
  }
  return s;
}

// ------------------------------------------------------------- conversion

namespace {

Clause sortedByVar(Clause c) {
  std::sort(c.begin(), c.end(), [](const Literal &a, const Literal &b) { return a.var < b.var; });
  return c;
}

// Emits the pair clauses of one level and returns the clause of pair
// variables (plus an odd leftover) for the next level.
Clause pairLevel(const Clause &c, int &next, std::vector<Clause> &out) {
  Clause up;
  size_t i = 0;
  for (; i + 1 < c.size(); i += 2) {
    int x = next++;
    out.push_back(sortedByVar({c[i], c[i + 1], neg(x)}));
    up.push_back(pos(x));
  }
  if (i < c.size()) up.push_back(c[i]);
  return up;
}

void pairing(Clause c, int &next, std::vector<Clause> &out) {
  while (c.size() > 3) c = pairLevel(c, next, out);
  out.push_back(sortedByVar(c));
}

void chain(const Clause &c, int &next, std::vector<Clause> &out) {
  if (c.size() <= 3) {
    out.push_back(c);
    return;
  }
  int z = next++;
  out.push_back(sortedByVar({c[0], c[1], pos(z)}));
  for (size_t i = 2; i + 2 < c.size(); ++i) {
    int z2 = next++;
    out.push_back(sortedByVar({neg(z), c[i], pos(z2)}));
    z = z2;
  }
  out.push_back(sortedByVar({neg(z), c[c.size() - 2], c[c.size() - 1]}));
}

} // namespace

ClauseSet toThreeSat(const ClauseSet &s, ThreeSatMode mode) {
  int next = s.maxVar() + 1;
  ClauseSet out;
  if (mode == ThreeSatMode::PooledPairing) {
    Clause pooled;
    for (const auto &c : s) {
      if (c.size() <= 3) {
        out.clauses.push_back(c);
        continue;
      }
      Clause up = pairLevel(c, next, out.clauses);
      pooled.insert(pooled.end(), up.begin(), up.end());
    }
    if (!pooled.empty()) pairing(pooled, next, out.clauses);
    return out;
  }
  for (const auto &c : s) {
    if (c.size() <= 3)
      out.clauses.push_back(c);
    else if (mode == ThreeSatMode::Pairing)
      pairing(c, next, out.clauses);
    else
      chain(c, next, out.clauses);
  }
  return out;
}

// ----------------------------------------------------------------- random

ClauseSet randomInstance(std::uint64_t seed, int n, int m, int k) {
  if (n < 1 || m < 1 || k < 1 || k > n)
    throw Error(Errc::InfeasibleParameters, "need 1 <= k <= n and m >= 1");
  double distinct = std::pow(2.0, k);
  for (int i = 0; i < k; ++i) distinct = distinct * (n - i) / (i + 1);
  if (double(m) > distinct)
    throw Error(Errc::InfeasibleParameters,
                std::to_string(m) + " clauses requested, only " +
                    std::to_string((long long)distinct) + " distinct ones exist");

  std::mt19937_64 rng(seed);
  std::set<std::vector<int>> seen;
  ClauseSet s;
  while ((int)s.size() < m) {
    std::vector<int> vars;
    while ((int)vars.size() < k) {
      int v = int(rng() % std::uint64_t(n));
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::sort(vars.begin(), vars.end());
    Clause c;
    std::vector<int> key;
    for (int v : vars) {
      bool negative = rng() & 1;
      c.push_back({v, negative});
      key.push_back(c.back().code());
    }
    if (seen.insert(key).second) s.clauses.push_back(std::move(c));
  }
  return s;
}

// ----------------------------------------------------------------- listing

ClauseSet parseBangListing(std::string_view text) {
  ClauseSet s;
  size_t i = 0;
  auto fail = [&](const std::string &what) {
    throw Error(Errc::ParseError, what + " at offset " + std::to_string(i));
  };
  auto skip = [&] {
    while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
  };
  skip();
  // optional enclosing braces: "{ {0,1} {2} }"
  bool outer = false;
  if (i < text.size() && text[i] == '{') {
    size_t j = text.find_first_not_of(" \t\r\n", i + 1);
    outer = j != std::string_view::npos && text[j] == '{';
  }
  if (outer) ++i;
  for (;;) {
    skip();
    if (i >= text.size() || (outer && text[i] == '}')) break;
    if (text[i] != '{') fail("expected '{'");
    ++i;
    Clause c;
    for (;;) {
      skip();
      if (i < text.size() && text[i] == '}') {
        ++i;
        break;
      }
      if (i >= text.size() || !std::isdigit((unsigned char)text[i])) fail("expected variable");
      int v = 0;
      while (i < text.size() && std::isdigit((unsigned char)text[i])) v = v * 10 + (text[i++] - '0');
      bool negative = i < text.size() && text[i] == '!';
      if (negative) ++i;
      c.push_back({v, negative});
      skip();
      if (i < text.size() && text[i] == ',') ++i;
    }
    s.clauses.push_back(std::move(c));
  }
  return s;
}

const char *const kPlane3ListingText =
    "{0,1,2!} {0,3,4!} {0,5,6!} {0,7,8!} {1,3,9!} {1,10,11!} {1,12,13!} {2,14,15!} "
    "{3,16,17!} {3,18,19!} {4,20,21!} {5,7,22!} {5,23,24!} {5,25,26!} {6,27,28!} "
    "{7,29,30!} {7,31,32!} {8,33,34!} {9,22,35!} {10,12,20!} {10,16,36!} {10,18,37!} "
    "{11,38,39!} {12,16,40!} {12,18,41!} {13,42,43!} {14!,16,18} {15,21,44!} "
    "{17,45,46!} {19,47,48!} {23,25,33!} {23,29,47!} {23,31,38!} {24,40,49!} "
    "{25,29,42!} {25,31,45!} {26,37,50!} {27!,29,31} {28,34,51!} {30,36,52!} "
    "{32,41,53!} {35,43,54!} {39,48,55!} {44,51,56!} {46,52,57!} {49,58,59!} "
    "{50,53,60!} {54,44,61!} {56,61,62!} {57,58!,60} {59,62}";

ClauseSet plane3Listing() {
  ClauseSet s = parseBangListing(kPlane3ListingText);
  for (auto &c : s.clauses) c = sortedByVar(c);
  return s;
}

} // namespace patres
