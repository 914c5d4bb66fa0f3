#pragma once

// Shared helpers for the unit tests: seeded generators and a reference
// evaluator that does not go through the library's own evaluation code.

#include "patres/cnf.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace testing_support {

using patres::Clause;
using patres::ClauseSet;
using patres::Literal;

// Clause-set over vars 0..n-1, clause lengths 1..maxLen, normalized (sorted
// literals, no tautologies, no duplicate clauses) but not compacted.
inline ClauseSet randomSet(std::mt19937 &rng, int n, int m, int maxLen = 3) {
  std::vector<std::vector<Literal>> raw;
  for (int i = 0; i < m; ++i) {
    int len = 1 + int(rng() % unsigned(maxLen));
    std::vector<Literal> c;
    for (int j = 0; j < len; ++j) c.push_back({int(rng() % unsigned(n)), bool(rng() & 1)});
    raw.push_back(c);
  }
  patres::NormalizeOptions opt;
  opt.compact = false;
  return patres::normalize(raw, opt).set;
}

// Random permutation of 0..n-1 as a mapping.
inline patres::Mapping randomBijection(std::mt19937 &rng, int n) {
  std::vector<int> to(n);
  for (int i = 0; i < n; ++i) to[i] = i;
  std::shuffle(to.begin(), to.end(), rng);
  return patres::Mapping(to);
}

// Order-preserving injection of 0..n-1 into 0..n-1+spread.
inline patres::Mapping randomMonotone(std::mt19937 &rng, int n, int spread) {
  std::vector<int> to(n);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    next += int(rng() % unsigned(spread + 1));
    to[i] = next++;
  }
  return patres::Mapping(to);
}

inline bool refEval(const ClauseSet &s, std::uint64_t bits) {
  for (const auto &c : s) {
    bool sat = false;
    for (const auto &l : c) {
      bool v = (bits >> l.var) & 1;
      if (v != l.neg) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

inline std::vector<bool> toAssignment(std::uint64_t bits, int n) {
  std::vector<bool> a(n);
  for (int i = 0; i < n; ++i) a[i] = (bits >> i) & 1;
  return a;
}

inline bool refSat(const ClauseSet &s) {
  int n = s.maxVar() + 1;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b)
    if (refEval(s, b)) return true;
  return false;
}

} // namespace testing_support
