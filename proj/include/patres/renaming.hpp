#pragma once

#include "patres/cnf.hpp"

#include <string>
#include <vector>

namespace patres {

// Rows are variables in visitation order, columns are clause positions.
struct ConnectionMatrix {
  std::vector<int> rowVars;
  std::vector<std::vector<bool>> presence;

  // Same matrix after the rows have been renamed 0..n-1.
  ConnectionMatrix renamed() const;
  std::string toString() const;
};

struct CraResult {
  ClauseSet set;
  Mapping mapping;
  bool stable = false; // mapping is the identity
  ConnectionMatrix matrix;
};

struct CraPlusResult {
  ClauseSet set;
  Mapping composed;
  int iterations = 0;
  std::vector<ClauseSet> rounds; // sorted set after each round
};

// Literals of c reordered: vars contained in more clauses of s first, ties by
// ascending var.
Clause rpcOrder(const Clause &c, const ClauseSet &s);

CraResult cra(const ClauseSet &s);

// Repeats cra + sortClauses until a round maps the identity onto an already
// sorted set. The default cap is 4 * |s| rounds (at least 4); exceeding it
// throws IterationCapError.
CraPlusResult craPlus(const ClauseSet &s, int cap = 0);

ClauseSet craForm(const ClauseSet &s);

} // namespace patres
