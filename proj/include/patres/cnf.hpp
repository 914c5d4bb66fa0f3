#pragma once

#include "patres/error.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace patres {

struct Literal {
  int var = 0;
  bool neg = false;

  // 2*var + neg; dense code handy for hashing and serialization.
  int code() const { return 2 * var + (neg ? 1 : 0); }
  Literal negated() const { return {var, !neg}; }

  friend bool operator==(const Literal &, const Literal &) = default;
};

inline Literal pos(int v) { return {v, false}; }
inline Literal neg(int v) { return {v, true}; }

// Literals sorted ascending by var, at most one literal per var.
using Clause = std::vector<Literal>;

struct ClauseSet {
  std::vector<Clause> clauses;

  ClauseSet() = default;
  ClauseSet(std::vector<Clause> cs) : clauses(std::move(cs)) {}

  size_t size() const { return clauses.size(); }
  bool empty() const { return clauses.empty(); }
  const Clause &operator[](size_t i) const { return clauses[i]; }
  auto begin() const { return clauses.begin(); }
  auto end() const { return clauses.end(); }

  bool hasEmptyClause() const;
  int maxVar() const; // -1 for a set without literals
  size_t numVars() const;
  size_t rank() const; // longest clause

  friend bool operator==(const ClauseSet &, const ClauseSet &) = default;
};

enum class OrderClass { LinearlyOrdered, LinearlyOrderedUnsorted, AlmostArbitrary };

const char *orderClassName(OrderClass c); // "l.o.", "l.o.u.", "a.a."

struct Verdict {
  bool sat = false;
  std::optional<std::vector<bool>> model; // over input variables
};

struct Block {
  int headVar = 0;
  std::vector<Clause> clauses;
};

// Bijection on variable indices, stored densely: to[old] == new, or -1 when
// old is outside the domain.
class Mapping {
public:
  Mapping() = default;
  explicit Mapping(std::vector<int> to) : to_(std::move(to)) {}

  static Mapping identity(const std::vector<int> &domain);
  static Mapping fromPairs(const std::vector<std::pair<int, int>> &pairs);

  bool contains(int v) const { return v >= 0 && v < (int)to_.size() && to_[v] >= 0; }
  int operator()(int v) const;
  void set(int from, int to);

  std::vector<std::pair<int, int>> pairs() const;
  std::vector<int> domain() const;
  std::vector<int> stableSet() const;
  bool isIdentity() const; // the "tMapping"
  bool isBijective() const;

  Mapping inverse() const;
  // (a.then(b))(v) == b(a(v)); vars of a whose image is absent from b drop out.
  Mapping then(const Mapping &b) const;

  const std::vector<int> &raw() const { return to_; }
  friend bool operator==(const Mapping &, const Mapping &) = default;

private:
  std::vector<int> to_;
};

// Result of normalization; labels[i] is the caller's variable index for the
// dense index i.
struct Normalized {
  ClauseSet set;
  std::vector<int> labels;
};

struct NormalizeOptions {
  bool compact = true;          // renumber vars densely, order-preserving
  bool rejectEmptyClause = false;
};

// Explicit literal records, var indices as given.
Normalized normalize(const std::vector<std::vector<Literal>> &raw,
                     const NormalizeOptions &opt = {});
// DIMACS-style signed integers: v > 0 is var v-1, v < 0 is the negation of var |v|-1.
Normalized normalizeSigned(const std::vector<std::vector<int>> &raw,
                           const NormalizeOptions &opt = {});

bool literalsSorted(const ClauseSet &s);   // condition a
bool clausesSorted(const ClauseSet &s);    // condition b
bool newVarsIncreasing(const ClauseSet &s); // condition c
bool clausesUnique(const ClauseSet &s);    // condition d
OrderClass classify(const ClauseSet &s);
inline bool isLinearlyOrdered(const ClauseSet &s) {
  return classify(s) == OrderClass::LinearlyOrdered;
}

// Strict weak order used by sortClauses; negative before positive on a sign tie.
bool clauseLess(const Clause &a, const Clause &b);
ClauseSet sortClauses(const ClauseSet &s);

std::set<int> litSet(const ClauseSet &s);
std::int64_t rcc(int k);
std::vector<Block> blocksOf(const ClauseSet &s);

bool compareClauses(const Clause &a, const Clause &b);
bool compareSets(const ClauseSet &a, const ClauseSet &b);

Clause applyMapping(const Clause &c, const Mapping &m);
ClauseSet applyMapping(const ClauseSet &s, const Mapping &m);

// Direct CNF semantics; assignment indexed by var.
bool evalClause(const Clause &c, const std::vector<bool> &assignment);
bool evalSet(const ClauseSet &s, const std::vector<bool> &assignment);

// Text form used across tests, CLI and DOT labels: "{0,-1}{2,3}".
std::string toString(const Literal &l);
std::string toString(const Clause &c);
std::string toString(const ClauseSet &s);
std::string toString(const Mapping &m); // "{(0,0)(5,1)}"
// Accepts '-', '~', '!' or "¬" as negation marks; literals are sorted and
// clause order kept, no deduplication.
ClauseSet parseSet(std::string_view text);
Clause parseClause(std::string_view text);

// Positional serialization usable as a hash key.
std::vector<std::int32_t> serialize(const ClauseSet &s);

struct KeyHash {
  size_t operator()(const std::vector<std::int32_t> &k) const;
};

} // namespace patres
