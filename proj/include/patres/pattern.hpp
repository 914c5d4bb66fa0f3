#pragma once

#include "patres/cnf.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace patres {

// Hash-consed decomposition of truth-table columns. A node of level k stands
// for 2^k bits and is either constant or the concatenation of two level k-1
// nodes. Equal bit strings of equal length always share one node id, so
// PatternAnd/PatternOr results on shared sub-patterns are computed once.
class PatternStore {
public:
  struct Node {
    int level;
    int left;  // -1 for constants
    int right;
    bool bit;  // value of a constant node
  };

  int constant(int level, bool bit);
  int split(int left, int right);
  int conj(int a, int b);
  int disj(int a, int b);

  const Node &node(int id) const { return nodes_[id]; }
  bool isConstant(int id) const { return nodes_[id].left < 0; }
  size_t size() const { return nodes_.size(); }
  void clearMemo();

private:
  int intern(const Node &n);
  int apply(int a, int b, bool isAnd);

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, int> constants_;
  std::unordered_map<std::uint64_t, int> splits_;
  std::unordered_map<std::uint64_t, int> andMemo_, orMemo_;
};

class TruthPattern {
public:
  TruthPattern() = default;
  TruthPattern(std::shared_ptr<PatternStore> store, int id)
      : store_(std::move(store)), id_(id) {}

  std::uint64_t totalLen() const { return std::uint64_t{1} << level(); }
  int level() const { return store_->node(id_).level; }
  int id() const { return id_; }
  const std::shared_ptr<PatternStore> &store() const { return store_; }

  bool operator==(const TruthPattern &o) const {
    return store_ == o.store_ && id_ == o.id_;
  }

private:
  std::shared_ptr<PatternStore> store_;
  int id_ = -1;
};

// Store used by the free functions below when none is given; one per thread.
std::shared_ptr<PatternStore> defaultPatternStore();

TruthPattern allZeros(int n);
TruthPattern allOnes(int n);
// Column of variable varIndex in the truth table over n variables, var 0
// being the most significant one.
TruthPattern literalPattern(int varIndex, int n, bool negative = false);
TruthPattern clausePattern(const Clause &c, int n);
TruthPattern setPattern(const ClauseSet &s, int n);

TruthPattern patternOr(const std::vector<TruthPattern> &ps);
TruthPattern patternOr(const TruthPattern &a, const TruthPattern &b);
TruthPattern patternAnd(const TruthPattern &a, const TruthPattern &b);

std::uint64_t patternLength(const TruthPattern &p);
std::vector<bool> expand(const TruthPattern &p);
std::uint64_t countOnes(const TruthPattern &p);

// Number of distinct sub-patterns that are not constant and whose two halves
// differ; the node count of the reduced ordered diagram in var order 0..n-1.
size_t distinctBranchingSubpatterns(const TruthPattern &p);

// Run-length notation, e.g. "2(16(0)16(1))" or "16(1(0)1(1))32(1)".
std::string render(const TruthPattern &p);
// Inverse of render for aligned notations (every item a power-of-two length
// that starts on a matching boundary).
TruthPattern parsePattern(std::string_view text);
TruthPattern fromBits(const std::vector<bool> &bits);

} // namespace patres
