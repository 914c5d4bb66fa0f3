#pragma once

#include "patres/cnf.hpp"
#include "patres/renaming.hpp"
#include "patres/resolution.hpp"

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace patres {

// Edge to a child node. `map` renames the variables of the instantiated
// parent set into the child's variable space; empty for leaves.
struct MsrtEdge {
  int target = kFalse;
  Mapping map;
};

struct MsrtNode {
  ClauseSet set; // always linearly ordered
  int var = -1;
  MsrtEdge hi, lo;
  size_t size() const { return set.size(); }
};

// Memo store of built nodes. Keys are the nodes' own (linearly ordered) sets.
class Lcs {
public:
  std::optional<int> find(const ClauseSet &s) const;
  void insert(const ClauseSet &s, int node);
  size_t size() const { return entries_.size(); }

private:
  std::unordered_map<std::vector<std::int32_t>, int, KeyHash> entries_;
};

struct AlignedStep {
  int step;
  Clause clause;              // clause folded in, in root space
  int root;
  std::vector<int> reachable;
  std::vector<std::pair<int, int>> rewrites;
  std::vector<NSplitWitness> nSplits;
};

struct AlignedOptions;

// Multi-space resolution DAG produced by the aligned engines.
class Msrt {
public:
  const MsrtNode &node(int id) const { return nodes_[id]; }
  size_t tableSize() const { return nodes_.size(); }
  const MsrtEdge &root() const { return root_; } // map: input vars -> root space
  const ClauseSet &input() const { return input_; }
  const std::vector<AlignedStep> &steps() const { return steps_; }
  std::vector<int> reachable() const;
  size_t uniqueNodes() const { return reachable().size(); }

  int craRounds = 0;   // cra rounds spent across all renamings
  int maxCraRounds = 0;
  int rebuilds = 0;    // Align calls that had to rename the union

private:
  friend class MsrtBuilder;
  friend Msrt gspraPlus(const ClauseSet &, const AlignedOptions &);
  friend Msrt fgpraPlus(const ClauseSet &, const AlignedOptions &);
  std::vector<MsrtNode> nodes_;
  Lcs lcs_;
  MsrtEdge root_;
  ClauseSet input_;
  std::vector<AlignedStep> steps_;
};

enum class FirstClauseRule {
  Shortest, // first of the shortest clauses
  TopPart,  // search clauses and literal orders for the smallest top part
};

struct AlignedOptions {
  FirstClauseRule rootRule = FirstClauseRule::TopPart;
  FirstClauseRule childRule = FirstClauseRule::Shortest;
  // Within a block, clauses of the head sign with more clauses come first.
  bool stretchedBlocks = false;
  int recursionCap = 0; // 0: |S|^2 + 64
  size_t maxNodes = 0;  // node table budget, 0 for none; TooLarge past it
};

struct FirstClauseChoice {
  size_t index = 0;
  Clause arrangement; // literal order that produced the minimum
  size_t topPartNodes = 0;
};

FirstClauseChoice selectFirstClause(const ClauseSet &s);

Msrt gspraPlus(const ClauseSet &s, const AlignedOptions &opt = {});
Msrt fgpraPlus(const ClauseSet &s, const AlignedOptions &opt = {});

// Incremental step exposed for tests: aligns clause c (in the node's space)
// into node `node` of m and returns the edge to the node of the union.
MsrtEdge align(Msrt &m, int node, const Clause &c, const AlignedOptions &opt = {});

bool evaluate(const Msrt &m, const std::vector<bool> &assignment);
// FBDD over input variables; shared Msrt nodes reached under different
// renamings are unfolded. Throws TooLarge past maxNodes.
Fbdd extractFbdd(const Msrt &m, size_t maxNodes = 2'000'000);

// Model from a TRUE-reaching path, or nullopt when the DAG has none.
std::optional<std::vector<bool>> findModel(const Msrt &m);
Verdict solve(const ClauseSet &s, const AlignedOptions &opt = {});

struct AlignmentReport {
  size_t nodesChecked = 0;
  size_t notLinearlyOrdered = 0;
  size_t tailNotDerived = 0;
  std::set<std::pair<int, std::vector<int>>> acs; // (input clause, tail literal codes)
  size_t acsBound = 0;
  bool withinBound() const { return acs.size() <= acsBound; }
  bool ok() const { return notLinearlyOrdered == 0 && tailNotDerived == 0 && withinBound(); }
};

AlignmentReport alignmentCheck(const Msrt &m);

struct AlignedSplits {
  size_t nSplits = 0;
  size_t cnSplits = 0;
  size_t bigSpCount = 0;
};
AlignedSplits detectSplits(const Msrt &m);

// 3 + 3*RCC^2*M^4 + RCC*M^3 with RCC for clause length 3.
double nodeBound(size_t m);

// Block sort used by the stretched-block option.
ClauseSet stretchBlocks(const ClauseSet &s);

} // namespace patres
