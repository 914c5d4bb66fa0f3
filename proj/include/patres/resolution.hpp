#pragma once

#include "patres/cnf.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace patres {

// Child references: non-negative values index the node table.
constexpr int kTrue = -1;
constexpr int kFalse = -2;
inline bool isLeaf(int ref) { return ref < 0; }

struct SrtNode {
  ClauseSet set;
  int var = -1;       // instantiated variable (head of the first clause)
  int hi = kFalse;    // var = true
  int lo = kFalse;    // var = false
  std::vector<int> origin; // per clause: index of the base clause it derives from
  size_t size() const { return set.size(); }
  size_t rank() const { return set.rank(); }
};

struct NSplitWitness {
  int node;      // node the clause was resolved into
  Clause clause; // the incoming derivation
};

struct StepTrace {
  int step = 0;        // number of base clauses resolved so far
  Clause clause;       // base clause resolved in this step
  int root = kTrue;
  std::vector<int> reachable;                  // non-leaf node ids, ascending
  std::vector<std::pair<int, int>> rewrites;   // (old node, node it became)
  std::vector<NSplitWitness> nSplits;
};

// Sequential resolution tree. Nodes are shared by exact positional
// serialization of their clause-set.
class Srt {
public:
  const SrtNode &node(int id) const { return nodes_[id]; }
  size_t tableSize() const { return nodes_.size(); }
  int root() const { return root_; }
  const ClauseSet &base() const { return base_; }
  const std::vector<StepTrace> &steps() const { return steps_; }
  std::optional<int> find(const ClauseSet &s) const;

  // Non-leaf nodes reachable from root (or from the given ref), ascending ids.
  std::vector<int> reachable() const { return reachableFrom(root_); }
  std::vector<int> reachableFrom(int ref) const;

private:
  friend Srt singleClauseSrt(const Clause &c);
  friend Srt gspra(const ClauseSet &s);
  friend Srt resolveClause(const Srt &irt, const Clause &c);
  friend class SrtBuilder;

  std::vector<SrtNode> nodes_;
  std::unordered_map<std::vector<std::int32_t>, int, KeyHash> index_;
  ClauseSet base_;
  int root_ = kTrue;
  std::vector<StepTrace> steps_;
};

// Returns the derivation of c when v is set to value: nullopt when c is
// satisfied, an empty clause when falsified.
std::optional<Clause> instantiateClause(const Clause &c, int v, bool value);

// Result of instantiating a whole set: either a residual set or a leaf.
struct Instantiated {
  enum Kind { Set, True, False } kind = Set;
  ClauseSet set;
  std::vector<int> kept; // index of the source clause for each residual clause
};
Instantiated instantiate(const ClauseSet &s, int v, bool value);

Literal leastLiteral(const ClauseSet &s);

Srt singleClauseSrt(const Clause &c);
Srt gspra(const ClauseSet &s);
Srt resolveClause(const Srt &irt, const Clause &c);

// Read-once branching program with variable labels.
struct FbddNode {
  int var;
  int hi;
  int lo;
};

struct Fbdd {
  std::vector<FbddNode> nodes;
  int root = kTrue;
  size_t size() const { return nodes.size(); }
};

Fbdd extractFbdd(const Srt &srt);
// A node whose variable already labels one of its ancestors, if any.
std::optional<int> readOnceViolation(const Fbdd &d);
// A node whose clause-set mentions an ancestor edge var, if any.
std::optional<int> ancestorVarViolation(const Srt &srt);

bool evaluate(const Fbdd &d, const std::vector<bool> &assignment);
bool evaluate(const Srt &srt, const std::vector<bool> &assignment);

enum class CnKind { Head, Middle, Tail };
const char *cnKindName(CnKind k); // "HCN", "MCN", "TCN"

struct CommonNode {
  int node;
  CnKind kind;
  bool trivial;     // some parent sends both edges to it
  int inDegree;
};

std::vector<CommonNode> detectCommonNodes(const Srt &srt);
// Common nodes of the graph as it stood after the given step.
std::vector<CommonNode> commonNodesAt(const Srt &srt, size_t stepIndex);

struct CnSplit {
  int node;
  int step;          // step during which the node was duplicated
  size_t size;
  size_t rank;
  CnKind kind;
  bool trivial;
  int variants;      // distinct versions of the node after the step
};

struct SplitReport {
  std::vector<std::pair<int, NSplitWitness>> nSplits; // (step, witness)
  std::vector<CnSplit> cnSplits;
  size_t bigSpCount = 0;
};

SplitReport detectSplits(const Srt &srt);

struct StepStat {
  int step;
  size_t uniqueCount;
  size_t newNodes;
  double expansionRate; // uniqueCount / previous uniqueCount (0 for step 1)
};

struct NodeStats {
  size_t uniqueNonLeaf = 0;
  std::map<size_t, size_t> bySize;
  std::vector<StepStat> perStep;
};

NodeStats nodeStats(const Srt &srt);

} // namespace patres
