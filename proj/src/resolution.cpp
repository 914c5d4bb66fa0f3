#include "patres/resolution.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <unordered_set>

namespace patres {

std::optional<int> Srt::find(const ClauseSet &s) const {
  auto it = index_.find(serialize(s));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> Srt::reachableFrom(int ref) const {
  std::vector<int> out;
  if (isLeaf(ref)) return out;
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<int> stack{ref};
  seen[ref] = 1;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    out.push_back(id);
    for (int ch : {nodes_[id].hi, nodes_[id].lo})
      if (!isLeaf(ch) && !seen[ch]) {
        seen[ch] = 1;
        stack.push_back(ch);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Clause> instantiateClause(const Clause &c, int v, bool value) {
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i].var != v) continue;
    if (c[i].neg != value) return std::nullopt;
    Clause out;
    out.reserve(c.size() - 1);
    for (size_t j = 0; j < c.size(); ++j)
      if (j != i) out.push_back(c[j]);
    return out;
  }
  return c;
}

Instantiated instantiate(const ClauseSet &s, int v, bool value) {
  Instantiated res;
  bool present = false;
  for (size_t i = 0; i < s.size(); ++i) {
    for (const auto &l : s[i])
      if (l.var == v) present = true;
    auto d = instantiateClause(s[i], v, value);
    if (!d) continue;
    if (d->empty()) {
      res.kind = Instantiated::False;
      res.set = {};
      res.kept.clear();
      return res;
    }
    res.set.clauses.push_back(std::move(*d));
    res.kept.push_back((int)i);
  }
  if (!present)
    throw Error(Errc::VariableAbsent, "variable " + std::to_string(v) + " not in " + toString(s));
  if (res.set.empty()) res.kind = Instantiated::True;
  return res;
}

Literal leastLiteral(const ClauseSet &s) {
  if (s.empty() || s[0].empty()) throw Error(Errc::EmptySet, "no head clause");
  return s[0][0];
}

// Incremental construction shared by gspra, resolveClause and singleClauseSrt.
class SrtBuilder {
public:
  explicit SrtBuilder(Srt &t) : t_(t) {}

  // Node for s built top-down; s must be nonempty without empty clauses.
  int build(const ClauseSet &s, const std::vector<int> &origin) {
    auto key = serialize(s);
    if (auto it = t_.index_.find(key); it != t_.index_.end()) return it->second;
    SrtNode n;
    n.set = s;
    n.origin = origin;
    n.var = leastLiteral(s).var;
    n.hi = child(s, origin, n.var, true);
    n.lo = child(s, origin, n.var, false);
    return add(std::move(key), std::move(n));
  }

  // Resolves clause d (derived from base clause `from`) into the node ref.
  int push(int ref, const Clause &d, int from, StepTrace &trace) {
    if (d.empty()) return kFalse;
    if (ref == kFalse) return kFalse;
    if (ref == kTrue) return build(ClauseSet({d}), {from});

    const SrtNode &x = t_.nodes_[ref];
    ClauseSet u = x.set;
    u.clauses.push_back(d);
    auto key = serialize(u);
    if (auto it = t_.index_.find(key); it != t_.index_.end()) {
      trace.rewrites.emplace_back(ref, it->second);
      return it->second;
    }
    noteNSplit(ref, d, trace);

    SrtNode n;
    n.set = std::move(u);
    n.origin = x.origin;
    n.origin.push_back(from);
    n.var = x.var;
    int oldHi = x.hi, oldLo = x.lo;
    auto dHi = instantiateClause(d, n.var, true);
    auto dLo = instantiateClause(d, n.var, false);
    n.hi = dHi ? push(oldHi, *dHi, from, trace) : oldHi;
    n.lo = dLo ? push(oldLo, *dLo, from, trace) : oldLo;
    int id = add(std::move(key), std::move(n));
    trace.rewrites.emplace_back(ref, id);
    return id;
  }

private:
  int child(const ClauseSet &s, const std::vector<int> &origin, int v, bool value) {
    auto inst = instantiate(s, v, value);
    if (inst.kind == Instantiated::True) return kTrue;
    if (inst.kind == Instantiated::False) return kFalse;
    std::vector<int> o;
    o.reserve(inst.kept.size());
    for (int k : inst.kept) o.push_back(origin[k]);
    return build(inst.set, o);
  }

  int add(std::vector<std::int32_t> key, SrtNode n) {
    int id = (int)t_.nodes_.size();
    t_.nodes_.push_back(std::move(n));
    t_.index_.emplace(std::move(key), id);
    return id;
  }

  // A derivation whose least var is new to the node and precedes one of the
  // node's head vars forces the node to be rebuilt under a new head order.
  void noteNSplit(int ref, const Clause &d, StepTrace &trace) {
    const ClauseSet &s = t_.nodes_[ref].set;
    int least = d.front().var;
    int maxHead = -1;
    for (const auto &c : s) {
      maxHead = std::max(maxHead, c.front().var);
      for (const auto &l : c)
        if (l.var == least) return;
    }
    if (least < maxHead) trace.nSplits.push_back({ref, d});
  }

  Srt &t_;
};

namespace {

void finishStep(Srt &t, std::vector<StepTrace> &steps, StepTrace trace, int root) {
  trace.root = root;
  trace.reachable = t.reachableFrom(root);
  steps.push_back(std::move(trace));
}

} // namespace

Srt singleClauseSrt(const Clause &c) {
  Srt t;
  t.base_ = ClauseSet({c});
  SrtBuilder b(t);
  StepTrace trace;
  trace.step = 1;
  trace.clause = c;
  t.root_ = b.push(kTrue, c, 0, trace);
  finishStep(t, t.steps_, std::move(trace), t.root_);
  return t;
}

Srt gspra(const ClauseSet &s) {
  Srt t;
  t.base_ = s;
  if (!s.empty()) {
    // preliminary step: the first of the shortest clauses leads
    size_t best = 0;
    for (size_t i = 1; i < s.size(); ++i)
      if (s[i].size() < s[best].size()) best = i;
    std::rotate(t.base_.clauses.begin(), t.base_.clauses.begin() + best,
                t.base_.clauses.begin() + best + 1);
  }
  SrtBuilder b(t);
  int root = kTrue;
  for (size_t k = 0; k < t.base_.size(); ++k) {
    StepTrace trace;
    trace.step = (int)k + 1;
    trace.clause = t.base_[k];
    root = b.push(root, t.base_[k], (int)k, trace);
    finishStep(t, t.steps_, std::move(trace), root);
  }
  t.root_ = root;
  return t;
}

Srt resolveClause(const Srt &irt, const Clause &c) {
  Srt t = irt;
  int from = (int)t.base_.size();
  t.base_.clauses.push_back(c);
  SrtBuilder b(t);
  StepTrace trace;
  trace.step = from + 1;
  trace.clause = c;
  t.root_ = b.push(t.root_, c, from, trace);
  finishStep(t, t.steps_, std::move(trace), t.root_);
  return t;
}

// ------------------------------------------------------------------ FBDD

Fbdd extractFbdd(const Srt &srt) {
  Fbdd d;
  std::map<std::tuple<int, int, int>, int> unique;
  std::unordered_map<int, int> done;
  std::function<int(int)> conv = [&](int ref) -> int {
    if (isLeaf(ref)) return ref;
    if (auto it = done.find(ref); it != done.end()) return it->second;
    const auto &n = srt.node(ref);
    int hi = conv(n.hi), lo = conv(n.lo);
    auto key = std::make_tuple(n.var, hi, lo);
    int id;
    if (auto it = unique.find(key); it != unique.end()) {
      id = it->second;
    } else {
      id = (int)d.nodes.size();
      d.nodes.push_back({n.var, hi, lo});
      unique.emplace(key, id);
    }
    done[ref] = id;
    return id;
  };
  d.root = conv(srt.root());
  return d;
}

namespace {

// Union of labels over all paths above each node, propagated in topological
// order. Generic over the child accessor so both graph kinds share it.
template <class Children, class Label, class Mentions>
std::optional<int> ancestorCheck(int root, size_t count, Children children, Label label,
                                 Mentions mentions) {
  if (isLeaf(root)) return std::nullopt;
  std::vector<int> order;
  std::vector<char> state(count, 0);
  std::function<void(int)> dfs = [&](int id) {
    state[id] = 1;
    for (int ch : children(id))
      if (!isLeaf(ch) && !state[ch]) dfs(ch);
    order.push_back(id);
  };
  dfs(root);
  std::reverse(order.begin(), order.end());
  std::vector<std::set<int>> above(count);
  for (int id : order) {
    if (mentions(id, above[id])) return id;
    for (int ch : children(id)) {
      if (isLeaf(ch)) continue;
      above[ch].insert(above[id].begin(), above[id].end());
      above[ch].insert(label(id));
    }
  }
  return std::nullopt;
}

} // namespace

std::optional<int> readOnceViolation(const Fbdd &d) {
  return ancestorCheck(
      d.root, d.nodes.size(),
      [&](int id) { return std::array<int, 2>{d.nodes[id].hi, d.nodes[id].lo}; },
      [&](int id) { return d.nodes[id].var; },
      [&](int id, const std::set<int> &above) { return above.count(d.nodes[id].var) > 0; });
}

std::optional<int> ancestorVarViolation(const Srt &srt) {
  return ancestorCheck(
      srt.root(), srt.tableSize(),
      [&](int id) { return std::array<int, 2>{srt.node(id).hi, srt.node(id).lo}; },
      [&](int id) { return srt.node(id).var; },
      [&](int id, const std::set<int> &above) {
        for (const auto &c : srt.node(id).set)
          for (const auto &l : c)
            if (above.count(l.var)) return true;
        return false;
      });
}

bool evaluate(const Fbdd &d, const std::vector<bool> &a) {
  int ref = d.root;
  while (!isLeaf(ref)) {
    const auto &n = d.nodes[ref];
    if (n.var >= (int)a.size())
      throw Error(Errc::IncompleteAssignment, "no value for variable " + std::to_string(n.var));
    ref = a[n.var] ? n.hi : n.lo;
  }
  return ref == kTrue;
}

bool evaluate(const Srt &srt, const std::vector<bool> &a) {
  int ref = srt.root();
  while (!isLeaf(ref)) {
    const auto &n = srt.node(ref);
    if (n.var >= (int)a.size())
      throw Error(Errc::IncompleteAssignment, "no value for variable " + std::to_string(n.var));
    ref = a[n.var] ? n.hi : n.lo;
  }
  return ref == kTrue;
}

// ------------------------------------------------------ common nodes, splits

const char *cnKindName(CnKind k) {
  switch (k) {
  case CnKind::Head: return "HCN";
  case CnKind::Middle: return "MCN";
  case CnKind::Tail: return "TCN";
  }
  return "?";
}

namespace {

CnKind classifyCn(const Srt &srt, int id) {
  const auto &n = srt.node(id);
  const Clause &origin = srt.base()[n.origin.front()];
  int nl = n.set[0][0].var;
  size_t pos = 0;
  while (pos < origin.size() && origin[pos].var != nl) ++pos;
  if (pos == 0) return CnKind::Head;
  if (pos + 1 >= origin.size()) return CnKind::Tail;
  return CnKind::Middle;
}

std::vector<CommonNode> commonNodesFrom(const Srt &srt, int root) {
  std::map<int, int> inDegree;
  std::set<int> trivial;
  for (int id : srt.reachableFrom(root)) {
    const auto &n = srt.node(id);
    for (int ch : {n.hi, n.lo})
      if (!isLeaf(ch)) ++inDegree[ch];
    if (!isLeaf(n.hi) && n.hi == n.lo) trivial.insert(n.hi);
  }
  std::vector<CommonNode> out;
  for (auto [id, deg] : inDegree)
    if (deg >= 2) out.push_back({id, classifyCn(srt, id), trivial.count(id) > 0, deg});
  return out;
}

} // namespace

std::vector<CommonNode> detectCommonNodes(const Srt &srt) {
  return commonNodesFrom(srt, srt.root());
}

std::vector<CommonNode> commonNodesAt(const Srt &srt, size_t stepIndex) {
  return commonNodesFrom(srt, srt.steps().at(stepIndex).root);
}

SplitReport detectSplits(const Srt &srt) {
  SplitReport rep;
  const auto &steps = srt.steps();
  for (size_t i = 0; i < steps.size(); ++i)
    for (const auto &w : steps[i].nSplits) rep.nSplits.emplace_back(steps[i].step, w);

  for (size_t i = 1; i < steps.size(); ++i) {
    const auto &now = steps[i];
    std::unordered_set<int> reach(now.reachable.begin(), now.reachable.end());
    for (const auto &cn : commonNodesAt(srt, i - 1)) {
      std::set<int> variants;
      for (auto [from, to] : now.rewrites)
        if (from == cn.node) variants.insert(to);
      if (reach.count(cn.node)) variants.insert(cn.node);
      if (variants.size() < 2) continue;
      const auto &n = srt.node(cn.node);
      rep.cnSplits.push_back({cn.node, now.step, n.size(), n.rank(), cn.kind, cn.trivial,
                              (int)variants.size()});
    }
  }
  rep.bigSpCount = rep.nSplits.size();
  for (const auto &s : rep.cnSplits)
    if (s.rank >= 3 || s.size > 1) ++rep.bigSpCount;
  return rep;
}

NodeStats nodeStats(const Srt &srt) {
  NodeStats st;
  auto reach = srt.reachable();
  st.uniqueNonLeaf = reach.size();
  for (int id : reach) ++st.bySize[srt.node(id).size()];
  std::unordered_set<int> prev;
  size_t prevCount = 0;
  for (const auto &step : srt.steps()) {
    size_t fresh = 0;
    for (int id : step.reachable)
      if (!prev.count(id)) ++fresh;
    double rate = prevCount ? double(step.reachable.size()) / double(prevCount) : 0.0;
    st.perStep.push_back({step.step, step.reachable.size(), fresh, rate});
    prev = std::unordered_set<int>(step.reachable.begin(), step.reachable.end());
    prevCount = step.reachable.size();
  }
  return st;
}

} // namespace patres
