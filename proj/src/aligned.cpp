#include "patres/aligned.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>

namespace patres {

std::optional<int> Lcs::find(const ClauseSet &s) const {
  auto it = entries_.find(serialize(s));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void Lcs::insert(const ClauseSet &s, int node) { entries_.emplace(serialize(s), node); }

std::vector<int> Msrt::reachable() const {
  std::vector<int> out;
  if (isLeaf(root_.target)) return out;
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<int> stack{root_.target};
  seen[root_.target] = 1;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    out.push_back(id);
    for (int ch : {nodes_[id].hi.target, nodes_[id].lo.target})
      if (!isLeaf(ch) && !seen[ch]) {
        seen[ch] = 1;
        stack.push_back(ch);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ------------------------------------------------------ first clause choice

namespace {

std::vector<int> varsOf(const ClauseSet &s) {
  auto v = litSet(s);
  return {v.begin(), v.end()};
}

size_t topPartCount(const ClauseSet &s, const Clause &arrangement) {
  std::unordered_set<std::vector<std::int32_t>, KeyHash> seen;
  std::vector<ClauseSet> frontier{s};
  for (const auto &lit : arrangement) {
    std::vector<ClauseSet> next;
    for (const auto &x : frontier) {
      for (bool value : {true, false}) {
        bool present = false;
        for (const auto &c : x)
          for (const auto &l : c)
            if (l.var == lit.var) present = true;
        if (!present) continue;
        auto inst = instantiate(x, lit.var, value);
        if (inst.kind != Instantiated::Set) continue;
        if (!seen.insert(serialize(inst.set)).second) continue;
        // only the branch that leaves the clause unsatisfied keeps descending
        if (value == lit.neg) next.push_back(std::move(inst.set));
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

size_t shortestIndex(const ClauseSet &s) {
  size_t best = 0;
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i].size() < s[best].size()) best = i;
  return best;
}

ClauseSet moveFirst(const ClauseSet &s, size_t index) {
  ClauseSet out = s;
  std::rotate(out.clauses.begin(), out.clauses.begin() + index,
              out.clauses.begin() + index + 1);
  return out;
}

bool arrangementLess(const Clause &a, const Clause &b) {
  for (size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (a[i].code() != b[i].code()) return a[i].code() < b[i].code();
  return a.size() < b.size();
}

} // namespace

FirstClauseChoice selectFirstClause(const ClauseSet &s) {
  if (s.empty()) throw Error(Errc::EmptySet, "no clause to select");
  FirstClauseChoice best;
  bool have = false;
  for (size_t i = 0; i < s.size(); ++i) {
    Clause arr = s[i];
    std::sort(arr.begin(), arr.end(),
              [](const Literal &a, const Literal &b) { return a.code() < b.code(); });
    do {
      size_t count = topPartCount(s, arr);
      if (!have || count < best.topPartNodes ||
          (count == best.topPartNodes && i == best.index &&
           arrangementLess(arr, best.arrangement))) {
        best = {i, arr, count};
        have = true;
      }
    } while (std::next_permutation(arr.begin(), arr.end(), [](const Literal &a,
                                                             const Literal &b) {
      return a.code() < b.code();
    }));
  }
  return best;
}

ClauseSet stretchBlocks(const ClauseSet &s) {
  ClauseSet out;
  for (const auto &b : blocksOf(s)) {
    size_t negCount = 0;
    for (const auto &c : b.clauses) negCount += c.front().neg ? 1 : 0;
    bool negFirst = 2 * negCount >= b.clauses.size();
    std::vector<Clause> first, second;
    for (const auto &c : b.clauses) (c.front().neg == negFirst ? first : second).push_back(c);
    out.clauses.insert(out.clauses.end(), first.begin(), first.end());
    out.clauses.insert(out.clauses.end(), second.begin(), second.end());
  }
  for (const auto &c : s)
    if (c.empty()) out.clauses.push_back(c);
  return out;
}

// ------------------------------------------------------------- construction

class MsrtBuilder {
public:
  MsrtBuilder(Msrt &m, const AlignedOptions &opt, size_t inputSize) : m_(m), opt_(opt) {
    cap_ = opt.recursionCap > 0 ? opt.recursionCap : int(inputSize * inputSize + 64);
  }

  struct Fixed {
    ClauseSet set;
    Mapping map;
  };

  Fixed fix(const ClauseSet &raw) {
    ClauseSet in;
    for (const auto &c : raw)
      if (std::find(in.clauses.begin(), in.clauses.end(), c) == in.clauses.end())
        in.clauses.push_back(c);
    Fixed f;
    if (classify(in) == OrderClass::LinearlyOrdered) {
      f.set = in;
      f.map = Mapping::identity(varsOf(in));
    } else {
      size_t first = opt_.childRule == FirstClauseRule::TopPart ? selectFirstClause(in).index
                                                                : shortestIndex(in);
      auto cp = craPlus(moveFirst(in, first));
      note(cp.iterations);
      f.set = std::move(cp.set);
      f.map = std::move(cp.composed);
    }
    if (opt_.stretchedBlocks) f.set = stretchBlocks(f.set);
    return f;
  }

  void note(int rounds) {
    m_.craRounds += rounds;
    m_.maxCraRounds = std::max(m_.maxCraRounds, rounds);
  }

  // Top-down construction of the node for an already fixed set.
  int node(const ClauseSet &t) {
    if (auto f = m_.lcs_.find(t)) return *f;
    MsrtNode n;
    n.set = t;
    n.var = t[0][0].var;
    n.hi = childEdge(t, n.var, true);
    n.lo = childEdge(t, n.var, false);
    return add(std::move(n));
  }

  MsrtEdge childEdge(const ClauseSet &s, int v, bool value) {
    auto inst = instantiate(s, v, value);
    if (inst.kind == Instantiated::True) return {kTrue, {}};
    if (inst.kind == Instantiated::False) return {kFalse, {}};
    auto f = fix(inst.set);
    return {node(f.set), std::move(f.map)};
  }

  // Node for a fixed set grown clause by clause from its first clause.
  int rebuild(const ClauseSet &t) {
    if (auto f = m_.lcs_.find(t)) return *f;
    if (t.size() == 1 || opt_.stretchedBlocks) return node(t);
    ClauseSet prefix = t;
    prefix.clauses.pop_back();
    if (classify(prefix) != OrderClass::LinearlyOrdered) return node(t);
    int base = rebuild(prefix);
    auto e = align(base, t.clauses.back());
    if (!e.map.isIdentity() || m_.nodes_[e.target].set != t) return node(t);
    return e.target;
  }

  MsrtEdge align(int n, const Clause &c) {
    if (++depth_ > cap_)
      throw Error(Errc::RecursionCapExceeded, "align nesting beyond " + std::to_string(cap_));
    struct Guard {
      int &d;
      ~Guard() { --d; }
    } guard{depth_};

    const ClauseSet xset = m_.nodes_[n].set;
    const int xvar = m_.nodes_[n].var;
    const MsrtEdge xhi = m_.nodes_[n].hi, xlo = m_.nodes_[n].lo;

    ClauseSet u = xset;
    u.clauses.push_back(c);
    Fixed f = fix(u);
    bool unchanged = f.map.isIdentity() && f.set == u;

    if (auto hit = m_.lcs_.find(f.set)) {
      rewrite(n, *hit);
      return {*hit, std::move(f.map)};
    }
    if (xset.size() == 1) {
      int id = node(f.set);
      rewrite(n, id);
      return {id, std::move(f.map)};
    }
    if (!unchanged) {
      noteNSplit(n, c);
      ++m_.rebuilds;
      int id = rebuild(f.set);
      rewrite(n, id);
      return {id, std::move(f.map)};
    }

    MsrtNode y;
    y.set = u;
    y.var = xvar;
    for (bool value : {true, false}) {
      const MsrtEdge &old = value ? xhi : xlo;
      auto d = instantiateClause(c, xvar, value);
      MsrtEdge e;
      if (!d) {
        e = old;
      } else if (d->empty() || old.target == kFalse) {
        e = {kFalse, {}};
      } else if (old.target == kTrue) {
        e = childEdge(u, xvar, value);
      } else if (old.map.isIdentity()) {
        e = align(old.target, *d);
      } else {
        // the old child lives in a renamed space; redo that branch
        auto inst = instantiate(u, xvar, value);
        auto g = fix(inst.set);
        ++m_.rebuilds;
        e = {rebuild(g.set), std::move(g.map)};
      }
      (value ? y.hi : y.lo) = std::move(e);
    }
    int id = add(std::move(y));
    rewrite(n, id);
    return {id, Mapping::identity(varsOf(u))};
  }

  void beginStep(AlignedStep *s) { trace_ = s; }

private:
  int add(MsrtNode n) {
    if (opt_.maxNodes && m_.nodes_.size() >= opt_.maxNodes)
      throw Error(Errc::TooLarge, "node table reached " + std::to_string(opt_.maxNodes));
    int id = (int)m_.nodes_.size();
    m_.lcs_.insert(n.set, id);
    m_.nodes_.push_back(std::move(n));
    return id;
  }

  void rewrite(int from, int to) {
    if (trace_) trace_->rewrites.emplace_back(from, to);
  }

  void noteNSplit(int n, const Clause &d) {
    if (!trace_ || d.empty()) return;
    const ClauseSet &s = m_.nodes_[n].set;
    int least = d.front().var, maxHead = -1;
    for (const auto &c : s) {
      maxHead = std::max(maxHead, c.front().var);
      for (const auto &l : c)
        if (l.var == least) return;
    }
    if (least < maxHead) trace_->nSplits.push_back({n, d});
  }

  Msrt &m_;
  const AlignedOptions &opt_;
  AlignedStep *trace_ = nullptr;
  int depth_ = 0;
  int cap_ = 0;
};

namespace {

struct Prepared {
  ClauseSet set;  // root-space, linearly ordered
  Mapping toRoot; // input vars -> root space
};

Prepared prepare(const ClauseSet &s, const AlignedOptions &opt, MsrtBuilder &b) {
  size_t first = opt.rootRule == FirstClauseRule::TopPart ? selectFirstClause(s).index
                                                          : shortestIndex(s);
  auto cp = craPlus(moveFirst(s, first));
  b.note(cp.iterations);
  Prepared p{std::move(cp.set), std::move(cp.composed)};
  if (opt.stretchedBlocks) p.set = stretchBlocks(p.set);
  return p;
}

// Trivial inputs: no clauses or an empty clause.
bool trivialRoot(const ClauseSet &s, MsrtEdge &root) {
  if (s.empty()) {
    root = {kTrue, {}};
    return true;
  }
  if (s.hasEmptyClause()) {
    root = {kFalse, {}};
    return true;
  }
  return false;
}

// Renames c into the space of `toSpace`, giving unseen vars fresh indices.
Clause intoSpace(const Clause &c, Mapping &toSpace, int &nextFree) {
  Clause out;
  for (const auto &l : c) {
    if (!toSpace.contains(l.var)) toSpace.set(l.var, nextFree++);
    out.push_back({toSpace(l.var), l.neg});
  }
  std::sort(out.begin(), out.end(), [](const Literal &a, const Literal &b) { return a.var < b.var; });
  return out;
}

} // namespace

MsrtEdge align(Msrt &m, int node, const Clause &c, const AlignedOptions &opt) {
  MsrtBuilder b(m, opt, m.node(node).size() + 1);
  return b.align(node, c);
}

Msrt gspraPlus(const ClauseSet &s, const AlignedOptions &opt) {
  Msrt m;
  m.input_ = s;
  if (trivialRoot(s, m.root_)) return m;
  MsrtBuilder b(m, opt, s.size());
  Prepared p = prepare(s, opt, b);

  // root space of the growing tree relative to p.set's space
  Mapping toCur = Mapping::identity(varsOf(ClauseSet({p.set[0]})));
  int nextFree = ClauseSet({p.set[0]}).maxVar() + 1;
  int root = kTrue;
  for (size_t k = 0; k < p.set.size(); ++k) {
    AlignedStep step;
    step.step = (int)k + 1;
    b.beginStep(&step);
    step.clause = intoSpace(p.set[k], toCur, nextFree);
    if (k == 0) {
      root = b.node(ClauseSet({step.clause}));
    } else {
      auto e = b.align(root, step.clause);
      root = e.target;
      if (!e.map.isIdentity()) {
        toCur = toCur.then(e.map);
        int mx = -1;
        for (int v : e.map.raw()) mx = std::max(mx, v);
        nextFree = std::max(nextFree, mx + 1);
      }
    }
    b.beginStep(nullptr);
    step.root = root;
    m.root_.target = root;
    step.reachable = m.reachable();
    m.steps_.push_back(std::move(step));
  }
  m.root_ = {root, p.toRoot.then(toCur)};
  return m;
}

Msrt fgpraPlus(const ClauseSet &s, const AlignedOptions &opt) {
  Msrt m;
  m.input_ = s;
  if (trivialRoot(s, m.root_)) return m;
  MsrtBuilder b(m, opt, s.size());
  Prepared p = prepare(s, opt, b);
  int root = b.node(p.set);
  m.root_ = {root, std::move(p.toRoot)};
  AlignedStep step;
  step.step = (int)s.size();
  step.root = root;
  step.reachable = m.reachable();
  m.steps_.push_back(std::move(step));
  return m;
}

// ------------------------------------------------------------- evaluation

namespace {

// back[v] = input variable standing behind space variable v.
std::vector<int> rootBack(const Msrt &m) {
  std::vector<int> back;
  for (auto [in, sp] : m.root().map.pairs()) {
    if (sp >= (int)back.size()) back.resize(sp + 1, -1);
    back[sp] = in;
  }
  return back;
}

std::vector<int> childBack(const std::vector<int> &back, const Mapping &map) {
  std::vector<int> out;
  for (auto [from, to] : map.pairs()) {
    if (to >= (int)out.size()) out.resize(to + 1, -1);
    out[to] = from < (int)back.size() ? back[from] : -1;
  }
  return out;
}

int inputVar(const std::vector<int> &back, int v) {
  if (v >= (int)back.size() || back[v] < 0)
    throw Error(Errc::UnmappedVariable, "space variable " + std::to_string(v) + " has no origin");
  return back[v];
}

} // namespace

bool evaluate(const Msrt &m, const std::vector<bool> &a) {
  int ref = m.root().target;
  if (isLeaf(ref)) return ref == kTrue;
  auto back = rootBack(m);
  while (!isLeaf(ref)) {
    const auto &n = m.node(ref);
    int v = inputVar(back, n.var);
    if (v >= (int)a.size())
      throw Error(Errc::IncompleteAssignment, "no value for variable " + std::to_string(v));
    const MsrtEdge &e = a[v] ? n.hi : n.lo;
    back = childBack(back, e.map);
    ref = e.target;
  }
  return ref == kTrue;
}

Fbdd extractFbdd(const Msrt &m, size_t maxNodes) {
  Fbdd d;
  if (isLeaf(m.root().target)) {
    d.root = m.root().target;
    return d;
  }
  std::map<std::tuple<int, int, int>, int> unique;
  std::map<std::pair<int, std::vector<int>>, int> memo;
  std::function<int(int, const std::vector<int> &)> conv = [&](int ref,
                                                               const std::vector<int> &back) {
    if (isLeaf(ref)) return ref;
    const auto &n = m.node(ref);
    std::vector<int> sig;
    for (int v : varsOf(n.set)) sig.push_back(inputVar(back, v));
    auto key = std::make_pair(ref, sig);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int hi = conv(n.hi.target, childBack(back, n.hi.map));
    int lo = conv(n.lo.target, childBack(back, n.lo.map));
    auto k = std::make_tuple(inputVar(back, n.var), hi, lo);
    int id;
    if (auto it = unique.find(k); it != unique.end()) {
      id = it->second;
    } else {
      if (d.nodes.size() >= maxNodes)
        throw Error(Errc::TooLarge, "unfolded diagram exceeds " + std::to_string(maxNodes));
      id = (int)d.nodes.size();
      d.nodes.push_back({std::get<0>(k), hi, lo});
      unique.emplace(k, id);
    }
    memo.emplace(std::move(key), id);
    return id;
  };
  d.root = conv(m.root().target, rootBack(m));
  return d;
}

std::optional<std::vector<bool>> findModel(const Msrt &m) {
  const auto &in = m.input();
  std::vector<bool> model(std::max(0, in.maxVar() + 1), false);
  int ref = m.root().target;
  if (ref == kFalse) return std::nullopt;
  if (ref == kTrue) return model;

  std::unordered_map<int, bool> live;
  std::function<bool(int)> reaches = [&](int r) -> bool {
    if (r == kTrue) return true;
    if (r == kFalse) return false;
    if (auto it = live.find(r); it != live.end()) return it->second;
    const auto &n = m.node(r);
    bool ok = reaches(n.hi.target) || reaches(n.lo.target);
    live[r] = ok;
    return ok;
  };
  if (!reaches(ref)) return std::nullopt;

  auto back = rootBack(m);
  while (!isLeaf(ref)) {
    const auto &n = m.node(ref);
    bool value = reaches(n.hi.target);
    model[inputVar(back, n.var)] = value;
    const MsrtEdge &e = value ? n.hi : n.lo;
    back = childBack(back, e.map);
    ref = e.target;
  }
  return model;
}

Verdict solve(const ClauseSet &s, const AlignedOptions &opt) {
  Msrt m = fgpraPlus(s, opt);
  Verdict v;
  v.model = findModel(m);
  v.sat = v.model.has_value();
  return v;
}

// ------------------------------------------------------------ instrumentation

AlignmentReport alignmentCheck(const Msrt &m) {
  AlignmentReport rep;
  const auto &in = m.input();
  rep.acsBound = size_t(rcc(3)) * in.size();
  if (isLeaf(m.root().target)) return rep;

  std::unordered_set<int> classified;
  std::set<std::pair<int, std::vector<int>>> visited;
  constexpr size_t kStateBudget = 200000;

  std::function<void(int, const std::vector<int> &)> walk = [&](int ref,
                                                                const std::vector<int> &back) {
    if (isLeaf(ref)) return;
    const auto &n = m.node(ref);
    std::vector<int> sig;
    for (int v : varsOf(n.set)) sig.push_back(inputVar(back, v));
    bool firstVisit = classified.insert(ref).second;
    if (!firstVisit && visited.size() >= kStateBudget) return;
    if (!visited.insert({ref, sig}).second) return;

    if (firstVisit) {
      ++rep.nodesChecked;
      if (classify(n.set) != OrderClass::LinearlyOrdered) ++rep.notLinearlyOrdered;
    }
    const Clause &tail = n.set.clauses.back();
    std::vector<int> codes;
    for (const auto &l : tail) codes.push_back(Literal{inputVar(back, l.var), l.neg}.code());
    std::sort(codes.begin(), codes.end());
    int source = -1;
    for (size_t i = 0; i < in.size() && source < 0; ++i) {
      bool all = true;
      for (int code : codes) {
        bool found = false;
        for (const auto &l : in[i]) found |= l.code() == code;
        all &= found;
      }
      if (all) source = (int)i;
    }
    if (source < 0)
      ++rep.tailNotDerived;
    else
      rep.acs.insert({source, codes});

    walk(n.hi.target, childBack(back, n.hi.map));
    walk(n.lo.target, childBack(back, n.lo.map));
  };
  walk(m.root().target, rootBack(m));
  return rep;
}

AlignedSplits detectSplits(const Msrt &m) {
  AlignedSplits out;
  const auto &steps = m.steps();
  for (const auto &s : steps) out.nSplits += s.nSplits.size();
  for (size_t i = 1; i < steps.size(); ++i) {
    std::map<int, int> inDegree;
    for (int id : steps[i - 1].reachable)
      for (int ch : {m.node(id).hi.target, m.node(id).lo.target})
        if (!isLeaf(ch)) ++inDegree[ch];
    std::unordered_set<int> reach(steps[i].reachable.begin(), steps[i].reachable.end());
    for (auto [id, deg] : inDegree) {
      if (deg < 2) continue;
      std::set<int> variants;
      for (auto [from, to] : steps[i].rewrites)
        if (from == id) variants.insert(to);
      if (reach.count(id)) variants.insert(id);
      if (variants.size() < 2) continue;
      ++out.cnSplits;
      const auto &n = m.node(id);
      if (n.set.rank() >= 3 || n.size() > 1) ++out.bigSpCount;
    }
  }
  out.bigSpCount += out.nSplits;
  return out;
}

double nodeBound(size_t mm) {
  double r = double(rcc(3));
  double m = double(mm);
  return 3.0 + 3.0 * r * r * m * m * m * m + r * m * m * m;
}

} // namespace patres
