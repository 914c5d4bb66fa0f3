#include "patres/renaming.hpp"

#include <algorithm>

namespace patres {

namespace {

std::vector<int> occurrenceCounts(const ClauseSet &s) {
  std::vector<int> count(s.maxVar() + 1, 0);
  for (const auto &c : s)
    for (const auto &l : c) ++count[l.var];
  return count;
}

Clause rpcOrdered(const Clause &c, const std::vector<int> &count) {
  Clause out = c;
  std::stable_sort(out.begin(), out.end(), [&](const Literal &a, const Literal &b) {
    if (count[a.var] != count[b.var]) return count[a.var] > count[b.var];
    return a.var < b.var;
  });
  return out;
}

} // namespace

ConnectionMatrix ConnectionMatrix::renamed() const {
  ConnectionMatrix out = *this;
  for (size_t i = 0; i < out.rowVars.size(); ++i) out.rowVars[i] = (int)i;
  return out;
}

std::string ConnectionMatrix::toString() const {
  std::string out;
  for (size_t r = 0; r < rowVars.size(); ++r) {
    out += std::to_string(rowVars[r]);
    for (bool b : presence[r]) out += b ? " 1" : " 0";
    out += '\n';
  }
  return out;
}

Clause rpcOrder(const Clause &c, const ClauseSet &s) {
  return rpcOrdered(c, occurrenceCounts(s));
}

CraResult cra(const ClauseSet &s) {
  auto count = occurrenceCounts(s);
  CraResult res;
  std::vector<int> row(count.size(), -1);
  for (const auto &c : s)
    for (const auto &l : rpcOrdered(c, count)) {
      if (row[l.var] >= 0) continue;
      row[l.var] = (int)res.matrix.rowVars.size();
      res.matrix.rowVars.push_back(l.var);
    }

  res.matrix.presence.assign(res.matrix.rowVars.size(), std::vector<bool>(s.size(), false));
  for (size_t j = 0; j < s.size(); ++j)
    for (const auto &l : s[j]) res.matrix.presence[row[l.var]][j] = true;

  for (size_t v = 0; v < row.size(); ++v)
    if (row[v] >= 0) res.mapping.set((int)v, row[v]);
  res.stable = res.mapping.isIdentity();
  res.set = applyMapping(s, res.mapping);
  return res;
}

CraPlusResult craPlus(const ClauseSet &s, int cap) {
  if (cap <= 0) cap = std::max<int>(4, 4 * (int)s.size());
  CraPlusResult res;
  auto vars = litSet(s);
  res.composed = Mapping::identity(std::vector<int>(vars.begin(), vars.end()));
  ClauseSet current = s;
  for (;;) {
    if (res.iterations >= cap) {
      std::vector<std::string> trace;
      for (const auto &r : res.rounds) trace.push_back(toString(r));
      throw IterationCapError("renaming did not stabilise within " + std::to_string(cap) +
                                  " rounds for " + toString(s),
                              std::move(trace));
    }
    ++res.iterations;
    CraResult step = cra(current);
    ClauseSet sorted = sortClauses(step.set);
    bool settled = step.stable && sorted == current;
    current = std::move(sorted);
    res.rounds.push_back(current);
    res.composed = res.composed.then(step.mapping);
    if (settled) break;
  }
  res.set = std::move(current);
  return res;
}

ClauseSet craForm(const ClauseSet &s) { return craPlus(s).set; }

} // namespace patres
