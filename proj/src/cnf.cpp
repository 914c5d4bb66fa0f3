#include "patres/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_set>

namespace patres {

const char *errcName(Errc c) {
  switch (c) {
  case Errc::EmptyClauseInput: return "EmptyClauseInput";
  case Errc::InvalidLiteral: return "InvalidLiteral";
  case Errc::UnmappedVariable: return "UnmappedVariable";
  case Errc::IterationCapExceeded: return "IterationCapExceeded";
  case Errc::LengthMismatch: return "LengthMismatch";
  case Errc::IndexOutOfRange: return "IndexOutOfRange";
  case Errc::TooLarge: return "TooLarge";
  case Errc::VariableAbsent: return "VariableAbsent";
  case Errc::EmptySet: return "EmptySet";
  case Errc::IncompleteAssignment: return "IncompleteAssignment";
  case Errc::TooManyVariables: return "TooManyVariables";
  case Errc::UnsupportedOrder: return "UnsupportedOrder";
  case Errc::InfeasibleParameters: return "InfeasibleParameters";
  case Errc::ParseError: return "ParseError";
  case Errc::RecursionCapExceeded: return "RecursionCapExceeded";
  }
  return "Unknown";
}

const char *orderClassName(OrderClass c) {
  switch (c) {
  case OrderClass::LinearlyOrdered: return "l.o.";
  case OrderClass::LinearlyOrderedUnsorted: return "l.o.u.";
  case OrderClass::AlmostArbitrary: return "a.a.";
  }
  return "?";
}

bool ClauseSet::hasEmptyClause() const {
  return std::any_of(clauses.begin(), clauses.end(),
                     [](const Clause &c) { return c.empty(); });
}

int ClauseSet::maxVar() const {
  int m = -1;
  for (const auto &c : clauses)
    for (const auto &l : c) m = std::max(m, l.var);
  return m;
}

size_t ClauseSet::numVars() const { return litSet(*this).size(); }

size_t ClauseSet::rank() const {
  size_t r = 0;
  for (const auto &c : clauses) r = std::max(r, c.size());
  return r;
}

// ---------------------------------------------------------------- Mapping

Mapping Mapping::identity(const std::vector<int> &domain) {
  Mapping m;
  for (int v : domain) m.set(v, v);
  return m;
}

Mapping Mapping::fromPairs(const std::vector<std::pair<int, int>> &pairs) {
  Mapping m;
  for (auto [a, b] : pairs) m.set(a, b);
  return m;
}

int Mapping::operator()(int v) const {
  if (!contains(v))
    throw Error(Errc::UnmappedVariable, "variable " + std::to_string(v) + " has no image");
  return to_[v];
}

void Mapping::set(int from, int to) {
  if (from < 0 || to < 0)
    throw Error(Errc::InvalidLiteral, "negative index in mapping");
  if (from >= (int)to_.size()) to_.resize(from + 1, -1);
  to_[from] = to;
}

std::vector<std::pair<int, int>> Mapping::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < (int)to_.size(); ++i)
    if (to_[i] >= 0) out.emplace_back(i, to_[i]);
  return out;
}

std::vector<int> Mapping::domain() const {
  std::vector<int> out;
  for (int i = 0; i < (int)to_.size(); ++i)
    if (to_[i] >= 0) out.push_back(i);
  return out;
}

std::vector<int> Mapping::stableSet() const {
  std::vector<int> out;
  for (int i = 0; i < (int)to_.size(); ++i)
    if (to_[i] == i) out.push_back(i);
  return out;
}

bool Mapping::isIdentity() const {
  for (int i = 0; i < (int)to_.size(); ++i)
    if (to_[i] >= 0 && to_[i] != i) return false;
  return true;
}

bool Mapping::isBijective() const {
  std::unordered_set<int> seen;
  for (int v : to_)
    if (v >= 0 && !seen.insert(v).second) return false;
  return true;
}

Mapping Mapping::inverse() const {
  Mapping inv;
  for (int i = 0; i < (int)to_.size(); ++i)
    if (to_[i] >= 0) inv.set(to_[i], i);
  return inv;
}

Mapping Mapping::then(const Mapping &b) const {
  Mapping out;
  for (int i = 0; i < (int)to_.size(); ++i)
    if (to_[i] >= 0 && b.contains(to_[i])) out.set(i, b.to_[to_[i]]);
  return out;
}

// ---------------------------------------------------------- normalization

static bool litLess(const Literal &a, const Literal &b) {
  if (a.var != b.var) return a.var < b.var;
  return a.neg && !b.neg;
}

Normalized normalize(const std::vector<std::vector<Literal>> &raw,
                     const NormalizeOptions &opt) {
  std::vector<Clause> kept;
  std::set<std::vector<int>> seenClauses;
  for (const auto &rc : raw) {
    if (rc.empty() && opt.rejectEmptyClause)
      throw Error(Errc::EmptyClauseInput, "empty clause in input");
    Clause c(rc.begin(), rc.end());
    for (const auto &l : c)
      if (l.var < 0) throw Error(Errc::InvalidLiteral, "negative variable index");
    std::sort(c.begin(), c.end(), litLess);
    c.erase(std::unique(c.begin(), c.end()), c.end());
    bool tautology = false;
    for (size_t i = 1; i < c.size(); ++i)
      if (c[i].var == c[i - 1].var) tautology = true;
    if (tautology) continue;
    std::vector<int> key;
    for (const auto &l : c) key.push_back(l.code());
    if (!seenClauses.insert(key).second) continue;
    kept.push_back(std::move(c));
  }

  Normalized out;
  if (!opt.compact) {
    out.set = ClauseSet(std::move(kept));
    int mv = out.set.maxVar();
    for (int v = 0; v <= mv; ++v) out.labels.push_back(v);
    return out;
  }
  std::set<int> vars;
  for (const auto &c : kept)
    for (const auto &l : c) vars.insert(l.var);
  std::map<int, int> dense;
  for (int v : vars) {
    dense[v] = (int)out.labels.size();
    out.labels.push_back(v);
  }
  for (auto &c : kept)
    for (auto &l : c) l.var = dense[l.var];
  out.set = ClauseSet(std::move(kept));
  return out;
}

Normalized normalizeSigned(const std::vector<std::vector<int>> &raw,
                           const NormalizeOptions &opt) {
  std::vector<std::vector<Literal>> lits;
  lits.reserve(raw.size());
  for (const auto &rc : raw) {
    std::vector<Literal> c;
    for (int v : rc) {
      if (v == 0) throw Error(Errc::InvalidLiteral, "literal 0 is not a variable");
      c.push_back({std::abs(v) - 1, v < 0});
    }
    lits.push_back(std::move(c));
  }
  return normalize(lits, opt);
}

// ----------------------------------------------------------- order classes

bool literalsSorted(const ClauseSet &s) {
  for (const auto &c : s)
    for (size_t i = 1; i < c.size(); ++i)
      if (c[i - 1].var >= c[i].var) return false;
  return true;
}

bool clauseLess(const Clause &a, const Clause &b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i].var != b[i].var) return a[i].var < b[i].var;
    if (a[i].neg != b[i].neg) return a[i].neg;
  }
  return a.size() < b.size();
}

bool clausesSorted(const ClauseSet &s) {
  for (size_t i = 1; i < s.size(); ++i)
    if (clauseLess(s[i], s[i - 1])) return false;
  return true;
}

bool newVarsIncreasing(const ClauseSet &s) {
  std::unordered_set<int> seen;
  int maxSeen = -1;
  for (const auto &c : s)
    for (const auto &l : c) {
      if (seen.count(l.var)) continue;
      if (l.var < maxSeen) return false;
      seen.insert(l.var);
      maxSeen = l.var;
    }
  return true;
}

bool clausesUnique(const ClauseSet &s) {
  std::set<std::vector<int>> seen;
  for (const auto &c : s) {
    std::vector<int> key;
    for (const auto &l : c) key.push_back(l.code());
    if (!seen.insert(key).second) return false;
  }
  return true;
}

OrderClass classify(const ClauseSet &s) {
  if (!literalsSorted(s) || !clausesUnique(s) || !newVarsIncreasing(s))
    return OrderClass::AlmostArbitrary;
  return clausesSorted(s) ? OrderClass::LinearlyOrdered
                          : OrderClass::LinearlyOrderedUnsorted;
}

ClauseSet sortClauses(const ClauseSet &s) {
  ClauseSet out = s;
  std::stable_sort(out.clauses.begin(), out.clauses.end(), clauseLess);
  return out;
}

std::set<int> litSet(const ClauseSet &s) {
  std::set<int> out;
  for (const auto &c : s)
    for (const auto &l : c) out.insert(l.var);
  return out;
}

std::int64_t rcc(int k) {
  if (k < 1) throw Error(Errc::IndexOutOfRange, "rcc needs k >= 1");
  std::int64_t total = 0, perm = 1;
  for (int r = 1; r <= k; ++r) {
    perm *= (k - r + 1);
    total += perm;
  }
  return total;
}

std::vector<Block> blocksOf(const ClauseSet &s) {
  std::vector<Block> out;
  std::map<int, size_t> index;
  for (const auto &c : s) {
    if (c.empty()) continue;
    int h = c.front().var;
    auto it = index.find(h);
    if (it == index.end()) {
      index[h] = out.size();
      out.push_back({h, {c}});
    } else {
      out[it->second].clauses.push_back(c);
    }
  }
  return out;
}

bool compareClauses(const Clause &a, const Clause &b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

bool compareSets(const ClauseSet &a, const ClauseSet &b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!compareClauses(a[i], b[i])) return false;
  return true;
}

Clause applyMapping(const Clause &c, const Mapping &m) {
  Clause out;
  out.reserve(c.size());
  for (const auto &l : c) out.push_back({m(l.var), l.neg});
  std::sort(out.begin(), out.end(), litLess);
  return out;
}

ClauseSet applyMapping(const ClauseSet &s, const Mapping &m) {
  ClauseSet out;
  out.clauses.reserve(s.size());
  for (const auto &c : s) out.clauses.push_back(applyMapping(c, m));
  return out;
}

bool evalClause(const Clause &c, const std::vector<bool> &a) {
  for (const auto &l : c) {
    if (l.var >= (int)a.size())
      throw Error(Errc::IncompleteAssignment, "no value for variable " + std::to_string(l.var));
    if (a[l.var] != l.neg) return true;
  }
  return false;
}

bool evalSet(const ClauseSet &s, const std::vector<bool> &a) {
  for (const auto &c : s)
    if (!evalClause(c, a)) return false;
  return true;
}

// ------------------------------------------------------------------ text

std::string toString(const Literal &l) {
  return (l.neg ? "-" : "") + std::to_string(l.var);
}

std::string toString(const Clause &c) {
  std::string out = "{";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += toString(c[i]);
  }
  return out + "}";
}

std::string toString(const ClauseSet &s) {
  std::string out;
  for (const auto &c : s) out += toString(c);
  return out.empty() ? "{}" : out;
}

std::string toString(const Mapping &m) {
  std::string out = "{";
  for (auto [a, b] : m.pairs()) out += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  return out + "}";
}

static Clause parseClauseBody(std::string_view body) {
  Clause c;
  size_t i = 0;
  while (i < body.size()) {
    unsigned char ch = body[i];
    if (std::isspace(ch) || ch == ',') { ++i; continue; }
    bool negated = false;
    for (;;) {
      if (i < body.size() && (body[i] == '-' || body[i] == '~' || body[i] == '!')) {
        negated = !negated;
        ++i;
      } else if (body.substr(i, 2) == "\xC2\xAC") {
        negated = !negated;
        i += 2;
      } else {
        break;
      }
    }
    if (i >= body.size() || !std::isdigit((unsigned char)body[i]))
      throw Error(Errc::ParseError, "expected variable index in '" + std::string(body) + "'");
    int v = 0;
    while (i < body.size() && std::isdigit((unsigned char)body[i])) v = v * 10 + (body[i++] - '0');
    c.push_back({v, negated});
  }
  std::sort(c.begin(), c.end(), litLess);
  return c;
}

Clause parseClause(std::string_view text) {
  auto open = text.find('{');
  auto close = text.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    return parseClauseBody(text);
  return parseClauseBody(text.substr(open + 1, close - open - 1));
}

ClauseSet parseSet(std::string_view text) {
  ClauseSet out;
  size_t lastOpen = std::string_view::npos;
  int depth = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '{') {
      ++depth;
      lastOpen = i;
    } else if (text[i] == '}') {
      if (depth == 0) throw Error(Errc::ParseError, "unbalanced '}'");
      --depth;
      if (lastOpen != std::string_view::npos) {
        auto body = text.substr(lastOpen + 1, i - lastOpen - 1);
        // "{}" on its own denotes the empty set, not an empty clause
        bool emptyWhole = body.find_first_not_of(" \t") == std::string_view::npos &&
                          text.find_first_not_of(" \t\n{}") == std::string_view::npos;
        if (!emptyWhole) out.clauses.push_back(parseClauseBody(body));
        lastOpen = std::string_view::npos;
      }
    }
  }
  if (depth != 0) throw Error(Errc::ParseError, "unbalanced '{'");
  return out;
}

std::vector<std::int32_t> serialize(const ClauseSet &s) {
  std::vector<std::int32_t> out;
  for (const auto &c : s) {
    for (const auto &l : c) out.push_back(l.code());
    out.push_back(-1);
  }
  return out;
}

size_t KeyHash::operator()(const std::vector<std::int32_t> &k) const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto v : k) {
    h ^= static_cast<std::uint32_t>(v);
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h ^ (h >> 29));
}

} // namespace patres
