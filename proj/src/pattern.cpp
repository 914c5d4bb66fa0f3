#include "patres/pattern.hpp"

#include <bit>
#include <cctype>
#include <functional>
#include <unordered_set>

namespace patres {

namespace {

constexpr int kMaxVars = 30;
constexpr int kMaxExpandLevel = 20;

std::uint64_t pairKey(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

void requireSameShape(const TruthPattern &a, const TruthPattern &b) {
  if (a.store() != b.store())
    throw Error(Errc::LengthMismatch, "patterns live in different stores");
  if (a.level() != b.level())
    throw Error(Errc::LengthMismatch, "pattern lengths " + std::to_string(a.totalLen()) +
                                          " and " + std::to_string(b.totalLen()));
}

} // namespace

int PatternStore::intern(const Node &n) {
  nodes_.push_back(n);
  return static_cast<int>(nodes_.size() - 1);
}

int PatternStore::constant(int level, bool bit) {
  auto key = pairKey(level, bit ? 1 : 0);
  if (auto it = constants_.find(key); it != constants_.end()) return it->second;
  int id = intern({level, -1, -1, bit});
  constants_[key] = id;
  return id;
}

int PatternStore::split(int left, int right) {
  const Node &l = nodes_[left];
  const Node &r = nodes_[right];
  if (l.level != r.level) throw Error(Errc::LengthMismatch, "halves of different length");
  if (l.left < 0 && r.left < 0 && l.bit == r.bit) return constant(l.level + 1, l.bit);
  auto key = pairKey(left, right);
  if (auto it = splits_.find(key); it != splits_.end()) return it->second;
  int id = intern({l.level + 1, left, right, false});
  splits_[key] = id;
  return id;
}

int PatternStore::apply(int a, int b, bool isAnd) {
  const Node &na = nodes_[a];
  const Node &nb = nodes_[b];
  if (a == b) return a;
  if (na.left < 0) {
    if (na.bit == isAnd) return b; // 1 AND x, 0 OR x
    return a;
  }
  if (nb.left < 0) {
    if (nb.bit == isAnd) return a;
    return b;
  }
  auto &memo = isAnd ? andMemo_ : orMemo_;
  auto key = a < b ? pairKey(a, b) : pairKey(b, a);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  int al = na.left, ar = na.right, bl = nb.left, br = nb.right;
  int l = apply(al, bl, isAnd);
  // repeated halves on both sides: the right half is the same sub-problem
  int r = (al == ar && bl == br) ? l : apply(ar, br, isAnd);
  int id = split(l, r);
  memo[key] = id;
  return id;
}

int PatternStore::conj(int a, int b) { return apply(a, b, true); }
int PatternStore::disj(int a, int b) { return apply(a, b, false); }

void PatternStore::clearMemo() {
  andMemo_.clear();
  orMemo_.clear();
}

std::shared_ptr<PatternStore> defaultPatternStore() {
  thread_local auto store = std::make_shared<PatternStore>();
  return store;
}

TruthPattern allZeros(int n) {
  auto st = defaultPatternStore();
  return {st, st->constant(n, false)};
}

TruthPattern allOnes(int n) {
  auto st = defaultPatternStore();
  return {st, st->constant(n, true)};
}

TruthPattern literalPattern(int varIndex, int n, bool negative) {
  if (n < 1 || n > kMaxVars || varIndex < 0 || varIndex >= n)
    throw Error(Errc::IndexOutOfRange, "literal " + std::to_string(varIndex) + " over " +
                                           std::to_string(n) + " variables");
  auto st = defaultPatternStore();
  int half = n - 1 - varIndex;
  int id = st->split(st->constant(half, negative), st->constant(half, !negative));
  for (int i = 0; i < varIndex; ++i) id = st->split(id, id);
  return {st, id};
}

TruthPattern clausePattern(const Clause &c, int n) {
  TruthPattern acc = allZeros(n);
  for (const auto &l : c) acc = patternOr(acc, literalPattern(l.var, n, l.neg));
  return acc;
}

TruthPattern setPattern(const ClauseSet &s, int n) {
  TruthPattern acc = allOnes(n);
  for (const auto &c : s) acc = patternAnd(acc, clausePattern(c, n));
  return acc;
}

TruthPattern patternOr(const TruthPattern &a, const TruthPattern &b) {
  requireSameShape(a, b);
  return {a.store(), a.store()->disj(a.id(), b.id())};
}

TruthPattern patternOr(const std::vector<TruthPattern> &ps) {
  if (ps.empty()) throw Error(Errc::EmptySet, "patternOr of nothing");
  TruthPattern acc = ps.front();
  for (size_t i = 1; i < ps.size(); ++i) acc = patternOr(acc, ps[i]);
  return acc;
}

TruthPattern patternAnd(const TruthPattern &a, const TruthPattern &b) {
  requireSameShape(a, b);
  return {a.store(), a.store()->conj(a.id(), b.id())};
}

std::uint64_t patternLength(const TruthPattern &p) {
  const auto &st = *p.store();
  int id = p.id();
  for (;;) {
    const auto &n = st.node(id);
    if (n.left < 0) return 1;
    if (n.left != n.right) return std::uint64_t{1} << n.level;
    id = n.left;
  }
}

std::vector<bool> expand(const TruthPattern &p) {
  if (p.level() > kMaxExpandLevel)
    throw Error(Errc::TooLarge, "expansion of " + std::to_string(p.totalLen()) + " bits");
  std::vector<bool> out;
  out.reserve(p.totalLen());
  const auto &st = *p.store();
  std::function<void(int)> walk = [&](int id) {
    const auto &n = st.node(id);
    if (n.left < 0) {
      out.insert(out.end(), std::size_t{1} << n.level, n.bit);
      return;
    }
    walk(n.left);
    walk(n.right);
  };
  walk(p.id());
  return out;
}

std::uint64_t countOnes(const TruthPattern &p) {
  const auto &st = *p.store();
  std::unordered_map<int, std::uint64_t> memo;
  std::function<std::uint64_t(int)> ones = [&](int id) -> std::uint64_t {
    const auto &n = st.node(id);
    if (n.left < 0) return n.bit ? (std::uint64_t{1} << n.level) : 0;
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    std::uint64_t v = ones(n.left) + ones(n.right);
    memo[id] = v;
    return v;
  };
  return ones(p.id());
}

size_t distinctBranchingSubpatterns(const TruthPattern &p) {
  const auto &st = *p.store();
  std::unordered_set<int> seen, counted;
  std::function<void(int)> walk = [&](int id) {
    if (!seen.insert(id).second) return;
    const auto &n = st.node(id);
    if (n.left < 0) return;
    if (n.left != n.right) counted.insert(id);
    walk(n.left);
    walk(n.right);
  };
  walk(p.id());
  return counted.size();
}

// ---------------------------------------------------------------- text

namespace {

void renderNode(const PatternStore &st, int id, std::string &out) {
  const auto &n = st.node(id);
  if (n.left < 0) {
    out += std::to_string(std::uint64_t{1} << n.level);
    out += n.bit ? "(1)" : "(0)";
    return;
  }
  if (n.left == n.right) {
    std::uint64_t reps = 1;
    int unit = id;
    while (st.node(unit).left >= 0 && st.node(unit).left == st.node(unit).right) {
      reps *= 2;
      unit = st.node(unit).left;
    }
    out += std::to_string(reps) + "(";
    const auto &u = st.node(unit);
    renderNode(st, u.left, out);
    renderNode(st, u.right, out);
    out += ")";
    return;
  }
  renderNode(st, n.left, out);
  renderNode(st, n.right, out);
}

struct Item {
  std::uint64_t count = 0;
  int bit = -1;             // constant item when >= 0
  std::vector<Item> body;   // repeated body otherwise
  std::uint64_t length() const {
    if (bit >= 0) return count;
    std::uint64_t len = 0;
    for (const auto &b : body) len += b.length();
    return count * len;
  }
};

class PatternParser {
public:
  explicit PatternParser(std::string_view t) : text_(t) {}

  std::vector<Item> sequence() {
    std::vector<Item> items;
    skip();
    while (pos_ < text_.size() && text_[pos_] != ')') {
      items.push_back(item());
      skip();
    }
    return items;
  }
  bool done() {
    skip();
    return pos_ == text_.size();
  }

private:
  void skip() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
  }
  Item item() {
    skip();
    if (pos_ >= text_.size() || !std::isdigit((unsigned char)text_[pos_]))
      throw Error(Errc::ParseError, "expected count at offset " + std::to_string(pos_));
    std::uint64_t count = 0;
    while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_]))
      count = count * 10 + (text_[pos_++] - '0');
    if (count == 0) throw Error(Errc::ParseError, "zero count");
    expect('(');
    skip();
    Item it;
    it.count = count;
    if ((text_[pos_] == '0' || text_[pos_] == '1') && pos_ + 1 < text_.size() &&
        text_[pos_ + 1] == ')') {
      it.bit = text_[pos_] - '0';
      pos_ += 2;
      return it;
    }
    it.body = sequence();
    expect(')');
    return it;
  }
  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw Error(Errc::ParseError, std::string("expected '") + c + "' at offset " +
                                        std::to_string(pos_));
    ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

int levelOf(std::uint64_t len) {
  if (len == 0 || !std::has_single_bit(len))
    throw Error(Errc::ParseError, "segment length " + std::to_string(len) + " is not a power of two");
  return std::countr_zero(len);
}

int buildSeq(PatternStore &st, const std::vector<Item> &items, size_t from, size_t to);

int buildItem(PatternStore &st, const Item &it) {
  if (it.bit >= 0) return st.constant(levelOf(it.count), it.bit == 1);
  int id = buildSeq(st, it.body, 0, it.body.size());
  levelOf(it.count);
  for (std::uint64_t r = it.count; r > 1; r /= 2) id = st.split(id, id);
  return id;
}

int buildSeq(PatternStore &st, const std::vector<Item> &items, size_t from, size_t to) {
  if (to - from == 1) return buildItem(st, items[from]);
  std::uint64_t total = 0;
  for (size_t i = from; i < to; ++i) total += items[i].length();
  levelOf(total);
  std::uint64_t acc = 0;
  for (size_t i = from; i < to; ++i) {
    acc += items[i].length();
    if (acc == total / 2)
      return st.split(buildSeq(st, items, from, i + 1), buildSeq(st, items, i + 1, to));
    if (acc > total / 2) break;
  }
  throw Error(Errc::ParseError, "segments do not align on a half boundary");
}

} // namespace

std::string render(const TruthPattern &p) {
  std::string out;
  renderNode(*p.store(), p.id(), out);
  return out;
}

TruthPattern parsePattern(std::string_view text) {
  PatternParser parser(text);
  auto items = parser.sequence();
  if (!parser.done() || items.empty()) throw Error(Errc::ParseError, "trailing input");
  auto st = defaultPatternStore();
  return {st, buildSeq(*st, items, 0, items.size())};
}

TruthPattern fromBits(const std::vector<bool> &bits) {
  levelOf(bits.size());
  auto st = defaultPatternStore();
  std::function<int(size_t, size_t)> build = [&](size_t a, size_t len) -> int {
    if (len == 1) return st->constant(0, bits[a]);
    return st->split(build(a, len / 2), build(a + len / 2, len / 2));
  };
  return {st, build(0, bits.size())};
}

} // namespace patres
