#include "patres/report.hpp"

#include "patres/oracle.hpp"
#include "patres/pattern.hpp"
#include "patres/renaming.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace patres {

// ------------------------------------------------------------------ DIMACS

ClauseSet parseDimacs(std::string_view text, std::vector<std::string> *warnings) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  bool header = false;
  long declaredVars = 0, declaredClauses = 0;
  std::vector<std::vector<int>> raw;
  std::vector<int> current;
  int maxVar = 0;
  auto fail = [&](const std::string &what) {
    throw Error(Errc::ParseError, "line " + std::to_string(lineNo) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++lineNo;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') continue;
    if (line[first] == '%') break; // end marker used by some benchmark files
    if (line[first] == 'p') {
      if (header) fail("second header");
      std::istringstream h(line.substr(first));
      std::string p, fmt;
      if (!(h >> p >> fmt >> declaredVars >> declaredClauses) || fmt != "cnf" ||
          declaredVars < 0 || declaredClauses < 0)
        fail("malformed header '" + line + "'");
      header = true;
      continue;
    }
    if (!header) fail("clause before 'p cnf' header");
    std::istringstream body(line);
    std::string tok;
    while (body >> tok) {
      char *end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0') fail("bad literal '" + tok + "'");
      if (v == 0) {
        raw.push_back(std::move(current));
        current.clear();
        continue;
      }
      maxVar = std::max<int>(maxVar, int(std::labs(v)));
      current.push_back(int(v));
    }
  }
  if (!header) throw Error(Errc::ParseError, "line " + std::to_string(lineNo) + ": no 'p cnf' header");
  if (!current.empty()) raw.push_back(std::move(current)); // last clause without 0
  if (warnings) {
    if ((long)raw.size() != declaredClauses)
      warnings->push_back("HeaderMismatch: header declares " + std::to_string(declaredClauses) +
                          " clauses, found " + std::to_string(raw.size()));
    if (maxVar > declaredVars)
      warnings->push_back("HeaderMismatch: header declares " + std::to_string(declaredVars) +
                          " variables, found index " + std::to_string(maxVar));
  }
  NormalizeOptions opt;
  opt.compact = false;
  return normalizeSigned(raw, opt).set;
}

std::string toDimacs(const ClauseSet &s, const std::vector<std::string> &comments) {
  std::string out;
  for (const auto &c : comments) out += "c " + c + "\n";
  out += "p cnf " + std::to_string(s.maxVar() + 1) + " " + std::to_string(s.size()) + "\n";
  for (const auto &c : s) {
    for (const auto &l : c) out += std::to_string(l.neg ? -(l.var + 1) : l.var + 1) + " ";
    out += "0\n";
  }
  return out;
}

// --------------------------------------------------------------------- DOT

namespace {

std::string dotEscape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string ref(int r) {
  if (r == kTrue) return "T";
  if (r == kFalse) return "F";
  return "n" + std::to_string(r);
}

void dotHeader(std::string &out, const char *name) {
  out += "digraph ";
  out += name;
  out += " {\n  node [shape=ellipse, fontname=\"Helvetica\"];\n";
  out += "  T [label=\"TRUE\", shape=box, peripheries=2];\n";
  out += "  F [label=\"FALSE\", shape=box, peripheries=2];\n";
}

void dotEdge(std::string &out, int from, int to, bool positive, const std::string &label = "") {
  out += "  " + ref(from) + " -> " + ref(to) + " [style=" + (positive ? "solid" : "dashed");
  if (!label.empty()) out += ", label=\"" + dotEscape(label) + "\"";
  out += "];\n";
}

} // namespace

std::string emitDot(const Srt &srt) {
  std::string out;
  dotHeader(out, "srt");
  if (!isLeaf(srt.root())) out += "  root [shape=point];\n  root -> " + ref(srt.root()) + ";\n";
  for (int id : srt.reachable()) {
    const auto &n = srt.node(id);
    out += "  " + ref(id) + " [label=\"" + dotEscape(toString(n.set)) + "\"];\n";
    dotEdge(out, id, n.hi, true);
    dotEdge(out, id, n.lo, false);
  }
  out += "}\n";
  return out;
}

std::string emitDot(const Fbdd &d) {
  std::string out;
  dotHeader(out, "fbdd");
  for (size_t id = 0; id < d.nodes.size(); ++id) {
    const auto &n = d.nodes[id];
    out += "  " + ref(int(id)) + " [label=\"x" + std::to_string(n.var) + "\"];\n";
    dotEdge(out, int(id), n.hi, true);
    dotEdge(out, int(id), n.lo, false);
  }
  out += "}\n";
  return out;
}

std::string emitDot(const Msrt &m) {
  std::string out;
  dotHeader(out, "msrt");
  if (!isLeaf(m.root().target))
    out += "  root [shape=point];\n  root -> " + ref(m.root().target) + " [label=\"" +
           dotEscape(toString(m.root().map)) + "\"];\n";
  for (int id : m.reachable()) {
    const auto &n = m.node(id);
    out += "  " + ref(id) + " [label=\"" + dotEscape(toString(n.set)) + "\"];\n";
    for (bool positive : {true, false}) {
      const auto &e = positive ? n.hi : n.lo;
      std::string label = isLeaf(e.target) || e.map.isIdentity() ? "" : toString(e.map);
      dotEdge(out, id, e.target, positive, label);
    }
  }
  out += "}\n";
  return out;
}

// ----------------------------------------------------------------- records

std::string csvHeader() { return "instance,M,N,engine,uniqueNodes,bigSp,craIters,verdict,ms"; }

std::string toCsv(const RunRecord &r) {
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", r.ms);
  return r.instance + "," + std::to_string(r.clauses) + "," + std::to_string(r.variables) + "," +
         r.engine + "," + std::to_string(r.uniqueNodes) + "," + std::to_string(r.bigSp) + "," +
         std::to_string(r.craIterations) + "," + r.verdict + "," + ms;
}

std::string toJson(const RunRecord &r, int indent) {
  nlohmann::ordered_json j;
  j["schema"] = kRunRecordSchema;
  j["instance"] = r.instance;
  j["command"] = r.command;
  j["engine"] = r.engine;
  j["M"] = r.clauses;
  j["N"] = r.variables;
  j["verdict"] = r.verdict;
  j["uniqueNodes"] = r.uniqueNodes;
  j["perStep"] = r.perStep;
  j["splits"] = {{"nSplits", r.nSplits}, {"cnSplits", r.cnSplits}, {"bigSp", r.bigSp}};
  j["craIterations"] = r.craIterations;
  j["ms"] = r.ms;
  return j.dump(indent);
}

RunRecord recordOf(const Srt &srt, std::string instance) {
  RunRecord r;
  r.instance = std::move(instance);
  r.engine = "gspra";
  r.clauses = srt.base().size();
  r.variables = srt.base().numVars();
  auto stats = nodeStats(srt);
  r.uniqueNodes = stats.uniqueNonLeaf;
  for (const auto &s : stats.perStep) r.perStep.push_back(s.uniqueCount);
  auto splits = detectSplits(srt);
  r.nSplits = splits.nSplits.size();
  r.cnSplits = splits.cnSplits.size();
  r.bigSp = splits.bigSpCount;
  return r;
}

RunRecord recordOf(const Msrt &m, std::string instance, std::string engine) {
  RunRecord r;
  r.instance = std::move(instance);
  r.engine = std::move(engine);
  r.clauses = m.input().size();
  r.variables = m.input().numVars();
  r.uniqueNodes = m.uniqueNodes();
  for (const auto &s : m.steps()) r.perStep.push_back(s.reachable.size());
  auto splits = detectSplits(m);
  r.nSplits = splits.nSplits;
  r.cnSplits = splits.cnSplits;
  r.bigSp = splits.bigSpCount;
  r.craIterations = m.maxCraRounds;
  return r;
}

double logLogSlope(const std::vector<double> &x, const std::vector<double> &y) {
  size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

BenchResult prefixBench(const ClauseSet &s, int from, int to, const AlignedOptions &opt,
                        const std::string &instance) {
  BenchResult res;
  std::vector<double> xs, ys;
  bool capped = false;
  for (int m = from; m <= to && m <= (int)s.size(); ++m) {
    ClauseSet prefix;
    prefix.clauses.assign(s.clauses.begin(), s.clauses.begin() + m);
    RunRecord r;
    r.instance = instance;
    r.command = "bench";
    r.engine = "fgpra+";
    r.clauses = prefix.size();
    r.variables = prefix.numVars();
    if (capped) {
      // prefixes only grow, so a budget hit stays a hit
      r.verdict = "capped";
      res.rows.push_back(r);
      continue;
    }
    auto t0 = std::chrono::steady_clock::now();
    try {
      Msrt built = fgpraPlus(prefix, opt);
      r = recordOf(built, instance, "fgpra+");
      r.command = "bench";
      r.verdict = findModel(built) ? "SAT" : "UNSAT";
      xs.push_back(m);
      ys.push_back(double(std::max<size_t>(r.uniqueNodes, 1)));
    } catch (const Error &e) {
      if (e.code() != Errc::TooLarge) throw;
      r.verdict = "capped";
      capped = true;
    }
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    res.rows.push_back(r);
  }
  res.slope = logLogSlope(xs, ys);
  res.fitted = xs.size();
  return res;
}

// ------------------------------------------------------------ claim ledger

namespace {

template <class T> std::string join(const std::vector<T> &v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::vector<size_t> stepCounts(const Srt &srt) {
  std::vector<size_t> out;
  for (const auto &s : nodeStats(srt).perStep) out.push_back(s.uniqueCount);
  return out;
}

std::string fmtDouble(double v, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

} // namespace

std::vector<Claim> claimLedger(const LedgerOptions &opt) {
  std::vector<Claim> out;
  auto add = [&](std::string id, std::string statement, std::string expected, std::string measured,
                 bool pass) {
    out.push_back({std::move(id), std::move(statement), std::move(expected), std::move(measured), pass});
  };

  {
    auto r = craPlus(parseSet("{0,5}{0,2}{1,3}{1,4}{2,3}"));
    std::string got = toString(r.set);
    add("cra-example", "connection-matrix renaming reaches a linearly ordered set",
        "{0,1}{0,2}{2,3}{3,4}{4,5}", got, got == "{0,1}{0,2}{2,3}{3,4}{4,5}");
  }
  {
    const char *want[] = {"32(0)32(1)",     "2(16(0)16(1))", "4(8(0)8(1))",
                          "8(4(0)4(1))",    "16(2(0)2(1))",  "32(1(0)1(1))"};
    std::string got;
    bool ok = true;
    for (int i = 0; i < 6; ++i) {
      std::string r = render(literalPattern(i, 6));
      ok &= r == want[i];
      got += (i ? " " : "") + r;
    }
    add("literal-patterns", "truth patterns of x0..x5",
        "32(0)32(1) 2(16(0)16(1)) 4(8(0)8(1)) 8(4(0)4(1)) 16(2(0)2(1)) 32(1(0)1(1))", got, ok);
  }
  {
    auto counts = stepCounts(gspra(parseSet("{0,3}{0,7}{1,2}{1,4}{5,6}{3,8}")));
    std::vector<size_t> tail;
    for (size_t i : {1, 2, 4, 5})
      if (i < counts.size()) tail.push_back(counts[i]);
    add("monotone-2sat-growth", "per-step non-leaf counts of the monotone 2-SAT example",
        "3,5,8,15", join(counts) + " (steps 2,3,5,6: " + join(tail) + ")",
        counts == std::vector<size_t>{3, 5, 8, 15});
  }
  {
    size_t a = gspra(parseSet("{0,1,2}{3,4,5}")).reachable().size();
    size_t b = gspra(sortClauses(parseSet("{0,1,2}{3,4,5}{0,2,3}"))).reachable().size();
    size_t c = gspra(parseSet("{0,1,2}{0,1,3}{3,4,5}")).reachable().size();
    add("abc-xyz", "{abc}{xyz} under canonical order", "6", std::to_string(a), a == 6);
    add("abc-xyz-acx", "adding {a,c,x} under canonical order", "8", std::to_string(b), b == 8);
    add("abc-abx-xyz", "renamed {abc}{abx}{xyz}", "7", std::to_string(c), c == 7);
  }
  {
    size_t n = gspra(parseSet("{0,1}{2,3}{4,5}")).reachable().size();
    add("pairs-renamed", "renamed {x0,x1}{x2,x3}{x4,x5}", "6", std::to_string(n), n == 6);
  }
  {
    AlignedOptions o;
    o.rootRule = FirstClauseRule::Shortest;
    auto m = gspraPlus(parseSet("{0,-1}{0,2,-3}{0,4,-5}{2,-6}{-3,4,5}{4,6,7}"), o);
    std::vector<size_t> counts;
    for (size_t i = 2; i < m.steps().size(); ++i) counts.push_back(m.steps()[i].reachable.size());
    add("aligned-trace", "aligned growth T1..T4 of the worked example", "6,9,17,24", join(counts),
        counts == std::vector<size_t>{6, 9, 17, 24});
  }
  {
    auto fano = blockingSetCnf(projectivePlane(2));
    add("fano-lo", "Fano blocking-set CNF is linearly ordered", "l.o.",
        orderClassName(classify(fano)), classify(fano) == OrderClass::LinearlyOrdered);
    auto pg3 = blockingSetCnf(projectivePlane(3));
    auto pairs = toThreeSat(pg3, ThreeSatMode::Pairing);
    auto pooled = toThreeSat(pg3, ThreeSatMode::PooledPairing);
    auto chained = toThreeSat(pg3, ThreeSatMode::Chain);
    auto fmt = [](const ClauseSet &s) {
      return std::to_string(s.maxVar() + 1) + "/" + std::to_string(s.size());
    };
    add("plane3-3sat", "order-3 plane after 3-SAT conversion (vars/clauses)", "63/51",
        "pairing " + fmt(pairs) + ", pooled " + fmt(pooled),
        pairs.maxVar() + 1 == 63 && pairs.size() == 51);
    add("plane3-chain", "chain conversion clause count", "26", std::to_string(chained.size()),
        chained.size() == 26);
    auto listing = parseBangListing(kPlane3ListingText);
    add("plane3-listing-lo", "stored order-3 listing is linearly ordered", "l.o.",
        orderClassName(classify(listing)), classify(listing) == OrderClass::LinearlyOrdered);
  }
  {
    // Random instances: split counts, renaming rounds and the node bound.
    size_t bigSp = 0, worstNodes = 0, overBound = 0;
    int worstRounds = 0;
    double worstRatio = 0.0;
    for (int i = 0; i < opt.randomInstances; ++i) {
      int n = 3 + i % 6, m = 2 + (i * 7) % 20;
      auto s = randomInstance(opt.seed + i, n, std::min(m, n * (n - 1) * (n - 2) / 6 * 8), std::min(3, n));
      auto msrt = gspraPlus(s);
      bigSp += detectSplits(msrt).bigSpCount;
      worstNodes = std::max(worstNodes, msrt.uniqueNodes());
      worstRounds = std::max(worstRounds, msrt.maxCraRounds);
      worstRatio = std::max(worstRatio, double(msrt.maxCraRounds) / double(s.size()));
      if (double(msrt.uniqueNodes()) > nodeBound(s.size())) ++overBound;
    }
    std::string runs = " over " + std::to_string(opt.randomInstances) + " random 3-SAT runs";
    add("aligned-bigsp", "aligned runs show no big splits", "0", std::to_string(bigSp) + runs,
        bigSp == 0);
    add("renaming-rounds", "renaming rounds stay linear in M", "<= M",
        "max " + std::to_string(worstRounds) + " (max rounds/M " + fmtDouble(worstRatio) + ")" + runs,
        worstRatio <= 1.0);
    add("node-bound", "unique nodes <= 3+3*15^2*M^4+15*M^3", "0 violations",
        std::to_string(overBound) + " violations, largest DAG " + std::to_string(worstNodes) + runs,
        overBound == 0);
  }
  {
    AlignedOptions o;
    o.maxNodes = opt.benchNodeBudget;
    auto bench = prefixBench(plane3Listing(), 4, 51, o, "plane3-listing");
    const auto &last = bench.rows.back();
    bool full = last.verdict != "capped";
    add("plane3-nodes", "fgpra+ nodes on the 51-clause order-3 listing", "176839",
        full ? std::to_string(last.uniqueNodes)
             : "budget of " + std::to_string(opt.benchNodeBudget) + " nodes exceeded",
        full && last.uniqueNodes == 176839);
    add("plane3-slope", "log-log growth slope over listing prefixes M=4..51", "<= 4",
        fmtDouble(bench.slope) + " fitted on " + std::to_string(bench.fitted) + " prefixes",
        bench.fitted >= 2 && bench.slope <= 4.0);
  }
  return out;
}

std::string errorJson(const std::string &code, const std::string &message) {
  nlohmann::ordered_json j;
  j["error"] = code;
  j["message"] = message;
  return j.dump();
}

} // namespace patres
