#pragma once

#include "patres/aligned.hpp"
#include "patres/cnf.hpp"
#include "patres/resolution.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace patres {

// DIMACS CNF: "p cnf <vars> <clauses>", clauses of signed ints ended by 0,
// "c" comment lines. Variable v becomes index v-1; indices are not compacted.
// Header count mismatches are reported through `warnings` and are not fatal.
ClauseSet parseDimacs(std::string_view text, std::vector<std::string> *warnings = nullptr);
std::string toDimacs(const ClauseSet &s, const std::vector<std::string> &comments = {});

// Graphviz output. Solid edges take the positive branch, dashed edges the
// negative one; TRUE and FALSE are double-bordered boxes.
std::string emitDot(const Srt &srt);
std::string emitDot(const Fbdd &d);
std::string emitDot(const Msrt &m);

constexpr int kRunRecordSchema = 1;

struct RunRecord {
  std::string instance;
  std::string command = "build";
  std::string engine;
  size_t clauses = 0;   // M
  size_t variables = 0; // N
  std::string verdict;  // SAT, UNSAT or empty when not solved
  size_t uniqueNodes = 0;
  std::vector<size_t> perStep;
  size_t nSplits = 0;
  size_t cnSplits = 0;
  size_t bigSp = 0;
  int craIterations = 0; // most cra rounds spent by a single renaming
  double ms = 0.0;
};

// instance,M,N,engine,uniqueNodes,bigSp,craIters,verdict,ms
std::string csvHeader();
std::string toCsv(const RunRecord &r);
std::string toJson(const RunRecord &r, int indent = -1);

RunRecord recordOf(const Srt &srt, std::string instance);
RunRecord recordOf(const Msrt &m, std::string instance, std::string engine);

// Least-squares slope of log(y) against log(x).
double logLogSlope(const std::vector<double> &x, const std::vector<double> &y);

struct BenchResult {
  std::vector<RunRecord> rows; // verdict "capped" when the node budget ran out
  double slope = 0.0;          // fitted on the uncapped rows
  size_t fitted = 0;
};

// fgpra+ on the prefixes s[0..m) for m = from..to.
BenchResult prefixBench(const ClauseSet &s, int from, int to, const AlignedOptions &opt,
                        const std::string &instance);

// Measured values next to the reference ones. `pass` is false for a
// deviation; nothing here is meant to gate the build.
struct Claim {
  std::string id;
  std::string statement;
  std::string expected;
  std::string measured;
  bool pass = false;
};

struct LedgerOptions {
  size_t benchNodeBudget = 250000; // 0 runs every prefix to completion
  int randomInstances = 40;
  std::uint64_t seed = 7;
};

std::vector<Claim> claimLedger(const LedgerOptions &opt = {});

// Error object printed by the command line tool: {"error": code, "message": text}.
std::string errorJson(const std::string &code, const std::string &message);

} // namespace patres
