// Command line front end: solve, classify, rename, build, plane, bench, selftest.

#include "patres/aligned.hpp"
#include "patres/oracle.hpp"
#include "patres/renaming.hpp"
#include "patres/report.hpp"
#include "patres/resolution.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace patres;

namespace {

std::string slurp(const std::string &path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// DIMACS, or the brace notation "{0,-1}{2}" when the text starts with '{'.
ClauseSet loadInstance(const std::string &path) {
  std::string text = slurp(path);
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parseSet(text);
  std::vector<std::string> warnings;
  auto s = parseDimacs(text, &warnings);
  for (const auto &w : warnings) std::cerr << "warning: " << w << "\n";
  return s;
}

std::string instanceName(const std::string &path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

void writeTo(const std::string &path, const std::string &text, std::ostream &fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path);
  out << text;
}

std::string modelLine(const std::vector<bool> &model) {
  std::string out = "v";
  for (size_t v = 0; v < model.size(); ++v)
    out += " " + std::to_string(model[v] ? int(v) + 1 : -(int(v) + 1));
  return out + " 0";
}

int runSolve(const std::string &path, const std::string &engine) {
  auto s = loadInstance(path);
  Verdict v = engine == "oracle" ? bruteForceSat(s) : solve(s);
  if (v.sat) {
    std::vector<bool> model = *v.model;
    model.resize(std::max<size_t>(model.size(), s.maxVar() + 1), false);
    if (!evalSet(s, model)) throw Error(Errc::IncompleteAssignment, "model failed verification");
    std::cout << "s SATISFIABLE\n" << modelLine(model) << "\n";
  } else {
    std::cout << "s UNSATISFIABLE\n";
  }
  return 0;
}

int runRename(const std::string &path) {
  auto r = craPlus(loadInstance(path));
  std::cout << "set " << toString(r.set) << "\n"
            << "mapping " << toString(r.composed) << "\n"
            << "iterations " << r.iterations << "\n";
  return 0;
}

int runBuild(const std::string &path, const std::string &engine, const std::string &dotPath,
             const std::string &recordPath, bool fbdd) {
  auto s = loadInstance(path);
  auto t0 = std::chrono::steady_clock::now();
  std::string dot;
  RunRecord rec;
  if (engine == "gspra") {
    Srt srt = gspra(s);
    rec = recordOf(srt, instanceName(path));
    dot = fbdd ? emitDot(extractFbdd(srt)) : emitDot(srt);
  } else {
    Msrt m = engine == "gspra+" ? gspraPlus(s) : fgpraPlus(s);
    rec = recordOf(m, instanceName(path), engine);
    rec.verdict = findModel(m) ? "SAT" : "UNSAT";
    dot = fbdd ? emitDot(extractFbdd(m)) : emitDot(m);
  }
  rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  writeTo(dotPath, dot, std::cout);
  writeTo(recordPath, toJson(rec) + "\n", std::cerr);
  return 0;
}

int runPlane(int q, const std::string &to3sat) {
  auto s = blockingSetCnf(projectivePlane(q));
  std::vector<std::string> comments{"blocking-set CNF of the projective plane of order " +
                                    std::to_string(q)};
  if (!to3sat.empty()) {
    ThreeSatMode mode = to3sat == "chain"    ? ThreeSatMode::Chain
                        : to3sat == "pooled" ? ThreeSatMode::PooledPairing
                                             : ThreeSatMode::Pairing;
    s = toThreeSat(s, mode);
    comments.push_back("converted to 3-SAT (" + to3sat + ")");
  }
  std::cout << toDimacs(s, comments);
  return 0;
}

int runBench(int from, int to, size_t maxNodes) {
  AlignedOptions opt;
  opt.maxNodes = maxNodes;
  auto res = prefixBench(plane3Listing(), from, to, opt, "plane3-listing");
  std::cout << csvHeader() << "\n";
  for (const auto &r : res.rows) std::cout << toCsv(r) << "\n";
  std::cerr << "log-log slope " << res.slope << " over " << res.fitted << " prefixes\n";
  return 0;
}

int runSelftest(size_t budget) {
  LedgerOptions opt;
  opt.benchNodeBudget = budget;
  for (const auto &c : claimLedger(opt))
    std::cout << (c.pass ? "pass    " : "deviate ") << c.id << ": " << c.statement
              << " | expected " << c.expected << " | measured " << c.measured << "\n";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Clause-set resolution toolkit"};
  app.require_subcommand(1);

  std::string file, engine = "fgpra+", dotPath, recordPath, to3sat;
  bool fbdd = false;
  int q = 2, from = 4, to = 51;
  size_t maxNodes = 0, budget = 250000;
  bool planePrefix = false;

  auto *solveCmd = app.add_subcommand("solve", "decide satisfiability and print a model");
  solveCmd->add_option("file", file, "DIMACS file or '-'")->required();
  solveCmd->add_option("--engine", engine)->check(CLI::IsMember({"fgpra+", "oracle"}));

  auto *classifyCmd = app.add_subcommand("classify", "print the order class (l.o., l.o.u., a.a.)");
  classifyCmd->add_option("file", file)->required();

  auto *renameCmd = app.add_subcommand("rename", "run the renaming fixpoint");
  renameCmd->add_option("file", file)->required();

  auto *buildCmd = app.add_subcommand("build", "build a resolution DAG and emit DOT");
  buildCmd->add_option("file", file)->required();
  buildCmd->add_option("--engine", engine)->check(CLI::IsMember({"gspra", "gspra+", "fgpra+"}));
  buildCmd->add_option("--dot", dotPath, "DOT output file (default stdout)");
  buildCmd->add_option("--record", recordPath, "run record JSON file (default stderr)");
  buildCmd->add_flag("--fbdd", fbdd, "emit the variable-labelled diagram instead");

  auto *planeCmd = app.add_subcommand("plane", "emit a projective-plane blocking-set CNF");
  planeCmd->add_option("--q", q)->check(CLI::IsMember({2, 3}));
  planeCmd->add_option("--to3sat", to3sat)->check(CLI::IsMember({"pairing", "chain", "pooled"}));

  auto *benchCmd = app.add_subcommand("bench", "growth curve over clause prefixes");
  benchCmd->add_flag("--plane-prefix", planePrefix, "order-3 listing prefixes")->required();
  benchCmd->add_option("--from", from);
  benchCmd->add_option("--to", to);
  benchCmd->add_option("--max-nodes", maxNodes, "node budget per prefix, 0 for none");

  auto *selftestCmd = app.add_subcommand("selftest", "compare reference figures with measurements");
  selftestCmd->add_option("--budget", budget, "node budget for the plane run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cout << errorJson("UsageError", e.what()) << "\n";
    return 2;
  }

  try {
    if (*solveCmd) return runSolve(file, engine);
    if (*classifyCmd) {
      std::cout << orderClassName(classify(loadInstance(file))) << "\n";
      return 0;
    }
    if (*renameCmd) return runRename(file);
    if (*buildCmd) return runBuild(file, engine, dotPath, recordPath, fbdd);
    if (*planeCmd) return runPlane(q, to3sat);
    if (*benchCmd) return runBench(from, to, maxNodes);
    if (*selftestCmd) return runSelftest(budget);
  } catch (const Error &e) {
    std::cout << errorJson(errcName(e.code()), e.what()) << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cout << errorJson("InternalError", e.what()) << "\n";
    return 1;
  }
  return 1;
}
