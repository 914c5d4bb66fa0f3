#pragma once

#include "patres/cnf.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace patres {

// Row r holds the value of the assignment spelled by the binary digits of r,
// variable 0 being the most significant digit.
struct TruthTable {
  int numVars = 0;
  std::vector<bool> values;
  std::uint64_t countTrue() const;
  std::vector<bool> assignment(std::uint64_t row) const;
};

constexpr int kMaxOracleVars = 24;

TruthTable truthTable(const ClauseSet &s);
// Exhaustive check; the model is the satisfying row with the least index.
Verdict bruteForceSat(const ClauseSet &s);

// Pigeons i into holes j; variable i*holes + j.
ClauseSet pigeonhole(int pigeons, int holes);

struct PlaneInstance {
  int order = 0;
  int points = 0;
  std::vector<std::vector<int>> lines;
};

// Tabulated planes for q = 2 and q = 3.
PlaneInstance projectivePlane(int q);
// Coordinates over GF(q) for prime q.
PlaneInstance algebraicPlane(int q);
// Empty string when both incidence axioms hold, otherwise the first failure.
std::string planeAxiomViolation(const PlaneInstance &p);

ClauseSet blockingSetCnf(const PlaneInstance &p);

enum class ThreeSatMode {
  Pairing, // (a | b | ~X) per literal pair, then recurse on the X clause
  Chain,   // {x1,x2,z1}{~z1,x3,z2}...
  // All lines' pair variables share one recursion clause. Reproduces the
  // size of the tabulated order-3 listing but is not equisatisfiable.
  PooledPairing,
};

ClauseSet toThreeSat(const ClauseSet &s, ThreeSatMode mode = ThreeSatMode::Pairing);

// m distinct clauses of k distinct variables out of n, signs uniform.
ClauseSet randomInstance(std::uint64_t seed, int n, int m, int k);

// Listing syntax with a trailing '!' for negation: "{0,1,2!}{59,62}".
ClauseSet parseBangListing(std::string_view text);

// Stored order-3 conversion listing, verbatim.
extern const char *const kPlane3ListingText;
// The same listing with literals sorted inside each clause.
ClauseSet plane3Listing();

} // namespace patres
