#pragma once

// Exact brute-force reference solvers ("oracles"). These are deliberately
// simple searches with sound pruning, used to pin expected values in tests and
// to cross-check every approximation algorithm at desk scale. Each oracle
// enforces an explicit budget (instance size, wall clock, search nodes) and
// reports "budget exceeded" rather than ever returning a wrong answer.

#include <cstdint>
#include <vector>

#include "pathpack/model.hpp"

namespace pathpack {
struct LspcInstance;
}

namespace pathpack::oracle {

struct OracleBudget {
  long max_requests = 12;
  long max_jobs = 8;
  long max_resources = 8;
  double max_seconds = 10.0;
  std::uint64_t max_nodes = 50000000;

  // Reads PATHPACK_ORACLE_BUDGET_SEC (seconds, decimal) when set.
  static OracleBudget from_env();
};

enum class OracleStatus { Ok, BudgetExceeded };

struct ColoringOracleResult {
  OracleStatus status = OracleStatus::Ok;
  long colors = 0;
  Coloring coloring;
  std::uint64_t nodes = 0;
};

struct SelectOracleResult {
  OracleStatus status = OracleStatus::Ok;
  Rat profit;
  std::vector<long> chosen;
  std::uint64_t nodes = 0;
};

struct CoverOracleResult {
  OracleStatus status = OracleStatus::Ok;
  bool feasible = false;
  Rat cost;
  MultisetSelection selection;
  std::vector<long> covered_jobs;
  std::uint64_t nodes = 0;
};

// Minimum number of capacity-feasible color classes. Canonical output: request
// 1 gets color 1 and new colors appear in increasing order. incumbent_colors,
// when >= 0, seeds the upper bound (pruning only; never changes the optimum).
ColoringOracleResult exact_round_ufp(const UfpInstance& inst, const OracleBudget& budget,
                                     long incumbent_colors = -1);
ColoringOracleResult exact_round_ufp(const TreeUfpInstance& inst, const OracleBudget& budget,
                                     long incumbent_colors = -1);

// Maximum-profit capacity-feasible subset (branch and bound over subsets with
// a per-edge fractional-knapsack upper bound).
SelectOracleResult exact_max_ufp(const UfpInstance& inst, const OracleBudget& budget);
SelectOracleResult exact_max_ufp(const TreeUfpInstance& inst, const OracleBudget& budget);

// Maximum-profit feasible selection of at most one request per bag.
SelectOracleResult exact_bag_ufp(const BagInstance& inst, const OracleBudget& budget);

// Same, but the routed requests must additionally be pairwise edge-disjoint.
SelectOracleResult exact_bag_disjoint(const BagInstance& inst, const OracleBudget& budget);

// Minimum-cost multiset of resources covering all jobs.
CoverOracleResult exact_full_cover(const std::vector<Job>& jobs, const std::vector<Resource>& res,
                                   long m, const OracleBudget& budget);

// Minimum-cost multiset covering at least k of the jobs (reports the best job
// subset in covered_jobs).
CoverOracleResult exact_presall(const std::vector<Job>& jobs, const std::vector<Resource>& res,
                                long m, long k, const OracleBudget& budget);

// Minimum of cover cost plus penalties of the uncovered jobs.
CoverOracleResult exact_pcresall(const std::vector<Job>& jobs, const std::vector<Resource>& res,
                                 long m, const OracleBudget& budget);

// Minimum-cost cover of an explicit per-edge demand profile; resources flagged
// in single_copy may be used at most once (the S/M shape).
CoverOracleResult exact_profile_cover(const Profile& demand, const std::vector<Resource>& res,
                                      const std::vector<char>& single_copy, long m,
                                      const OracleBudget& budget);

struct LspcOracleResult {
  OracleStatus status = OracleStatus::Ok;
  bool feasible = false;
  Rat cost;
  std::vector<long> short_count;  // in {0,1}, at most one per edge
  std::vector<long> long_count;
  Profile coverage;  // sums to exactly k when feasible
  std::uint64_t nodes = 0;
};

// Minimum-cost solution of the edge-demand partial cover by exhaustive search
// over long copy counts and per-edge short choices. With single_assignment the
// residual at every edge must fit within the copies of one long alone.
LspcOracleResult exact_lspc(const LspcInstance& inst, bool single_assignment,
                            const OracleBudget& budget);

}  // namespace pathpack::oracle
