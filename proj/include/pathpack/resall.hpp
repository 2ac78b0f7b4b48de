#pragma once

// Covering solvers on a path: full cover of unit jobs by priced multi-copy
// resources, partial cover of a mountain (jobs sharing one edge), partial
// cover of arbitrary job sets through a mountain decomposition, a penalty
// variant, and the small partial-cover problem (LSPC) the range solver
// reduces to. Costs are exact rationals; an absent std::optional is the
// explicit unreachable-cost marker.

#include <optional>
#include <string>
#include <vector>

#include "pathpack/model.hpp"

namespace pathpack {

// Jobs that all share one edge. The shared edge makes the joint profile
// unimodal over the span: it rises up to the peak and falls after it.
struct Mountain {
  std::vector<long> jobs;  // indices into the job list, ascending
  long peak = 0;           // an edge contained in every member job
  long lo = 0;             // first edge covered by any member
  long hi = 0;             // last edge covered by any member
};

// Mountains ordered left to right with pairwise disjoint edge spans.
struct MountainRange {
  std::vector<Mountain> mountains;
};

// Structural checkers; decomposition output and test fixtures go through
// them. A mountain needs distinct member indices that all cover the peak,
// span fields matching the members, and a profile that never rises again
// after falling.
bool is_mountain(const std::vector<Job>& jobs, const Mountain& mtn);
bool is_mountain_range(const std::vector<Job>& jobs, const MountainRange& range);

// Partitions the jobs into at most 4 * max(1, ceil(log2(lmax/lmin))) mountain
// ranges: jobs are bucketed by length into doubling categories, each category
// is sliced into mountains around the multiples of its base length (a job
// joins the lowest multiple its span contains), and the slices spread over
// four ranges by residue so spans in one range never touch. Every job must
// cover at least one edge and the job list must be nonempty.
std::vector<MountainRange> mountain_decompose(const std::vector<Job>& jobs, long m);

struct CoverSolution {
  MultisetSelection selection;
  Rat cost;
};

// Covers every job: a density-greedy multiset with a redundant-copy prune,
// replaced by the exact search result when the instance fits the oracle
// budget and the search finishes cheaper. Throws std::invalid_argument when
// some demanded edge has no spanning resource.
CoverSolution full_cover_resall(const std::vector<Job>& jobs, const std::vector<Resource>& res,
                                long m);

// A partial cover: the chosen resources cover every job listed in covered.
// cost is the op's objective (the selection alone for partial covers, the
// selection plus the penalties of the jobs left out for the penalty variant).
struct PartialCoverSolution {
  MultisetSelection selection;
  std::vector<long> covered;  // job indices, ascending
  Rat cost;
};

// Cheapest found cover of exactly k members of the mountain. The discarded
// jobs always form a prefix of the members ordered by leftmost start joined
// with a prefix ordered by rightmost end; every such candidate set is solved
// as a full cover and the best kept. Throws when k is out of range, the
// members do not form a mountain, or no candidate set is coverable.
PartialCoverSolution single_mountain_partial(const std::vector<Job>& jobs, const Mountain& mtn,
                                             const std::vector<Resource>& res, long m, long k);

// Partial cover over edge demands: demands sit on the edges of a small path,
// short resources hold one edge, long resources hold a contiguous run. A
// solution picks at most one short per edge, any number of copies of each
// long, and a coverage profile k_e <= d_e summing to at least k, with the
// selected capacity at every edge reaching k_e.
struct LspcInstance {
  std::vector<long> demand;      // 1-based, demand[0] unused
  std::vector<Resource> shorts;  // t == s + 1 each
  std::vector<Resource> longs;
  long k = 0;

  long edges() const { return static_cast<long>(demand.size()) - 1; }
  long height() const;        // max demand, 0 without edges
  long total_demand() const;
};

void validate_lspc(const LspcInstance& inst);

struct LspcSolution {
  bool feasible = false;         // false when the target is unreachable
  Rat cost;                      // meaningful when feasible
  MultisetSelection short_pick;  // counts in {0,1}, at most one per edge
  MultisetSelection long_pick;   // copies per long resource
  Profile coverage;              // k_e, sums to exactly k when feasible
};

struct LspcCheckResult {
  bool ok = true;
  std::string reason;  // empty when ok
};

// Feasibility of a solution against the instance. With single_assignment the
// residual at every edge (coverage minus its short) must additionally fit
// within the selected copies of one long resource alone.
LspcCheckResult check_lspc_solution(const LspcInstance& inst, const LspcSolution& sol,
                                    bool single_assignment);

// Cheapest way to close a coverage gap of q - h at edge e using the shorts
// that sit there. At most one short per edge may ever be selected, so the
// knapsack degenerates to the cheapest single short with capacity >= q - h.
// Returns 0 when q <= h and an empty optional when the gap is unattainable.
std::optional<Rat> knapsack_gamma(long e, long q, long h, const std::vector<Resource>& shorts);

// Tables of the range dynamic program, exposed for inspection. m_cost holds
// the cheapest single-assignment placement of measure q on edges a..b when
// residuals up to h are absorbed by an enclosing long resource; a_cost
// restricts to shorts only; gamma_cost is the per-edge closing cost. An
// absent optional is the unreachable cost.
struct DpTables {
  long m = 0;     // edges
  long qmax = 0;  // partiality target
  long hmax = 0;  // maximum demand

  std::vector<std::optional<Rat>> m_cost;      // [(a,b)][q][h], a <= b
  std::vector<std::optional<Rat>> a_cost;      // same layout
  std::vector<std::optional<Rat>> gamma_cost;  // [e][q][h]

  struct FillStep {
    long a = 0, b = 0, q = 0, h = 0;
  };
  std::vector<FillStep> fills;  // m_cost entries in computation order

  std::optional<Rat> m_entry(long a, long b, long q, long h) const;
  std::optional<Rat> a_entry(long a, long b, long q, long h) const;
  std::optional<Rat> gamma_entry(long e, long q, long h) const;

  // True when no entry is computed before one it may depend on: strict
  // subranges first, then larger measures, then smaller absorbed heights.
  bool fill_order_is_topological() const;

  long range_index(long a, long b) const;  // dense index over a <= b
  long cell_index(long a, long b, long q, long h) const;
};

// Optimal single-assignment solution via the range dynamic program. The
// returned coverage sums to exactly k. Throws when the instance is malformed
// or k exceeds the total demand; an unreachable target comes back with
// feasible == false. The second overload also hands out the filled tables.
LspcSolution lspc_solve(const LspcInstance& inst);
LspcSolution lspc_solve(const LspcInstance& inst, DpTables* tables);

// Product of reducing one mountain range to the small path whose edges are
// the mountains. Keeps everything needed to pull a solution of the reduced
// instance back to original resources and jobs without increasing cost. The
// reduced partiality target starts at the total demand; callers lower it.
struct RangeReduction {
  LspcInstance lspc;

  // Clipped copies of the original resources: each original meeting the
  // range splits into at most three pieces with its capacity and cost. A
  // piece is wide when it fully spans every mountain it meets and narrow
  // (contained in one mountain) otherwise.
  struct Piece {
    long origin = 0;    // index into the original resource list
    Resource clipped;   // span in original edge coordinates
    bool wide = false;
    long mlo = 0;       // first mountain position met (0-based)
    long mhi = 0;       // last mountain position met
  };
  std::vector<Piece> pieces;
  std::vector<long> long_piece;  // piece index behind each reduced long

  // The single-mountain solve that priced each reduced short.
  struct ShortPricing {
    long mountain = 0;              // position in the range (0-based)
    long kappa = 0;                 // jobs the short stands for
    std::vector<long> piece_count;  // narrow piece copies, indexed like pieces
    std::vector<long> covered;      // job indices those pieces cover
  };
  std::vector<ShortPricing> short_pricing;  // indexed like lspc.shorts

  std::vector<Mountain> mountains;  // the range, kept for rehydration
  long edges = 0;                   // original edge count
  long resources = 0;               // original resource count
};

RangeReduction reduce_range_to_lspc(const std::vector<Job>& jobs, const MountainRange& range,
                                    const std::vector<Resource>& res, long m);

// Pulls a reduced solution back to the original instance: every chosen long
// charges copies to the original behind its piece (an original pays the
// maximum over its pieces), every chosen short contributes its recorded
// narrow multiset and covered jobs, and coverage beyond those jobs is
// assigned to further mountain members under the wide copies. The result
// covers at least as many jobs as the reduced coverage and never costs more.
PartialCoverSolution rehydrate_range_solution(const std::vector<Job>& jobs,
                                              const std::vector<Resource>& res,
                                              const RangeReduction& red, const LspcSolution& sol);

// Partial cover of an arbitrary job set: jobs sharing a common edge are
// solved directly as one mountain; otherwise the set is decomposed into
// mountain ranges, each range is priced for every coverage target (single
// mountains directly, longer ranges through the reduction above), and the
// targets are assembled with a sequential table over the ranges. Covers at
// least k jobs. Throws when k is out of range or no assembly reaches k.
PartialCoverSolution presall_solve(const std::vector<Job>& jobs, const std::vector<Resource>& res,
                                   long m, long k);

// Full cover of an explicit demand profile where resources flagged in
// single_copy may be used at most once and the rest arbitrarily often.
// Greedy density cover with a redundant-copy prune, replaced by the exact
// search result when the instance fits the oracle budget and the search
// finishes cheaper. Throws when the demand is uncoverable.
CoverSolution smfc_solve(const Profile& demand, const std::vector<Resource>& res,
                         const std::vector<char>& single_copy, long m);

// Penalty cover: each job is either covered or pays its penalty. Jobs become
// single-use stand-in resources priced at their penalties next to the
// multi-use originals; the mixed cover picks a stand-in exactly when paying
// the penalty beats covering the job. cost is the selection plus the
// penalties of the jobs left uncovered.
PartialCoverSolution pcresall_solve(const std::vector<Job>& jobs,
                                    const std::vector<Resource>& res, long m);

}  // namespace pathpack
