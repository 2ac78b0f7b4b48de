#pragma once

// Exact rational linear programming for the packing relaxations behind the
// profit solvers, plus the convex-decomposition engine that rounds a
// fractional solution into color-indexed integral subsets.
//
// Everything here is computed in exact rationals: solutions are feasible by
// construction and optimality is certified (dual feasibility plus strong
// duality) before a result is returned.

#include <vector>

#include "pathpack/model.hpp"

namespace pathpack {

// A certified optimum of one of the relaxations. x is per-request. For bag
// instances y is per-bag and equals the sum of the bag's x entries. After
// quantization every x entry equals alpha[i] / K (and y entries bag_alpha / K).
struct FractionalSolution {
  std::vector<Rat> x;
  std::vector<Rat> y;
  Rat objective = Rat(0);
  long K = 0;                   // 0 until quantized
  std::vector<long> alpha;      // K * x_i, filled by quantization
  std::vector<long> bag_alpha;  // K * y_j, bag instances only
};

// maximize sum w_i x_i subject to sum_{i: e in span_i} d_i x_i <= c_e per
// edge and 0 <= x_i <= 1. Always feasible (x = 0).
FractionalSolution solve_ufp_lp(const UfpInstance& inst);
FractionalSolution solve_ufp_lp(const TreeUfpInstance& inst);

// maximize sum_j p_j y_j where y_j = sum of x over bag j, subject to the edge
// constraints and y_j <= 1 per bag.
FractionalSolution solve_bag_lp(const BagInstance& inst);

// Entries below 1/k drop to 0; the rest round down to a multiple of 1/k.
// Sets K = k and fills the multiplicities. Rounding down keeps every
// constraint satisfied; the value of the snapped x loses at most
// (2/k) * sum of profits against the optimum. The objective field keeps
// the certified optimum of the solve step throughout.
// Throws invalid_argument when k < 1.
FractionalSolution snap_to_grid(const FractionalSolution& sol, long k);

// Lossless quantization: K = lcm of the denominators in x and y, when that
// lcm stays within kDenominatorGuard; otherwise snap_to_grid(sol, fallback_k).
FractionalSolution quantize(const FractionalSolution& sol, long fallback_k);

inline constexpr long kDenominatorGuard = 20000;

// Integral subsets obtained by coloring the multiplicity-expanded instance.
// Each class lists distinct original request ids and is capacity-feasible on
// its own.
struct Decomposition {
  std::vector<std::vector<long>> classes;
  std::vector<Rat> class_profit;
  long best = -1;  // most profitable class; -1 when there are none
  long K = 0;
};

// Path rounding: alpha_i copies of each request are colored by the grouped
// small-demand pool (copies of one request never share a class), so request i
// appears in exactly alpha_i distinct classes and the best class has profit
// at least objective/16 with the observed class counts. Requires a quantized
// solution, small demands only, and the no-bottleneck property.
Decomposition convex_decompose(const UfpInstance& inst, const FractionalSolution& sol);

// Tree rounding: copies are colored by the full tree pipeline (at most 64K
// classes). Copies of one request that land together are first moved apart
// where capacity allows, then collapsed to a single occurrence.
Decomposition convex_decompose(const TreeUfpInstance& inst, const FractionalSolution& sol);

}  // namespace pathpack
