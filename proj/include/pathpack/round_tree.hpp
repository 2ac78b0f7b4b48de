#pragma once

// Round-UFP on trees: partition requests into few capacity-feasible classes.
//
// Requests route along the unique tree path between their endpoints. The
// pipeline mirrors the path solvers: demands above a quarter of their
// bottleneck are rounded through a unit-demand instance, the rest go through
// a bounded pool keyed by per-side critical edges, and the two colorings are
// concatenated on disjoint color ranges. All factors are relative to the
// congestion bound r = max_e ceil(load_e / c_e), which lower-bounds any
// feasible coloring.

#include <vector>

#include "pathpack/model.hpp"

namespace pathpack {

// Bottom-up processing schedule plus per-side critical edges.
//
// order lists request indices by decreasing LCA depth (ties by LCA vertex id,
// then by request index). For each request, the s-side critical edge is the
// first minimum-class edge on the walk from the LCA down to s (analogously
// for t); a side that has no edges gets -1.
struct LcaOrder {
  std::vector<long> order;
  std::vector<long> lca;
  std::vector<long> s_critical;
  std::vector<long> t_critical;
};

LcaOrder lca_order(const TreeUfpInstance& inst);

// Unit demands, integer capacities. Greedy first-fit over a pool of at most
// 4r classes in bottom-up LCA order; on a stall the exact solver finishes the
// job within the same budget. Throws invalid_argument on non-unit input,
// runtime_error if the exact fallback runs out of budget, logic_error if the
// 4r bound itself fails.
Coloring color_unit_tree(const TreeUfpInstance& inst);

// All demands large (d > b/4), no-bottleneck assumption required. Rounds
// demands up to the global minimum capacity, capacities down to multiples of
// it, scales to a unit instance and defers to color_unit_tree. At most 32r
// classes.
Coloring color_large_tree(const TreeUfpInstance& inst);

// All demands small (d <= b/4), no-bottleneck assumption required. Maintains
// at most 16r classes; a request joins the first class whose both critical
// edges are loaded to at most 1/16 of capacity. At most 16r classes.
Coloring color_small_tree(const TreeUfpInstance& inst);

// Full pipeline: split at d > b/4, color each side, concatenate on disjoint
// color ranges (large classes first). At most 64 times the optimal number of
// classes.
Coloring round_ufp_tree(const TreeUfpInstance& inst);

}  // namespace pathpack
