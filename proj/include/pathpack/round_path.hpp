// Coloring algorithms for routing requests on a path with the fewest
// capacity-feasible color classes. Uniform-capacity instances get a
// 3-approximation (optimal on large demands); arbitrary capacities get a
// 24-approximation under the no-bottleneck assumption. Every returned
// coloring is verified feasible before it leaves this module.
#pragma once

#include "pathpack/model.hpp"

namespace pathpack {

// Capacity class of an edge: the integer l with 2^l <= c_e < 2^{l+1}.
long edge_class(const Rat& cap);

// Per-request class data: the smallest edge class met along the span, and the
// leftmost edge of that class (the "critical" edge). The critical edge always
// has the same class as the bottleneck edge, though it may differ from it.
struct RequestClass {
  long cls = 0;
  long critical_edge = 0;
};
RequestClass request_class(const UfpInstance& inst, long i);

// Uniform capacities, every demand > c/2. First-fit sweep by left endpoint;
// the result is optimal (== exact solver) and uses at most 2r-1 colors.
Coloring color_large_uniform(const UfpInstance& inst);

// Uniform capacities, every demand <= c/2. Same sweep; at most 2r colors.
Coloring color_small_uniform(const UfpInstance& inst);

// Uniform capacities, mixed demands. Splits at c/2, colors the parts with
// disjoint color ranges (large first). At most 3*OPT and 4r-1 colors.
Coloring round_ufp_uniform(const UfpInstance& inst);

// Integer capacities, all demands exactly 1. Returns a coloring with exactly
// r = max_e ceil(load_e / c_e) colors. A least-loaded sweep handles almost
// every instance; if it stalls, a bounded exact search supplies the witness.
Coloring color_unit_path(const UfpInstance& inst);

// Arbitrary capacities, every demand large (d_i > b_i/4), NBA required.
// Scales so c_min = 1, floors capacities, lifts demands to 1 and defers to
// color_unit_path. At most 8r colors.
Coloring color_large_arbitrary(const UfpInstance& inst);

// Arbitrary capacities, every demand small (d_i <= b_i/4). Maintains a pool
// of at most 16r parallel solutions; each demand (left-endpoint order) joins
// a solution whose load across the demand's critical edge is at most
// c/16 of that edge. At most 16r colors.
Coloring color_small_arbitrary(const UfpInstance& inst);

// Grouped variant used by the rounding pipelines: requests sharing a group id
// never land in the same solution, and the pool holds up to pool_cap
// solutions instead of 16r. Same placement rule otherwise; throws logic_error
// when the pool is exhausted.
Coloring color_small_arbitrary(const UfpInstance& inst, const std::vector<long>& group,
                               long pool_cap);

// Arbitrary capacities and demands, NBA required. Partitions at d > b/4 and
// combines the two colorings above with disjoint color ranges. At most
// 24*OPT colors.
Coloring round_ufp_path(const UfpInstance& inst);

}  // namespace pathpack
