#pragma once

#include <vector>

#include "pathpack/model.hpp"

namespace pathpack {

// A feasible choice of requests. For bag instances the choice holds at most
// one request per bag and profit counts each chosen bag once.
struct Selection {
  std::vector<long> chosen;  // request ids, ascending
  Rat profit;
};

// Exact optimum over large demands (d > bottleneck/4) by branch and bound.
// Any feasible set routes at most 24 large requests across one edge; the
// search cuts on that bound and asserts it never cuts a feasible node.
// Requires the no-bottleneck property and large demands only.
Selection max_ufp_large(const UfpInstance& inst);

// Relaxation-guided selection for small demands: solve the fractional
// relaxation, quantize, decompose into feasible classes and keep the most
// profitable one. Worth at least a 16th of the relaxation optimum.
Selection max_ufp_small(const UfpInstance& inst);

// Better of the exact large branch and the decomposition small branch,
// worth at least a 17th of the optimum. Ties go to the large branch.
Selection max_ufp_path(const UfpInstance& inst);

// Tree variant: the relaxation runs over all demands and the copies are
// colored by the tree rounding pipeline; worth at least a 64th of the
// optimum.
Selection max_ufp_tree(const TreeUfpInstance& inst);

// At most one request per bag with pairwise edge-disjoint spans, worth at
// least half the best disjoint selection. Two phases: a forward evaluation
// pass keeps requests whose profit survives charging by overlapping and
// same-bag predecessors, a backward pass selects greedily.
Selection bag_disjoint_select(const BagInstance& inst);

// Large-demand bag selection via the disjoint selector (disjoint choices are
// always feasible under the no-bottleneck property); worth at least a 48th
// of the optimum.
Selection bag_ufp_large(const BagInstance& inst);

// Small-demand bag selection via the bag relaxation and a 17K-solution pool
// in which a copy never joins a solution that already holds its bag; worth
// at least a 17th of the relaxation optimum.
Selection bag_ufp_small(const BagInstance& inst);

// Better of the large and small bag branches, worth at least a 65th of the
// optimum. Ties go to the large branch.
Selection bag_ufp_path(const BagInstance& inst);

}  // namespace pathpack
