#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pathpack/model.hpp"
#include "pathpack/rational.hpp"

namespace pathpack {

// Result of placing one request into a level structure. Levels are 1-based.
// rejected[k-1] is an edge that blocked level k+... more precisely, entry j
// (0-based) names the edge that rejected level j+1, so a request assigned
// level k carries exactly k-1 witnesses.
struct LevelAssignment {
  long level = 0;
  std::vector<long> rejected;
};

// Online level machine over a contracted subpath with one uniform capacity.
// Member edges keep their original ids; every other edge is ignored. A
// request goes to the smallest level k whose cumulative load over levels
// 1..k, including the request, stays within k * fraction * capacity on every
// member edge of its span. If every existing level refuses, a fresh level is
// opened and the request placed there unconditionally. Demands above
// fraction * capacity are rejected outright since they could never share a
// level budget.
class UniformLevelState {
 public:
  UniformLevelState(std::vector<long> edges, Rat capacity, Rat fraction);

  LevelAssignment assign(long s, long t, const Rat& d);

  long levels() const { return static_cast<long>(load_.size()); }
  const Rat& capacity() const { return cap_; }
  const Rat& fraction() const { return fraction_; }
  bool member(long edge) const;
  // Load contributed to `edge` by the requests of level k alone; zero for
  // non-members and unopened levels.
  Rat level_load(long k, long edge) const;

 private:
  std::vector<long> edges_;  // sorted original edge ids
  Rat cap_;
  Rat fraction_;
  std::vector<std::vector<Rat>> load_;  // load_[k-1][member index]
};

// Level machine for demands too big to share an edge: each level holds
// member-spans that are pairwise edge-disjoint. Levels double as colors.
class DisjointLevelState {
 public:
  explicit DisjointLevelState(std::vector<long> edges);

  LevelAssignment assign(long s, long t);

  long levels() const { return static_cast<long>(taken_.size()); }
  bool member(long edge) const;

 private:
  std::vector<long> edges_;                               // sorted original ids
  std::vector<std::vector<std::pair<long, long>>> taken_; // member index ranges
};

struct OnlineClass {
  long cls = 0;  // log2 of the rounded bottleneck capacity
  DemandSize size = DemandSize::Small;
};

// One transcript entry. Colors are global and never change after the step.
struct OnlineStep {
  Request request;    // original units
  long color = 0;     // global color
  long cls = 0;
  DemandSize size = DemandSize::Small;
  int band = 0;       // which machine of the class handled it
  long level = 0;     // level inside that machine
  Rat routed_demand;  // demand in the machine's units (normalized, halved for
                      // the classes that route at half scale)
  std::vector<long> rejected;  // witness edge per refused level below `level`
};

// Sizes of the three disjoint global color pools.
struct ColorPools {
  long small = 0;        // shared across all small classes, one per level
  long large_shared = 0; // large classes 0 and 2, pooled slot for slot
  long large_single = 0; // large class 1, never shared
};

// Online interval coloring of a capacitated path. Capacities are normalized
// so the smallest equals one, then rounded down to powers of two; requests
// are classified by the rounded bottleneck capacity of their span and routed
// to per-class level machines. Small classes share one color per level
// across classes, large classes 0 and 2 share a slot pool, large class 1
// gets its own. Colors are handed out in first-use order and never revised.
class OnlineState {
 public:
  explicit OnlineState(PathNetwork net);

  // Appends one request: classify, route, color. Throws NbaViolation when
  // the demand exceeds the smallest capacity of the path and
  // std::invalid_argument when the span leaves the path. On throw the state
  // is unchanged.
  long color(const Request& r);

  OnlineClass classify(const Request& r) const;  // throws like color()

  long steps() const { return static_cast<long>(steps_.size()); }
  long colors() const { return colors_; }
  const std::vector<OnlineStep>& transcript() const { return steps_; }
  const PathNetwork& net() const { return net_; }
  // Congestion of the prefix on the true capacities; diagnostic only, the
  // routing never reads it.
  long congestion() const;
  ColorPools pools() const;
  Coloring coloring() const;
  UfpInstance instance() const;

  const Rat& scale() const { return sigma_; }     // original minimum capacity
  long capacity_log(long e) const { return log_[e]; }

  const UniformLevelState* small_levels(long cls) const;
  const UniformLevelState* large_levels(long cls, int band) const;
  const DisjointLevelState* large_disjoint() const;

 private:
  long route_small(const Request& r, long cls);
  long route_large(const Request& r, long cls);
  UniformLevelState& small_machine(long cls);
  long global_color(int domain, long key);

  PathNetwork net_;
  Rat sigma_;
  std::vector<long> log_;  // per edge, log2 of rounded normalized capacity
  std::vector<Rat> load_;  // per edge, original units, for congestion()

  std::vector<std::optional<UniformLevelState>> small_;  // by class
  std::optional<UniformLevelState> half_low_;     // class 0, demands in (1/4,1/2]
  std::optional<DisjointLevelState> above_half_;  // class 0, demands in (1/2,1]
  std::optional<UniformLevelState> quarter_mid_;  // class 1 at half scale, (1/8,1/4]
  std::optional<UniformLevelState> half_mid_;     // class 1 at half scale, (1/4,1/2]
  std::optional<UniformLevelState> half_high_;    // class 2 at half scale, (1/4,1/2]

  std::map<std::pair<int, long>, long> local_[3];   // class-local slots, large
  long local_next_[3] = {0, 0, 0};
  std::map<std::pair<int, long>, long> global_;     // (domain, key) -> color
  long colors_ = 0;

  std::vector<OnlineStep> steps_;
};

// Classify one arrival against the fixed path: class = log2 of the rounded
// normalized bottleneck capacity over the span; small means the normalized
// demand fits the class threshold (a quarter for classes 0 and 1, a half for
// class 2, everything for class 3 and up). Throws NbaViolation when the
// demand exceeds the smallest capacity anywhere on the path.
OnlineClass classify_online(const OnlineState& state, const Request& r);

// The uniform-capacity level rule with the quarter budget. Requires
// fraction == 1/4 on the machine and demand within a quarter of capacity.
LevelAssignment assign_small_uniform(UniformLevelState& levels, const Request& r);

// Route a small (resp. large) arrival through its class machine and return
// the global color. The request must classify accordingly, else
// std::invalid_argument.
long assign_small(OnlineState& state, const Request& r);
long assign_large(OnlineState& state, const Request& r);

// One full online step: classify, route, color.
long online_color(OnlineState& state, const Request& r);

}  // namespace pathpack
