#pragma once

// Core instance model: path/tree networks with rational edge capacities,
// routing requests with rational demands and profits, colorings (partitions of
// requests into capacity-feasible classes), and the covering-side types (unit
// jobs, multi-copy resources, demand profiles, multiset selections).
//
// Conventions:
//  - Path vertices are 1..m+1, edge e joins vertices (e, e+1), e in 1..m.
//  - A path request [s,t] with s < t covers edges s..t-1.
//  - Tree edges are identified by their child vertex id (2..n), root is 1.
//  - Colors are contiguous integers 1..K.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathpack/rational.hpp"

namespace pathpack {

struct PathNetwork {
  explicit PathNetwork(std::vector<Rat> capacities);

  long edges() const { return static_cast<long>(cap_.size()) - 1; }
  long vertices() const { return edges() + 1; }
  const Rat& capacity(long e) const {
    if (e < 1 || e > edges()) throw std::out_of_range("edge id out of range");
    return cap_[static_cast<size_t>(e)];
  }
  Rat min_capacity() const;

 private:
  std::vector<Rat> cap_;  // 1-based, cap_[0] unused
};

struct Request {
  long s = 0;
  long t = 0;
  Rat d;      // demand, > 0
  Rat w;      // profit, >= 0
};

// Path UFP instance. Requests are normalized to s < t on construction.
struct UfpInstance {
  UfpInstance(PathNetwork net, std::vector<Request> requests);

  const PathNetwork& net() const { return net_; }
  const std::vector<Request>& requests() const { return req_; }
  long size() const { return static_cast<long>(req_.size()); }

  bool covers(long i, long e) const {
    const Request& r = req_[static_cast<size_t>(i)];
    return r.s <= e && e < r.t;
  }
  // Total demand crossing edge e.
  const Rat& load(long e) const { return load_.at(static_cast<size_t>(e)); }
  // Minimum capacity over request i's span.
  const Rat& bottleneck(long i) const { return bneck_.at(static_cast<size_t>(i)); }
  // Congestion r = max_e ceil(load_e / cap_e); 0 for an empty instance.
  long congestion() const { return r_; }
  bool nba() const { return nba_; }

 private:
  PathNetwork net_;
  std::vector<Request> req_;
  std::vector<Rat> load_;
  std::vector<Rat> bneck_;
  long r_ = 0;
  bool nba_ = true;
};

struct TreeNetwork {
  // parent[v] for v in 1..n with parent[1] == 0; capacity[v] for v in 2..n is
  // the capacity of the edge (v, parent[v]).
  TreeNetwork(std::vector<long> parent, std::vector<Rat> capacities);

  long vertices() const { return static_cast<long>(parent_.size()) - 1; }
  long parent(long v) const { return parent_.at(static_cast<size_t>(v)); }
  long depth(long v) const { return depth_.at(static_cast<size_t>(v)); }
  const Rat& capacity(long child) const {
    if (child < 2 || child > vertices()) throw std::out_of_range("edge id out of range");
    return cap_[static_cast<size_t>(child)];
  }
  Rat min_capacity() const;
  long lca(long u, long v) const;
  // Edge ids (child vertices) on the u..v path, deterministic order:
  // u-side edges from u up to the LCA, then v-side edges from the LCA down.
  std::vector<long> path_edges(long u, long v) const;

 private:
  std::vector<long> parent_;
  std::vector<Rat> cap_;
  std::vector<long> depth_;
};

struct TreeUfpInstance {
  TreeUfpInstance(TreeNetwork net, std::vector<Request> requests);

  const TreeNetwork& net() const { return net_; }
  const std::vector<Request>& requests() const { return req_; }
  long size() const { return static_cast<long>(req_.size()); }
  const std::vector<long>& span(long i) const { return span_.at(static_cast<size_t>(i)); }
  long lca_of(long i) const { return lca_.at(static_cast<size_t>(i)); }
  const Rat& load(long child) const { return load_.at(static_cast<size_t>(child)); }
  const Rat& bottleneck(long i) const { return bneck_.at(static_cast<size_t>(i)); }
  long congestion() const { return r_; }
  bool nba() const { return nba_; }

 private:
  TreeNetwork net_;
  std::vector<Request> req_;
  std::vector<std::vector<long>> span_;  // edge ids per request
  std::vector<long> lca_;
  std::vector<Rat> load_;
  std::vector<Rat> bneck_;
  long r_ = 0;
  bool nba_ = true;
};

enum class DemandSize { Small, Large };

// delta in (0,1); Large iff d_i > delta * bottleneck_i.
DemandSize classify_demand(const UfpInstance& inst, long i, const Rat& delta);
DemandSize classify_demand(const TreeUfpInstance& inst, long i, const Rat& delta);

struct NbaReport {
  bool ok = true;
  long request = -1;  // offending request (largest demand) when !ok
  Rat demand;
  long edge = -1;     // edge with minimum capacity
  Rat capacity;
};

NbaReport check_nba(const UfpInstance& inst);
NbaReport check_nba(const TreeUfpInstance& inst);

// Thrown by solvers whose guarantees need the no-bottleneck assumption.
struct NbaViolation : std::runtime_error {
  NbaReport report;
  explicit NbaViolation(const NbaReport& rep);
};

void require_nba(const UfpInstance& inst);
void require_nba(const TreeUfpInstance& inst);

// A coloring assigns every request a color in 1..classes.
struct Coloring {
  std::vector<long> color;  // per request; 0 means unassigned
  long classes = 0;
};

// True iff every request has a color and the used colors are exactly 1..classes.
bool coloring_is_contiguous(const Coloring& c);

struct ColoringViolation {
  long color = 0;
  long edge = 0;
  Rat load;
  Rat cap;
};

struct VerifyColoringResult {
  bool ok = true;
  std::optional<ColoringViolation> violation;
};

// Checks that every color class is capacity-feasible. Reports the first
// violation in (color, edge) order. A partial coloring (missing assignment or
// size mismatch) is an input error and throws std::invalid_argument, which is
// distinct from a feasibility violation.
VerifyColoringResult verify_coloring(const UfpInstance& inst, const Coloring& c);
VerifyColoringResult verify_coloring(const TreeUfpInstance& inst, const Coloring& c);

// Bag instance: requests grouped into bags; at most one request per bag may be
// routed, and profit is earned per bag.
struct BagInstance {
  BagInstance(PathNetwork net, std::vector<Rat> bag_profit, std::vector<Request> requests,
              std::vector<long> bag_of);

  const PathNetwork& net() const { return net_; }
  long bags() const { return static_cast<long>(profit_.size()); }
  const Rat& bag_profit(long j) const { return profit_.at(static_cast<size_t>(j)); }
  const std::vector<Request>& requests() const { return req_; }
  long bag_of(long i) const { return bag_of_.at(static_cast<size_t>(i)); }
  long size() const { return static_cast<long>(req_.size()); }
  bool nba() const { return nba_; }

 private:
  PathNetwork net_;
  std::vector<Rat> profit_;
  std::vector<Request> req_;
  std::vector<long> bag_of_;
  bool nba_ = true;
};

// A bag selection routes at most one request per bag; profit is the sum of
// bag profits over bags with a routed request. Feasibility = all routed
// requests together respect every capacity.
struct BagSelectionCheck {
  bool ok = true;
  std::string reason;  // empty when ok
  Rat profit;          // sum of chosen bags' profits; meaningful when ok
};
BagSelectionCheck verify_bag_selection(const BagInstance& inst, const std::vector<long>& chosen);

// ---- Covering side ----

struct Job {
  long s = 0;
  long t = 0;   // s <= t; covers edges s..t-1 (possibly none when s == t)
  Rat penalty;  // used by prize-collecting variants; >= 0
};

inline long job_length(const Job& j) { return j.t - j.s; }

struct Resource {
  long s = 0;
  long t = 0;  // s < t; covers edges s..t-1
  long w = 1;  // integer capacity per copy, >= 1
  Rat c;       // cost per copy, >= 0
};

using Profile = std::vector<long>;  // 1-based per-edge demand counts

Profile job_profile(const std::vector<Job>& jobs, long m);
Profile job_profile_subset(const std::vector<Job>& jobs, const std::vector<long>& subset, long m);

struct MultisetSelection {
  std::vector<long> count;  // copies per resource index
  Rat cost(const std::vector<Resource>& res) const;
};

Profile selection_profile(const std::vector<Resource>& res, const MultisetSelection& sel, long m);

struct CoverViolation {
  long edge = 0;
  long deficit = 0;
};

struct VerifyCoverResult {
  bool ok = true;
  std::optional<CoverViolation> violation;
};

// Checks selection covers the needed profile pointwise; first violation by edge.
VerifyCoverResult verify_cover(const Profile& needed, const std::vector<Resource>& res,
                               const MultisetSelection& sel, long m);

void validate_jobs(const std::vector<Job>& jobs, long m);
void validate_resources(const std::vector<Resource>& res, long m);

}  // namespace pathpack
