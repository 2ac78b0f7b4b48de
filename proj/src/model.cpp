#include "pathpack/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace pathpack {

PathNetwork::PathNetwork(std::vector<Rat> capacities) {
  if (capacities.empty()) throw std::invalid_argument("path needs at least one edge");
  for (const Rat& c : capacities)
    if (c <= 0) throw std::invalid_argument("edge capacity must be positive");
  cap_.reserve(capacities.size() + 1);
  cap_.push_back(Rat(0));
  for (Rat& c : capacities) cap_.push_back(std::move(c));
}

Rat PathNetwork::min_capacity() const {
  Rat m = cap_[1];
  for (long e = 2; e <= edges(); ++e) m = std::min(m, cap_[static_cast<size_t>(e)]);
  return m;
}

UfpInstance::UfpInstance(PathNetwork net, std::vector<Request> requests)
    : net_(std::move(net)), req_(std::move(requests)) {
  const long m = net_.edges();
  for (Request& r : req_) {
    if (r.s == r.t) throw std::invalid_argument("request endpoints must differ");
    if (r.s > r.t) std::swap(r.s, r.t);
    if (r.s < 1 || r.t > m + 1) throw std::invalid_argument("request endpoint out of range");
    if (r.d <= 0) throw std::invalid_argument("demand must be positive");
    if (r.w < 0) throw std::invalid_argument("profit must be nonnegative");
  }
  load_.assign(static_cast<size_t>(m) + 1, Rat(0));
  bneck_.resize(req_.size());
  for (size_t i = 0; i < req_.size(); ++i) {
    const Request& r = req_[i];
    Rat b = net_.capacity(r.s);
    for (long e = r.s; e < r.t; ++e) {
      load_[static_cast<size_t>(e)] += r.d;
      b = std::min(b, net_.capacity(e));
    }
    bneck_[i] = b;
  }
  r_ = 0;
  for (long e = 1; e <= m; ++e) {
    Int re = ceil_div(load_[static_cast<size_t>(e)], net_.capacity(e));
    r_ = std::max(r_, to_long(re));
  }
  nba_ = true;
  if (!req_.empty()) {
    Rat dmax = req_[0].d;
    for (const Request& r : req_) dmax = std::max(dmax, r.d);
    nba_ = dmax <= net_.min_capacity();
  }
}

TreeNetwork::TreeNetwork(std::vector<long> parent, std::vector<Rat> capacities) {
  if (parent.empty()) throw std::invalid_argument("tree needs at least one vertex");
  const long n = static_cast<long>(parent.size());
  parent_.reserve(parent.size() + 1);
  parent_.push_back(-1);  // index 0 unused
  for (long v = 1; v <= n; ++v) parent_.push_back(parent[static_cast<size_t>(v - 1)]);
  if (parent_[1] != 0) throw std::invalid_argument("vertex 1 must be the root");
  if (static_cast<long>(capacities.size()) != n - 1)
    throw std::invalid_argument("need one capacity per non-root vertex");
  cap_.assign(2, Rat(0));  // cap_[0], cap_[1] unused
  for (Rat& c : capacities) {
    if (c <= 0) throw std::invalid_argument("edge capacity must be positive");
    cap_.push_back(std::move(c));
  }
  depth_.assign(static_cast<size_t>(n) + 1, -1);
  depth_[1] = 0;
  for (long v = 2; v <= n; ++v) {
    long u = v;
    std::vector<long> chain;
    while (u > 0 && depth_[static_cast<size_t>(u)] < 0) {
      chain.push_back(u);
      long p = parent_[static_cast<size_t>(u)];
      if (p < 0 || p > n || static_cast<long>(chain.size()) > n)
        throw std::invalid_argument("parent array is not a tree");
      u = p;
    }
    if (u <= 0) throw std::invalid_argument("parent array is not a tree");
    long d = depth_[static_cast<size_t>(u)];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      depth_[static_cast<size_t>(*it)] = ++d;
  }
}

Rat TreeNetwork::min_capacity() const {
  if (vertices() < 2) throw std::logic_error("tree has no edges");
  Rat m = cap_[2];
  for (long v = 3; v <= vertices(); ++v) m = std::min(m, cap_[static_cast<size_t>(v)]);
  return m;
}

long TreeNetwork::lca(long u, long v) const {
  while (u != v) {
    if (depth(u) >= depth(v)) u = parent(u);
    else v = parent(v);
  }
  return u;
}

std::vector<long> TreeNetwork::path_edges(long u, long v) const {
  long a = lca(u, v);
  std::vector<long> up, down;
  for (long x = u; x != a; x = parent(x)) up.push_back(x);
  for (long x = v; x != a; x = parent(x)) down.push_back(x);
  std::reverse(down.begin(), down.end());
  up.insert(up.end(), down.begin(), down.end());
  return up;
}

TreeUfpInstance::TreeUfpInstance(TreeNetwork net, std::vector<Request> requests)
    : net_(std::move(net)), req_(std::move(requests)) {
  const long n = net_.vertices();
  load_.assign(static_cast<size_t>(n) + 1, Rat(0));
  span_.resize(req_.size());
  lca_.resize(req_.size());
  bneck_.resize(req_.size());
  for (size_t i = 0; i < req_.size(); ++i) {
    const Request& r = req_[i];
    if (r.s == r.t) throw std::invalid_argument("request endpoints must differ");
    if (r.s < 1 || r.s > n || r.t < 1 || r.t > n)
      throw std::invalid_argument("request endpoint out of range");
    if (r.d <= 0) throw std::invalid_argument("demand must be positive");
    if (r.w < 0) throw std::invalid_argument("profit must be nonnegative");
    span_[i] = net_.path_edges(r.s, r.t);
    lca_[i] = net_.lca(r.s, r.t);
    if (span_[i].empty()) throw std::logic_error("request span unexpectedly empty");
    Rat b = net_.capacity(span_[i][0]);
    for (long e : span_[i]) {
      load_[static_cast<size_t>(e)] += r.d;
      b = std::min(b, net_.capacity(e));
    }
    bneck_[i] = b;
  }
  r_ = 0;
  for (long v = 2; v <= n; ++v) {
    Int re = ceil_div(load_[static_cast<size_t>(v)], net_.capacity(v));
    r_ = std::max(r_, to_long(re));
  }
  nba_ = true;
  if (!req_.empty() && n >= 2) {
    Rat dmax = req_[0].d;
    for (const Request& r : req_) dmax = std::max(dmax, r.d);
    nba_ = dmax <= net_.min_capacity();
  }
}

DemandSize classify_demand(const UfpInstance& inst, long i, const Rat& delta) {
  if (delta <= 0 || delta >= 1) throw std::invalid_argument("delta must lie in (0,1)");
  if (i < 0 || i >= inst.size()) throw std::invalid_argument("unknown request id");
  const Request& r = inst.requests()[static_cast<size_t>(i)];
  return r.d > delta * inst.bottleneck(i) ? DemandSize::Large : DemandSize::Small;
}

DemandSize classify_demand(const TreeUfpInstance& inst, long i, const Rat& delta) {
  if (delta <= 0 || delta >= 1) throw std::invalid_argument("delta must lie in (0,1)");
  if (i < 0 || i >= inst.size()) throw std::invalid_argument("unknown request id");
  const Request& r = inst.requests()[static_cast<size_t>(i)];
  return r.d > delta * inst.bottleneck(i) ? DemandSize::Large : DemandSize::Small;
}

namespace {

template <typename Inst>
NbaReport check_nba_impl(const Inst& inst, long min_edge, const Rat& min_cap) {
  NbaReport rep;
  rep.edge = min_edge;
  rep.capacity = min_cap;
  if (inst.size() == 0) return rep;
  long worst = 0;
  for (long i = 1; i < inst.size(); ++i)
    if (inst.requests()[static_cast<size_t>(i)].d > inst.requests()[static_cast<size_t>(worst)].d)
      worst = i;
  rep.request = worst;
  rep.demand = inst.requests()[static_cast<size_t>(worst)].d;
  rep.ok = rep.demand <= min_cap;
  return rep;
}

}  // namespace

NbaReport check_nba(const UfpInstance& inst) {
  long me = 1;
  for (long e = 2; e <= inst.net().edges(); ++e)
    if (inst.net().capacity(e) < inst.net().capacity(me)) me = e;
  return check_nba_impl(inst, me, inst.net().capacity(me));
}

NbaReport check_nba(const TreeUfpInstance& inst) {
  long me = 2;
  for (long v = 3; v <= inst.net().vertices(); ++v)
    if (inst.net().capacity(v) < inst.net().capacity(me)) me = v;
  return check_nba_impl(inst, me, inst.net().capacity(me));
}

namespace {
std::string nba_message(const NbaReport& rep) {
  if (rep.ok) return "no-bottleneck assumption holds";
  return "no-bottleneck assumption violated: request " + std::to_string(rep.request) +
         " has demand " + rat_str(rep.demand) + " > capacity " + rat_str(rep.capacity) +
         " of edge " + std::to_string(rep.edge);
}
}  // namespace

NbaViolation::NbaViolation(const NbaReport& rep) : std::runtime_error(nba_message(rep)), report(rep) {}

void require_nba(const UfpInstance& inst) {
  NbaReport rep = check_nba(inst);
  if (!rep.ok) throw NbaViolation(rep);
}

void require_nba(const TreeUfpInstance& inst) {
  NbaReport rep = check_nba(inst);
  if (!rep.ok) throw NbaViolation(rep);
}

bool coloring_is_contiguous(const Coloring& c) {
  std::vector<bool> seen(static_cast<size_t>(c.classes) + 1, false);
  for (long col : c.color) {
    if (col < 1 || col > c.classes) return false;
    seen[static_cast<size_t>(col)] = true;
  }
  for (long k = 1; k <= c.classes; ++k)
    if (!seen[static_cast<size_t>(k)] ) return false;
  return c.classes == 0 || !c.color.empty();
}

VerifyColoringResult verify_coloring(const UfpInstance& inst, const Coloring& c) {
  if (static_cast<long>(c.color.size()) != inst.size())
    throw std::invalid_argument("coloring size does not match instance");
  for (long col : c.color)
    if (col < 1 || col > c.classes)
      throw std::invalid_argument("partial or out-of-range coloring");
  const long m = inst.net().edges();
  VerifyColoringResult res;
  for (long k = 1; k <= c.classes; ++k) {
    std::vector<Rat> load(static_cast<size_t>(m) + 1, Rat(0));
    for (long i = 0; i < inst.size(); ++i) {
      if (c.color[static_cast<size_t>(i)] != k) continue;
      const Request& r = inst.requests()[static_cast<size_t>(i)];
      for (long e = r.s; e < r.t; ++e) load[static_cast<size_t>(e)] += r.d;
    }
    for (long e = 1; e <= m; ++e) {
      if (load[static_cast<size_t>(e)] > inst.net().capacity(e)) {
        res.ok = false;
        res.violation = ColoringViolation{k, e, load[static_cast<size_t>(e)], inst.net().capacity(e)};
        return res;
      }
    }
  }
  return res;
}

VerifyColoringResult verify_coloring(const TreeUfpInstance& inst, const Coloring& c) {
  if (static_cast<long>(c.color.size()) != inst.size())
    throw std::invalid_argument("coloring size does not match instance");
  for (long col : c.color)
    if (col < 1 || col > c.classes)
      throw std::invalid_argument("partial or out-of-range coloring");
  const long n = inst.net().vertices();
  VerifyColoringResult res;
  for (long k = 1; k <= c.classes; ++k) {
    std::vector<Rat> load(static_cast<size_t>(n) + 1, Rat(0));
    for (long i = 0; i < inst.size(); ++i) {
      if (c.color[static_cast<size_t>(i)] != k) continue;
      for (long e : inst.span(i)) load[static_cast<size_t>(e)] += inst.requests()[static_cast<size_t>(i)].d;
    }
    for (long v = 2; v <= n; ++v) {
      if (load[static_cast<size_t>(v)] > inst.net().capacity(v)) {
        res.ok = false;
        res.violation = ColoringViolation{k, v, load[static_cast<size_t>(v)], inst.net().capacity(v)};
        return res;
      }
    }
  }
  return res;
}

BagInstance::BagInstance(PathNetwork net, std::vector<Rat> bag_profit,
                         std::vector<Request> requests, std::vector<long> bag_of)
    : net_(std::move(net)),
      profit_(std::move(bag_profit)),
      req_(std::move(requests)),
      bag_of_(std::move(bag_of)) {
  if (req_.size() != bag_of_.size())
    throw std::invalid_argument("bag_of must have one entry per request");
  const long m = net_.edges();
  for (const Rat& p : profit_)
    if (p < 0) throw std::invalid_argument("bag profit must be nonnegative");
  for (Request& r : req_) {
    if (r.s == r.t) throw std::invalid_argument("request endpoints must differ");
    if (r.s > r.t) std::swap(r.s, r.t);
    if (r.s < 1 || r.t > m + 1) throw std::invalid_argument("request endpoint out of range");
    if (r.d <= 0) throw std::invalid_argument("demand must be positive");
  }
  for (long b : bag_of_)
    if (b < 0 || b >= bags()) throw std::invalid_argument("bag index out of range");
  nba_ = true;
  if (!req_.empty()) {
    Rat dmax = req_[0].d;
    for (const Request& r : req_) dmax = std::max(dmax, r.d);
    nba_ = dmax <= net_.min_capacity();
  }
}

BagSelectionCheck verify_bag_selection(const BagInstance& inst, const std::vector<long>& chosen) {
  BagSelectionCheck out;
  std::vector<bool> bag_used(static_cast<size_t>(inst.bags()), false);
  std::vector<Rat> load(static_cast<size_t>(inst.net().edges()) + 1, Rat(0));
  for (long i : chosen) {
    if (i < 0 || i >= inst.size()) {
      out.ok = false;
      out.reason = "request index out of range";
      return out;
    }
    long b = inst.bag_of(i);
    if (bag_used[static_cast<size_t>(b)]) {
      out.ok = false;
      out.reason = "two requests from bag " + std::to_string(b);
      return out;
    }
    bag_used[static_cast<size_t>(b)] = true;
    out.profit += inst.bag_profit(b);
    const Request& r = inst.requests()[static_cast<size_t>(i)];
    for (long e = r.s; e < r.t; ++e) load[static_cast<size_t>(e)] += r.d;
  }
  for (long e = 1; e <= inst.net().edges(); ++e) {
    if (load[static_cast<size_t>(e)] > inst.net().capacity(e)) {
      out.ok = false;
      out.reason = "capacity exceeded on edge " + std::to_string(e);
      return out;
    }
  }
  return out;
}

Profile job_profile(const std::vector<Job>& jobs, long m) {
  Profile p(static_cast<size_t>(m) + 1, 0);
  for (const Job& j : jobs)
    for (long e = j.s; e < j.t; ++e) ++p[static_cast<size_t>(e)];
  return p;
}

Profile job_profile_subset(const std::vector<Job>& jobs, const std::vector<long>& subset, long m) {
  Profile p(static_cast<size_t>(m) + 1, 0);
  for (long idx : subset) {
    const Job& j = jobs.at(static_cast<size_t>(idx));
    for (long e = j.s; e < j.t; ++e) ++p[static_cast<size_t>(e)];
  }
  return p;
}

Rat MultisetSelection::cost(const std::vector<Resource>& res) const {
  if (count.size() != res.size()) throw std::invalid_argument("selection size mismatch");
  Rat total = 0;
  for (size_t i = 0; i < res.size(); ++i) {
    if (count[i] < 0) throw std::invalid_argument("negative copy count");
    total += res[i].c * Rat(count[i]);
  }
  return total;
}

Profile selection_profile(const std::vector<Resource>& res, const MultisetSelection& sel, long m) {
  if (sel.count.size() != res.size()) throw std::invalid_argument("selection size mismatch");
  Profile p(static_cast<size_t>(m) + 1, 0);
  for (size_t i = 0; i < res.size(); ++i) {
    if (sel.count[i] == 0) continue;
    for (long e = res[i].s; e < res[i].t; ++e)
      p[static_cast<size_t>(e)] += res[i].w * sel.count[i];
  }
  return p;
}

VerifyCoverResult verify_cover(const Profile& needed, const std::vector<Resource>& res,
                               const MultisetSelection& sel, long m) {
  Profile have = selection_profile(res, sel, m);
  VerifyCoverResult out;
  for (long e = 1; e <= m; ++e) {
    long need = e < static_cast<long>(needed.size()) ? needed[static_cast<size_t>(e)] : 0;
    if (have[static_cast<size_t>(e)] < need) {
      out.ok = false;
      out.violation = CoverViolation{e, need - have[static_cast<size_t>(e)]};
      return out;
    }
  }
  return out;
}

void validate_jobs(const std::vector<Job>& jobs, long m) {
  for (const Job& j : jobs) {
    if (j.s < 1 || j.t > m + 1 || j.s > j.t)
      throw std::invalid_argument("job endpoints out of range");
    if (j.penalty < 0) throw std::invalid_argument("negative penalty");
  }
}

void validate_resources(const std::vector<Resource>& res, long m) {
  for (const Resource& r : res) {
    if (r.s < 1 || r.t > m + 1 || r.s >= r.t)
      throw std::invalid_argument("resource endpoints out of range");
    if (r.w < 1) throw std::invalid_argument("resource capacity must be a positive integer");
    if (r.c < 0) throw std::invalid_argument("negative resource cost");
  }
}

}  // namespace pathpack
