#include "pathpack/round_path.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pathpack/oracle.hpp"

namespace pathpack {

namespace {

Rat uniform_capacity(const UfpInstance& inst) {
  const PathNetwork& net = inst.net();
  Rat c = net.capacity(1);
  for (long e = 2; e <= net.edges(); ++e)
    if (net.capacity(e) != c) throw std::invalid_argument("capacities are not uniform");
  return c;
}

std::vector<long> left_endpoint_order(const UfpInstance& inst) {
  std::vector<long> order(static_cast<size_t>(inst.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](long a, long b) {
    return inst.requests()[static_cast<size_t>(a)].s < inst.requests()[static_cast<size_t>(b)].s;
  });
  return order;
}

// First-fit sweep: walk the requests in the given order, place each in the
// lowest-indexed copy of the path with room on its whole span, opening a new
// copy when none fits.
Coloring first_fit_sweep(const UfpInstance& inst, const std::vector<long>& order) {
  Coloring out;
  out.color.assign(static_cast<size_t>(inst.size()), 0);
  std::vector<std::vector<Rat>> load;  // [color][edge]
  const long m = inst.net().edges();
  for (long i : order) {
    const Request& r = inst.requests()[static_cast<size_t>(i)];
    long chosen = 0;
    for (long k = 0; k < static_cast<long>(load.size()); ++k) {
      bool fits = true;
      for (long e = r.s; e < r.t; ++e) {
        if (load[static_cast<size_t>(k)][static_cast<size_t>(e)] + r.d > inst.net().capacity(e)) {
          fits = false;
          break;
        }
      }
      if (fits) {
        chosen = k + 1;
        break;
      }
    }
    if (chosen == 0) {
      load.emplace_back(static_cast<size_t>(m) + 1, Rat(0));
      chosen = static_cast<long>(load.size());
    }
    out.color[static_cast<size_t>(i)] = chosen;
    for (long e = r.s; e < r.t; ++e)
      load[static_cast<size_t>(chosen - 1)][static_cast<size_t>(e)] += r.d;
  }
  out.classes = static_cast<long>(load.size());
  return out;
}

void ensure_verified(const UfpInstance& inst, const Coloring& c, const char* who) {
  if (inst.size() == 0) return;
  if (!verify_coloring(inst, c).ok)
    throw std::logic_error(std::string(who) + " produced an infeasible coloring");
}

}  // namespace

long edge_class(const Rat& cap) { return floor_log2(cap); }

RequestClass request_class(const UfpInstance& inst, long i) {
  if (i < 0 || i >= inst.size()) throw std::invalid_argument("request index out of range");
  const Request& r = inst.requests()[static_cast<size_t>(i)];
  RequestClass out;
  out.cls = edge_class(inst.net().capacity(r.s));
  out.critical_edge = r.s;
  for (long e = r.s + 1; e < r.t; ++e) {
    long c = edge_class(inst.net().capacity(e));
    if (c < out.cls) {
      out.cls = c;
      out.critical_edge = e;
    }
  }
  return out;
}

Coloring color_large_uniform(const UfpInstance& inst) {
  Rat c = uniform_capacity(inst);
  for (const Request& r : inst.requests())
    if (r.d * 2 <= c) throw std::invalid_argument("small demand in large-only solver");
  require_nba(inst);
  Coloring out = first_fit_sweep(inst, left_endpoint_order(inst));
  ensure_verified(inst, out, "color_large_uniform");
  return out;
}

Coloring color_small_uniform(const UfpInstance& inst) {
  Rat c = uniform_capacity(inst);
  for (const Request& r : inst.requests())
    if (r.d * 2 > c) throw std::invalid_argument("large demand in small-only solver");
  Coloring out = first_fit_sweep(inst, left_endpoint_order(inst));
  ensure_verified(inst, out, "color_small_uniform");
  return out;
}

Coloring round_ufp_uniform(const UfpInstance& inst) {
  Rat c = uniform_capacity(inst);
  require_nba(inst);
  std::vector<Request> large, small;
  std::vector<long> large_idx, small_idx;
  for (long i = 0; i < inst.size(); ++i) {
    const Request& r = inst.requests()[static_cast<size_t>(i)];
    if (r.d * 2 > c) {
      large.push_back(r);
      large_idx.push_back(i);
    } else {
      small.push_back(r);
      small_idx.push_back(i);
    }
  }
  Coloring out;
  out.color.assign(static_cast<size_t>(inst.size()), 0);
  long base = 0;
  if (!large.empty()) {
    UfpInstance sub(inst.net(), large);
    Coloring cl = color_large_uniform(sub);
    for (size_t j = 0; j < large_idx.size(); ++j)
      out.color[static_cast<size_t>(large_idx[j])] = cl.color[j];
    base = cl.classes;
  }
  if (!small.empty()) {
    UfpInstance sub(inst.net(), small);
    Coloring cs = color_small_uniform(sub);
    for (size_t j = 0; j < small_idx.size(); ++j)
      out.color[static_cast<size_t>(small_idx[j])] = base + cs.color[j];
    base += cs.classes;
  }
  out.classes = base;
  ensure_verified(inst, out, "round_ufp_uniform");
  return out;
}

Coloring color_unit_path(const UfpInstance& inst) {
  const PathNetwork& net = inst.net();
  for (long e = 1; e <= net.edges(); ++e)
    if (net.capacity(e).get_den() != 1)
      throw std::invalid_argument("unit coloring needs integer capacities");
  for (const Request& r : inst.requests())
    if (r.d != 1) throw std::invalid_argument("unit coloring needs unit demands");

  Coloring out;
  out.color.assign(static_cast<size_t>(inst.size()), 0);
  out.classes = 0;
  if (inst.size() == 0) return out;
  const long r = inst.congestion();

  // Sweep by left endpoint with a fixed pool of r colors. Among the colors
  // with room on the whole span, take the one least loaded at the request's
  // first edge; plain first-fit can overshoot r when capacities vary.
  std::vector<std::vector<long>> load(static_cast<size_t>(r),
                                      std::vector<long>(static_cast<size_t>(net.edges()) + 1, 0));
  bool stalled = false;
  for (long i : left_endpoint_order(inst)) {
    const Request& q = inst.requests()[static_cast<size_t>(i)];
    long pick = -1;
    for (long k = 0; k < r; ++k) {
      bool fits = true;
      for (long e = q.s; e < q.t; ++e) {
        if (rat(load[static_cast<size_t>(k)][static_cast<size_t>(e)] + 1) > net.capacity(e)) {
          fits = false;
          break;
        }
      }
      if (fits && (pick < 0 || load[static_cast<size_t>(k)][static_cast<size_t>(q.s)] <
                                   load[static_cast<size_t>(pick)][static_cast<size_t>(q.s)]))
        pick = k;
    }
    if (pick < 0) {
      stalled = true;
      break;
    }
    out.color[static_cast<size_t>(i)] = pick + 1;
    for (long e = q.s; e < q.t; ++e) ++load[static_cast<size_t>(pick)][static_cast<size_t>(e)];
  }

  if (stalled) {
    oracle::OracleBudget budget = oracle::OracleBudget::from_env();
    budget.max_requests = inst.size();
    auto exact = oracle::exact_round_ufp(inst, budget);
    if (exact.status != oracle::OracleStatus::Ok)
      throw std::runtime_error("unit coloring sweep stalled and the exact fallback ran out of budget");
    if (exact.colors > r)
      throw std::logic_error("unit instance needs more colors than its congestion");
    out = exact.coloring;
  }
  out.classes = r;
  ensure_verified(inst, out, "color_unit_path");
  return out;
}

namespace {

// Shared by the path and tree large-demand solvers: demands lifted to c_min,
// capacities floored to multiples of c_min, everything divided by c_min.
UfpInstance lift_to_unit(const UfpInstance& inst, const Rat& cmin) {
  std::vector<Rat> caps;
  for (long e = 1; e <= inst.net().edges(); ++e) {
    Rat scaled = inst.net().capacity(e) / cmin;
    caps.push_back(Rat(floor_rat(scaled)));
  }
  std::vector<Request> reqs;
  for (const Request& r : inst.requests()) reqs.push_back({r.s, r.t, Rat(1), r.w});
  return UfpInstance(PathNetwork(caps), reqs);
}

}  // namespace

Coloring color_large_arbitrary(const UfpInstance& inst) {
  require_nba(inst);
  for (long i = 0; i < inst.size(); ++i)
    if (classify_demand(inst, i, rat(1, 4)) != DemandSize::Large)
      throw std::invalid_argument("small demand in large-only solver");
  Coloring out;
  out.color.assign(static_cast<size_t>(inst.size()), 0);
  out.classes = 0;
  if (inst.size() == 0) return out;

  UfpInstance unit = lift_to_unit(inst, inst.net().min_capacity());
  if (unit.congestion() < inst.congestion() || unit.congestion() > 8 * inst.congestion())
    throw std::logic_error("large-demand lift distorted congestion beyond factor 8");
  out = color_unit_path(unit);
  ensure_verified(inst, out, "color_large_arbitrary");
  return out;
}

namespace {

// Core of the small-demand pool colorer; group (optional) forbids two
// requests of one group in the same solution.
Coloring small_pool_coloring(const UfpInstance& inst, const std::vector<long>* group,
                             long pool_cap) {
  Coloring out;
  out.color.assign(static_cast<size_t>(inst.size()), 0);
  out.classes = 0;
  if (inst.size() == 0) return out;

  std::vector<std::vector<Rat>> load;     // lazily grown, one slot per open color
  std::vector<std::vector<long>> groups;  // groups present per color
  for (long i : left_endpoint_order(inst)) {
    const Request& q = inst.requests()[static_cast<size_t>(i)];
    RequestClass rc = request_class(inst, i);
    const Rat& ccrit = inst.net().capacity(rc.critical_edge);
    long pick = -1;
    for (long k = 0; k < static_cast<long>(load.size()); ++k) {
      if (load[static_cast<size_t>(k)][static_cast<size_t>(rc.critical_edge)] * 16 > ccrit)
        continue;
      if (group != nullptr) {
        const std::vector<long>& held = groups[static_cast<size_t>(k)];
        if (std::find(held.begin(), held.end(), (*group)[static_cast<size_t>(i)]) != held.end())
          continue;
      }
      pick = k;
      break;
    }
    if (pick < 0) {
      if (static_cast<long>(load.size()) >= pool_cap)
        throw std::logic_error("small-demand pool exhausted; contradicts the congestion bound");
      load.emplace_back(static_cast<size_t>(inst.net().edges()) + 1, Rat(0));
      groups.emplace_back();
      pick = static_cast<long>(load.size()) - 1;
    }
    out.color[static_cast<size_t>(i)] = pick + 1;
    for (long e = q.s; e < q.t; ++e) load[static_cast<size_t>(pick)][static_cast<size_t>(e)] += q.d;
    if (group != nullptr)
      groups[static_cast<size_t>(pick)].push_back((*group)[static_cast<size_t>(i)]);
  }
  out.classes = static_cast<long>(load.size());
  return out;
}

void require_all_small(const UfpInstance& inst) {
  for (long i = 0; i < inst.size(); ++i)
    if (classify_demand(inst, i, rat(1, 4)) != DemandSize::Small)
      throw std::invalid_argument("large demand in small-only solver");
}

}  // namespace

Coloring color_small_arbitrary(const UfpInstance& inst) {
  require_nba(inst);
  require_all_small(inst);
  Coloring out = small_pool_coloring(inst, nullptr, 16 * inst.congestion());
  ensure_verified(inst, out, "color_small_arbitrary");
  return out;
}

Coloring color_small_arbitrary(const UfpInstance& inst, const std::vector<long>& group,
                               long pool_cap) {
  require_nba(inst);
  require_all_small(inst);
  if (static_cast<long>(group.size()) != inst.size())
    throw std::invalid_argument("need one group id per request");
  if (pool_cap < 1) throw std::invalid_argument("pool capacity must be positive");
  Coloring out = small_pool_coloring(inst, &group, pool_cap);
  ensure_verified(inst, out, "color_small_arbitrary");
  return out;
}

Coloring round_ufp_path(const UfpInstance& inst) {
  require_nba(inst);
  std::vector<Request> large, small;
  std::vector<long> large_idx, small_idx;
  for (long i = 0; i < inst.size(); ++i) {
    const Request& r = inst.requests()[static_cast<size_t>(i)];
    if (classify_demand(inst, i, rat(1, 4)) == DemandSize::Large) {
      large.push_back(r);
      large_idx.push_back(i);
    } else {
      small.push_back(r);
      small_idx.push_back(i);
    }
  }
  Coloring out;
  out.color.assign(static_cast<size_t>(inst.size()), 0);
  long base = 0;
  if (!large.empty()) {
    UfpInstance sub(inst.net(), large);
    Coloring cl = color_large_arbitrary(sub);
    for (size_t j = 0; j < large_idx.size(); ++j)
      out.color[static_cast<size_t>(large_idx[j])] = cl.color[j];
    base = cl.classes;
  }
  if (!small.empty()) {
    UfpInstance sub(inst.net(), small);
    Coloring cs = color_small_arbitrary(sub);
    for (size_t j = 0; j < small_idx.size(); ++j)
      out.color[static_cast<size_t>(small_idx[j])] = base + cs.color[j];
    base += cs.classes;
  }
  out.classes = base;
  ensure_verified(inst, out, "round_ufp_path");
  return out;
}

}  // namespace pathpack
