#include "pathpack/round_tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pathpack/oracle.hpp"
#include "pathpack/round_path.hpp"

namespace pathpack {

namespace {

void ensure_verified(const TreeUfpInstance& inst, const Coloring& c, const char* who) {
  if (inst.size() == 0) return;
  if (!verify_coloring(inst, c).ok)
    throw std::logic_error(std::string(who) + " produced an infeasible coloring");
}

// First minimum-class edge on the walk from the meeting vertex down to the
// endpoint, or -1 when the endpoint is the meeting vertex itself.
long side_critical(const TreeNetwork& net, long meet, long endpoint) {
  if (meet == endpoint) return -1;
  std::vector<long> up = net.path_edges(endpoint, meet);  // ordered endpoint-up
  long best = -1;
  long best_cls = 0;
  for (auto it = up.rbegin(); it != up.rend(); ++it) {
    long cls = edge_class(net.capacity(*it));
    if (best < 0 || cls < best_cls) {
      best = *it;
      best_cls = cls;
    }
  }
  return best;
}

}  // namespace

LcaOrder lca_order(const TreeUfpInstance& inst) {
  LcaOrder out;
  const long n = inst.size();
  out.order.resize(static_cast<size_t>(n));
  std::iota(out.order.begin(), out.order.end(), 0);
  out.lca.resize(static_cast<size_t>(n));
  out.s_critical.resize(static_cast<size_t>(n));
  out.t_critical.resize(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    const Request& r = inst.requests()[static_cast<size_t>(i)];
    out.lca[static_cast<size_t>(i)] = inst.lca_of(i);
    out.s_critical[static_cast<size_t>(i)] = side_critical(inst.net(), inst.lca_of(i), r.s);
    out.t_critical[static_cast<size_t>(i)] = side_critical(inst.net(), inst.lca_of(i), r.t);
  }
  std::stable_sort(out.order.begin(), out.order.end(), [&](long a, long b) {
    long la = out.lca[static_cast<size_t>(a)];
    long lb = out.lca[static_cast<size_t>(b)];
    long da = inst.net().depth(la);
    long db = inst.net().depth(lb);
    if (da != db) return da > db;
    return la < lb;
  });
  return out;
}

Coloring color_unit_tree(const TreeUfpInstance& inst) {
  const TreeNetwork& net = inst.net();
  for (long v = 2; v <= net.vertices(); ++v)
    if (net.capacity(v).get_den() != 1)
      throw std::invalid_argument("unit coloring needs integer capacities");
  for (const Request& r : inst.requests())
    if (r.d != 1) throw std::invalid_argument("unit coloring needs unit demands");

  Coloring out;
  out.color.assign(static_cast<size_t>(inst.size()), 0);
  out.classes = 0;
  if (inst.size() == 0) return out;
  const long r = inst.congestion();
  const long budget_colors = 4 * r;

  // First-fit in bottom-up order over a pool of at most 4r classes; on a
  // stall the exact solver finishes within the same budget.
  LcaOrder sched = lca_order(inst);
  std::vector<std::vector<long>> load;  // [color][edge], lazily grown
  bool stalled = false;
  for (long i : sched.order) {
    long pick = -1;
    for (long k = 0; k < static_cast<long>(load.size()); ++k) {
      bool fits = true;
      for (long e : inst.span(i)) {
        if (rat(load[static_cast<size_t>(k)][static_cast<size_t>(e)] + 1) > net.capacity(e)) {
          fits = false;
          break;
        }
      }
      if (fits) {
        pick = k;
        break;
      }
    }
    if (pick < 0) {
      if (static_cast<long>(load.size()) >= budget_colors) {
        stalled = true;
        break;
      }
      load.emplace_back(static_cast<size_t>(net.vertices()) + 1, 0);
      pick = static_cast<long>(load.size()) - 1;
    }
    out.color[static_cast<size_t>(i)] = pick + 1;
    for (long e : inst.span(i)) ++load[static_cast<size_t>(pick)][static_cast<size_t>(e)];
  }

  if (stalled) {
    oracle::OracleBudget budget = oracle::OracleBudget::from_env();
    budget.max_requests = inst.size();
    auto exact = oracle::exact_round_ufp(inst, budget);
    if (exact.status != oracle::OracleStatus::Ok)
      throw std::runtime_error("unit tree coloring stalled and the exact fallback ran out of budget");
    if (exact.colors > budget_colors)
      throw std::logic_error("unit tree instance needs more than four times its congestion");
    out = exact.coloring;
  } else {
    out.classes = static_cast<long>(load.size());
  }
  ensure_verified(inst, out, "color_unit_tree");
  return out;
}

namespace {

TreeUfpInstance lift_to_unit(const TreeUfpInstance& inst, const Rat& cmin) {
  const TreeNetwork& net = inst.net();
  std::vector<long> parent;
  for (long v = 1; v <= net.vertices(); ++v) parent.push_back(net.parent(v));
  std::vector<Rat> caps;
  for (long v = 2; v <= net.vertices(); ++v) {
    Rat scaled = net.capacity(v) / cmin;
    caps.push_back(Rat(floor_rat(scaled)));
  }
  std::vector<Request> reqs;
  for (const Request& r : inst.requests()) reqs.push_back({r.s, r.t, Rat(1), r.w});
  return TreeUfpInstance(TreeNetwork(parent, caps), reqs);
}

}  // namespace

Coloring color_large_tree(const TreeUfpInstance& inst) {
  require_nba(inst);
  for (long i = 0; i < inst.size(); ++i)
    if (classify_demand(inst, i, rat(1, 4)) != DemandSize::Large)
      throw std::invalid_argument("small demand in large-only solver");
  Coloring out;
  out.color.assign(static_cast<size_t>(inst.size()), 0);
  out.classes = 0;
  if (inst.size() == 0) return out;

  TreeUfpInstance unit = lift_to_unit(inst, inst.net().min_capacity());
  if (unit.congestion() < inst.congestion() || unit.congestion() > 8 * inst.congestion())
    throw std::logic_error("large-demand lift distorted congestion beyond factor 8");
  out = color_unit_tree(unit);
  ensure_verified(inst, out, "color_large_tree");
  return out;
}

Coloring color_small_tree(const TreeUfpInstance& inst) {
  require_nba(inst);
  for (long i = 0; i < inst.size(); ++i)
    if (classify_demand(inst, i, rat(1, 4)) != DemandSize::Small)
      throw std::invalid_argument("large demand in small-only solver");
  Coloring out;
  out.color.assign(static_cast<size_t>(inst.size()), 0);
  out.classes = 0;
  if (inst.size() == 0) return out;

  const long pool_cap = 16 * inst.congestion();
  LcaOrder sched = lca_order(inst);
  std::vector<std::vector<Rat>> load;  // lazily grown, one slot per open class
  for (long i : sched.order) {
    const Request& q = inst.requests()[static_cast<size_t>(i)];
    long crit[2] = {sched.s_critical[static_cast<size_t>(i)],
                    sched.t_critical[static_cast<size_t>(i)]};
    long pick = -1;
    for (long k = 0; k < static_cast<long>(load.size()); ++k) {
      bool fits = true;
      for (long e : crit) {
        if (e < 0) continue;
        Rat used = load[static_cast<size_t>(k)][static_cast<size_t>(e)] * 16;
        if (used > inst.net().capacity(e)) {
          fits = false;
          break;
        }
      }
      if (fits) {
        pick = k;
        break;
      }
    }
    if (pick < 0) {
      if (static_cast<long>(load.size()) >= pool_cap)
        throw std::logic_error("small-demand pool exhausted; contradicts the congestion bound");
      load.emplace_back(static_cast<size_t>(inst.net().vertices()) + 1, Rat(0));
      pick = static_cast<long>(load.size()) - 1;
    }
    out.color[static_cast<size_t>(i)] = pick + 1;
    for (long e : inst.span(i)) load[static_cast<size_t>(pick)][static_cast<size_t>(e)] += q.d;
  }
  out.classes = static_cast<long>(load.size());
  ensure_verified(inst, out, "color_small_tree");
  return out;
}

Coloring round_ufp_tree(const TreeUfpInstance& inst) {
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
    TreeUfpInstance sub(inst.net(), large);
    Coloring cl = color_large_tree(sub);
    for (size_t j = 0; j < large_idx.size(); ++j)
      out.color[static_cast<size_t>(large_idx[j])] = cl.color[j];
    base = cl.classes;
  }
  if (!small.empty()) {
    TreeUfpInstance sub(inst.net(), small);
    Coloring cs = color_small_tree(sub);
    for (size_t j = 0; j < small_idx.size(); ++j)
      out.color[static_cast<size_t>(small_idx[j])] = base + cs.color[j];
    base += cs.classes;
  }
  out.classes = base;
  ensure_verified(inst, out, "round_ufp_tree");
  return out;
}

}  // namespace pathpack
