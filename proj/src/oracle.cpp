#include "pathpack/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <stdexcept>

#include "pathpack/resall.hpp"

namespace pathpack::oracle {

namespace {

using Clock = std::chrono::steady_clock;

struct SearchCtl {
  Clock::time_point deadline;
  std::uint64_t node_cap = 0;
  std::uint64_t nodes = 0;
  bool exceeded = false;

  explicit SearchCtl(const OracleBudget& b)
      : deadline(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(b.max_seconds))),
        node_cap(b.max_nodes) {}

  // Returns false once any cap is blown.
  bool tick() {
    if (exceeded) return false;
    ++nodes;
    if (nodes > node_cap) { exceeded = true; return false; }
    if ((nodes & 1023) == 0 && Clock::now() > deadline) { exceeded = true; return false; }
    return true;
  }
};

// Edge-set view shared by the path and tree searches.
struct SpanView {
  std::vector<std::vector<long>> span;  // edge ids per request
  std::vector<Rat> cap;                 // indexed by edge id
  std::vector<Rat> demand;
  std::vector<Rat> profit;
  std::vector<long> edge_ids;
};

SpanView make_view(const UfpInstance& inst) {
  SpanView v;
  const long m = inst.net().edges();
  v.cap.assign(static_cast<size_t>(m) + 1, Rat(0));
  for (long e = 1; e <= m; ++e) {
    v.cap[static_cast<size_t>(e)] = inst.net().capacity(e);
    v.edge_ids.push_back(e);
  }
  for (const Request& r : inst.requests()) {
    std::vector<long> s;
    for (long e = r.s; e < r.t; ++e) s.push_back(e);
    v.span.push_back(std::move(s));
    v.demand.push_back(r.d);
    v.profit.push_back(r.w);
  }
  return v;
}

SpanView make_view(const TreeUfpInstance& inst) {
  SpanView v;
  const long n = inst.net().vertices();
  v.cap.assign(static_cast<size_t>(n) + 1, Rat(0));
  for (long e = 2; e <= n; ++e) {
    v.cap[static_cast<size_t>(e)] = inst.net().capacity(e);
    v.edge_ids.push_back(e);
  }
  for (long i = 0; i < inst.size(); ++i) {
    v.span.push_back(inst.span(i));
    v.demand.push_back(inst.requests()[static_cast<size_t>(i)].d);
    v.profit.push_back(inst.requests()[static_cast<size_t>(i)].w);
  }
  return v;
}

// Relabels colors so request 1 gets color 1 and new colors appear in order.
Coloring normalize_colors(const std::vector<long>& raw) {
  Coloring out;
  out.color.assign(raw.size(), 0);
  std::vector<long> map;
  for (size_t i = 0; i < raw.size(); ++i) {
    long found = 0;
    for (size_t k = 0; k < map.size(); ++k)
      if (map[k] == raw[i]) { found = static_cast<long>(k) + 1; break; }
    if (found == 0) {
      map.push_back(raw[i]);
      found = static_cast<long>(map.size());
    }
    out.color[i] = found;
  }
  out.classes = static_cast<long>(map.size());
  return out;
}

struct ColorSearch {
  const SpanView& v;
  SearchCtl ctl;
  long n;
  long lb;
  long best_colors;
  std::vector<long> cur, best;
  std::vector<std::vector<Rat>> load;  // [color][edge]

  ColorSearch(const SpanView& view, const OracleBudget& b, long lower, long upper)
      : v(view), ctl(b), n(static_cast<long>(view.span.size())), lb(lower), best_colors(upper) {
    cur.assign(static_cast<size_t>(n), 0);
    load.assign(static_cast<size_t>(n) + 1,
                std::vector<Rat>(v.cap.size(), Rat(0)));
  }

  bool fits(long color, long i) const {
    for (long e : v.span[static_cast<size_t>(i)])
      if (load[static_cast<size_t>(color)][static_cast<size_t>(e)] + v.demand[static_cast<size_t>(i)] >
          v.cap[static_cast<size_t>(e)])
        return false;
    return true;
  }

  void place(long color, long i, int sign) {
    for (long e : v.span[static_cast<size_t>(i)])
      load[static_cast<size_t>(color)][static_cast<size_t>(e)] +=
          sign > 0 ? v.demand[static_cast<size_t>(i)] : -v.demand[static_cast<size_t>(i)];
  }

  void dfs(long i, long used) {
    if (ctl.exceeded || best_colors == lb) return;
    if (used >= best_colors) return;
    if (i == n) {
      best_colors = used;
      best = cur;
      return;
    }
    long limit = std::min(used + 1, best_colors - 1);
    for (long k = 1; k <= limit; ++k) {
      if (!ctl.tick()) return;
      if (!fits(k, i)) continue;
      cur[static_cast<size_t>(i)] = k;
      place(k, i, +1);
      dfs(i + 1, std::max(used, k));
      place(k, i, -1);
      if (ctl.exceeded || best_colors == lb) return;
    }
  }
};

ColoringOracleResult round_ufp_core(const SpanView& v, long congestion, const OracleBudget& budget,
                                    long incumbent) {
  ColoringOracleResult out;
  const long n = static_cast<long>(v.span.size());
  if (n > budget.max_requests) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  if (n == 0) {
    out.colors = 0;
    out.coloring.classes = 0;
    return out;
  }
  for (long i = 0; i < n; ++i) {
    Rat b = v.cap[static_cast<size_t>(v.span[static_cast<size_t>(i)][0])];
    for (long e : v.span[static_cast<size_t>(i)])
      b = std::min(b, v.cap[static_cast<size_t>(e)]);
    if (v.demand[static_cast<size_t>(i)] > b)
      throw std::invalid_argument("request cannot be routed alone; no coloring exists");
  }
  long lb = std::max<long>(congestion, 1);
  long upper = n + 1;
  if (incumbent >= lb && incumbent < upper) upper = incumbent + 1;
  ColorSearch search(v, budget, lb, upper);
  search.dfs(0, 0);
  out.nodes = search.ctl.nodes;
  if (search.ctl.exceeded) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  if (search.best.empty()) {
    // Incumbent was already optimal; rebuild a canonical witness by searching
    // with a relaxed upper bound equal to incumbent + 1 and no incumbent.
    ColorSearch retry(v, budget, lb, upper + 1);
    retry.dfs(0, 0);
    out.nodes += retry.ctl.nodes;
    if (retry.ctl.exceeded || retry.best.empty()) {
      out.status = OracleStatus::BudgetExceeded;
      return out;
    }
    out.colors = retry.best_colors;
    out.coloring = normalize_colors(retry.best);
    return out;
  }
  out.colors = search.best_colors;
  out.coloring = normalize_colors(search.best);
  return out;
}

struct MaxSearch {
  const SpanView& v;
  SearchCtl ctl;
  long n;
  Rat best_profit;
  std::vector<char> cur, best;
  std::vector<Rat> load;
  std::vector<Rat> suffix_w;
  std::vector<std::vector<long>> density_order;  // per edge: crossing requests by w/d desc

  MaxSearch(const SpanView& view, const OracleBudget& b) : v(view), ctl(b) {
    n = static_cast<long>(v.span.size());
    best_profit = -1;
    cur.assign(static_cast<size_t>(n), 0);
    load.assign(v.cap.size(), Rat(0));
    suffix_w.assign(static_cast<size_t>(n) + 1, Rat(0));
    for (long i = n - 1; i >= 0; --i)
      suffix_w[static_cast<size_t>(i)] = suffix_w[static_cast<size_t>(i) + 1] + v.profit[static_cast<size_t>(i)];
    density_order.assign(v.cap.size(), {});
    for (long e : v.edge_ids) {
      std::vector<long>& ord = density_order[static_cast<size_t>(e)];
      for (long i = 0; i < n; ++i)
        for (long ee : v.span[static_cast<size_t>(i)])
          if (ee == e) { ord.push_back(i); break; }
      std::stable_sort(ord.begin(), ord.end(), [&](long a, long bidx) {
        return v.profit[static_cast<size_t>(a)] * v.demand[static_cast<size_t>(bidx)] >
               v.profit[static_cast<size_t>(bidx)] * v.demand[static_cast<size_t>(a)];
      });
    }
  }

  // Upper bound on what requests >= i can still add, as min over edges of the
  // fractional-knapsack relaxation at that edge.
  Rat bound_from(long i, const Rat& cur_profit) const {
    Rat simple = cur_profit + suffix_w[static_cast<size_t>(i)];
    Rat best_edge = simple;
    for (long e : v.edge_ids) {
      Rat outside = cur_profit;
      for (long j = i; j < n; ++j) {
        bool crosses = false;
        for (long ee : v.span[static_cast<size_t>(j)])
          if (ee == e) { crosses = true; break; }
        if (!crosses) outside += v.profit[static_cast<size_t>(j)];
      }
      Rat residual = v.cap[static_cast<size_t>(e)] - load[static_cast<size_t>(e)];
      Rat knap = 0;
      for (long j : density_order[static_cast<size_t>(e)]) {
        if (j < i) continue;
        if (residual <= 0) break;
        if (v.demand[static_cast<size_t>(j)] <= residual) {
          knap += v.profit[static_cast<size_t>(j)];
          residual -= v.demand[static_cast<size_t>(j)];
        } else {
          knap += v.profit[static_cast<size_t>(j)] * residual / v.demand[static_cast<size_t>(j)];
          residual = 0;
        }
      }
      Rat cand = outside + knap;
      best_edge = std::min(best_edge, cand);
    }
    return best_edge;
  }

  bool fits(long i) const {
    for (long e : v.span[static_cast<size_t>(i)])
      if (load[static_cast<size_t>(e)] + v.demand[static_cast<size_t>(i)] > v.cap[static_cast<size_t>(e)])
        return false;
    return true;
  }

  void place(long i, int sign) {
    for (long e : v.span[static_cast<size_t>(i)])
      load[static_cast<size_t>(e)] += sign > 0 ? v.demand[static_cast<size_t>(i)] : -v.demand[static_cast<size_t>(i)];
  }

  void dfs(long i, Rat profit) {
    if (ctl.exceeded) return;
    if (i == n) {
      if (profit > best_profit) {
        best_profit = profit;
        best = cur;
      }
      return;
    }
    if (!ctl.tick()) return;
    if (bound_from(i, profit) <= best_profit) return;
    if (fits(i)) {
      cur[static_cast<size_t>(i)] = 1;
      place(i, +1);
      dfs(i + 1, profit + v.profit[static_cast<size_t>(i)]);
      place(i, -1);
      cur[static_cast<size_t>(i)] = 0;
    }
    dfs(i + 1, profit);
  }
};

SelectOracleResult max_ufp_core(const SpanView& v, const OracleBudget& budget) {
  SelectOracleResult out;
  const long n = static_cast<long>(v.span.size());
  if (n > budget.max_requests) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  out.profit = 0;
  if (n == 0) return out;
  MaxSearch search(v, budget);
  search.dfs(0, Rat(0));
  out.nodes = search.ctl.nodes;
  if (search.ctl.exceeded) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  out.profit = search.best_profit < 0 ? Rat(0) : search.best_profit;
  for (long i = 0; i < n; ++i)
    if (!search.best.empty() && search.best[static_cast<size_t>(i)]) out.chosen.push_back(i);
  return out;
}

}  // namespace

OracleBudget OracleBudget::from_env() {
  OracleBudget b;
  if (const char* s = std::getenv("PATHPACK_ORACLE_BUDGET_SEC")) {
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end != s && v > 0) b.max_seconds = v;
  }
  return b;
}

ColoringOracleResult exact_round_ufp(const UfpInstance& inst, const OracleBudget& budget,
                                     long incumbent_colors) {
  return round_ufp_core(make_view(inst), inst.congestion(), budget, incumbent_colors);
}

ColoringOracleResult exact_round_ufp(const TreeUfpInstance& inst, const OracleBudget& budget,
                                     long incumbent_colors) {
  return round_ufp_core(make_view(inst), inst.congestion(), budget, incumbent_colors);
}

SelectOracleResult exact_max_ufp(const UfpInstance& inst, const OracleBudget& budget) {
  return max_ufp_core(make_view(inst), budget);
}

SelectOracleResult exact_max_ufp(const TreeUfpInstance& inst, const OracleBudget& budget) {
  return max_ufp_core(make_view(inst), budget);
}

namespace {

struct BagSearch {
  const BagInstance& inst;
  SearchCtl ctl;
  bool disjoint;
  Rat best_profit;
  std::vector<long> cur, best;                 // request chosen per bag, -1 = none
  std::vector<std::vector<long>> bag_members;  // request indices per bag
  std::vector<Rat> load;
  std::vector<Rat> suffix_profit;

  BagSearch(const BagInstance& bi, const OracleBudget& b, bool disj)
      : inst(bi), ctl(b), disjoint(disj) {
    best_profit = -1;
    bag_members.assign(static_cast<size_t>(inst.bags()), {});
    for (long i = 0; i < inst.size(); ++i)
      bag_members[static_cast<size_t>(inst.bag_of(i))].push_back(i);
    cur.assign(static_cast<size_t>(inst.bags()), -1);
    load.assign(static_cast<size_t>(inst.net().edges()) + 1, Rat(0));
    suffix_profit.assign(static_cast<size_t>(inst.bags()) + 1, Rat(0));
    for (long j = inst.bags() - 1; j >= 0; --j)
      suffix_profit[static_cast<size_t>(j)] =
          suffix_profit[static_cast<size_t>(j) + 1] +
          (bag_members[static_cast<size_t>(j)].empty() ? Rat(0) : inst.bag_profit(j));
  }

  bool fits(long i) const {
    const Request& r = inst.requests()[static_cast<size_t>(i)];
    for (long e = r.s; e < r.t; ++e) {
      if (disjoint) {
        if (load[static_cast<size_t>(e)] > 0) return false;
      } else if (load[static_cast<size_t>(e)] + r.d > inst.net().capacity(e)) {
        return false;
      }
    }
    return true;
  }

  void place(long i, int sign) {
    const Request& r = inst.requests()[static_cast<size_t>(i)];
    for (long e = r.s; e < r.t; ++e)
      load[static_cast<size_t>(e)] += sign > 0 ? r.d : -r.d;
  }

  void dfs(long j, Rat profit) {
    if (ctl.exceeded) return;
    if (j == inst.bags()) {
      if (profit > best_profit) {
        best_profit = profit;
        best = cur;
      }
      return;
    }
    if (!ctl.tick()) return;
    if (profit + suffix_profit[static_cast<size_t>(j)] <= best_profit) return;
    for (long i : bag_members[static_cast<size_t>(j)]) {
      if (!fits(i)) continue;
      cur[static_cast<size_t>(j)] = i;
      place(i, +1);
      dfs(j + 1, profit + inst.bag_profit(j));
      place(i, -1);
      cur[static_cast<size_t>(j)] = -1;
      if (ctl.exceeded) return;
    }
    dfs(j + 1, profit);
  }
};

SelectOracleResult bag_core(const BagInstance& inst, const OracleBudget& budget, bool disjoint) {
  SelectOracleResult out;
  if (inst.size() > budget.max_requests) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  out.profit = 0;
  if (inst.size() == 0) return out;
  BagSearch search(inst, budget, disjoint);
  search.dfs(0, Rat(0));
  out.nodes = search.ctl.nodes;
  if (search.ctl.exceeded) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  if (search.best_profit > 0) {
    out.profit = search.best_profit;
    for (long j = 0; j < inst.bags(); ++j)
      if (search.best[static_cast<size_t>(j)] >= 0)
        out.chosen.push_back(search.best[static_cast<size_t>(j)]);
  }
  return out;
}

// Minimum-cost multiset cover of an integer demand profile.
struct CoverSearch {
  const std::vector<Resource>& res;
  long m;
  SearchCtl ctl;
  std::vector<long> bound;                  // max useful copies per resource
  std::vector<std::vector<long>> suffix;    // [i][e]: max coverage from resources >= i
  Rat best_cost;
  bool found = false;
  std::vector<long> cur, best;
  std::vector<long> cover;
  const Profile& demand;

  CoverSearch(const Profile& dem, const std::vector<Resource>& r, const std::vector<char>& single,
              long edges, const OracleBudget& b, const Rat& cost_cap)
      : res(r), m(edges), ctl(b), demand(dem) {
    best_cost = cost_cap;  // strict improvement required
    const long R = static_cast<long>(res.size());
    long maxd = 0;
    for (long e = 1; e <= m; ++e)
      maxd = std::max(maxd, e < static_cast<long>(demand.size()) ? demand[static_cast<size_t>(e)] : 0);
    bound.assign(static_cast<size_t>(R), 0);
    for (long i = 0; i < R; ++i) {
      long bi = maxd == 0 ? 0 : (maxd + res[static_cast<size_t>(i)].w - 1) / res[static_cast<size_t>(i)].w;
      if (!single.empty() && single[static_cast<size_t>(i)]) bi = std::min<long>(bi, 1);
      bound[static_cast<size_t>(i)] = bi;
    }
    suffix.assign(static_cast<size_t>(R) + 1, std::vector<long>(static_cast<size_t>(m) + 1, 0));
    for (long i = R - 1; i >= 0; --i) {
      suffix[static_cast<size_t>(i)] = suffix[static_cast<size_t>(i) + 1];
      for (long e = res[static_cast<size_t>(i)].s; e < res[static_cast<size_t>(i)].t; ++e)
        suffix[static_cast<size_t>(i)][static_cast<size_t>(e)] +=
            bound[static_cast<size_t>(i)] * res[static_cast<size_t>(i)].w;
    }
    cur.assign(static_cast<size_t>(R), 0);
    cover.assign(static_cast<size_t>(m) + 1, 0);
  }

  long need(long e) const {
    return e < static_cast<long>(demand.size()) ? demand[static_cast<size_t>(e)] : 0;
  }

  void dfs(long i, Rat cost) {
    if (ctl.exceeded) return;
    if (cost >= best_cost) return;
    for (long e = 1; e <= m; ++e)
      if (cover[static_cast<size_t>(e)] + suffix[static_cast<size_t>(i)][static_cast<size_t>(e)] < need(e))
        return;
    if (i == static_cast<long>(res.size())) {
      best_cost = cost;
      best = cur;
      found = true;
      return;
    }
    if (!ctl.tick()) return;
    const Resource& r = res[static_cast<size_t>(i)];
    for (long cnt = 0; cnt <= bound[static_cast<size_t>(i)]; ++cnt) {
      if (cnt > 0)
        for (long e = r.s; e < r.t; ++e) cover[static_cast<size_t>(e)] += r.w;
      cur[static_cast<size_t>(i)] = cnt;
      dfs(i + 1, cost + r.c * Rat(cnt));
      if (ctl.exceeded) break;
    }
    for (long e = r.s; e < r.t; ++e)
      cover[static_cast<size_t>(e)] -= r.w * bound[static_cast<size_t>(i)];
    cur[static_cast<size_t>(i)] = 0;
  }
};

// Runs the profile-cover search; cost_cap bounds acceptable cost (exclusive).
// Returns found/cost/selection, accumulating nodes into *nodes_out.
bool cover_profile(const Profile& demand, const std::vector<Resource>& res,
                   const std::vector<char>& single, long m, const OracleBudget& budget,
                   const Rat& cost_cap, Rat* cost_out, MultisetSelection* sel_out,
                   std::uint64_t* nodes_out, bool* exceeded_out) {
  CoverSearch s(demand, res, single, m, budget, cost_cap);
  s.dfs(0, Rat(0));
  *nodes_out += s.ctl.nodes;
  if (s.ctl.exceeded) {
    *exceeded_out = true;
    return false;
  }
  if (!s.found) return false;
  *cost_out = s.best_cost;
  sel_out->count = s.best;
  return true;
}

Rat huge_cost(const std::vector<Resource>& res, const std::vector<Job>& jobs, long maxd) {
  Rat h = 1;
  for (const Resource& r : res) h += r.c * Rat(maxd + 1);
  for (const Job& j : jobs) h += j.penalty;
  return h;
}

}  // namespace

CoverOracleResult exact_full_cover(const std::vector<Job>& jobs, const std::vector<Resource>& res,
                                   long m, const OracleBudget& budget) {
  validate_jobs(jobs, m);
  validate_resources(res, m);
  CoverOracleResult out;
  if (static_cast<long>(jobs.size()) > budget.max_jobs ||
      static_cast<long>(res.size()) > budget.max_resources) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  Profile p = job_profile(jobs, m);
  long maxd = 0;
  for (long e = 1; e <= m; ++e) maxd = std::max(maxd, p[static_cast<size_t>(e)]);
  Rat cap = huge_cost(res, jobs, maxd);
  bool exceeded = false;
  Rat cost;
  MultisetSelection sel;
  bool ok = cover_profile(p, res, {}, m, budget, cap, &cost, &sel, &out.nodes, &exceeded);
  if (exceeded) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  out.feasible = ok;
  if (ok) {
    out.cost = cost;
    out.selection = sel;
    for (long j = 0; j < static_cast<long>(jobs.size()); ++j) out.covered_jobs.push_back(j);
  }
  return out;
}

CoverOracleResult exact_presall(const std::vector<Job>& jobs, const std::vector<Resource>& res,
                                long m, long k, const OracleBudget& budget) {
  validate_jobs(jobs, m);
  validate_resources(res, m);
  const long n = static_cast<long>(jobs.size());
  if (k < 0 || k > n) throw std::invalid_argument("k out of range");
  CoverOracleResult out;
  if (n > budget.max_jobs || static_cast<long>(res.size()) > budget.max_resources) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  if (k == 0) {
    out.feasible = true;
    out.cost = 0;
    out.selection.count.assign(res.size(), 0);
    return out;
  }
  Profile full = job_profile(jobs, m);
  long maxd = 0;
  for (long e = 1; e <= m; ++e) maxd = std::max(maxd, full[static_cast<size_t>(e)]);
  Rat best = huge_cost(res, jobs, maxd);
  bool found = false;
  bool exceeded = false;
  MultisetSelection best_sel;
  std::vector<long> best_jobs;
  // Lexicographic combinations of size k.
  std::vector<long> idx(static_cast<size_t>(k));
  for (long i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
  while (true) {
    Profile p = job_profile_subset(jobs, idx, m);
    Rat cost;
    MultisetSelection sel;
    if (cover_profile(p, res, {}, m, budget, best, &cost, &sel, &out.nodes, &exceeded)) {
      best = cost;
      best_sel = sel;
      best_jobs = idx;
      found = true;
    }
    if (exceeded) {
      out.status = OracleStatus::BudgetExceeded;
      return out;
    }
    long i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (long j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
  out.feasible = found;
  if (found) {
    out.cost = best;
    out.selection = best_sel;
    out.covered_jobs = best_jobs;
  }
  return out;
}

CoverOracleResult exact_pcresall(const std::vector<Job>& jobs, const std::vector<Resource>& res,
                                 long m, const OracleBudget& budget) {
  validate_jobs(jobs, m);
  validate_resources(res, m);
  const long n = static_cast<long>(jobs.size());
  CoverOracleResult out;
  if (n > budget.max_jobs || static_cast<long>(res.size()) > budget.max_resources) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  Profile full = job_profile(jobs, m);
  long maxd = 0;
  for (long e = 1; e <= m; ++e) maxd = std::max(maxd, full[static_cast<size_t>(e)]);
  Rat best = huge_cost(res, jobs, maxd);
  bool found = false;
  bool exceeded = false;
  MultisetSelection best_sel;
  std::vector<long> best_jobs;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::vector<long> subset;
    Rat penalty = 0;
    for (long j = 0; j < n; ++j) {
      if (mask & (1ul << j)) subset.push_back(j);
      else penalty += jobs[static_cast<size_t>(j)].penalty;
    }
    if (penalty >= best) continue;
    Profile p = job_profile_subset(jobs, subset, m);
    Rat cost;
    MultisetSelection sel;
    if (cover_profile(p, res, {}, m, budget, best - penalty, &cost, &sel, &out.nodes, &exceeded)) {
      best = cost + penalty;
      best_sel = sel;
      best_jobs = subset;
      found = true;
    }
    if (exceeded) {
      out.status = OracleStatus::BudgetExceeded;
      return out;
    }
  }
  out.feasible = found;
  if (found) {
    out.cost = best;
    out.selection = best_sel;
    out.covered_jobs = best_jobs;
  }
  return out;
}

CoverOracleResult exact_profile_cover(const Profile& demand, const std::vector<Resource>& res,
                                      const std::vector<char>& single_copy, long m,
                                      const OracleBudget& budget) {
  validate_resources(res, m);
  if (!single_copy.empty() && single_copy.size() != res.size())
    throw std::invalid_argument("single_copy flag size mismatch");
  CoverOracleResult out;
  if (static_cast<long>(res.size()) > budget.max_resources) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  long maxd = 0;
  for (long e = 1; e <= m; ++e)
    maxd = std::max(maxd, e < static_cast<long>(demand.size()) ? demand[static_cast<size_t>(e)] : 0);
  Rat cap = huge_cost(res, {}, maxd);
  bool exceeded = false;
  Rat cost;
  MultisetSelection sel;
  bool ok = cover_profile(demand, res, single_copy, m, budget, cap, &cost, &sel, &out.nodes, &exceeded);
  if (exceeded) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  out.feasible = ok;
  if (ok) {
    out.cost = cost;
    out.selection = sel;
  }
  return out;
}

SelectOracleResult exact_bag_ufp(const BagInstance& inst, const OracleBudget& budget) {
  return bag_core(inst, budget, false);
}

SelectOracleResult exact_bag_disjoint(const BagInstance& inst, const OracleBudget& budget) {
  return bag_core(inst, budget, true);
}

namespace {

// Exhaustive search for the edge-demand partial cover: long copy counts are
// enumerated first, then one short choice per edge, with cost pruning and a
// suffix coverage bound.
struct LspcSearch {
  const LspcInstance& inst;
  bool slra;
  SearchCtl ctl;
  long m = 0;
  long height = 0;
  std::vector<std::vector<long>> shorts_at;  // short indices per edge
  std::vector<long> max_short_w;             // largest short capacity per edge
  std::vector<long> long_bound;              // useful copy cap per long
  std::vector<long> long_count;
  std::vector<long> short_choice;            // per edge, -1 = none
  std::vector<long> long_cap;                // coverage from longs per edge
  std::vector<long> suffix_ub;               // best possible coverage from e on
  long committed = 0;
  Rat cost = 0;
  bool found = false;
  Rat best_cost;
  std::vector<long> best_longs;
  std::vector<long> best_shorts;

  LspcSearch(const LspcInstance& in, bool single, const OracleBudget& b, const Rat& cap)
      : inst(in), slra(single), ctl(b), best_cost(cap) {
    m = in.edges();
    height = in.height();
    shorts_at.assign(static_cast<size_t>(m) + 1, {});
    max_short_w.assign(static_cast<size_t>(m) + 1, 0);
    for (long i = 0; i < static_cast<long>(in.shorts.size()); ++i) {
      long e = in.shorts[static_cast<size_t>(i)].s;
      shorts_at[static_cast<size_t>(e)].push_back(i);
      max_short_w[static_cast<size_t>(e)] =
          std::max(max_short_w[static_cast<size_t>(e)], in.shorts[static_cast<size_t>(i)].w);
    }
    for (const Resource& r : in.longs)
      long_bound.push_back(height == 0 ? 0 : (height + r.w - 1) / r.w);
    long_count.assign(in.longs.size(), 0);
    short_choice.assign(static_cast<size_t>(m) + 1, -1);
    long_cap.assign(static_cast<size_t>(m) + 1, 0);
    suffix_ub.assign(static_cast<size_t>(m) + 2, 0);
  }

  void dfs_long(long i) {
    if (!ctl.tick()) return;
    if (cost >= best_cost) return;
    if (i == static_cast<long>(inst.longs.size())) {
      for (long e = 1; e <= m; ++e) {
        long acc = 0;
        for (long j = 0; j < static_cast<long>(inst.longs.size()); ++j) {
          const Resource& r = inst.longs[static_cast<size_t>(j)];
          if (r.s <= e && e < r.t) {
            long amt = r.w * long_count[static_cast<size_t>(j)];
            acc = slra ? std::max(acc, amt) : acc + amt;
          }
        }
        long_cap[static_cast<size_t>(e)] = acc;
      }
      suffix_ub[static_cast<size_t>(m) + 1] = 0;
      for (long e = m; e >= 1; --e) {
        long d = inst.demand[static_cast<size_t>(e)];
        suffix_ub[static_cast<size_t>(e)] =
            suffix_ub[static_cast<size_t>(e) + 1] +
            std::min(d, long_cap[static_cast<size_t>(e)] + max_short_w[static_cast<size_t>(e)]);
      }
      dfs_short(1);
      return;
    }
    const Resource& r = inst.longs[static_cast<size_t>(i)];
    for (long c = 0; c <= long_bound[static_cast<size_t>(i)]; ++c) {
      long_count[static_cast<size_t>(i)] = c;
      Rat add = Rat(r.c * Rat(c));
      cost += add;
      dfs_long(i + 1);
      cost -= add;
      if (ctl.exceeded) break;
    }
    long_count[static_cast<size_t>(i)] = 0;
  }

  void dfs_short(long e) {
    if (!ctl.tick()) return;
    if (cost >= best_cost) return;
    if (committed + suffix_ub[static_cast<size_t>(e)] < inst.k) return;
    if (e > m) {
      best_cost = cost;
      best_longs = long_count;
      best_shorts = short_choice;
      found = true;
      return;
    }
    long d = inst.demand[static_cast<size_t>(e)];
    long base = std::min(d, long_cap[static_cast<size_t>(e)]);
    committed += base;
    dfs_short(e + 1);
    committed -= base;
    for (long si : shorts_at[static_cast<size_t>(e)]) {
      const Resource& r = inst.shorts[static_cast<size_t>(si)];
      long gain = std::min(d, long_cap[static_cast<size_t>(e)] + r.w);
      short_choice[static_cast<size_t>(e)] = si;
      committed += gain;
      cost += r.c;
      dfs_short(e + 1);
      cost -= r.c;
      committed -= gain;
      short_choice[static_cast<size_t>(e)] = -1;
      if (ctl.exceeded) break;
    }
  }
};

}  // namespace

LspcOracleResult exact_lspc(const LspcInstance& inst, bool single_assignment,
                            const OracleBudget& budget) {
  validate_lspc(inst);
  LspcOracleResult out;
  const long m = inst.edges();
  if (static_cast<long>(inst.shorts.size() + inst.longs.size()) > budget.max_resources) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  out.short_count.assign(inst.shorts.size(), 0);
  out.long_count.assign(inst.longs.size(), 0);
  out.coverage.assign(static_cast<size_t>(m) + 1, 0);
  if (inst.k == 0) {
    out.feasible = true;
    out.cost = 0;
    return out;
  }
  std::vector<Resource> all(inst.shorts);
  all.insert(all.end(), inst.longs.begin(), inst.longs.end());
  LspcSearch search(inst, single_assignment, budget, huge_cost(all, {}, inst.height()));
  search.dfs_long(0);
  out.nodes = search.ctl.nodes;
  if (search.ctl.exceeded) {
    out.status = OracleStatus::BudgetExceeded;
    return out;
  }
  out.feasible = search.found;
  if (!search.found) return out;
  out.cost = search.best_cost;
  out.long_count = search.best_longs;
  for (long e = 1; e <= m; ++e) {
    long si = search.best_shorts[static_cast<size_t>(e)];
    if (si >= 0) out.short_count[static_cast<size_t>(si)] = 1;
  }
  // Trim the per-edge capacity to a coverage profile of measure exactly k.
  long remaining = inst.k;
  for (long e = 1; e <= m && remaining > 0; ++e) {
    long avail = 0;
    for (long j = 0; j < static_cast<long>(inst.longs.size()); ++j) {
      const Resource& r = inst.longs[static_cast<size_t>(j)];
      if (r.s <= e && e < r.t) {
        long amt = r.w * out.long_count[static_cast<size_t>(j)];
        avail = single_assignment ? std::max(avail, amt) : avail + amt;
      }
    }
    long si = search.best_shorts[static_cast<size_t>(e)];
    if (si >= 0) avail += inst.shorts[static_cast<size_t>(si)].w;
    long take = std::min({inst.demand[static_cast<size_t>(e)], avail, remaining});
    out.coverage[static_cast<size_t>(e)] = take;
    remaining -= take;
  }
  if (remaining != 0) throw std::logic_error("lspc coverage trim fell short");
  return out;
}

}  // namespace pathpack::oracle
