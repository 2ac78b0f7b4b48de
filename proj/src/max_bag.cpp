#include "pathpack/max_bag.hpp"

#include <algorithm>
#include <stdexcept>

#include "pathpack/lp.hpp"
#include "pathpack/round_path.hpp"

namespace pathpack {

namespace {

constexpr long kCrossingBound = 24;  // feasible large sets never exceed this

void require_size(const UfpInstance& inst, DemandSize want) {
  for (long i = 0; i < inst.size(); ++i)
    if (classify_demand(inst, i, rat(1, 4)) != want)
      throw std::invalid_argument(want == DemandSize::Large
                                      ? "small demand in large-only solver"
                                      : "large demand in small-only solver");
}

struct LargeSearch {
  const UfpInstance& inst;
  std::vector<Rat> load;
  std::vector<long> crossing;
  std::vector<Rat> suffix;  // profit left from request i on
  std::vector<long> current;
  std::vector<long> best;
  Rat current_profit;
  Rat best_profit;

  explicit LargeSearch(const UfpInstance& in)
      : inst(in),
        load(static_cast<size_t>(in.net().edges()) + 1, Rat(0)),
        crossing(static_cast<size_t>(in.net().edges()) + 1, 0),
        suffix(static_cast<size_t>(in.size()) + 1, Rat(0)) {
    for (long i = in.size() - 1; i >= 0; --i) {
      Rat s = suffix[static_cast<size_t>(i) + 1] + in.requests()[static_cast<size_t>(i)].w;
      suffix[static_cast<size_t>(i)] = s;
    }
  }

  void dfs(long i) {
    if (i == inst.size()) {
      if (current_profit > best_profit) {
        best = current;
        best_profit = current_profit;
      }
      return;
    }
    // Upper bound: everything from i on joins. Ties keep the first optimum,
    // so equality prunes too.
    if (current_profit + suffix[static_cast<size_t>(i)] <= best_profit) return;
    const Request& q = inst.requests()[static_cast<size_t>(i)];
    bool fits = true;
    for (long e = q.s; e < q.t; ++e) {
      Rat after = load[static_cast<size_t>(e)] + q.d;
      if (after > inst.net().capacity(e)) {
        fits = false;
        break;
      }
    }
    if (fits) {
      for (long e = q.s; e < q.t; ++e)
        if (crossing[static_cast<size_t>(e)] + 1 > kCrossingBound)
          throw std::logic_error("feasible node exceeds the large-demand crossing bound");
      for (long e = q.s; e < q.t; ++e) {
        load[static_cast<size_t>(e)] += q.d;
        ++crossing[static_cast<size_t>(e)];
      }
      current.push_back(i);
      current_profit += q.w;
      dfs(i + 1);
      current_profit -= q.w;
      current.pop_back();
      for (long e = q.s; e < q.t; ++e) {
        load[static_cast<size_t>(e)] -= q.d;
        --crossing[static_cast<size_t>(e)];
      }
    }
    dfs(i + 1);
  }
};

Selection remap(Selection s, const std::vector<long>& ids) {
  for (long& i : s.chosen) i = ids[static_cast<size_t>(i)];
  return s;
}

UfpInstance path_view(const BagInstance& inst) {
  return UfpInstance(inst.net(), inst.requests());
}

void require_bag_size(const BagInstance& inst, DemandSize want) {
  UfpInstance view = path_view(inst);
  require_nba(view);
  require_size(view, want);
}

Rat bag_class_profit(const BagInstance& inst, const std::vector<long>& members) {
  Rat p(0);
  for (long i : members) p += inst.bag_profit(inst.bag_of(i));
  return p;
}

}  // namespace

Selection max_ufp_large(const UfpInstance& inst) {
  require_nba(inst);
  require_size(inst, DemandSize::Large);
  LargeSearch search(inst);
  search.dfs(0);
  Selection out;
  out.chosen = search.best;
  out.profit = search.best_profit;
  return out;
}

Selection max_ufp_small(const UfpInstance& inst) {
  require_nba(inst);
  require_size(inst, DemandSize::Small);
  FractionalSolution lp = solve_ufp_lp(inst);
  FractionalSolution q = quantize(lp, std::max(1L, inst.size()));
  Decomposition dec = convex_decompose(inst, q);
  Selection out;
  if (dec.best < 0) return out;
  out.chosen = dec.classes[static_cast<size_t>(dec.best)];
  out.profit = dec.class_profit[static_cast<size_t>(dec.best)];
  return out;
}

Selection max_ufp_path(const UfpInstance& inst) {
  require_nba(inst);
  std::vector<long> large_ids, small_ids;
  std::vector<Request> large_reqs, small_reqs;
  for (long i = 0; i < inst.size(); ++i) {
    const Request& q = inst.requests()[static_cast<size_t>(i)];
    if (classify_demand(inst, i, rat(1, 4)) == DemandSize::Large) {
      large_ids.push_back(i);
      large_reqs.push_back(q);
    } else {
      small_ids.push_back(i);
      small_reqs.push_back(q);
    }
  }
  Selection large = remap(max_ufp_large(UfpInstance(inst.net(), large_reqs)), large_ids);
  Selection small = remap(max_ufp_small(UfpInstance(inst.net(), small_reqs)), small_ids);
  return large.profit >= small.profit ? large : small;
}

Selection max_ufp_tree(const TreeUfpInstance& inst) {
  require_nba(inst);
  FractionalSolution lp = solve_ufp_lp(inst);
  FractionalSolution q = quantize(lp, std::max(1L, inst.size()));
  Decomposition dec = convex_decompose(inst, q);
  Selection out;
  if (dec.best < 0) return out;
  out.chosen = dec.classes[static_cast<size_t>(dec.best)];
  out.profit = dec.class_profit[static_cast<size_t>(dec.best)];
  return out;
}

Selection bag_disjoint_select(const BagInstance& inst) {
  std::vector<long> order(static_cast<size_t>(inst.size()));
  for (long i = 0; i < inst.size(); ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](long a, long b) {
    const Request& qa = inst.requests()[static_cast<size_t>(a)];
    const Request& qb = inst.requests()[static_cast<size_t>(b)];
    if (qa.t != qb.t) return qa.t < qb.t;
    if (qa.s != qb.s) return qa.s < qb.s;
    return a < b;
  });
  auto overlaps = [&](long a, long b) {
    const Request& qa = inst.requests()[static_cast<size_t>(a)];
    const Request& qb = inst.requests()[static_cast<size_t>(b)];
    return std::max(qa.s, qb.s) < std::min(qa.t, qb.t);
  };

  // Evaluation: keep a request only if its bag profit survives the charges
  // of kept requests it conflicts with (shared edge or shared bag).
  std::vector<long> stack;
  std::vector<Rat> value;
  for (long i : order) {
    Rat residual = inst.bag_profit(inst.bag_of(i));
    for (size_t k = 0; k < stack.size(); ++k)
      if (overlaps(stack[k], i) || inst.bag_of(stack[k]) == inst.bag_of(i))
        residual -= value[k];
    if (residual > 0) {
      stack.push_back(i);
      value.push_back(residual);
    }
  }

  // Selection: newest survivors first, greedily keeping disjointness and
  // one request per bag.
  Selection out;
  std::vector<char> bag_used(static_cast<size_t>(inst.bags()), 0);
  for (size_t k = stack.size(); k-- > 0;) {
    long i = stack[k];
    if (bag_used[static_cast<size_t>(inst.bag_of(i))]) continue;
    bool disjoint = true;
    for (long j : out.chosen) disjoint = disjoint && !overlaps(i, j);
    if (!disjoint) continue;
    out.chosen.push_back(i);
    bag_used[static_cast<size_t>(inst.bag_of(i))] = 1;
    out.profit += inst.bag_profit(inst.bag_of(i));
  }
  std::sort(out.chosen.begin(), out.chosen.end());
  return out;
}

Selection bag_ufp_large(const BagInstance& inst) {
  require_bag_size(inst, DemandSize::Large);
  return bag_disjoint_select(inst);
}

Selection bag_ufp_small(const BagInstance& inst) {
  require_bag_size(inst, DemandSize::Small);
  FractionalSolution lp = solve_bag_lp(inst);
  FractionalSolution q = quantize(lp, std::max(1L, inst.size()));
  std::vector<Request> copies;
  std::vector<long> origin, bag_group;
  for (long i = 0; i < inst.size(); ++i)
    for (long tally = 0; tally < q.alpha[static_cast<size_t>(i)]; ++tally) {
      copies.push_back(inst.requests()[static_cast<size_t>(i)]);
      origin.push_back(i);
      bag_group.push_back(inst.bag_of(i));
    }
  Selection out;
  if (copies.empty()) return out;
  UfpInstance expanded(inst.net(), copies);
  Coloring col = color_small_arbitrary(expanded, bag_group, 17 * q.K);
  std::vector<std::vector<long>> classes(static_cast<size_t>(col.classes));
  for (size_t j = 0; j < origin.size(); ++j)
    classes[static_cast<size_t>(col.color[j] - 1)].push_back(origin[j]);
  long best = -1;
  Rat best_profit(0);
  for (size_t k = 0; k < classes.size(); ++k) {
    Rat p = bag_class_profit(inst, classes[k]);
    if (best < 0 || p > best_profit) {
      best = static_cast<long>(k);
      best_profit = p;
    }
  }
  out.chosen = classes[static_cast<size_t>(best)];
  out.profit = best_profit;
  return out;
}

Selection bag_ufp_path(const BagInstance& inst) {
  UfpInstance view = path_view(inst);
  require_nba(view);
  std::vector<long> large_ids, small_ids;
  std::vector<Request> large_reqs, small_reqs;
  std::vector<long> large_bags, small_bags;
  for (long i = 0; i < inst.size(); ++i) {
    const Request& q = inst.requests()[static_cast<size_t>(i)];
    if (classify_demand(view, i, rat(1, 4)) == DemandSize::Large) {
      large_ids.push_back(i);
      large_reqs.push_back(q);
      large_bags.push_back(inst.bag_of(i));
    } else {
      small_ids.push_back(i);
      small_reqs.push_back(q);
      small_bags.push_back(inst.bag_of(i));
    }
  }
  std::vector<Rat> profits;
  for (long j = 0; j < inst.bags(); ++j) profits.push_back(inst.bag_profit(j));
  BagInstance large_sub(inst.net(), profits, large_reqs, large_bags);
  BagInstance small_sub(inst.net(), profits, small_reqs, small_bags);
  Selection large = remap(bag_ufp_large(large_sub), large_ids);
  Selection small = remap(bag_ufp_small(small_sub), small_ids);
  return large.profit >= small.profit ? large : small;
}

}  // namespace pathpack
