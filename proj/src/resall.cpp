#include "pathpack/resall.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "pathpack/oracle.hpp"

namespace pathpack {

namespace {

bool improves(const std::optional<Rat>& cand, const std::optional<Rat>& best) {
  if (!cand) return false;
  if (!best) return true;
  return *cand < *best;
}

long profile_at(const Profile& p, long e) {
  return e < static_cast<long>(p.size()) ? p[static_cast<size_t>(e)] : 0;
}

// True when every demanded edge can be saturated at all: some multi-copy
// resource spans it, or the single-copy resources spanning it suffice alone.
bool profile_coverable(const Profile& demand, const std::vector<Resource>& res,
                       const std::vector<char>& single, long m) {
  for (long e = 1; e <= m; ++e) {
    long need = profile_at(demand, e);
    if (need <= 0) continue;
    long from_single = 0;
    bool multi = false;
    for (long i = 0; i < static_cast<long>(res.size()); ++i) {
      const Resource& r = res[static_cast<size_t>(i)];
      if (!(r.s <= e && e < r.t)) continue;
      if (!single.empty() && single[static_cast<size_t>(i)]) from_single += r.w;
      else multi = true;
    }
    if (!multi && from_single < need) return false;
  }
  return true;
}

// Density greedy: repeatedly add the copy with the best cost per unit of
// remaining deficit closed, then drop copies that became redundant, most
// expensive first. Callers check coverability beforehand.
std::optional<MultisetSelection> greedy_profile_cover(const Profile& demand,
                                                      const std::vector<Resource>& res,
                                                      const std::vector<char>& single, long m) {
  MultisetSelection sel;
  sel.count.assign(res.size(), 0);
  std::vector<long> need(static_cast<size_t>(m) + 1, 0);
  for (long e = 1; e <= m; ++e) need[static_cast<size_t>(e)] = profile_at(demand, e);
  std::vector<long> have(static_cast<size_t>(m) + 1, 0);
  while (true) {
    bool deficit = false;
    for (long e = 1; e <= m; ++e)
      if (have[static_cast<size_t>(e)] < need[static_cast<size_t>(e)]) { deficit = true; break; }
    if (!deficit) break;
    long best = -1;
    Rat best_cost;
    long best_gain = 0;
    for (long i = 0; i < static_cast<long>(res.size()); ++i) {
      const Resource& r = res[static_cast<size_t>(i)];
      if (!single.empty() && single[static_cast<size_t>(i)] &&
          sel.count[static_cast<size_t>(i)] > 0)
        continue;
      long gain = 0;
      for (long e = r.s; e < r.t; ++e) {
        long gap = need[static_cast<size_t>(e)] - have[static_cast<size_t>(e)];
        if (gap > 0) gain += std::min(r.w, gap);
      }
      if (gain <= 0) continue;
      // Lower cost per unit of gain wins; first index breaks ties.
      if (best < 0 || Rat(r.c * Rat(best_gain)) < Rat(best_cost * Rat(gain))) {
        best = i;
        best_cost = r.c;
        best_gain = gain;
      }
    }
    if (best < 0) return std::nullopt;
    ++sel.count[static_cast<size_t>(best)];
    const Resource& r = res[static_cast<size_t>(best)];
    for (long e = r.s; e < r.t; ++e) have[static_cast<size_t>(e)] += r.w;
  }
  std::vector<long> order(res.size());
  for (long i = 0; i < static_cast<long>(res.size()); ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](long x, long y) {
    const Rat& cx = res[static_cast<size_t>(x)].c;
    const Rat& cy = res[static_cast<size_t>(y)].c;
    if (cx != cy) return cx > cy;
    return x > y;
  });
  for (long i : order) {
    const Resource& r = res[static_cast<size_t>(i)];
    while (sel.count[static_cast<size_t>(i)] > 0) {
      bool removable = true;
      for (long e = r.s; e < r.t; ++e)
        if (have[static_cast<size_t>(e)] - r.w < need[static_cast<size_t>(e)]) {
          removable = false;
          break;
        }
      if (!removable) break;
      --sel.count[static_cast<size_t>(i)];
      for (long e = r.s; e < r.t; ++e) have[static_cast<size_t>(e)] -= r.w;
    }
  }
  return sel;
}

// Greedy cover, replaced by the exact search result when the instance fits
// the oracle budget and the search comes back cheaper.
std::optional<CoverSolution> try_profile_cover(const Profile& demand,
                                               const std::vector<Resource>& res,
                                               const std::vector<char>& single, long m) {
  if (!profile_coverable(demand, res, single, m)) return std::nullopt;
  std::optional<MultisetSelection> sel = greedy_profile_cover(demand, res, single, m);
  if (!sel) return std::nullopt;
  CoverSolution out;
  out.selection = *sel;
  out.cost = out.selection.cost(res);
  oracle::OracleBudget budget = oracle::OracleBudget::from_env();
  if (static_cast<long>(res.size()) <= budget.max_resources) {
    oracle::CoverOracleResult exact = oracle::exact_profile_cover(demand, res, single, m, budget);
    if (exact.status == oracle::OracleStatus::Ok && exact.feasible && exact.cost < out.cost) {
      out.selection = exact.selection;
      out.cost = exact.cost;
    }
  }
  return out;
}

std::optional<CoverSolution> try_full_cover(const std::vector<Job>& jobs,
                                            const std::vector<Resource>& res, long m) {
  return try_profile_cover(job_profile(jobs, m), res, {}, m);
}

// Best cover of exactly k members; candidate discard sets are a prefix by
// leftmost start joined with a prefix by rightmost end.
std::optional<PartialCoverSolution> try_single_mountain(const std::vector<Job>& jobs,
                                                        const Mountain& mtn,
                                                        const std::vector<Resource>& res, long m,
                                                        long k) {
  const long n = static_cast<long>(mtn.jobs.size());
  if (k == 0) {
    PartialCoverSolution out;
    out.selection.count.assign(res.size(), 0);
    out.cost = 0;
    return out;
  }
  std::vector<long> by_start(mtn.jobs);
  std::sort(by_start.begin(), by_start.end(), [&](long x, long y) {
    if (jobs[static_cast<size_t>(x)].s != jobs[static_cast<size_t>(y)].s)
      return jobs[static_cast<size_t>(x)].s < jobs[static_cast<size_t>(y)].s;
    return x < y;
  });
  std::vector<long> by_end(mtn.jobs);
  std::sort(by_end.begin(), by_end.end(), [&](long x, long y) {
    if (jobs[static_cast<size_t>(x)].t != jobs[static_cast<size_t>(y)].t)
      return jobs[static_cast<size_t>(x)].t > jobs[static_cast<size_t>(y)].t;
    return x < y;
  });
  const long discard_target = n - k;
  std::optional<PartialCoverSolution> best;
  for (long q1 = 0; q1 <= n; ++q1) {
    for (long q2 = 0; q2 <= n; ++q2) {
      std::set<long> discard;
      for (long i = 0; i < q1; ++i) discard.insert(by_start[static_cast<size_t>(i)]);
      for (long i = 0; i < q2; ++i) discard.insert(by_end[static_cast<size_t>(i)]);
      if (static_cast<long>(discard.size()) != discard_target) continue;
      std::vector<long> keep;
      std::vector<Job> kept;
      for (long idx : mtn.jobs)
        if (!discard.count(idx)) {
          keep.push_back(idx);
          kept.push_back(jobs[static_cast<size_t>(idx)]);
        }
      std::optional<CoverSolution> cover = try_full_cover(kept, res, m);
      if (!cover) continue;
      if (!best || cover->cost < best->cost) {
        best.emplace();
        best->selection = cover->selection;
        best->covered = keep;
        best->cost = cover->cost;
      }
    }
  }
  return best;
}

}  // namespace

bool is_mountain(const std::vector<Job>& jobs, const Mountain& mtn) {
  if (mtn.jobs.empty()) return false;
  const long n = static_cast<long>(jobs.size());
  std::set<long> seen;
  long lo = 0, hi = 0;
  bool first = true;
  for (long idx : mtn.jobs) {
    if (idx < 0 || idx >= n) return false;
    if (!seen.insert(idx).second) return false;
    const Job& j = jobs[static_cast<size_t>(idx)];
    if (j.t - j.s < 1) return false;
    if (!(j.s <= mtn.peak && mtn.peak <= j.t - 1)) return false;
    lo = first ? j.s : std::min(lo, j.s);
    hi = first ? j.t - 1 : std::max(hi, j.t - 1);
    first = false;
  }
  if (lo != mtn.lo || hi != mtn.hi) return false;
  // Member counts rise to the peak and fall after it.
  std::vector<long> count(static_cast<size_t>(hi - lo + 1), 0);
  for (long idx : mtn.jobs) {
    const Job& j = jobs[static_cast<size_t>(idx)];
    for (long e = j.s; e <= j.t - 1; ++e) ++count[static_cast<size_t>(e - lo)];
  }
  for (long e = lo; e < mtn.peak; ++e)
    if (count[static_cast<size_t>(e - lo)] > count[static_cast<size_t>(e + 1 - lo)]) return false;
  for (long e = mtn.peak; e < hi; ++e)
    if (count[static_cast<size_t>(e - lo)] < count[static_cast<size_t>(e + 1 - lo)]) return false;
  return true;
}

bool is_mountain_range(const std::vector<Job>& jobs, const MountainRange& range) {
  if (range.mountains.empty()) return false;
  for (const Mountain& mtn : range.mountains)
    if (!is_mountain(jobs, mtn)) return false;
  for (size_t i = 0; i + 1 < range.mountains.size(); ++i)
    if (range.mountains[i].hi >= range.mountains[i + 1].lo) return false;
  return true;
}

std::vector<MountainRange> mountain_decompose(const std::vector<Job>& jobs, long m) {
  validate_jobs(jobs, m);
  if (jobs.empty()) throw std::invalid_argument("no jobs to decompose");
  long lmin = 0, lmax = 0;
  for (const Job& j : jobs) {
    long len = j.t - j.s;
    if (len < 1) throw std::invalid_argument("job spans no edge");
    lmin = lmin == 0 ? len : std::min(lmin, len);
    lmax = std::max(lmax, len);
  }
  long g = 0;
  while ((lmin << g) < lmax) ++g;
  const long categories = std::max(1L, g);
  // Bucket jobs by (category, class): the class is the lowest multiple of the
  // category base contained in the job's edge span.
  std::map<std::pair<long, long>, std::vector<long>> buckets;
  for (long idx = 0; idx < static_cast<long>(jobs.size()); ++idx) {
    const Job& j = jobs[static_cast<size_t>(idx)];
    long len = j.t - j.s;
    long cat = 1;
    while (cat < categories && len >= (lmin << cat)) ++cat;
    long alpha = lmin << (cat - 1);
    long mult = ((j.s + alpha - 1) / alpha) * alpha;
    if (mult > j.t - 1) throw std::logic_error("job misses its class edge");
    buckets[{cat, mult / alpha}].push_back(idx);
  }
  std::vector<MountainRange> out;
  for (long cat = 1; cat <= categories; ++cat) {
    long alpha = lmin << (cat - 1);
    for (long residue = 0; residue < 4; ++residue) {
      MountainRange range;
      for (const auto& [key, members] : buckets) {
        if (key.first != cat || key.second % 4 != residue) continue;
        Mountain mtn;
        mtn.jobs = members;
        mtn.peak = key.second * alpha;
        mtn.lo = jobs[static_cast<size_t>(members.front())].s;
        mtn.hi = 0;
        for (long idx : members) {
          mtn.lo = std::min(mtn.lo, jobs[static_cast<size_t>(idx)].s);
          mtn.hi = std::max(mtn.hi, jobs[static_cast<size_t>(idx)].t - 1);
        }
        range.mountains.push_back(std::move(mtn));
      }
      if (!range.mountains.empty()) out.push_back(std::move(range));
    }
  }
  if (static_cast<long>(out.size()) > 4 * categories)
    throw std::logic_error("decomposition produced too many ranges");
  return out;
}

CoverSolution full_cover_resall(const std::vector<Job>& jobs, const std::vector<Resource>& res,
                                long m) {
  validate_jobs(jobs, m);
  validate_resources(res, m);
  std::optional<CoverSolution> out = try_full_cover(jobs, res, m);
  if (!out) throw std::invalid_argument("no resource spans a demanded edge");
  return *out;
}

PartialCoverSolution single_mountain_partial(const std::vector<Job>& jobs, const Mountain& mtn,
                                             const std::vector<Resource>& res, long m, long k) {
  validate_jobs(jobs, m);
  validate_resources(res, m);
  if (!is_mountain(jobs, mtn)) throw std::invalid_argument("jobs do not form a mountain");
  if (k < 0 || k > static_cast<long>(mtn.jobs.size()))
    throw std::invalid_argument("k out of range");
  std::optional<PartialCoverSolution> out = try_single_mountain(jobs, mtn, res, m, k);
  if (!out) throw std::invalid_argument("cannot cover the requested number of jobs");
  return *out;
}

long LspcInstance::height() const {
  long h = 0;
  for (long e = 1; e <= edges(); ++e) h = std::max(h, demand[static_cast<size_t>(e)]);
  return h;
}

long LspcInstance::total_demand() const {
  long total = 0;
  for (long e = 1; e <= edges(); ++e) total += demand[static_cast<size_t>(e)];
  return total;
}

void validate_lspc(const LspcInstance& inst) {
  if (inst.demand.empty()) throw std::invalid_argument("demand profile must be 1-based");
  const long m = inst.edges();
  for (long e = 1; e <= m; ++e)
    if (inst.demand[static_cast<size_t>(e)] < 0) throw std::invalid_argument("negative demand");
  validate_resources(inst.shorts, m);
  validate_resources(inst.longs, m);
  for (const Resource& r : inst.shorts)
    if (r.t != r.s + 1) throw std::invalid_argument("short resource must span one edge");
  if (inst.k < 0) throw std::invalid_argument("negative partiality");
  if (inst.k > inst.total_demand())
    throw std::invalid_argument("partiality exceeds the total demand");
}

LspcCheckResult check_lspc_solution(const LspcInstance& inst, const LspcSolution& sol,
                                    bool single_assignment) {
  validate_lspc(inst);
  LspcCheckResult bad;
  bad.ok = false;
  if (!sol.feasible) {
    bad.reason = "solution marked infeasible";
    return bad;
  }
  if (sol.short_pick.count.size() != inst.shorts.size() ||
      sol.long_pick.count.size() != inst.longs.size()) {
    bad.reason = "selection size mismatch";
    return bad;
  }
  if (sol.coverage.size() != inst.demand.size()) {
    bad.reason = "coverage size mismatch";
    return bad;
  }
  const long m = inst.edges();
  for (long c : sol.short_pick.count)
    if (c < 0 || c > 1) {
      bad.reason = "short copy count out of range";
      return bad;
    }
  for (long c : sol.long_pick.count)
    if (c < 0) {
      bad.reason = "negative long count";
      return bad;
    }
  long total = 0;
  for (long e = 1; e <= m; ++e) {
    long cov = sol.coverage[static_cast<size_t>(e)];
    if (cov < 0) {
      bad.reason = "negative coverage";
      return bad;
    }
    if (cov > inst.demand[static_cast<size_t>(e)]) {
      bad.reason = "coverage exceeds demand";
      return bad;
    }
    total += cov;
    long from_short = 0, picked_here = 0;
    for (long i = 0; i < static_cast<long>(inst.shorts.size()); ++i) {
      if (sol.short_pick.count[static_cast<size_t>(i)] == 0) continue;
      if (inst.shorts[static_cast<size_t>(i)].s != e) continue;
      ++picked_here;
      from_short += inst.shorts[static_cast<size_t>(i)].w;
    }
    if (picked_here > 1) {
      bad.reason = "two shorts at one edge";
      return bad;
    }
    long from_long = 0, best_single = 0;
    for (long i = 0; i < static_cast<long>(inst.longs.size()); ++i) {
      const Resource& r = inst.longs[static_cast<size_t>(i)];
      long c = sol.long_pick.count[static_cast<size_t>(i)];
      if (c == 0 || !(r.s <= e && e < r.t)) continue;
      from_long += r.w * c;
      best_single = std::max(best_single, r.w * c);
    }
    if (from_short + from_long < cov) {
      bad.reason = "capacity short at an edge";
      return bad;
    }
    if (single_assignment && cov - from_short > 0 && best_single < cov - from_short) {
      bad.reason = "no single long absorbs the residual at an edge";
      return bad;
    }
  }
  if (total < inst.k) {
    bad.reason = "coverage misses the target";
    return bad;
  }
  return {};
}

std::optional<Rat> knapsack_gamma(long e, long q, long h, const std::vector<Resource>& shorts) {
  if (q <= h) return Rat(0);
  const long gap = q - h;
  std::optional<Rat> best;
  for (const Resource& r : shorts) {
    if (r.s != e || r.w < gap) continue;
    if (!best || r.c < *best) best = r.c;
  }
  return best;
}

long DpTables::range_index(long a, long b) const { return (a - 1) * m + (b - 1); }

long DpTables::cell_index(long a, long b, long q, long h) const {
  return (range_index(a, b) * (qmax + 1) + q) * (hmax + 1) + h;
}

std::optional<Rat> DpTables::m_entry(long a, long b, long q, long h) const {
  if (a < 1 || b < a || b > m || q < 0 || q > qmax || h < 0 || h > hmax)
    throw std::out_of_range("table index out of range");
  return m_cost[static_cast<size_t>(cell_index(a, b, q, h))];
}

std::optional<Rat> DpTables::a_entry(long a, long b, long q, long h) const {
  if (a < 1 || b < a || b > m || q < 0 || q > qmax || h < 0 || h > hmax)
    throw std::out_of_range("table index out of range");
  return a_cost[static_cast<size_t>(cell_index(a, b, q, h))];
}

std::optional<Rat> DpTables::gamma_entry(long e, long q, long h) const {
  if (e < 1 || e > m || q < 0 || q > qmax || h < 0 || h > hmax)
    throw std::out_of_range("table index out of range");
  return gamma_cost[static_cast<size_t>(((e - 1) * (qmax + 1) + q) * (hmax + 1) + h)];
}

bool DpTables::fill_order_is_topological() const {
  for (size_t i = 0; i < fills.size(); ++i) {
    for (size_t j = i + 1; j < fills.size(); ++j) {
      const FillStep& zi = fills[i];
      const FillStep& zj = fills[j];
      // The later entry must never be one the earlier entry may depend on.
      bool contained = zj.a >= zi.a && zj.b <= zi.b;
      bool same = zj.a == zi.a && zj.b == zi.b;
      if (contained && !same) return false;
      if (same && zj.q < zi.q) return false;
      if (same && zj.q == zi.q && zj.h > zi.h) return false;
    }
  }
  return true;
}

namespace {

// Choice records for reconstructing a dynamic-program solution.
struct MChoice {
  int kind = -1;  // 0 base, 1 shorts only, 2 split, 3 long
  long cut = 0, q1 = 0;
  long li = -1, alpha = 0, q2 = 0, q3 = 0;
};

struct AChoice {
  long q1 = -1;
  long short_idx = -1;
};

struct LspcDp {
  const LspcInstance& inst;
  long m, height, target;
  DpTables t;
  std::vector<char> m_filled, a_filled;
  std::vector<MChoice> mch;
  std::vector<AChoice> ach;
  std::vector<long> dsum;

  explicit LspcDp(const LspcInstance& in)
      : inst(in), m(in.edges()), height(in.height()), target(in.k) {
    t.m = m;
    t.qmax = target;
    t.hmax = height;
    size_t cells = static_cast<size_t>(m) * static_cast<size_t>(m) *
                   static_cast<size_t>(target + 1) * static_cast<size_t>(height + 1);
    t.m_cost.assign(cells, std::nullopt);
    t.a_cost.assign(cells, std::nullopt);
    t.gamma_cost.assign(static_cast<size_t>(m) * static_cast<size_t>(target + 1) *
                            static_cast<size_t>(height + 1),
                        std::nullopt);
    m_filled.assign(cells, 0);
    a_filled.assign(cells, 0);
    mch.assign(cells, {});
    ach.assign(cells, {});
    dsum.assign(static_cast<size_t>(m) + 1, 0);
    for (long e = 1; e <= m; ++e)
      dsum[static_cast<size_t>(e)] =
          dsum[static_cast<size_t>(e) - 1] + in.demand[static_cast<size_t>(e)];
  }

  long demand_sum(long a, long b) const {
    return dsum[static_cast<size_t>(b)] - dsum[static_cast<size_t>(a) - 1];
  }

  std::optional<Rat> read_m(long a, long b, long q, long h) const {
    if (b < a) return q == 0 ? std::optional<Rat>(Rat(0)) : std::nullopt;
    size_t ci = static_cast<size_t>(t.cell_index(a, b, q, h));
    if (!m_filled[ci]) throw std::logic_error("dp entry read before fill");
    return t.m_cost[ci];
  }

  std::optional<Rat> read_a(long a, long b, long q, long h) const {
    if (b < a) return q == 0 ? std::optional<Rat>(Rat(0)) : std::nullopt;
    size_t ci = static_cast<size_t>(t.cell_index(a, b, q, h));
    if (!a_filled[ci]) throw std::logic_error("dp entry read before fill");
    return t.a_cost[ci];
  }

  // Cheapest single short closing the gap at e, with its index.
  std::pair<std::optional<Rat>, long> gamma_pick(long e, long q, long h) const {
    if (q <= h) return {Rat(0), -1};
    const long gap = q - h;
    std::optional<Rat> best;
    long best_idx = -1;
    for (long i = 0; i < static_cast<long>(inst.shorts.size()); ++i) {
      const Resource& r = inst.shorts[static_cast<size_t>(i)];
      if (r.s != e || r.w < gap) continue;
      if (!best || r.c < *best) {
        best = r.c;
        best_idx = i;
      }
    }
    return {best, best_idx};
  }

  void fill() {
    for (long e = 1; e <= m; ++e)
      for (long q = 0; q <= target; ++q)
        for (long h = 0; h <= height; ++h)
          t.gamma_cost[static_cast<size_t>(((e - 1) * (target + 1) + q) * (height + 1) + h)] =
              knapsack_gamma(e, q, h, inst.shorts);
    // Shorts-only table: peel the rightmost edge.
    for (long a = 1; a <= m; ++a) {
      for (long b = a; b <= m; ++b) {
        for (long q = 0; q <= target; ++q) {
          for (long h = 0; h <= height; ++h) {
            std::optional<Rat> best;
            AChoice choice;
            long cap = std::min(q, inst.demand[static_cast<size_t>(b)]);
            for (long q1 = 0; q1 <= cap; ++q1) {
              std::optional<Rat> rest = read_a(a, b - 1, q - q1, h);
              if (!rest) continue;
              auto [gc, gi] = gamma_pick(b, q1, h);
              if (!gc) continue;
              Rat total = Rat(*rest + *gc);
              if (!best || total < *best) {
                best = total;
                choice.q1 = q1;
                choice.short_idx = gi;
              }
            }
            size_t ci = static_cast<size_t>(t.cell_index(a, b, q, h));
            t.a_cost[ci] = best;
            ach[ci] = choice;
            a_filled[ci] = 1;
          }
        }
      }
    }
    // Main table: subranges first, then larger measures, then smaller
    // absorbed heights.
    for (long len = 0; len < m; ++len) {
      for (long a = 1; a + len <= m; ++a) {
        long b = a + len;
        for (long q = 0; q <= target; ++q) {
          for (long h = height; h >= 0; --h) fill_m(a, b, q, h);
        }
      }
    }
  }

  void fill_m(long a, long b, long q, long h) {
    std::optional<Rat> best;
    MChoice choice;
    if (q == 0) {
      best = Rat(0);
      choice.kind = 0;
    } else if (h == height) {
      // The enclosing long already absorbs every residual; any measure up to
      // the available demand is free.
      if (q <= demand_sum(a, b)) {
        best = Rat(0);
        choice.kind = 0;
      }
    } else {
      std::optional<Rat> shorts_only = read_a(a, b, q, h);
      if (improves(shorts_only, best)) {
        best = shorts_only;
        choice = {};
        choice.kind = 1;
      }
      for (long cut = a; cut < b; ++cut) {
        for (long q1 = 0; q1 <= q; ++q1) {
          std::optional<Rat> left = read_m(a, cut, q1, h);
          if (!left) continue;
          std::optional<Rat> right = read_m(cut + 1, b, q - q1, h);
          if (!right) continue;
          Rat total = Rat(*left + *right);
          if (!best || total < *best) {
            best = total;
            choice = {};
            choice.kind = 2;
            choice.cut = cut;
            choice.q1 = q1;
          }
        }
      }
      for (long li = 0; li < static_cast<long>(inst.longs.size()); ++li) {
        const Resource& r = inst.longs[static_cast<size_t>(li)];
        long ms = std::max(a, r.s);
        long mt = std::min(b, r.t - 1);
        if (ms > mt) continue;
        long alpha_max = r.w > 0 ? (height + r.w - 1) / r.w : 0;
        for (long alpha = 1; alpha <= alpha_max; ++alpha) {
          if (alpha * r.w <= h) continue;
          long hp = std::min(alpha * r.w, height);
          Rat copies_cost = Rat(r.c * Rat(alpha));
          for (long q1 = 0; q1 <= q; ++q1) {
            std::optional<Rat> left = read_a(a, ms - 1, q1, h);
            if (!left) continue;
            for (long q2 = 0; q2 + q1 <= q; ++q2) {
              std::optional<Rat> mid = read_m(ms, mt, q2, hp);
              if (!mid) continue;
              long q3 = q - q1 - q2;
              std::optional<Rat> right = read_a(mt + 1, b, q3, h);
              if (!right) continue;
              Rat total = Rat(copies_cost + *left + *mid + *right);
              if (!best || total < *best) {
                best = total;
                choice = {};
                choice.kind = 3;
                choice.li = li;
                choice.alpha = alpha;
                choice.q1 = q1;
                choice.q2 = q2;
                choice.q3 = q3;
              }
            }
          }
        }
      }
    }
    size_t ci = static_cast<size_t>(t.cell_index(a, b, q, h));
    t.m_cost[ci] = best;
    mch[ci] = choice;
    m_filled[ci] = 1;
    t.fills.push_back({a, b, q, h});
  }

  void build_a(long a, long b, long q, long h, LspcSolution* out) const {
    if (b < a) {
      if (q != 0) throw std::logic_error("dp rebuild on unreachable entry");
      return;
    }
    const AChoice& c = ach[static_cast<size_t>(t.cell_index(a, b, q, h))];
    if (c.q1 < 0) throw std::logic_error("dp rebuild on unreachable entry");
    out->coverage[static_cast<size_t>(b)] += c.q1;
    if (c.short_idx >= 0) {
      if (out->short_pick.count[static_cast<size_t>(c.short_idx)] != 0)
        throw std::logic_error("short resource picked twice");
      out->short_pick.count[static_cast<size_t>(c.short_idx)] = 1;
    }
    build_a(a, b - 1, q - c.q1, h, out);
  }

  void build_m(long a, long b, long q, long h, LspcSolution* out) const {
    if (b < a) return;
    const MChoice& c = mch[static_cast<size_t>(t.cell_index(a, b, q, h))];
    switch (c.kind) {
      case 0: {
        // Free placement under a saturating long: spread the measure.
        long rem = q;
        for (long e = a; e <= b && rem > 0; ++e) {
          long take = std::min(inst.demand[static_cast<size_t>(e)], rem);
          out->coverage[static_cast<size_t>(e)] += take;
          rem -= take;
        }
        if (rem != 0) throw std::logic_error("dp rebuild on unreachable entry");
        return;
      }
      case 1:
        build_a(a, b, q, h, out);
        return;
      case 2:
        build_m(a, c.cut, c.q1, h, out);
        build_m(c.cut + 1, b, q - c.q1, h, out);
        return;
      case 3: {
        const Resource& r = inst.longs[static_cast<size_t>(c.li)];
        out->long_pick.count[static_cast<size_t>(c.li)] += c.alpha;
        long ms = std::max(a, r.s);
        long mt = std::min(b, r.t - 1);
        long hp = std::min(c.alpha * r.w, height);
        build_a(a, ms - 1, c.q1, h, out);
        build_m(ms, mt, c.q2, hp, out);
        build_a(mt + 1, b, c.q3, h, out);
        return;
      }
      default:
        throw std::logic_error("dp rebuild on unreachable entry");
    }
  }
};

}  // namespace

LspcSolution lspc_solve(const LspcInstance& inst, DpTables* tables) {
  validate_lspc(inst);
  LspcSolution out;
  out.short_pick.count.assign(inst.shorts.size(), 0);
  out.long_pick.count.assign(inst.longs.size(), 0);
  out.coverage.assign(inst.demand.size(), 0);
  const long m = inst.edges();
  if (m == 0) {
    if (tables) *tables = DpTables{};
    out.feasible = true;
    out.cost = 0;
    return out;
  }
  LspcDp dp(inst);
  dp.fill();
  std::optional<Rat> answer = dp.read_m(1, m, inst.k, 0);
  if (tables) *tables = dp.t;
  if (!answer) return out;
  dp.build_m(1, m, inst.k, 0, &out);
  out.feasible = true;
  out.cost = *answer;
  Rat paid = Rat(out.short_pick.cost(inst.shorts) + out.long_pick.cost(inst.longs));
  if (paid != out.cost) throw std::logic_error("dp cost does not match its selection");
  long total = 0;
  for (long e = 1; e <= m; ++e) total += out.coverage[static_cast<size_t>(e)];
  if (total != inst.k) throw std::logic_error("dp coverage misses the target");
  LspcCheckResult check = check_lspc_solution(inst, out, true);
  if (!check.ok) throw std::logic_error("dp produced an invalid solution: " + check.reason);
  return out;
}

LspcSolution lspc_solve(const LspcInstance& inst) { return lspc_solve(inst, nullptr); }

RangeReduction reduce_range_to_lspc(const std::vector<Job>& jobs, const MountainRange& range,
                                    const std::vector<Resource>& res, long m) {
  validate_jobs(jobs, m);
  validate_resources(res, m);
  if (!is_mountain_range(jobs, range))
    throw std::invalid_argument("jobs do not form a mountain range");
  const long r = static_cast<long>(range.mountains.size());
  RangeReduction red;
  red.mountains = range.mountains;
  red.edges = m;
  red.resources = static_cast<long>(res.size());
  red.lspc.demand.assign(static_cast<size_t>(r) + 1, 0);
  for (long p = 0; p < r; ++p)
    red.lspc.demand[static_cast<size_t>(p) + 1] =
        static_cast<long>(range.mountains[static_cast<size_t>(p)].jobs.size());
  // Split every original resource into per-mountain clips plus one middle
  // piece spanning the fully covered mountains.
  std::vector<std::vector<long>> narrow_of(static_cast<size_t>(r));
  for (long ri = 0; ri < static_cast<long>(res.size()); ++ri) {
    const Resource& orig = res[static_cast<size_t>(ri)];
    long plo = -1, phi = -1;
    for (long p = 0; p < r; ++p) {
      const Mountain& mtn = range.mountains[static_cast<size_t>(p)];
      if (orig.s <= mtn.hi && orig.t - 1 >= mtn.lo) {
        if (plo < 0) plo = p;
        phi = p;
      }
    }
    if (plo < 0) continue;
    auto add_piece = [&](long cs, long ce, bool wide, long mlo, long mhi) {
      RangeReduction::Piece piece;
      piece.origin = ri;
      piece.clipped = Resource{cs, ce + 1, orig.w, orig.c};
      piece.wide = wide;
      piece.mlo = mlo;
      piece.mhi = mhi;
      if (wide) {
        red.lspc.longs.push_back(Resource{mlo + 1, mhi + 2, orig.w, orig.c});
        red.long_piece.push_back(static_cast<long>(red.pieces.size()));
      } else {
        narrow_of[static_cast<size_t>(mlo)].push_back(static_cast<long>(red.pieces.size()));
      }
      red.pieces.push_back(std::move(piece));
    };
    if (plo == phi) {
      const Mountain& mtn = range.mountains[static_cast<size_t>(plo)];
      long cs = std::max(orig.s, mtn.lo);
      long ce = std::min(orig.t - 1, mtn.hi);
      add_piece(cs, ce, cs == mtn.lo && ce == mtn.hi, plo, plo);
    } else {
      const Mountain& first = range.mountains[static_cast<size_t>(plo)];
      long cs = std::max(orig.s, first.lo);
      add_piece(cs, first.hi, cs == first.lo, plo, plo);
      if (phi - plo >= 2) {
        const Mountain& after = range.mountains[static_cast<size_t>(plo) + 1];
        const Mountain& before = range.mountains[static_cast<size_t>(phi) - 1];
        add_piece(after.lo, before.hi, true, plo + 1, phi - 1);
      }
      const Mountain& last = range.mountains[static_cast<size_t>(phi)];
      long ce = std::min(orig.t - 1, last.hi);
      add_piece(last.lo, ce, ce == last.hi, phi, phi);
    }
  }
  // Doubling the wide pieces over a mountain must cover its edge jobs: the
  // jobs with the leftmost starts and rightmost ends, as many of each as the
  // wide capacity.
  for (long p = 0; p < r; ++p) {
    const Mountain& mtn = range.mountains[static_cast<size_t>(p)];
    std::vector<Resource> wides;
    long wide_height = 0;
    for (const RangeReduction::Piece& piece : red.pieces)
      if (piece.wide && piece.mlo <= p && p <= piece.mhi) {
        wides.push_back(piece.clipped);
        wide_height += piece.clipped.w;
      }
    long take = std::min(wide_height, static_cast<long>(mtn.jobs.size()));
    if (take == 0) continue;
    std::vector<long> by_start(mtn.jobs), by_end(mtn.jobs);
    std::sort(by_start.begin(), by_start.end(), [&](long x, long y) {
      if (jobs[static_cast<size_t>(x)].s != jobs[static_cast<size_t>(y)].s)
        return jobs[static_cast<size_t>(x)].s < jobs[static_cast<size_t>(y)].s;
      return x < y;
    });
    std::sort(by_end.begin(), by_end.end(), [&](long x, long y) {
      if (jobs[static_cast<size_t>(x)].t != jobs[static_cast<size_t>(y)].t)
        return jobs[static_cast<size_t>(x)].t > jobs[static_cast<size_t>(y)].t;
      return x < y;
    });
    std::set<long> edge_jobs;
    for (long i = 0; i < take; ++i) {
      edge_jobs.insert(by_start[static_cast<size_t>(i)]);
      edge_jobs.insert(by_end[static_cast<size_t>(i)]);
    }
    std::vector<long> subset(edge_jobs.begin(), edge_jobs.end());
    MultisetSelection doubled;
    doubled.count.assign(wides.size(), 2);
    VerifyCoverResult ok = verify_cover(job_profile_subset(jobs, subset, m), wides, doubled, m);
    if (!ok.ok) throw std::logic_error("doubled wide pieces fail to cover the edge jobs");
  }
  // Price one short per mountain and coverage count from the narrow pieces.
  for (long p = 0; p < r; ++p) {
    const Mountain& mtn = range.mountains[static_cast<size_t>(p)];
    std::vector<Resource> narrow;
    for (long pi : narrow_of[static_cast<size_t>(p)])
      narrow.push_back(red.pieces[static_cast<size_t>(pi)].clipped);
    for (long kappa = 1; kappa <= static_cast<long>(mtn.jobs.size()); ++kappa) {
      std::optional<PartialCoverSolution> priced =
          try_single_mountain(jobs, mtn, narrow, m, kappa);
      if (!priced) continue;  // an unattainable option is simply absent
      red.lspc.shorts.push_back(Resource{p + 1, p + 2, kappa, priced->cost});
      RangeReduction::ShortPricing pricing;
      pricing.mountain = p;
      pricing.kappa = kappa;
      pricing.piece_count.assign(red.pieces.size(), 0);
      for (long li = 0; li < static_cast<long>(narrow.size()); ++li)
        pricing.piece_count[static_cast<size_t>(narrow_of[static_cast<size_t>(p)][static_cast<size_t>(li)])] =
            priced->selection.count[static_cast<size_t>(li)];
      pricing.covered = priced->covered;
      red.short_pricing.push_back(std::move(pricing));
    }
  }
  red.lspc.k = red.lspc.total_demand();
  return red;
}

PartialCoverSolution rehydrate_range_solution(const std::vector<Job>& jobs,
                                              const std::vector<Resource>& res,
                                              const RangeReduction& red, const LspcSolution& sol) {
  if (static_cast<long>(res.size()) != red.resources)
    throw std::invalid_argument("solution does not match the reduction");
  if (sol.short_pick.count.size() != red.lspc.shorts.size() ||
      sol.long_pick.count.size() != red.lspc.longs.size())
    throw std::invalid_argument("solution does not match the reduction");
  if (!sol.feasible) throw std::invalid_argument("cannot rehydrate an infeasible solution");
  // Callers lower the partiality target per use, so validate the solution
  // against whatever target its coverage actually reaches.
  LspcInstance reached = red.lspc;
  reached.k = 0;
  for (long c : sol.coverage) reached.k += c;
  LspcCheckResult check = check_lspc_solution(reached, sol, false);
  if (!check.ok) throw std::invalid_argument("invalid reduced solution: " + check.reason);
  const long r = static_cast<long>(red.mountains.size());
  std::vector<long> piece_count(red.pieces.size(), 0);
  for (long li = 0; li < static_cast<long>(red.lspc.longs.size()); ++li) {
    long c = sol.long_pick.count[static_cast<size_t>(li)];
    if (c > 0) piece_count[static_cast<size_t>(red.long_piece[static_cast<size_t>(li)])] += c;
  }
  std::set<long> covered;
  std::vector<long> kappa_at(static_cast<size_t>(r), 0);
  for (long si = 0; si < static_cast<long>(red.lspc.shorts.size()); ++si) {
    if (sol.short_pick.count[static_cast<size_t>(si)] == 0) continue;
    const RangeReduction::ShortPricing& pricing = red.short_pricing[static_cast<size_t>(si)];
    kappa_at[static_cast<size_t>(pricing.mountain)] = pricing.kappa;
    for (long pi = 0; pi < static_cast<long>(pricing.piece_count.size()); ++pi)
      piece_count[static_cast<size_t>(pi)] += pricing.piece_count[static_cast<size_t>(pi)];
    covered.insert(pricing.covered.begin(), pricing.covered.end());
  }
  // Coverage beyond the short's jobs rides on the wide copies.
  for (long p = 0; p < r; ++p) {
    long extras = sol.coverage[static_cast<size_t>(p) + 1] - kappa_at[static_cast<size_t>(p)];
    for (long idx : red.mountains[static_cast<size_t>(p)].jobs) {
      if (extras <= 0) break;
      if (covered.insert(idx).second) --extras;
    }
    if (extras > 0) throw std::logic_error("mountain ran out of jobs to assign");
  }
  PartialCoverSolution out;
  out.selection.count.assign(res.size(), 0);
  for (long pi = 0; pi < static_cast<long>(red.pieces.size()); ++pi) {
    long origin = red.pieces[static_cast<size_t>(pi)].origin;
    out.selection.count[static_cast<size_t>(origin)] = std::max(
        out.selection.count[static_cast<size_t>(origin)], piece_count[static_cast<size_t>(pi)]);
  }
  out.covered.assign(covered.begin(), covered.end());
  out.cost = out.selection.cost(res);
  if (sol.cost < out.cost) throw std::logic_error("rehydration increased the cost");
  VerifyCoverResult ok =
      verify_cover(job_profile_subset(jobs, out.covered, red.edges), res, out.selection, red.edges);
  if (!ok.ok) throw std::logic_error("rehydrated selection fails to cover its jobs");
  return out;
}

PartialCoverSolution presall_solve(const std::vector<Job>& jobs, const std::vector<Resource>& res,
                                   long m, long k) {
  validate_jobs(jobs, m);
  validate_resources(res, m);
  const long n = static_cast<long>(jobs.size());
  if (k < 0 || k > n) throw std::invalid_argument("k out of range");
  PartialCoverSolution out;
  out.selection.count.assign(res.size(), 0);
  out.cost = 0;
  // Jobs without an edge are covered for free.
  std::vector<long> positive;
  for (long j = 0; j < n; ++j) {
    if (jobs[static_cast<size_t>(j)].t - jobs[static_cast<size_t>(j)].s < 1)
      out.covered.push_back(j);
    else
      positive.push_back(j);
  }
  long rest = std::max(0L, k - static_cast<long>(out.covered.size()));
  if (rest > 0) {
    long common_lo = 0, common_hi = 0;
    bool first = true;
    for (long j : positive) {
      const Job& job = jobs[static_cast<size_t>(j)];
      common_lo = first ? job.s : std::max(common_lo, job.s);
      common_hi = first ? job.t - 1 : std::min(common_hi, job.t - 1);
      first = false;
    }
    if (!first && common_lo <= common_hi) {
      // Every job shares an edge: one mountain, solved directly.
      Mountain mtn;
      mtn.jobs = positive;
      mtn.peak = common_lo;
      mtn.lo = jobs[static_cast<size_t>(positive.front())].s;
      mtn.hi = 0;
      for (long j : positive) {
        mtn.lo = std::min(mtn.lo, jobs[static_cast<size_t>(j)].s);
        mtn.hi = std::max(mtn.hi, jobs[static_cast<size_t>(j)].t - 1);
      }
      std::optional<PartialCoverSolution> sol = try_single_mountain(jobs, mtn, res, m, rest);
      if (!sol) throw std::invalid_argument("cannot cover the requested number of jobs");
      out.selection = sol->selection;
      out.cost = sol->cost;
      out.covered.insert(out.covered.end(), sol->covered.begin(), sol->covered.end());
    } else {
      // Decompose the positive jobs and remap member indices back.
      std::vector<Job> pjobs;
      for (long j : positive) pjobs.push_back(jobs[static_cast<size_t>(j)]);
      std::vector<MountainRange> ranges = mountain_decompose(pjobs, m);
      for (MountainRange& range : ranges)
        for (Mountain& mtn : range.mountains)
          for (long& idx : mtn.jobs) idx = positive[static_cast<size_t>(idx)];
      const long rc = static_cast<long>(ranges.size());
      std::vector<long> sizes(static_cast<size_t>(rc), 0);
      for (long i = 0; i < rc; ++i)
        for (const Mountain& mtn : ranges[static_cast<size_t>(i)].mountains)
          sizes[static_cast<size_t>(i)] += static_cast<long>(mtn.jobs.size());
      // Lazily priced per-range solutions for every coverage count.
      std::vector<std::optional<RangeReduction>> reductions(static_cast<size_t>(rc));
      std::vector<std::vector<std::optional<PartialCoverSolution>>> priced(
          static_cast<size_t>(rc));
      std::vector<std::vector<char>> tried(static_cast<size_t>(rc));
      for (long i = 0; i < rc; ++i) {
        priced[static_cast<size_t>(i)].assign(static_cast<size_t>(rest) + 1, std::nullopt);
        tried[static_cast<size_t>(i)].assign(static_cast<size_t>(rest) + 1, 0);
      }
      auto range_solution = [&](long i, long kappa) -> const std::optional<PartialCoverSolution>& {
        auto& slot = priced[static_cast<size_t>(i)][static_cast<size_t>(kappa)];
        if (tried[static_cast<size_t>(i)][static_cast<size_t>(kappa)]) return slot;
        tried[static_cast<size_t>(i)][static_cast<size_t>(kappa)] = 1;
        const MountainRange& range = ranges[static_cast<size_t>(i)];
        if (kappa == 0) {
          PartialCoverSolution empty;
          empty.selection.count.assign(res.size(), 0);
          empty.cost = 0;
          slot = empty;
        } else if (range.mountains.size() == 1) {
          slot = try_single_mountain(jobs, range.mountains.front(), res, m, kappa);
        } else {
          auto& red = reductions[static_cast<size_t>(i)];
          if (!red) red = reduce_range_to_lspc(jobs, range, res, m);
          LspcInstance inst = red->lspc;
          inst.k = kappa;
          LspcSolution sol = lspc_solve(inst);
          if (sol.feasible) slot = rehydrate_range_solution(jobs, res, *red, sol);
        }
        return slot;
      };
      // Sequential assembly over the ranges.
      std::vector<std::vector<std::optional<Rat>>> best(
          static_cast<size_t>(rc) + 1,
          std::vector<std::optional<Rat>>(static_cast<size_t>(rest) + 1));
      std::vector<std::vector<long>> pick(static_cast<size_t>(rc) + 1,
                                          std::vector<long>(static_cast<size_t>(rest) + 1, -1));
      best[0][0] = Rat(0);
      for (long i = 1; i <= rc; ++i) {
        for (long kappa = 0; kappa <= rest; ++kappa) {
          for (long mine = 0; mine <= std::min(kappa, sizes[static_cast<size_t>(i) - 1]);
               ++mine) {
            const std::optional<Rat>& before =
                best[static_cast<size_t>(i) - 1][static_cast<size_t>(kappa - mine)];
            if (!before) continue;
            const std::optional<PartialCoverSolution>& sol = range_solution(i - 1, mine);
            if (!sol) continue;
            Rat total = Rat(*before + sol->cost);
            auto& cell = best[static_cast<size_t>(i)][static_cast<size_t>(kappa)];
            if (!cell || total < *cell) {
              cell = total;
              pick[static_cast<size_t>(i)][static_cast<size_t>(kappa)] = mine;
            }
          }
        }
      }
      if (!best[static_cast<size_t>(rc)][static_cast<size_t>(rest)])
        throw std::invalid_argument("cannot cover the requested number of jobs");
      long kappa = rest;
      for (long i = rc; i >= 1; --i) {
        long mine = pick[static_cast<size_t>(i)][static_cast<size_t>(kappa)];
        const std::optional<PartialCoverSolution>& sol = range_solution(i - 1, mine);
        for (long ri = 0; ri < static_cast<long>(res.size()); ++ri)
          out.selection.count[static_cast<size_t>(ri)] +=
              sol->selection.count[static_cast<size_t>(ri)];
        out.covered.insert(out.covered.end(), sol->covered.begin(), sol->covered.end());
        out.cost += sol->cost;
        kappa -= mine;
      }
    }
  }
  std::sort(out.covered.begin(), out.covered.end());
  if (static_cast<long>(out.covered.size()) < k)
    throw std::logic_error("assembled cover misses the target");
  VerifyCoverResult ok =
      verify_cover(job_profile_subset(jobs, out.covered, m), res, out.selection, m);
  if (!ok.ok) throw std::logic_error("assembled selection fails to cover its jobs");
  return out;
}

CoverSolution smfc_solve(const Profile& demand, const std::vector<Resource>& res,
                         const std::vector<char>& single_copy, long m) {
  validate_resources(res, m);
  if (demand.empty()) throw std::invalid_argument("demand profile must be 1-based");
  if (static_cast<long>(demand.size()) != m + 1)
    throw std::invalid_argument("demand profile size mismatch");
  for (long e = 1; e <= m; ++e)
    if (demand[static_cast<size_t>(e)] < 0) throw std::invalid_argument("negative demand");
  if (!single_copy.empty() && single_copy.size() != res.size())
    throw std::invalid_argument("single_copy flag size mismatch");
  std::optional<CoverSolution> out = try_profile_cover(demand, res, single_copy, m);
  if (!out) throw std::invalid_argument("demand at some edge cannot be covered");
  return *out;
}

PartialCoverSolution pcresall_solve(const std::vector<Job>& jobs,
                                    const std::vector<Resource>& res, long m) {
  validate_jobs(jobs, m);
  validate_resources(res, m);
  const long n = static_cast<long>(jobs.size());
  PartialCoverSolution out;
  out.selection.count.assign(res.size(), 0);
  out.cost = 0;
  // Stand-ins: a unit-capacity resource per job, priced at its penalty and
  // usable once. Covering the joint demand with the mix decides who pays.
  std::vector<Resource> mixed(res);
  std::vector<char> single(res.size(), 0);
  std::vector<long> stand_in;  // job index per appended resource
  for (long j = 0; j < n; ++j) {
    const Job& job = jobs[static_cast<size_t>(j)];
    if (job.t - job.s < 1) {
      out.covered.push_back(j);  // no edges, covered for free
      continue;
    }
    mixed.push_back(Resource{job.s, job.t, 1, job.penalty});
    single.push_back(1);
    stand_in.push_back(j);
  }
  CoverSolution cover = smfc_solve(job_profile(jobs, m), mixed, single, m);
  for (long i = 0; i < static_cast<long>(res.size()); ++i)
    out.selection.count[static_cast<size_t>(i)] = cover.selection.count[static_cast<size_t>(i)];
  Rat penalties = 0;
  for (long si = 0; si < static_cast<long>(stand_in.size()); ++si) {
    long j = stand_in[static_cast<size_t>(si)];
    if (cover.selection.count[res.size() + static_cast<size_t>(si)] > 0)
      penalties += jobs[static_cast<size_t>(j)].penalty;
    else
      out.covered.push_back(j);
  }
  out.cost = Rat(out.selection.cost(res) + penalties);
  if (out.cost != cover.cost) throw std::logic_error("penalty split does not match the cover");
  std::sort(out.covered.begin(), out.covered.end());
  VerifyCoverResult ok =
      verify_cover(job_profile_subset(jobs, out.covered, m), res, out.selection, m);
  if (!ok.ok) throw std::logic_error("selection fails to cover the unpaid jobs");
  return out;
}

}  // namespace pathpack
