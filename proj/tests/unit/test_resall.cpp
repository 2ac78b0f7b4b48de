#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "pathpack/model.hpp"
#include "pathpack/oracle.hpp"
#include "pathpack/resall.hpp"

using namespace pathpack;

namespace {

Job job(long s, long t, Rat penalty = Rat(0)) { return Job{s, t, penalty}; }

// Random positive-length jobs plus resources that are guaranteed to be able
// to cover them (one spanning resource is always appended).
struct CoverCase {
  long m = 0;
  std::vector<Job> jobs;
  std::vector<Resource> res;
};

CoverCase random_cover_case(std::mt19937_64& rng, long max_jobs, long max_res) {
  std::uniform_int_distribution<long> edges(2, 6);
  CoverCase out;
  out.m = edges(rng);
  std::uniform_int_distribution<long> njobs(1, max_jobs);
  std::uniform_int_distribution<long> vertex(1, out.m + 1);
  std::uniform_int_distribution<long> width(1, 3);
  std::uniform_int_distribution<long> costnum(1, 12);
  std::uniform_int_distribution<long> pen(0, 9);
  const long n = njobs(rng);
  for (long i = 0; i < n; ++i) {
    long s = vertex(rng), t = vertex(rng);
    while (s == t) t = vertex(rng);
    if (s > t) std::swap(s, t);
    out.jobs.push_back(job(s, t, rat(pen(rng))));
  }
  std::uniform_int_distribution<long> nres(1, max_res - 1);
  const long r = nres(rng);
  for (long i = 0; i < r; ++i) {
    long s = vertex(rng), t = vertex(rng);
    while (s == t) t = vertex(rng);
    if (s > t) std::swap(s, t);
    out.res.push_back(Resource{s, t, width(rng), rat(costnum(rng))});
  }
  out.res.push_back(Resource{1, out.m + 1, width(rng), rat(costnum(rng) + 6)});
  return out;
}

// A single mountain: jobs all containing a chosen peak edge.
struct MountainCase {
  long m = 0;
  std::vector<Job> jobs;
  Mountain mtn;
  std::vector<Resource> res;
};

MountainCase random_mountain_case(std::mt19937_64& rng, long max_jobs, long max_res) {
  std::uniform_int_distribution<long> edges(3, 6);
  MountainCase out;
  out.m = edges(rng);
  std::uniform_int_distribution<long> peak_at(1, out.m);
  const long peak = peak_at(rng);
  std::uniform_int_distribution<long> njobs(1, max_jobs);
  std::uniform_int_distribution<long> left(1, peak);
  std::uniform_int_distribution<long> right(peak + 1, out.m + 1);
  const long n = njobs(rng);
  for (long i = 0; i < n; ++i) out.jobs.push_back(job(left(rng), right(rng)));
  out.mtn.peak = peak;
  out.mtn.lo = out.jobs.front().s;
  out.mtn.hi = out.jobs.front().t - 1;
  for (long i = 0; i < n; ++i) {
    out.mtn.jobs.push_back(i);
    out.mtn.lo = std::min(out.mtn.lo, out.jobs[static_cast<size_t>(i)].s);
    out.mtn.hi = std::max(out.mtn.hi, out.jobs[static_cast<size_t>(i)].t - 1);
  }
  std::uniform_int_distribution<long> vertex(1, out.m + 1);
  std::uniform_int_distribution<long> width(1, 3);
  std::uniform_int_distribution<long> costnum(1, 12);
  std::uniform_int_distribution<long> nres(1, max_res - 1);
  const long r = nres(rng);
  for (long i = 0; i < r; ++i) {
    long s = vertex(rng), t = vertex(rng);
    while (s == t) t = vertex(rng);
    if (s > t) std::swap(s, t);
    out.res.push_back(Resource{s, t, width(rng), rat(costnum(rng))});
  }
  out.res.push_back(Resource{1, out.m + 1, width(rng), rat(costnum(rng) + 6)});
  return out;
}

LspcInstance random_lspc(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> edges(1, 4);
  LspcInstance inst;
  const long m = edges(rng);
  inst.demand.assign(static_cast<size_t>(m) + 1, 0);
  std::uniform_int_distribution<long> dval(0, 4);
  for (long e = 1; e <= m; ++e) inst.demand[static_cast<size_t>(e)] = dval(rng);
  std::uniform_int_distribution<long> nshort(0, 4);
  std::uniform_int_distribution<long> nlong(0, 3);
  std::uniform_int_distribution<long> edge(1, m);
  std::uniform_int_distribution<long> sw(1, 4);
  std::uniform_int_distribution<long> lw(1, 3);
  std::uniform_int_distribution<long> costnum(1, 10);
  const long s = nshort(rng);
  for (long i = 0; i < s; ++i) {
    long e = edge(rng);
    inst.shorts.push_back(Resource{e, e + 1, sw(rng), rat(costnum(rng))});
  }
  const long l = nlong(rng);
  std::uniform_int_distribution<long> vertex(1, m + 1);
  for (long i = 0; i < l; ++i) {
    long a = vertex(rng), b = vertex(rng);
    while (a == b) b = vertex(rng);
    if (a > b) std::swap(a, b);
    inst.longs.push_back(Resource{a, b, lw(rng), rat(costnum(rng))});
  }
  std::uniform_int_distribution<long> kval(0, inst.total_demand());
  inst.k = kval(rng);
  return inst;
}

long decomposition_bound(const std::vector<Job>& jobs) {
  long lmin = 0, lmax = 0;
  for (const Job& j : jobs) {
    long len = j.t - j.s;
    lmin = lmin == 0 ? len : std::min(lmin, len);
    lmax = std::max(lmax, len);
  }
  long g = 0;
  while ((lmin << g) < lmax) ++g;
  return 4 * std::max(1L, g);
}

}  // namespace

TEST_CASE("full cover handles the pinned examples") {
  std::vector<Job> jobs{job(1, 3)};
  std::vector<Resource> res{Resource{1, 3, 1, rat(5)}};
  CoverSolution sol = full_cover_resall(jobs, res, 2);
  CHECK(sol.cost == rat(5));
  CHECK(sol.selection.count == std::vector<long>{1});

  std::vector<Job> two{job(1, 2), job(1, 2)};
  std::vector<Resource> unit{Resource{1, 2, 1, rat(1)}};
  CoverSolution stacked = full_cover_resall(two, unit, 1);
  CHECK(stacked.cost == rat(2));
  CHECK(stacked.selection.count == std::vector<long>{2});

  CHECK(full_cover_resall({}, res, 2).cost == rat(0));
  std::vector<Resource> off{Resource{2, 3, 1, rat(1)}};
  CHECK_THROWS_AS(full_cover_resall(jobs, off, 2), std::invalid_argument);
}

TEST_CASE("full cover stays within four times the exact optimum") {
  std::mt19937_64 rng(7101);
  for (int round = 0; round < 40; ++round) {
    CoverCase tc = random_cover_case(rng, 5, 6);
    CoverSolution sol = full_cover_resall(tc.jobs, tc.res, tc.m);
    VerifyCoverResult ok =
        verify_cover(job_profile(tc.jobs, tc.m), tc.res, sol.selection, tc.m);
    CHECK(ok.ok);
    oracle::CoverOracleResult exact =
        oracle::exact_full_cover(tc.jobs, tc.res, tc.m, oracle::OracleBudget{});
    REQUIRE(exact.status == oracle::OracleStatus::Ok);
    REQUIRE(exact.feasible);
    CHECK(sol.cost >= exact.cost);
    CHECK(sol.cost <= Rat(4) * exact.cost);
  }
}

TEST_CASE("mountain checkers accept shared-edge sets and reject the rest") {
  std::vector<Job> jobs{job(1, 3), job(2, 4), job(3, 5)};
  Mountain good{{0, 1}, 2, 1, 3};
  CHECK(is_mountain(jobs, good));
  Mountain wrong_span{{0, 1}, 2, 1, 2};
  CHECK_FALSE(is_mountain(jobs, wrong_span));
  Mountain no_common{{0, 2}, 2, 1, 4};
  CHECK_FALSE(is_mountain(jobs, no_common));  // job 2 misses edge 2
  Mountain dup{{0, 0}, 1, 1, 2};
  CHECK_FALSE(is_mountain(jobs, dup));
  CHECK_FALSE(is_mountain(jobs, Mountain{}));

  MountainRange range;
  range.mountains.push_back(Mountain{{0}, 1, 1, 2});
  range.mountains.push_back(Mountain{{2}, 3, 3, 4});
  CHECK(is_mountain_range(jobs, range));
  std::swap(range.mountains[0], range.mountains[1]);
  CHECK_FALSE(is_mountain_range(jobs, range));  // out of order
  CHECK_FALSE(is_mountain_range(jobs, MountainRange{}));
}

TEST_CASE("decomposition of a single job is a single mountain") {
  std::vector<Job> jobs{job(2, 5)};
  std::vector<MountainRange> ranges = mountain_decompose(jobs, 6);
  REQUIRE(ranges.size() == 1);
  REQUIRE(ranges[0].mountains.size() == 1);
  CHECK(ranges[0].mountains[0].peak == 3);  // lowest multiple of the length
  CHECK(ranges[0].mountains[0].jobs == std::vector<long>{0});
  CHECK(is_mountain_range(jobs, ranges[0]));
}

TEST_CASE("decomposition spreads an equal-length tiling over four ranges") {
  std::vector<Job> jobs;
  for (long s = 1; s <= 8; ++s) jobs.push_back(job(s, s + 1));
  std::vector<MountainRange> ranges = mountain_decompose(jobs, 8);
  CHECK(ranges.size() <= 4);
  long members = 0;
  for (const MountainRange& range : ranges) {
    CHECK(is_mountain_range(jobs, range));
    for (const Mountain& mtn : range.mountains) members += static_cast<long>(mtn.jobs.size());
  }
  CHECK(members == 8);
}

TEST_CASE("decomposition rejects jobs without edges") {
  CHECK_THROWS_AS(mountain_decompose({}, 4), std::invalid_argument);
  CHECK_THROWS_AS(mountain_decompose({job(2, 2)}, 4), std::invalid_argument);
}

TEST_CASE("decomposition partitions randomized jobs into few valid ranges") {
  std::mt19937_64 rng(7102);
  std::uniform_int_distribution<long> edges(2, 9);
  for (int round = 0; round < 40; ++round) {
    const long m = edges(rng);
    std::uniform_int_distribution<long> njobs(1, 7);
    std::uniform_int_distribution<long> vertex(1, m + 1);
    std::vector<Job> jobs;
    const long n = njobs(rng);
    for (long i = 0; i < n; ++i) {
      long s = vertex(rng), t = vertex(rng);
      while (s == t) t = vertex(rng);
      if (s > t) std::swap(s, t);
      jobs.push_back(job(s, t));
    }
    std::vector<MountainRange> ranges = mountain_decompose(jobs, m);
    CHECK(static_cast<long>(ranges.size()) <= decomposition_bound(jobs));
    std::vector<long> seen;
    for (const MountainRange& range : ranges) {
      CHECK(is_mountain_range(jobs, range));
      for (const Mountain& mtn : range.mountains)
        seen.insert(seen.end(), mtn.jobs.begin(), mtn.jobs.end());
    }
    std::sort(seen.begin(), seen.end());
    std::vector<long> all(jobs.size());
    for (long i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
    CHECK(seen == all);
  }
}

TEST_CASE("single-mountain partial cover degenerates at the ends") {
  std::mt19937_64 rng(7103);
  MountainCase tc = random_mountain_case(rng, 5, 5);
  const long n = static_cast<long>(tc.mtn.jobs.size());

  PartialCoverSolution none = single_mountain_partial(tc.jobs, tc.mtn, tc.res, tc.m, 0);
  CHECK(none.cost == rat(0));
  CHECK(none.covered.empty());

  PartialCoverSolution all = single_mountain_partial(tc.jobs, tc.mtn, tc.res, tc.m, n);
  CoverSolution full = full_cover_resall(tc.jobs, tc.res, tc.m);
  CHECK(all.cost == full.cost);
  CHECK(static_cast<long>(all.covered.size()) == n);

  CHECK_THROWS_AS(single_mountain_partial(tc.jobs, tc.mtn, tc.res, tc.m, n + 1),
                  std::invalid_argument);
  Mountain broken = tc.mtn;
  broken.peak = tc.m + 5;
  CHECK_THROWS_AS(single_mountain_partial(tc.jobs, broken, tc.res, tc.m, 1),
                  std::invalid_argument);
}

TEST_CASE("single-mountain partial cover stays within eight times the optimum") {
  std::mt19937_64 rng(7104);
  for (int round = 0; round < 30; ++round) {
    MountainCase tc = random_mountain_case(rng, 6, 6);
    const long n = static_cast<long>(tc.mtn.jobs.size());
    std::uniform_int_distribution<long> kval(0, n);
    const long k = kval(rng);
    PartialCoverSolution sol = single_mountain_partial(tc.jobs, tc.mtn, tc.res, tc.m, k);
    CHECK(static_cast<long>(sol.covered.size()) == k);
    VerifyCoverResult ok = verify_cover(job_profile_subset(tc.jobs, sol.covered, tc.m), tc.res,
                                        sol.selection, tc.m);
    CHECK(ok.ok);
    oracle::CoverOracleResult exact =
        oracle::exact_presall(tc.jobs, tc.res, tc.m, k, oracle::OracleBudget{});
    if (exact.status != oracle::OracleStatus::Ok) continue;
    REQUIRE(exact.feasible);
    CHECK(sol.cost >= exact.cost);
    CHECK(sol.cost <= Rat(8) * exact.cost);
  }
}

TEST_CASE("gamma closes gaps with the cheapest adequate short") {
  std::vector<Resource> shorts{Resource{1, 2, 1, rat(3)}, Resource{1, 2, 2, rat(4)}};
  CHECK(knapsack_gamma(1, 2, 2, shorts) == Rat(0));
  CHECK(knapsack_gamma(1, 1, 3, shorts) == Rat(0));
  REQUIRE(knapsack_gamma(1, 2, 0, shorts).has_value());
  CHECK(*knapsack_gamma(1, 2, 0, shorts) == rat(4));
  CHECK(*knapsack_gamma(1, 1, 0, shorts) == rat(3));
  CHECK_FALSE(knapsack_gamma(1, 3, 0, shorts).has_value());
  CHECK_FALSE(knapsack_gamma(2, 1, 0, shorts).has_value());  // wrong edge

  std::vector<Resource> pricey{Resource{1, 2, 3, rat(7)}, Resource{1, 2, 2, rat(9)}};
  CHECK(*knapsack_gamma(1, 2, 0, pricey) == rat(7));
}

TEST_CASE("lspc solves the pinned single-edge instance") {
  LspcInstance inst;
  inst.demand = {0, 2};
  inst.shorts = {Resource{1, 2, 1, rat(1)}};
  inst.longs = {Resource{1, 2, 1, rat(1)}};
  inst.k = 2;
  LspcSolution sol = lspc_solve(inst);
  REQUIRE(sol.feasible);
  CHECK(sol.cost == rat(2));
  CHECK(sol.coverage == Profile{0, 2});
  CHECK(check_lspc_solution(inst, sol, true).ok);

  inst.k = 0;
  LspcSolution trivial = lspc_solve(inst);
  REQUIRE(trivial.feasible);
  CHECK(trivial.cost == rat(0));

  inst.k = 3;
  CHECK_THROWS_AS(lspc_solve(inst), std::invalid_argument);
}

TEST_CASE("lspc validation rejects malformed instances") {
  LspcInstance neg;
  neg.demand = {0, -1};
  CHECK_THROWS_AS(validate_lspc(neg), std::invalid_argument);
  LspcInstance wide;
  wide.demand = {0, 1, 1};
  wide.shorts = {Resource{1, 3, 1, rat(1)}};
  CHECK_THROWS_AS(validate_lspc(wide), std::invalid_argument);
  LspcInstance empty;
  CHECK_THROWS_AS(validate_lspc(empty), std::invalid_argument);
}

TEST_CASE("lspc reports unreachable targets as infeasible") {
  LspcInstance inst;
  inst.demand = {0, 1};
  inst.k = 1;
  LspcSolution sol = lspc_solve(inst);
  CHECK_FALSE(sol.feasible);
  oracle::LspcOracleResult exact = oracle::exact_lspc(inst, true, oracle::OracleBudget{});
  REQUIRE(exact.status == oracle::OracleStatus::Ok);
  CHECK_FALSE(exact.feasible);
}

TEST_CASE("lspc dynamic program matches the exact search and its tables behave") {
  std::mt19937_64 rng(7105);
  for (int round = 0; round < 60; ++round) {
    LspcInstance inst = random_lspc(rng);
    DpTables tables;
    LspcSolution sol = lspc_solve(inst, &tables);
    oracle::LspcOracleResult strict = oracle::exact_lspc(inst, true, oracle::OracleBudget{});
    REQUIRE(strict.status == oracle::OracleStatus::Ok);
    CHECK(sol.feasible == strict.feasible);
    if (sol.feasible) {
      CHECK(sol.cost == strict.cost);
      CHECK(check_lspc_solution(inst, sol, true).ok);
      long total = 0;
      for (long e = 1; e <= inst.edges(); ++e) total += sol.coverage[static_cast<size_t>(e)];
      CHECK(total == inst.k);
    }
    oracle::LspcOracleResult loose = oracle::exact_lspc(inst, false, oracle::OracleBudget{});
    REQUIRE(loose.status == oracle::OracleStatus::Ok);
    CHECK(sol.feasible == loose.feasible);
    if (sol.feasible) {
      CHECK(sol.cost >= loose.cost);
      CHECK(sol.cost <= Rat(16) * loose.cost);
    }
    if (inst.edges() == 0) continue;
    CHECK(tables.fill_order_is_topological());
    for (long a = 1; a <= tables.m; ++a) {
      for (long b = a; b <= tables.m; ++b) {
        for (long h = 0; h <= tables.hmax; ++h) {
          std::optional<Rat> prev;
          for (long q = 0; q <= tables.qmax; ++q) {
            std::optional<Rat> mc = tables.m_entry(a, b, q, h);
            std::optional<Rat> ac = tables.a_entry(a, b, q, h);
            // More options never hurt.
            if (ac) {
              REQUIRE(mc.has_value());
              CHECK(*mc <= *ac);
            }
            // Covering more never gets cheaper.
            if (prev && mc) CHECK(*prev <= *mc);
            if (q > 0 && mc) {
              std::optional<Rat> below = tables.m_entry(a, b, q - 1, h);
              REQUIRE(below.has_value());
            }
            prev = mc;
            // Absorbing more never costs more.
            if (h > 0 && mc) {
              std::optional<Rat> absorbed = tables.m_entry(a, b, q, h - 1);
              if (absorbed) CHECK(*mc <= *absorbed);
            }
            if (h > 0) {
              std::optional<Rat> lower = tables.m_entry(a, b, q, h - 1);
              if (lower) {
                std::optional<Rat> higher = tables.m_entry(a, b, q, h);
                REQUIRE(higher.has_value());
                CHECK(*higher <= *lower);
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("reduction of a narrow-only mountain keeps shorts and no longs") {
  std::vector<Job> jobs{job(1, 3), job(2, 4)};
  std::vector<Resource> res{Resource{1, 3, 1, rat(2)}, Resource{2, 4, 1, rat(3)}};
  MountainRange range;
  range.mountains.push_back(Mountain{{0, 1}, 2, 1, 3});
  RangeReduction red = reduce_range_to_lspc(jobs, range, res, 3);
  CHECK(red.lspc.edges() == 1);
  CHECK(red.lspc.demand == std::vector<long>{0, 2});
  CHECK(red.lspc.longs.empty());
  CHECK_FALSE(red.lspc.shorts.empty());
  for (const Resource& s : red.lspc.shorts) {
    CHECK(s.s == 1);
    CHECK(s.t == 2);
  }
}

TEST_CASE("reduction splits a resource across three mountains into three pieces") {
  std::vector<Job> jobs{job(1, 3), job(3, 5), job(5, 7)};
  std::vector<Resource> res{Resource{1, 7, 2, rat(4)}};
  MountainRange range;
  range.mountains.push_back(Mountain{{0}, 1, 1, 2});
  range.mountains.push_back(Mountain{{1}, 3, 3, 4});
  range.mountains.push_back(Mountain{{2}, 5, 5, 6});
  RangeReduction red = reduce_range_to_lspc(jobs, range, res, 6);
  CHECK(red.pieces.size() == 3);
  CHECK(red.lspc.longs.size() == 3);  // every piece fully spans its mountain
  for (const RangeReduction::Piece& piece : red.pieces) CHECK(piece.wide);
  CHECK_THROWS_AS(reduce_range_to_lspc(jobs, MountainRange{}, res, 6), std::invalid_argument);
}

TEST_CASE("reduced solutions rehydrate to verified covers at no extra cost") {
  std::mt19937_64 rng(7106);
  int exercised = 0;
  for (int round = 0; round < 40 && exercised < 25; ++round) {
    CoverCase tc = random_cover_case(rng, 6, 5);
    std::vector<MountainRange> ranges = mountain_decompose(tc.jobs, tc.m);
    for (const MountainRange& range : ranges) {
      RangeReduction red = reduce_range_to_lspc(tc.jobs, range, tc.res, tc.m);
      long total = red.lspc.total_demand();
      for (long k : {total, std::min(2L, total)}) {
        LspcInstance inst = red.lspc;
        inst.k = k;
        LspcSolution sol = lspc_solve(inst);
        if (!sol.feasible) continue;
        PartialCoverSolution back = rehydrate_range_solution(tc.jobs, tc.res, red, sol);
        CHECK(back.cost <= sol.cost);
        CHECK(static_cast<long>(back.covered.size()) >= k);
        VerifyCoverResult ok = verify_cover(job_profile_subset(tc.jobs, back.covered, tc.m),
                                            tc.res, back.selection, tc.m);
        CHECK(ok.ok);
        ++exercised;
      }
    }
  }
  CHECK(exercised >= 25);
}

TEST_CASE("partial cover handles the degenerate targets") {
  std::mt19937_64 rng(7107);
  CoverCase tc = random_cover_case(rng, 5, 5);
  const long n = static_cast<long>(tc.jobs.size());

  PartialCoverSolution none = presall_solve(tc.jobs, tc.res, tc.m, 0);
  CHECK(none.cost == rat(0));

  PartialCoverSolution all = presall_solve(tc.jobs, tc.res, tc.m, n);
  CHECK(static_cast<long>(all.covered.size()) == n);
  VerifyCoverResult ok =
      verify_cover(job_profile(tc.jobs, tc.m), tc.res, all.selection, tc.m);
  CHECK(ok.ok);

  CHECK_THROWS_AS(presall_solve(tc.jobs, tc.res, tc.m, n + 1), std::invalid_argument);
  CHECK_THROWS_AS(presall_solve(tc.jobs, tc.res, tc.m, -1), std::invalid_argument);
}

TEST_CASE("partial cover of one shared edge goes through the direct solver") {
  std::vector<Job> jobs{job(1, 4), job(2, 5), job(3, 6), job(2, 4)};
  std::vector<Resource> res{Resource{1, 6, 2, rat(9)}, Resource{2, 4, 1, rat(2)},
                            Resource{3, 4, 2, rat(1)}};
  for (long k = 0; k <= 4; ++k) {
    PartialCoverSolution sol = presall_solve(jobs, res, 5, k);
    CHECK(static_cast<long>(sol.covered.size()) >= k);
    oracle::CoverOracleResult exact =
        oracle::exact_presall(jobs, res, 5, k, oracle::OracleBudget{});
    REQUIRE(exact.status == oracle::OracleStatus::Ok);
    REQUIRE(exact.feasible);
    CHECK(sol.cost >= exact.cost);
    CHECK(sol.cost <= Rat(8) * exact.cost);
  }
}

TEST_CASE("partial cover stays within the decomposition bound of the optimum") {
  std::mt19937_64 rng(7108);
  for (int round = 0; round < 25; ++round) {
    CoverCase tc = random_cover_case(rng, 7, 5);
    const long n = static_cast<long>(tc.jobs.size());
    std::uniform_int_distribution<long> kval(0, n);
    const long k = kval(rng);
    PartialCoverSolution sol = presall_solve(tc.jobs, tc.res, tc.m, k);
    CHECK(static_cast<long>(sol.covered.size()) >= k);
    VerifyCoverResult ok = verify_cover(job_profile_subset(tc.jobs, sol.covered, tc.m), tc.res,
                                        sol.selection, tc.m);
    CHECK(ok.ok);
    oracle::CoverOracleResult exact =
        oracle::exact_presall(tc.jobs, tc.res, tc.m, k, oracle::OracleBudget{});
    if (exact.status != oracle::OracleStatus::Ok) continue;
    REQUIRE(exact.feasible);
    CHECK(sol.cost >= exact.cost);
    CHECK(sol.cost <= Rat(384 * decomposition_bound(tc.jobs)) * exact.cost);
  }
}

TEST_CASE("penalty cover pays nothing when all penalties are zero") {
  std::vector<Job> jobs{job(1, 3, rat(0)), job(2, 4, rat(0))};
  std::vector<Resource> res{Resource{1, 4, 1, rat(5)}};
  PartialCoverSolution sol = pcresall_solve(jobs, res, 3);
  CHECK(sol.cost == rat(0));
  CHECK(sol.covered.empty());
}

TEST_CASE("penalty cover covers a job whose penalty dwarfs the cover cost") {
  std::vector<Job> jobs{job(1, 2, rat(1000))};
  std::vector<Resource> res{Resource{1, 2, 1, rat(1)}};
  PartialCoverSolution sol = pcresall_solve(jobs, res, 1);
  CHECK(sol.cost == rat(1));
  CHECK(sol.covered == std::vector<long>{0});
}

TEST_CASE("penalty cover stays within four times the exact optimum") {
  std::mt19937_64 rng(7109);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int round = 0; round < 30; ++round) {
    CoverCase tc = random_cover_case(rng, 4, 4);
    if (coin(rng)) tc.jobs.push_back(job(2, 2, rat(3)));  // no edges, free to cover
    PartialCoverSolution sol = pcresall_solve(tc.jobs, tc.res, tc.m);
    VerifyCoverResult ok = verify_cover(job_profile_subset(tc.jobs, sol.covered, tc.m), tc.res,
                                        sol.selection, tc.m);
    CHECK(ok.ok);
    Rat penalties = 0;
    std::set<long> covered(sol.covered.begin(), sol.covered.end());
    for (long j = 0; j < static_cast<long>(tc.jobs.size()); ++j)
      if (!covered.count(j)) penalties += tc.jobs[static_cast<size_t>(j)].penalty;
    CHECK(sol.cost == Rat(sol.selection.cost(tc.res) + penalties));
    for (long j = 0; j < static_cast<long>(tc.jobs.size()); ++j)
      if (job_length(tc.jobs[static_cast<size_t>(j)]) == 0) CHECK(covered.count(j) == 1);
    oracle::CoverOracleResult exact =
        oracle::exact_pcresall(tc.jobs, tc.res, tc.m, oracle::OracleBudget{});
    if (exact.status != oracle::OracleStatus::Ok) continue;
    REQUIRE(exact.feasible);
    CHECK(sol.cost >= exact.cost);
    CHECK(sol.cost <= Rat(4) * exact.cost);
  }
}

TEST_CASE("mixed cover without single-use flags matches the full cover") {
  std::mt19937_64 rng(7110);
  for (int round = 0; round < 10; ++round) {
    CoverCase tc = random_cover_case(rng, 4, 5);
    CoverSolution direct = full_cover_resall(tc.jobs, tc.res, tc.m);
    CoverSolution mixed = smfc_solve(job_profile(tc.jobs, tc.m), tc.res, {}, tc.m);
    CHECK(direct.cost == mixed.cost);
  }
}

TEST_CASE("mixed cover respects single-use resources") {
  Profile demand{0, 1, 1};
  std::vector<Resource> res{Resource{1, 3, 1, rat(1)}};
  CoverSolution sol = smfc_solve(demand, res, {1}, 2);
  CHECK(sol.cost == rat(1));
  CHECK(sol.selection.count == std::vector<long>{1});

  Profile heavy{0, 2};
  std::vector<Resource> one{Resource{1, 2, 1, rat(1)}};
  CHECK_THROWS_AS(smfc_solve(heavy, one, {1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(smfc_solve(Profile{0, 1, 1}, one, {1}, 2), std::invalid_argument);
}

TEST_CASE("mixed cover stays within four times the exact optimum") {
  std::mt19937_64 rng(7111);
  for (int round = 0; round < 30; ++round) {
    std::uniform_int_distribution<long> edges(2, 5);
    const long m = edges(rng);
    Profile demand(static_cast<size_t>(m) + 1, 0);
    std::uniform_int_distribution<long> dval(0, 3);
    for (long e = 1; e <= m; ++e) demand[static_cast<size_t>(e)] = dval(rng);
    std::vector<Resource> res;
    std::vector<char> single;
    std::uniform_int_distribution<long> vertex(1, m + 1);
    std::uniform_int_distribution<long> width(1, 3);
    std::uniform_int_distribution<long> costnum(1, 10);
    std::uniform_int_distribution<long> nres(1, 5);
    std::uniform_int_distribution<int> coin(0, 1);
    const long r = nres(rng);
    for (long i = 0; i < r; ++i) {
      long s = vertex(rng), t = vertex(rng);
      while (s == t) t = vertex(rng);
      if (s > t) std::swap(s, t);
      res.push_back(Resource{s, t, width(rng), rat(costnum(rng))});
      single.push_back(static_cast<char>(coin(rng)));
    }
    res.push_back(Resource{1, m + 1, width(rng), rat(costnum(rng) + 5)});
    single.push_back(0);
    CoverSolution sol = smfc_solve(demand, res, single, m);
    VerifyCoverResult ok = verify_cover(demand, res, sol.selection, m);
    CHECK(ok.ok);
    for (long i = 0; i < static_cast<long>(res.size()); ++i)
      if (single[static_cast<size_t>(i)]) CHECK(sol.selection.count[static_cast<size_t>(i)] <= 1);
    oracle::CoverOracleResult exact =
        oracle::exact_profile_cover(demand, res, single, m, oracle::OracleBudget{});
    REQUIRE(exact.status == oracle::OracleStatus::Ok);
    REQUIRE(exact.feasible);
    CHECK(sol.cost >= exact.cost);
    CHECK(sol.cost <= Rat(4) * exact.cost);
  }
}

TEST_CASE("exact lspc search orders its two modes sensibly") {
  std::mt19937_64 rng(7112);
  for (int round = 0; round < 20; ++round) {
    LspcInstance inst = random_lspc(rng);
    oracle::LspcOracleResult strict = oracle::exact_lspc(inst, true, oracle::OracleBudget{});
    oracle::LspcOracleResult loose = oracle::exact_lspc(inst, false, oracle::OracleBudget{});
    REQUIRE(strict.status == oracle::OracleStatus::Ok);
    REQUIRE(loose.status == oracle::OracleStatus::Ok);
    CHECK(strict.feasible == loose.feasible);
    if (!strict.feasible) continue;
    CHECK(strict.cost >= loose.cost);
    long total = 0;
    for (long e = 1; e <= inst.edges(); ++e) total += strict.coverage[static_cast<size_t>(e)];
    CHECK(total == inst.k);
    if (inst.k > 0) {
      LspcInstance easier = inst;
      easier.k = inst.k - 1;
      oracle::LspcOracleResult weaker = oracle::exact_lspc(easier, true, oracle::OracleBudget{});
      REQUIRE(weaker.status == oracle::OracleStatus::Ok);
      REQUIRE(weaker.feasible);
      CHECK(weaker.cost <= strict.cost);
    }
  }
}
