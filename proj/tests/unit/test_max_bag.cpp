#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "pathpack/lp.hpp"
#include "pathpack/max_bag.hpp"
#include "pathpack/model.hpp"
#include "pathpack/oracle.hpp"

using namespace pathpack;

namespace {

// Demands kept at or below the global minimum capacity; large mode shrinks a
// request onto a minimum-capacity edge when its bottleneck is too far above.
UfpInstance random_nba_path(std::mt19937_64& rng, int mode /*0 mixed, 1 large, 2 small*/) {
  std::uniform_int_distribution<long> edges(2, 5);
  std::uniform_int_distribution<long> count(1, 8);
  std::uniform_int_distribution<long> capnum(2, 8);
  const long m = edges(rng);
  std::vector<Rat> caps;
  for (long e = 0; e < m; ++e) caps.push_back(rat(capnum(rng), 2));
  PathNetwork net(caps);
  Rat cmin = net.min_capacity();
  const long n = count(rng);
  std::vector<Request> reqs;
  std::uniform_int_distribution<long> vertex(1, m + 1);
  std::uniform_int_distribution<long> frac(1, 100);
  std::uniform_int_distribution<long> pnum(1, 30);
  std::uniform_int_distribution<int> coin(0, 1);
  for (long i = 0; i < n; ++i) {
    long s = vertex(rng), t = vertex(rng);
    while (s == t) t = vertex(rng);
    if (s > t) std::swap(s, t);
    Rat b = net.capacity(s);
    for (long e = s; e < t; ++e) b = std::min(b, net.capacity(e));
    bool large = mode == 1 || (mode == 0 && coin(rng));
    Rat d;
    if (large) {
      // want d in (b/4, cmin]; shrink onto a minimum-capacity edge when the
      // bottleneck sits too far above the global minimum
      if (cmin * 4 <= b) {
        long best = 1;
        for (long e = 2; e <= net.edges(); ++e)
          if (net.capacity(e) < net.capacity(best)) best = e;
        s = best;
        t = best + 1;
        b = cmin;
      }
      d = b / 4 + (cmin - b / 4) * rat(frac(rng), 100);
    } else {
      d = b / 4 * rat(frac(rng), 100);
    }
    reqs.push_back({s, t, d, rat(pnum(rng), 10)});
  }
  return UfpInstance(net, reqs);
}

TreeUfpInstance random_nba_tree(std::mt19937_64& rng, bool small_only) {
  std::uniform_int_distribution<long> size(3, 7);
  std::uniform_int_distribution<long> count(1, 6);
  std::uniform_int_distribution<long> capnum(2, 8);
  const long nv = size(rng);
  std::vector<long> parent{0};
  for (long v = 2; v <= nv; ++v) {
    std::uniform_int_distribution<long> pick(1, v - 1);
    parent.push_back(pick(rng));
  }
  std::vector<Rat> caps;
  for (long v = 2; v <= nv; ++v) caps.push_back(rat(capnum(rng), 2));
  TreeNetwork net(parent, caps);
  Rat cmin = net.min_capacity();
  const long n = count(rng);
  std::vector<Request> reqs;
  std::uniform_int_distribution<long> vertex(1, nv);
  std::uniform_int_distribution<long> frac(1, 100);
  std::uniform_int_distribution<long> pnum(1, 30);
  for (long i = 0; i < n; ++i) {
    long s = vertex(rng), t = vertex(rng);
    while (s == t) t = vertex(rng);
    Rat b = rat(-1);
    for (long e : net.path_edges(s, t)) {
      Rat c = net.capacity(e);
      if (b < 0 || c < b) b = c;
    }
    Rat limit = small_only ? Rat(b / 4) : std::min(b, cmin);
    Rat d = limit * rat(frac(rng), 100);
    reqs.push_back({s, t, d, rat(pnum(rng), 10)});
  }
  return TreeUfpInstance(net, reqs);
}

BagInstance random_nba_bag(std::mt19937_64& rng, int mode /*0 mixed, 1 large, 2 small*/) {
  std::uniform_int_distribution<long> edges(2, 4);
  std::uniform_int_distribution<long> count(1, 7);
  std::uniform_int_distribution<long> nbags(1, 3);
  std::uniform_int_distribution<long> capnum(2, 8);
  const long m = edges(rng);
  std::vector<Rat> caps;
  for (long e = 0; e < m; ++e) caps.push_back(rat(capnum(rng), 2));
  PathNetwork net(caps);
  Rat cmin = net.min_capacity();
  const long p = nbags(rng);
  std::vector<Rat> profits;
  std::uniform_int_distribution<long> pnum(1, 30);
  for (long j = 0; j < p; ++j) profits.push_back(rat(pnum(rng), 10));
  const long n = count(rng);
  std::vector<Request> reqs;
  std::vector<long> bag_of;
  std::uniform_int_distribution<long> vertex(1, m + 1);
  std::uniform_int_distribution<long> frac(1, 100);
  std::uniform_int_distribution<long> bag(0, p - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (long i = 0; i < n; ++i) {
    long s = vertex(rng), t = vertex(rng);
    while (s == t) t = vertex(rng);
    if (s > t) std::swap(s, t);
    Rat b = net.capacity(s);
    for (long e = s; e < t; ++e) b = std::min(b, net.capacity(e));
    bool large = mode == 1 || (mode == 0 && coin(rng));
    Rat d;
    if (large) {
      if (cmin * 4 <= b) {
        long best = 1;
        for (long e = 2; e <= net.edges(); ++e)
          if (net.capacity(e) < net.capacity(best)) best = e;
        s = best;
        t = best + 1;
        b = cmin;
      }
      d = b / 4 + (cmin - b / 4) * rat(frac(rng), 100);
    } else {
      d = b / 4 * rat(frac(rng), 100);
    }
    reqs.push_back({s, t, d, rat(0)});
    bag_of.push_back(bag(rng));
  }
  return BagInstance(net, profits, reqs, bag_of);
}

bool selection_feasible(const UfpInstance& inst, const std::vector<long>& chosen) {
  for (long e = 1; e <= inst.net().edges(); ++e) {
    Rat load(0);
    for (long i : chosen)
      if (inst.covers(i, e)) load += inst.requests()[static_cast<size_t>(i)].d;
    if (load > inst.net().capacity(e)) return false;
  }
  return true;
}

bool selection_feasible(const TreeUfpInstance& inst, const std::vector<long>& chosen) {
  std::vector<Rat> load(static_cast<size_t>(inst.net().vertices()) + 1, Rat(0));
  for (long i : chosen)
    for (long e : inst.span(i)) load[static_cast<size_t>(e)] += inst.requests()[static_cast<size_t>(i)].d;
  for (long e = 2; e <= inst.net().vertices(); ++e)
    if (load[static_cast<size_t>(e)] > inst.net().capacity(e)) return false;
  return true;
}

bool bags_distinct(const BagInstance& inst, const std::vector<long>& chosen) {
  std::set<long> seen;
  for (long i : chosen)
    if (!seen.insert(inst.bag_of(i)).second) return false;
  return true;
}

Rat profit_sum(const UfpInstance& inst, const std::vector<long>& chosen) {
  Rat p(0);
  for (long i : chosen) p += inst.requests()[static_cast<size_t>(i)].w;
  return p;
}

}  // namespace

TEST_CASE("exact large solver picks the better conflicting request") {
  PathNetwork net({rat(1)});
  UfpInstance inst(net, {{1, 2, rat(3, 5), rat(5)}, {1, 2, rat(7, 10), rat(6)}});
  Selection s = max_ufp_large(inst);
  CHECK(s.profit == rat(6));
  CHECK(s.chosen == std::vector<long>{1});

  UfpInstance empty(net, {});
  CHECK(max_ufp_large(empty).profit == 0);
  CHECK(max_ufp_large(empty).chosen.empty());
}

TEST_CASE("exact large solver matches the oracle") {
  oracle::OracleBudget budget;
  std::mt19937_64 rng(7301);
  for (int round = 0; round < 100; ++round) {
    UfpInstance inst = random_nba_path(rng, 1);
    Selection s = max_ufp_large(inst);
    auto exact = oracle::exact_max_ufp(inst, budget);
    REQUIRE(exact.status == oracle::OracleStatus::Ok);
    CHECK(s.profit == exact.profit);
    CHECK(selection_feasible(inst, s.chosen));
    CHECK(profit_sum(inst, s.chosen) == s.profit);
  }
}

TEST_CASE("large solver rejects bad inputs") {
  PathNetwork net({rat(4), rat(4)});
  UfpInstance small(net, {{1, 3, rat(1, 2), rat(1)}});
  CHECK_THROWS_AS(max_ufp_large(small), std::invalid_argument);

  PathNetwork dip({rat(4), rat(1), rat(4)});
  UfpInstance broken(dip, {{1, 2, rat(2), rat(1)}});
  CHECK_THROWS_AS(max_ufp_large(broken), NbaViolation);
}

TEST_CASE("small solver keeps jointly feasible instances whole") {
  PathNetwork net({rat(4), rat(4)});
  std::vector<Request> reqs = {
      {1, 3, rat(1, 2), rat(3)},
      {1, 2, rat(1), rat(1)},
      {2, 3, rat(1, 4), rat(2)},
  };
  UfpInstance inst(net, reqs);
  Selection s = max_ufp_small(inst);
  CHECK(s.chosen == std::vector<long>{0, 1, 2});
  CHECK(s.profit == rat(6));

  UfpInstance large(net, {{1, 3, rat(3), rat(1)}});
  CHECK_THROWS_AS(max_ufp_small(large), std::invalid_argument);
}

TEST_CASE("small solver earns a sixteenth of the relaxation") {
  oracle::OracleBudget budget;
  std::mt19937_64 rng(7302);
  for (int round = 0; round < 100; ++round) {
    UfpInstance inst = random_nba_path(rng, 2);
    Selection s = max_ufp_small(inst);
    CHECK(selection_feasible(inst, s.chosen));
    CHECK(profit_sum(inst, s.chosen) == s.profit);
    FractionalSolution lp = solve_ufp_lp(inst);
    CHECK(s.profit * 16 >= lp.objective);
    auto exact = oracle::exact_max_ufp(inst, budget);
    REQUIRE(exact.status == oracle::OracleStatus::Ok);
    CHECK(s.profit * 16 >= exact.profit);
  }
}

TEST_CASE("path solver returns a lone request and the gap optimum") {
  PathNetwork net({rat(2)});
  UfpInstance lone(net, {{1, 2, rat(1), rat(7)}});
  Selection s = max_ufp_path(lone);
  CHECK(s.chosen == std::vector<long>{0});
  CHECK(s.profit == rat(7));

  Rat eps = rat(1, 1000);
  PathNetwork gapnet({rat(3), rat(3), rat(2) + eps});
  UfpInstance gap(gapnet, {{1, 3, rat(2), rat(1)},
                           {1, 4, rat(1) + eps, rat(1)},
                           {2, 4, rat(1) + eps, rat(1)}});
  CHECK(max_ufp_path(gap).profit == rat(1));
}

TEST_CASE("path solver breaks ties toward the large branch") {
  PathNetwork net({rat(1), rat(1)});
  UfpInstance inst(net, {{1, 2, rat(1), rat(2)}, {2, 3, rat(1, 4), rat(2)}});
  Selection s = max_ufp_path(inst);
  CHECK(s.profit == rat(2));
  CHECK(s.chosen == std::vector<long>{0});
}

TEST_CASE("path solver lands within seventeen of the optimum") {
  oracle::OracleBudget budget;
  std::mt19937_64 rng(7303);
  for (int round = 0; round < 100; ++round) {
    UfpInstance inst = random_nba_path(rng, 0);
    Selection s = max_ufp_path(inst);
    CHECK(selection_feasible(inst, s.chosen));
    auto exact = oracle::exact_max_ufp(inst, budget);
    REQUIRE(exact.status == oracle::OracleStatus::Ok);
    CHECK(s.profit * 17 >= exact.profit);
    CHECK(s.profit <= exact.profit);
  }
}

TEST_CASE("tree solver lands within sixty-four of the optimum") {
  oracle::OracleBudget budget;
  std::mt19937_64 rng(7304);
  for (int round = 0; round < 100; ++round) {
    TreeUfpInstance inst = random_nba_tree(rng, round % 2 == 0);
    Selection s = max_ufp_tree(inst);
    CHECK(selection_feasible(inst, s.chosen));
    auto exact = oracle::exact_max_ufp(inst, budget);
    REQUIRE(exact.status == oracle::OracleStatus::Ok);
    CHECK(s.profit * 64 >= exact.profit);
    CHECK(s.profit <= exact.profit);
    FractionalSolution lp = solve_ufp_lp(inst);
    CHECK(s.profit * 64 >= lp.objective);
  }

  TreeUfpInstance lone(TreeNetwork({0, 1}, {rat(2)}), {{1, 2, rat(1), rat(5)}});
  Selection s = max_ufp_tree(lone);
  CHECK(s.chosen == std::vector<long>{0});
  CHECK(s.profit == rat(5));
}

TEST_CASE("disjoint bag selection basics") {
  PathNetwork net({rat(1), rat(1), rat(1)});
  // One bag with two routes: exactly one is taken.
  BagInstance one(net, {rat(4)},
                  {{1, 2, rat(1), rat(0)}, {3, 4, rat(1), rat(0)}}, {0, 0});
  Selection s = bag_disjoint_select(one);
  CHECK(s.chosen.size() == 1);
  CHECK(s.profit == rat(4));

  // Everything overlaps on edge 2: the best bag wins.
  BagInstance shared(net, {rat(2), rat(5), rat(3)},
                     {{1, 3, rat(1), rat(0)}, {2, 4, rat(1), rat(0)}, {2, 3, rat(1), rat(0)}},
                     {0, 1, 2});
  s = bag_disjoint_select(shared);
  CHECK(s.profit == rat(5));
  CHECK(s.chosen == std::vector<long>{1});

  BagInstance none(net, {}, {}, {});
  CHECK(bag_disjoint_select(none).profit == 0);
}

TEST_CASE("disjoint bag selection is a half approximation") {
  oracle::OracleBudget budget;
  std::mt19937_64 rng(7305);
  for (int round = 0; round < 100; ++round) {
    BagInstance inst = random_nba_bag(rng, 0);
    Selection s = bag_disjoint_select(inst);
    CHECK(bags_distinct(inst, s.chosen));
    for (size_t a = 0; a < s.chosen.size(); ++a)
      for (size_t b = a + 1; b < s.chosen.size(); ++b) {
        const Request& qa = inst.requests()[static_cast<size_t>(s.chosen[a])];
        const Request& qb = inst.requests()[static_cast<size_t>(s.chosen[b])];
        CHECK(std::max(qa.s, qb.s) >= std::min(qa.t, qb.t));
      }
    auto exact = oracle::exact_bag_disjoint(inst, budget);
    REQUIRE(exact.status == oracle::OracleStatus::Ok);
    CHECK(s.profit * 2 >= exact.profit);
    CHECK(s.profit <= exact.profit);
  }
}

TEST_CASE("large bag branch stays within forty-eight") {
  oracle::OracleBudget budget;
  std::mt19937_64 rng(7306);
  for (int round = 0; round < 100; ++round) {
    BagInstance inst = random_nba_bag(rng, 1);
    Selection s = bag_ufp_large(inst);
    CHECK(bags_distinct(inst, s.chosen));
    UfpInstance view(inst.net(), inst.requests());
    CHECK(selection_feasible(view, s.chosen));
    auto exact = oracle::exact_bag_ufp(inst, budget);
    REQUIRE(exact.status == oracle::OracleStatus::Ok);
    CHECK(s.profit * 48 >= exact.profit);
    CHECK(s.profit <= exact.profit);
  }

  PathNetwork net({rat(1)});
  BagInstance has_small(net, {rat(1)}, {{1, 2, rat(1, 5), rat(0)}}, {0});
  CHECK_THROWS_AS(bag_ufp_large(has_small), std::invalid_argument);
}

TEST_CASE("small bag branch stays within seventeen of its relaxation") {
  std::mt19937_64 rng(7307);
  for (int round = 0; round < 100; ++round) {
    BagInstance inst = random_nba_bag(rng, 2);
    Selection s = bag_ufp_small(inst);
    CHECK(bags_distinct(inst, s.chosen));
    UfpInstance view(inst.net(), inst.requests());
    CHECK(selection_feasible(view, s.chosen));
    FractionalSolution lp = solve_bag_lp(inst);
    CHECK(s.profit * 17 >= lp.objective);
  }

  PathNetwork net({rat(2)});
  BagInstance one(net, {rat(3)}, {{1, 2, rat(1, 2), rat(0)}}, {0});
  Selection s = bag_ufp_small(one);
  CHECK(s.chosen == std::vector<long>{0});
  CHECK(s.profit == rat(3));

  BagInstance has_large(net, {rat(1)}, {{1, 2, rat(2), rat(0)}}, {0});
  CHECK_THROWS_AS(bag_ufp_small(has_large), std::invalid_argument);
}

TEST_CASE("bag path solver lands within sixty-five of the optimum") {
  oracle::OracleBudget budget;
  std::mt19937_64 rng(7308);
  for (int round = 0; round < 100; ++round) {
    BagInstance inst = random_nba_bag(rng, 0);
    Selection s = bag_ufp_path(inst);
    CHECK(bags_distinct(inst, s.chosen));
    UfpInstance view(inst.net(), inst.requests());
    CHECK(selection_feasible(view, s.chosen));
    auto exact = oracle::exact_bag_ufp(inst, budget);
    REQUIRE(exact.status == oracle::OracleStatus::Ok);
    CHECK(s.profit * 65 >= exact.profit);
    CHECK(s.profit <= exact.profit);
  }

  PathNetwork net({rat(1)});
  BagInstance none(net, {}, {}, {});
  CHECK(bag_ufp_path(none).profit == 0);
  BagInstance lone(net, {rat(9, 2)}, {{1, 2, rat(1), rat(0)}}, {0});
  Selection s = bag_ufp_path(lone);
  CHECK(s.chosen == std::vector<long>{0});
  CHECK(s.profit == rat(9, 2));
}
