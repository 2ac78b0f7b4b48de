#include <doctest.h>

#include <random>

#include "pathpack/model.hpp"
#include "pathpack/oracle.hpp"
#include "pathpack/round_path.hpp"
#include "pathpack/round_tree.hpp"

using namespace pathpack;

namespace {

// mode 0: mixed demands, 1: large only, 2: small only, 3: unit demands with
// integer capacities.
TreeUfpInstance random_tree_instance(std::mt19937_64& rng, int mode) {
  std::uniform_int_distribution<long> nv(3, 7);
  const long n = nv(rng);
  std::vector<long> parent{0};
  for (long v = 2; v <= n; ++v) {
    std::uniform_int_distribution<long> p(1, v - 1);
    parent.push_back(p(rng));
  }
  std::vector<Rat> caps;
  std::uniform_int_distribution<long> icap(1, 3);
  std::uniform_int_distribution<long> capnum(2, 8);
  for (long v = 2; v <= n; ++v)
    caps.push_back(mode == 3 ? rat(icap(rng)) : rat(capnum(rng), 2));
  TreeNetwork net(parent, caps);
  Rat cmin = net.min_capacity();

  std::uniform_int_distribution<long> count(1, 8);
  std::uniform_int_distribution<long> vertex(1, n);
  std::uniform_int_distribution<long> frac(1, 100);
  std::uniform_int_distribution<int> coin(0, 1);
  const long k = count(rng);
  std::vector<Request> reqs;
  for (long i = 0; i < k; ++i) {
    long s = vertex(rng), t = vertex(rng);
    while (s == t) t = vertex(rng);
    if (mode == 3) {
      reqs.push_back({s, t, rat(1), rat(1)});
      continue;
    }
    Rat b = rat(0);
    for (long e : net.path_edges(s, t))
      b = (b == 0) ? net.capacity(e) : std::min(b, net.capacity(e));
    bool large = mode == 1 || (mode == 0 && coin(rng));
    Rat d;
    if (large) {
      // want d in (b/4, cmin]; shrink onto a minimum capacity edge when the
      // bottleneck is at least 4x the global minimum
      if (cmin * 4 <= b) {
        long best = 2;
        for (long v = 3; v <= n; ++v)
          if (net.capacity(v) < net.capacity(best)) best = v;
        s = net.parent(best);
        t = best;
        b = net.capacity(best);
      }
      d = b / 4 + (cmin - b / 4) * rat(frac(rng), 100);
    } else {
      d = b / 4 * rat(frac(rng), 100);
    }
    reqs.push_back({s, t, d, rat(1)});
  }
  return TreeUfpInstance(net, reqs);
}

}  // namespace

TEST_CASE("lca order: bottom-up schedule and per-side critical edges") {
  // v1 root; v2, v3 under it; v4, v5 under v2; v6 under v3
  TreeNetwork net({0, 1, 1, 2, 2, 3}, {rat(4), rat(2), rat(1), rat(3), rat(8)});
  TreeUfpInstance inst(net, {{4, 5, rat(1, 8), rat(0)},
                             {4, 3, rat(1, 8), rat(0)},
                             {2, 4, rat(1, 8), rat(0)},
                             {6, 3, rat(1, 8), rat(0)},
                             {4, 6, rat(1, 8), rat(0)}});
  LcaOrder sched = lca_order(inst);
  CHECK(sched.lca == std::vector<long>({2, 1, 2, 3, 1}));
  // deepest meeting vertices first, ties by vertex id, then input order
  CHECK(sched.order == std::vector<long>({0, 2, 3, 1, 4}));
  CHECK(sched.s_critical == std::vector<long>({4, 4, -1, 6, 4}));
  CHECK(sched.t_critical == std::vector<long>({5, 3, 4, -1, 3}));
}

TEST_CASE("lca order: same-class tie picks the edge nearest the meeting vertex") {
  TreeNetwork net({0, 1, 2}, {rat(2), rat(3)});
  TreeUfpInstance inst(net, {{3, 1, rat(1, 2), rat(0)}});
  LcaOrder sched = lca_order(inst);
  CHECK(sched.s_critical[0] == 2);
  CHECK(sched.t_critical[0] == -1);
}

TEST_CASE("unit tree: star with ample capacity uses one class") {
  TreeNetwork net({0, 1, 1, 1}, {rat(3), rat(3), rat(3)});
  TreeUfpInstance inst(net, {{2, 3, rat(1), rat(0)}, {3, 4, rat(1), rat(0)},
                             {2, 4, rat(1), rat(0)}});
  Coloring c = color_unit_tree(inst);
  CHECK(c.classes == 1);
}

TEST_CASE("unit tree rejects non-unit inputs") {
  TreeNetwork frac_cap({0, 1}, {rat(3, 2)});
  TreeUfpInstance bad_cap(frac_cap, {{1, 2, rat(1), rat(0)}});
  CHECK_THROWS_AS(color_unit_tree(bad_cap), std::invalid_argument);
  TreeNetwork net({0, 1}, {rat(2)});
  TreeUfpInstance bad_demand(net, {{1, 2, rat(1, 2), rat(0)}});
  CHECK_THROWS_AS(color_unit_tree(bad_demand), std::invalid_argument);
}

TEST_CASE("unit tree matches the path solver on path-shaped trees") {
  std::mt19937_64 rng(7201);
  std::uniform_int_distribution<long> edges(2, 6);
  std::uniform_int_distribution<long> cap(1, 3);
  std::uniform_int_distribution<long> count(1, 10);
  for (int trial = 0; trial < 20; ++trial) {
    const long m = edges(rng);
    std::vector<Rat> caps;
    for (long e = 0; e < m; ++e) caps.push_back(rat(cap(rng)));
    std::vector<long> parent{0};
    for (long v = 2; v <= m + 1; ++v) parent.push_back(v - 1);
    std::uniform_int_distribution<long> vertex(1, m + 1);
    std::vector<Request> reqs;
    const long k = count(rng);
    for (long i = 0; i < k; ++i) {
      long s = vertex(rng), t = vertex(rng);
      while (s == t) t = vertex(rng);
      reqs.push_back({s, t, rat(1), rat(0)});
    }
    UfpInstance on_path(PathNetwork(caps), reqs);
    TreeUfpInstance on_tree(TreeNetwork(parent, caps), reqs);
    CHECK(on_path.congestion() == on_tree.congestion());
    Coloring cp = color_unit_path(on_path);
    Coloring ct = color_unit_tree(on_tree);
    CHECK(verify_coloring(on_tree, ct).ok);
    CHECK(ct.classes <= 4 * cp.classes);
  }
}

TEST_CASE("unit tree stays within 4r and four times the oracle") {
  std::mt19937_64 rng(7202);
  for (int trial = 0; trial < 30; ++trial) {
    TreeUfpInstance inst = random_tree_instance(rng, 3);
    Coloring c = color_unit_tree(inst);
    CHECK(verify_coloring(inst, c).ok);
    CHECK(c.classes <= 4 * inst.congestion());
    auto ex = oracle::exact_round_ufp(inst, oracle::OracleBudget{});
    REQUIRE(ex.status == oracle::OracleStatus::Ok);
    CHECK(c.classes <= 4 * ex.colors);
  }
}

TEST_CASE("large tree: single request takes one class") {
  TreeNetwork net({0, 1, 2}, {rat(2), rat(2)});
  TreeUfpInstance inst(net, {{1, 3, rat(2), rat(0)}});
  Coloring c = color_large_tree(inst);
  CHECK(c.classes == 1);
  CHECK(c.color[0] == 1);
}

TEST_CASE("large tree rejects small demands and missing headroom") {
  TreeNetwork net({0, 1, 2}, {rat(2), rat(2)});
  TreeUfpInstance has_small(net, {{1, 3, rat(1, 2), rat(0)}});
  CHECK_THROWS_AS(color_large_tree(has_small), std::invalid_argument);
  TreeNetwork uneven({0, 1, 2}, {rat(4), rat(1)});
  TreeUfpInstance no_nba(uneven, {{1, 2, rat(2), rat(0)}});
  CHECK_THROWS_AS(color_large_tree(no_nba), NbaViolation);
}

TEST_CASE("large tree stays within 32r and 32 times the oracle") {
  std::mt19937_64 rng(7203);
  for (int trial = 0; trial < 30; ++trial) {
    TreeUfpInstance inst = random_tree_instance(rng, 1);
    Coloring c = color_large_tree(inst);
    CHECK(verify_coloring(inst, c).ok);
    CHECK(c.classes <= 32 * inst.congestion());
    auto ex = oracle::exact_round_ufp(inst, oracle::OracleBudget{});
    REQUIRE(ex.status == oracle::OracleStatus::Ok);
    CHECK(c.classes <= 32 * ex.colors);
  }
}

TEST_CASE("small tree: one request goes to the first class") {
  TreeNetwork net({0, 1, 2}, {rat(4), rat(4)});
  TreeUfpInstance inst(net, {{1, 3, rat(1), rat(0)}});
  Coloring c = color_small_tree(inst);
  CHECK(c.classes == 1);
  CHECK(c.color[0] == 1);
}

TEST_CASE("small tree stays within 16r on random trees") {
  std::mt19937_64 rng(7204);
  for (int trial = 0; trial < 30; ++trial) {
    TreeUfpInstance inst = random_tree_instance(rng, 2);
    Coloring c = color_small_tree(inst);
    CHECK(verify_coloring(inst, c).ok);
    CHECK(c.classes <= 16 * inst.congestion());
  }
}

TEST_CASE("tree pipeline: all-small input equals the small solver") {
  TreeNetwork net({0, 1, 1, 2}, {rat(4), rat(4), rat(4)});
  TreeUfpInstance inst(net, {{3, 4, rat(1), rat(0)}, {1, 4, rat(1), rat(0)},
                             {2, 3, rat(1), rat(0)}});
  Coloring whole = round_ufp_tree(inst);
  Coloring small = color_small_tree(inst);
  CHECK(whole.color == small.color);
  CHECK(whole.classes == small.classes);
}

TEST_CASE("tree pipeline refuses instances without the no-bottleneck property") {
  TreeNetwork net({0, 1, 2}, {rat(4), rat(1)});
  TreeUfpInstance inst(net, {{1, 2, rat(2), rat(0)}});
  CHECK_THROWS_AS(round_ufp_tree(inst), NbaViolation);
}

TEST_CASE("tree pipeline stays within 64 times the oracle") {
  std::mt19937_64 rng(7205);
  for (int trial = 0; trial < 40; ++trial) {
    TreeUfpInstance inst = random_tree_instance(rng, 0);
    Coloring c = round_ufp_tree(inst);
    CHECK(verify_coloring(inst, c).ok);
    auto ex = oracle::exact_round_ufp(inst, oracle::OracleBudget{});
    REQUIRE(ex.status == oracle::OracleStatus::Ok);
    CHECK(c.classes <= 64 * ex.colors);
  }
}

TEST_CASE("path-shaped trees satisfy both pipeline bounds") {
  std::mt19937_64 rng(7206);
  std::uniform_int_distribution<long> edges(2, 5);
  std::uniform_int_distribution<long> capnum(2, 8);
  std::uniform_int_distribution<long> count(1, 8);
  std::uniform_int_distribution<long> frac(1, 100);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const long m = edges(rng);
    std::vector<Rat> caps;
    for (long e = 0; e < m; ++e) caps.push_back(rat(capnum(rng), 2));
    PathNetwork pnet(caps);
    Rat cmin = pnet.min_capacity();
    std::vector<long> parent{0};
    for (long v = 2; v <= m + 1; ++v) parent.push_back(v - 1);
    std::uniform_int_distribution<long> vertex(1, m + 1);
    std::vector<Request> reqs;
    const long k = count(rng);
    for (long i = 0; i < k; ++i) {
      long s = vertex(rng), t = vertex(rng);
      while (s == t) t = vertex(rng);
      if (s > t) std::swap(s, t);
      Rat b = pnet.capacity(s);
      for (long e = s; e < t; ++e) b = std::min(b, pnet.capacity(e));
      Rat d;
      if (coin(rng) && cmin * 4 > b) {
        d = b / 4 + (cmin - b / 4) * rat(frac(rng), 100);
      } else {
        d = b / 4 * rat(frac(rng), 100);
      }
      reqs.push_back({s, t, d, rat(1)});
    }
    UfpInstance on_path(pnet, reqs);
    TreeUfpInstance on_tree(TreeNetwork(parent, caps), reqs);
    Coloring cp = round_ufp_path(on_path);
    Coloring ct = round_ufp_tree(on_tree);
    CHECK(verify_coloring(on_tree, ct).ok);
    auto ex = oracle::exact_round_ufp(on_path, oracle::OracleBudget{});
    REQUIRE(ex.status == oracle::OracleStatus::Ok);
    CHECK(cp.classes <= 24 * ex.colors);
    CHECK(ct.classes <= 64 * ex.colors);
  }
}
